#![no_main]

use indic_cls::ClsWord;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(w) = ClsWord::parse(text) {
        assert_eq!(ClsWord::parse(&w.to_string()).unwrap().labels, w.labels);
    }
});
