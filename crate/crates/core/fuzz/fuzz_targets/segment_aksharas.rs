#![no_main]

use indic_cls::akshara::segment_aksharas;
use indic_cls::script::{normalize, ScriptId};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let text = normalize(text);
    for script in ScriptId::ALL {
        if let Ok(parsed) = segment_aksharas(&text, script) {
            assert_eq!(parsed.render(), text);
        }
    }
});
