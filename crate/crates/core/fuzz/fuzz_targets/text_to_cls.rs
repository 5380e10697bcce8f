#![no_main]

use indic_cls::cls::{ClsConverter, TextOptions};
use indic_cls::LanguageId;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let conv = ClsConverter::bundled();
    let opts = TextOptions::default();
    for lang in LanguageId::ALL {
        let _ = conv.text_to_cls(text, lang, &opts);
    }
});
