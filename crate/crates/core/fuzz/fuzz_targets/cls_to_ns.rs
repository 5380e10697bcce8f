#![no_main]

use indic_cls::ns::{NsMode, NsOptions, Reconstructor};
use indic_cls::{ClsConverter, LanguageId};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let r = Reconstructor::new(ClsConverter::bundled(), NsOptions::default());
    let _ = r.cls_text_to_ns(text, NsMode::Unified);
    for lang in LanguageId::ALL {
        let _ = r.cls_text_to_ns(text, NsMode::Mono(lang));
    }
});
