#![no_main]

use indic_cls::corpus::{strip_lid, LidFormat};
use libfuzzer_sys::fuzz_target;

// First line is a tag template, the rest is tagged text.
fuzz_target!(|text: &str| {
    let (template, body) = text.split_once('\n').unwrap_or((text, ""));
    let _ = strip_lid(body);
    if let Ok(f) = LidFormat::new(template) {
        if let Ok((lang, rest)) = f.strip(body) {
            if let Ok(tagged) = f.inject(lang, rest) {
                assert_eq!(f.strip(&tagged).unwrap(), (lang, rest));
            }
        }
    }
});
