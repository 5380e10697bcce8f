#![no_main]

use indic_cls::corpus::{corpus_stats, prep_corpus, Manifest, PrepOptions, TargetFlavor};
use indic_cls::ClsConverter;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let Ok(m) = Manifest::parse_str(text) else { return };
    let _ = corpus_stats(&m);
    for flavor in TargetFlavor::ALL {
        let out = prep_corpus(&m, ClsConverter::bundled(), &PrepOptions::new(flavor));
        assert_eq!(out.targets.len() + out.errors.len(), m.len());
    }
});
