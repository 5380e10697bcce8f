#![no_main]

use indic_cls::ns::Lexicon;
use indic_cls::{ClsConverter, ConvertOptions, LanguageId};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let conv = ClsConverter::bundled();
    let opts = ConvertOptions::default();
    let _ = Lexicon::read_tsv(data, LanguageId::Hindi, opts, Some(conv));
    if let Ok(lex) = Lexicon::read_tsv(data, LanguageId::Odia, opts, None) {
        let mut out = Vec::new();
        lex.write_tsv(&mut out).unwrap();
        let again = Lexicon::read_tsv(&out[..], LanguageId::Odia, opts, None).unwrap();
        assert_eq!(again.len(), lex.len());
    }
    let _ = Lexicon::build(data, LanguageId::Bengali, conv, opts);
});
