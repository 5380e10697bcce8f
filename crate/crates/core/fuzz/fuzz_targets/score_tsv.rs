#![no_main]

use std::collections::HashMap;

use indic_cls::eval::{read_id_text, read_lang_map, score_corpus, ScoreOptions};
use libfuzzer_sys::fuzz_target;

// Reference and hypothesis files separated by a NUL byte.
fuzz_target!(|data: &[u8]| {
    let _ = read_lang_map(data);
    let mut parts = data.splitn(2, |&b| b == 0);
    let (r, h) = (parts.next().unwrap_or(&[]), parts.next().unwrap_or(&[]));
    let (Ok(refs), Ok(hyps)) = (read_id_text(r, "reference"), read_id_text(h, "hypothesis")) else {
        return;
    };
    if let Ok(s) = score_corpus(&refs, &hyps, &HashMap::new(), ScoreOptions::default()) {
        let w = s.overall.wer;
        assert_eq!(w.substitutions + w.deletions + w.matches, w.ref_len());
    }
});
