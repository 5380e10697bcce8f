//! Regenerate the synthetic test fixtures under `tests/fixtures/`.
//!
//! ```text
//! cargo run -p indic-cls --example gen_fixtures
//! ```
//!
//! Output is fully determined by the fixed seeds below.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use indic_cls::cls::ClsConverter;
use indic_cls::generate::{Alphabet, GenOptions};
use indic_cls::{ConvertOptions, LanguageId};
use rand::seq::IndexedRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WORDS_PER_LANG: usize = 240;

/// Hours per language for the train, valid and test splits.
const HOURS: [(LanguageId, [u64; 3]); 5] = [
    (LanguageId::Hindi, [206, 15, 14]),
    (LanguageId::Marathi, [201, 15, 15]),
    (LanguageId::Gujarati, [213, 17, 17]),
    (LanguageId::Bengali, [207, 13, 13]),
    (LanguageId::Odia, [211, 16, 16]),
];

fn vocabulary(lang: LanguageId, rng: &mut ChaCha8Rng) -> Vec<String> {
    let conv = ClsConverter::bundled();
    let alpha = Alphabet::new(conv.inventory(), lang.script());
    let opts = GenOptions {
        min_aksharas: 1,
        max_aksharas: 4,
        ..GenOptions::default()
    };
    let mut by_key: BTreeMap<String, Option<String>> = BTreeMap::new();
    let mut attempts = 0;
    while by_key.values().filter(|v| v.is_some()).count() < WORDS_PER_LANG {
        attempts += 1;
        assert!(attempts < 100_000, "could not find enough distinct keys");
        let w = alpha.word(rng, &opts);
        let key = conv.word_to_cls(&w, lang, ConvertOptions::default()).unwrap().key();
        match by_key.get(&key) {
            None => {
                by_key.insert(key, Some(w));
            }
            // a second spelling poisons the key
            Some(Some(prev)) if *prev != w => {
                by_key.insert(key, None);
            }
            _ => {}
        }
    }
    by_key.into_values().flatten().collect()
}

fn corpus_text(words: &[String], rng: &mut ChaCha8Rng) -> String {
    let mut tokens: Vec<&str> = words.iter().map(String::as_str).collect();
    for _ in 0..words.len() / 2 {
        tokens.push(words.choose(rng).unwrap());
    }
    // Fisher-Yates via random_range keeps this independent of shuffle APIs
    for i in (1..tokens.len()).rev() {
        let j = rng.random_range(0..=i);
        tokens.swap(i, j);
    }
    let mut out = String::new();
    for line in tokens.chunks(12) {
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Split `total` into `k` positive parts.
fn split_ms(total: u64, k: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let weights: Vec<u64> = (0..k).map(|_| rng.random_range(500..1500)).collect();
    let sum: u64 = weights.iter().sum();
    let mut parts: Vec<u64> = weights.iter().map(|w| total * w / sum).collect();
    let short = total - parts.iter().sum::<u64>();
    parts[0] += short;
    parts
}

fn manifest(split: usize, name: &str, vocab: &BTreeMap<LanguageId, Vec<String>>, rng: &mut ChaCha8Rng) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# synthetic {name} split: id\tlang\tduration_sec\taudio_path\ttranscript");
    let per_lang = if split == 0 { 200 } else { 20 };
    for (lang, hours) in HOURS {
        // up to five minutes either side of the whole hour
        let offset: i64 = rng.random_range(-300_000..=300_000);
        let total = (hours[split] * 3_600_000) as i64 + offset;
        for (i, ms) in split_ms(total as u64, per_lang, rng).into_iter().enumerate() {
            let n = rng.random_range(1..=6);
            let words: Vec<&str> = (0..n).map(|_| vocab[&lang].choose(rng).unwrap().as_str()).collect();
            let id = format!("{name}-{}-{i:04}", lang.name());
            let _ = writeln!(
                out,
                "{id}\t{}\t{}.{:03}\taudio/{id}.wav\t{}",
                lang.name(),
                ms / 1000,
                ms % 1000,
                words.join(" ")
            );
        }
    }
    out
}

fn main() -> std::io::Result<()> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    fs::create_dir_all(root.join("lexicon_corpus"))?;
    fs::create_dir_all(root.join("splits"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut vocab = BTreeMap::new();
    for lang in LanguageId::ALL {
        let words = vocabulary(lang, &mut rng);
        fs::write(root.join("lexicon_corpus").join(format!("{}.txt", lang.name())), corpus_text(&words, &mut rng))?;
        vocab.insert(lang, words);
    }
    for (split, name) in ["train", "valid", "test"].into_iter().enumerate() {
        fs::write(root.join("splits").join(format!("{name}.tsv")), manifest(split, name, &vocab, &mut rng))?;
    }
    Ok(())
}
