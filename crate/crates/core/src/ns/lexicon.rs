use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::cls::{ClsConverter, ClsLabel, ConvertOptions};
use crate::script::{self, CharCategory, LanguageId};

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("lexicon line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("lexicon line {line}: `{native}` converts to `{actual}`, not its key `{key}`")]
    RoundTrip {
        line: usize,
        native: String,
        key: String,
        actual: String,
    },
}

/// Tallies from [`Lexicon::build`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub tokens: usize,
    pub added: usize,
    /// Words that failed CLS conversion.
    pub malformed: usize,
    /// Digit-only or punctuation-only tokens.
    pub non_words: usize,
}

/// CLS key → native spellings with corpus counts.
///
/// Candidate lists are ordered by descending count, ties broken by the
/// native string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    lang: LanguageId,
    opts: ConvertOptions,
    entries: BTreeMap<String, Vec<(String, u64)>>,
}

fn sort_candidates(c: &mut [(String, u64)]) {
    c.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
}

/// Strip punctuation from a corpus token; `None` if nothing convertible is left.
pub(crate) fn clean_token(raw: &str) -> Option<String> {
    let token: String = script::normalize(raw)
        .chars()
        .filter(|&c| script::category_of(c) != CharCategory::Punctuation)
        .collect();
    if token.is_empty() || token.chars().all(|c| script::category_of(c) == CharCategory::Digit) {
        return None;
    }
    Some(token)
}

impl Lexicon {
    pub fn new(lang: LanguageId, opts: ConvertOptions) -> Self {
        Lexicon {
            lang,
            opts,
            entries: BTreeMap::new(),
        }
    }

    pub fn lang(&self) -> LanguageId {
        self.lang
    }

    pub fn options(&self) -> ConvertOptions {
        self.opts
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Count every word of a native-script corpus under its CLS key.
    pub fn build<R: BufRead>(
        corpus: R,
        lang: LanguageId,
        converter: &ClsConverter,
        opts: ConvertOptions,
    ) -> io::Result<(Lexicon, BuildStats)> {
        let mut counts: BTreeMap<String, BTreeMap<String, u64>> = BTreeMap::new();
        let mut stats = BuildStats::default();
        for line in corpus.lines() {
            let line = line?;
            for raw in line.split_whitespace() {
                stats.tokens += 1;
                let Some(word) = clean_token(raw) else {
                    stats.non_words += 1;
                    continue;
                };
                match converter.word_to_cls(&word, lang, opts) {
                    Ok(cls) => {
                        *counts.entry(cls.key()).or_default().entry(word).or_default() += 1;
                        stats.added += 1;
                    }
                    Err(_) => stats.malformed += 1,
                }
            }
        }
        let entries = counts
            .into_iter()
            .map(|(k, natives)| {
                let mut c: Vec<_> = natives.into_iter().collect();
                sort_candidates(&mut c);
                (k, c)
            })
            .collect();
        Ok((Lexicon { lang, opts, entries }, stats))
    }

    pub fn candidates(&self, key: &str) -> Option<&[(String, u64)]> {
        self.entries.get(key).map(|v| v.as_slice())
    }

    /// Most frequent native spelling for a key.
    pub fn top(&self, key: &str) -> Option<&str> {
        self.candidates(key).and_then(|c| c.first()).map(|(w, _)| w.as_str())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &[(String, u64)])> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    /// Keys holding more than one native spelling.
    pub fn collisions(&self) -> impl Iterator<Item = (&str, &[(String, u64)])> {
        self.entries().filter(|(_, c)| c.len() > 1)
    }

    /// The unique key one label edit (substitution, insertion or deletion)
    /// away from `labels`, if there is exactly one.
    pub fn fuzzy_key(&self, labels: &[ClsLabel]) -> Option<&str> {
        let mut found = None;
        for key in self.entries.keys() {
            let parts: Vec<&str> = key.split(' ').collect();
            if one_edit_apart(&parts, labels) {
                if found.is_some() {
                    return None;
                }
                found = Some(key.as_str());
            }
        }
        found
    }

    /// Serialize as `key<TAB>native<TAB>count`, sorted by key then by count
    /// descending.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (key, cands) in &self.entries {
            for (native, count) in cands {
                writeln!(out, "{key}\t{native}\t{count}")?;
            }
        }
        Ok(())
    }

    /// Parse the TSV form. With `validate`, every native word must convert
    /// back to its key under `opts`.
    pub fn read_tsv<R: BufRead>(
        input: R,
        lang: LanguageId,
        opts: ConvertOptions,
        validate: Option<&ClsConverter>,
    ) -> Result<Lexicon, LexiconError> {
        let mut entries: BTreeMap<String, Vec<(String, u64)>> = BTreeMap::new();
        for (n, line) in input.lines().enumerate() {
            let line = line?;
            let lineno = n + 1;
            let err = |message: String| LexiconError::Parse { line: lineno, message };
            let body = line.trim_end_matches('\r');
            if body.trim().is_empty() || body.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = body.split('\t').collect();
            let [key, native, count] = fields[..] else {
                return Err(err(format!("expected 3 tab-separated fields, got {}", fields.len())));
            };
            let labels: Vec<&str> = key.split(' ').collect();
            if labels.iter().any(|l| ClsLabel::new(l).is_err()) {
                return Err(err(format!("bad CLS key `{key}`")));
            }
            if native.is_empty() || native.chars().any(char::is_whitespace) {
                return Err(err(format!("bad native word `{native}`")));
            }
            let count: u64 = count.parse().map_err(|_| err(format!("bad count `{count}`")))?;
            if count == 0 {
                return Err(err("counts must be positive".into()));
            }
            if let Some(conv) = validate {
                let actual = conv
                    .word_to_cls(native, lang, opts)
                    .map(|w| w.key())
                    .unwrap_or_else(|e| format!("<error: {e}>"));
                if actual != key {
                    return Err(LexiconError::RoundTrip {
                        line: lineno,
                        native: native.to_string(),
                        key: key.to_string(),
                        actual,
                    });
                }
            }
            let cands = entries.entry(key.to_string()).or_default();
            if cands.iter().any(|(w, _)| w == native) {
                return Err(err(format!("duplicate entry for `{native}`")));
            }
            cands.push((native.to_string(), count));
        }
        for c in entries.values_mut() {
            sort_candidates(c);
        }
        Ok(Lexicon { lang, opts, entries })
    }
}

/// Edit distance between the label sequences is exactly one.
fn one_edit_apart(key: &[&str], labels: &[ClsLabel]) -> bool {
    let same = |k: &str, l: &ClsLabel| k == l.as_str();
    match key.len() as isize - labels.len() as isize {
        0 => key.iter().zip(labels).filter(|(k, l)| !same(k, l)).count() == 1,
        1 | -1 => {
            let prefix = key.iter().zip(labels).take_while(|(k, l)| same(k, l)).count();
            let (k, l) = if key.len() > labels.len() {
                (&key[prefix + 1..], &labels[prefix..])
            } else {
                (&key[prefix..], &labels[prefix + 1..])
            };
            k.len() == l.len() && k.iter().zip(l).all(|(k, l)| same(k, l))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(text: &str) -> (Lexicon, BuildStats) {
        Lexicon::build(text.as_bytes(), LanguageId::Hindi, ClsConverter::bundled(), ConvertOptions::default()).unwrap()
    }

    #[test]
    fn empty_corpus() {
        let (lex, stats) = build("");
        assert!(lex.is_empty());
        assert_eq!(stats, BuildStats::default());
    }

    #[test]
    fn kamal_twice() {
        let (lex, stats) = build("कमल कमल");
        assert_eq!(lex.len(), 1);
        assert_eq!(lex.candidates("k a m a l").unwrap(), &[("कमल".to_string(), 2)]);
        assert_eq!(stats.added, 2);
    }

    #[test]
    fn homographs_ordered_by_count() {
        // कमल and कमल् share the key k a m a l
        let (lex, _) = build("कमल् कमल कमल्\nकमल्");
        let c = lex.candidates("k a m a l").unwrap();
        assert_eq!(c, &[("कमल्".to_string(), 3), ("कमल".to_string(), 1)]);
        assert_eq!(lex.top("k a m a l"), Some("कमल्"));
        assert_eq!(lex.collisions().count(), 1);
    }

    #[test]
    fn ties_break_lexicographically() {
        let (lex, _) = build("कमल् कमल");
        let c = lex.candidates("k a m a l").unwrap();
        assert_eq!(c[0].0, "कमल");
    }

    #[test]
    fn malformed_and_non_words_are_tallied() {
        let (lex, stats) = build("आ ्क १२ । आ,");
        assert_eq!(stats.tokens, 5);
        assert_eq!(stats.added, 2);
        assert_eq!(stats.malformed, 1);
        assert_eq!(stats.non_words, 2);
        assert_eq!(lex.top("aa"), Some("आ"));
    }

    #[test]
    fn tsv_round_trip() {
        let (lex, _) = build("कमल् कमल कमल् आ");
        let mut buf = Vec::new();
        lex.write_tsv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text, "aa\tआ\t1\nk a m a l\tकमल्\t2\nk a m a l\tकमल\t1\n");
        let back = Lexicon::read_tsv(
            &buf[..],
            LanguageId::Hindi,
            ConvertOptions::default(),
            Some(ClsConverter::bundled()),
        )
        .unwrap();
        assert_eq!(back, lex);
    }

    #[test]
    fn loader_rejects_bad_records() {
        let read = |t: &str, v: bool| {
            Lexicon::read_tsv(
                t.as_bytes(),
                LanguageId::Hindi,
                ConvertOptions::default(),
                v.then(ClsConverter::bundled),
            )
        };
        assert!(matches!(read("aa\tआ\n", false), Err(LexiconError::Parse { line: 1, .. })));
        assert!(matches!(read("aa\tआ\t0\n", false), Err(LexiconError::Parse { .. })));
        assert!(matches!(read("aA\tआ\t1\n", false), Err(LexiconError::Parse { .. })));
        assert!(matches!(read("aa\tआ\t1\naa\tआ\t2\n", false), Err(LexiconError::Parse { line: 2, .. })));
        assert!(matches!(read("ii\tआ\t1\n", true), Err(LexiconError::RoundTrip { line: 1, .. })));
        assert!(read("ii\tआ\t1\n", false).is_ok());
    }

    #[test]
    fn fuzzy_single_edit() {
        let (lex, _) = build("कमल आम");
        let labels = |s: &str| s.split(' ').map(|l| ClsLabel::new(l).unwrap()).collect::<Vec<_>>();
        assert_eq!(lex.fuzzy_key(&labels("k a n a l")), Some("k a m a l"));
        assert_eq!(lex.fuzzy_key(&labels("k a m a")), Some("k a m a l"));
        assert_eq!(lex.fuzzy_key(&labels("k a m a l a")), Some("k a m a l"));
        assert_eq!(lex.fuzzy_key(&labels("k a m m a l")), Some("k a m a l"));
        assert_eq!(lex.fuzzy_key(&labels("a m a l")), Some("k a m a l"));
        assert_eq!(lex.fuzzy_key(&labels("k a n a r")), None);
        assert_eq!(lex.fuzzy_key(&labels("k a")), None);
        assert_eq!(lex.fuzzy_key(&labels("k a m a l")), None);
        let (lex, _) = build("कमल कमर");
        // two keys at distance one
        assert_eq!(lex.fuzzy_key(&labels("k a m a t")), None);
    }
}
