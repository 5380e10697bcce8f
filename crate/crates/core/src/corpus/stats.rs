//! Per-language duration and utterance counts.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::manifest::Manifest;
use crate::script::LanguageId;

const MS_PER_HOUR: u64 = 3_600_000;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LangStats {
    pub duration_ms: u64,
    pub utterances: usize,
}

impl LangStats {
    pub fn hours(&self) -> f64 {
        self.duration_ms as f64 / MS_PER_HOUR as f64
    }

    /// Whole hours, halves rounded up.
    pub fn rounded_hours(&self) -> u64 {
        (self.duration_ms + MS_PER_HOUR / 2) / MS_PER_HOUR
    }

    fn add(&mut self, other: LangStats) {
        self.duration_ms += other.duration_ms;
        self.utterances += other.utterances;
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusStats {
    /// Every language appears, with zeros when absent from the manifest.
    pub per_lang: BTreeMap<LanguageId, LangStats>,
    /// Records left out because of a negative duration: `(id, line)`.
    pub rejected: Vec<(String, usize)>,
}

impl CorpusStats {
    pub fn total(&self) -> LangStats {
        let mut t = LangStats::default();
        for s in self.per_lang.values() {
            t.add(*s);
        }
        t
    }

    pub fn get(&self, lang: LanguageId) -> LangStats {
        self.per_lang.get(&lang).copied().unwrap_or_default()
    }

    /// Combine two partial results; order does not matter.
    pub fn merge(mut self, other: CorpusStats) -> CorpusStats {
        for (l, s) in other.per_lang {
            self.per_lang.entry(l).or_default().add(s);
        }
        self.rejected.extend(other.rejected);
        self
    }
}

pub fn corpus_stats(manifest: &Manifest) -> CorpusStats {
    let mut stats = CorpusStats {
        per_lang: LanguageId::ALL.into_iter().map(|l| (l, LangStats::default())).collect(),
        rejected: Vec::new(),
    };
    for u in &manifest.utterances {
        match u64::try_from(u.duration_ms) {
            Ok(ms) => stats.per_lang.get_mut(&u.lang).unwrap().add(LangStats {
                duration_ms: ms,
                utterances: 1,
            }),
            Err(_) => stats.rejected.push((u.id.clone(), u.line)),
        }
    }
    stats
}

/// Hours table with one column per named split: rounded hours and
/// utterance counts per language, then the total row.
pub fn render_stats_table(splits: &[(String, CorpusStats)]) -> String {
    let mut header = vec!["Language".to_string()];
    for (name, _) in splits {
        header.push(format!("{name} h"));
        header.push(format!("{name} utts"));
    }
    let mut rows = vec![header];
    let mut row_for = |name: &str, get: &dyn Fn(&CorpusStats) -> LangStats| {
        let mut row = vec![name.to_string()];
        for (_, s) in splits {
            let v = get(s);
            row.push(v.rounded_hours().to_string());
            row.push(v.utterances.to_string());
        }
        rows.push(row);
    };
    for l in LanguageId::ALL {
        row_for(l.display_name(), &|s| s.get(l));
    }
    row_for("Total", &|s| s.total());

    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in &rows {
        let cells: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, v)| {
                if c == 0 {
                    format!("{v:<w$}", w = widths[c])
                } else {
                    format!("{v:>w$}", w = widths[c])
                }
            })
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}
