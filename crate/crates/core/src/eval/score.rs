//! WER/CER counting and corpus-level scoring.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::{self, BufRead};

use thiserror::Error;

use super::align::align;
use crate::script::{self, CharCategory, LanguageId};

#[derive(Debug, Error)]
pub enum ScoreError {
    #[error("error rate is undefined for an empty reference with a non-empty hypothesis")]
    UndefinedRate,
    #[error("hypothesis id `{id}` has no reference")]
    UnknownId { id: String },
    #[error("no hypothesis for reference id `{id}`")]
    MissingHyp { id: String },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("{what} line {line}: {message}")]
    Parse {
        what: &'static str,
        line: usize,
        message: String,
    },
}

/// Pooled edit counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ErrorCounts {
    pub substitutions: u64,
    pub deletions: u64,
    pub insertions: u64,
    pub matches: u64,
}

impl ErrorCounts {
    pub fn errors(&self) -> u64 {
        self.substitutions + self.deletions + self.insertions
    }

    pub fn ref_len(&self) -> u64 {
        self.substitutions + self.deletions + self.matches
    }

    pub fn hyp_len(&self) -> u64 {
        self.substitutions + self.insertions + self.matches
    }

    /// `errors / ref_len`. An empty reference scores 0 against an empty
    /// hypothesis and is undefined otherwise.
    pub fn rate(&self) -> Result<f64, ScoreError> {
        match (self.ref_len(), self.errors()) {
            (0, 0) => Ok(0.0),
            (0, _) => Err(ScoreError::UndefinedRate),
            (n, e) => Ok(e as f64 / n as f64),
        }
    }

    /// True when the rate comes from the empty-reference convention.
    pub fn empty_reference(&self) -> bool {
        self.ref_len() == 0
    }

    pub fn add(&mut self, other: ErrorCounts) {
        self.substitutions += other.substitutions;
        self.deletions += other.deletions;
        self.insertions += other.insertions;
        self.matches += other.matches;
    }

    fn of<T: PartialEq>(r: &[T], h: &[T]) -> ErrorCounts {
        let a = align(r, h);
        ErrorCounts {
            substitutions: a.substitutions as u64,
            deletions: a.deletions as u64,
            insertions: a.insertions as u64,
            matches: a.matches as u64,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScoreOptions {
    /// NFC-normalize and strip punctuation before scoring.
    pub normalize: bool,
    pub missing: MissingPolicy,
}

/// What to do with a reference that has no hypothesis.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum MissingPolicy {
    /// Score it against an empty hypothesis.
    #[default]
    Delete,
    Error,
}

fn prepare(text: &str, normalize: bool) -> String {
    if normalize {
        script::normalize(text)
            .chars()
            .filter(|&c| script::category_of(c) != CharCategory::Punctuation)
            .collect()
    } else {
        text.to_string()
    }
}

/// Word-level counts; tokens are whitespace-separated.
pub fn wer(reference: &str, hyp: &str) -> ErrorCounts {
    let r: Vec<&str> = reference.split_whitespace().collect();
    let h: Vec<&str> = hyp.split_whitespace().collect();
    ErrorCounts::of(&r, &h)
}

/// Character-level counts over NFC code points, whitespace excluded.
pub fn cer(reference: &str, hyp: &str) -> ErrorCounts {
    let chars = |s: &str| -> Vec<char> { script::normalize(s).chars().filter(|c| !c.is_whitespace()).collect() };
    ErrorCounts::of(&chars(reference), &chars(hyp))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Score {
    pub wer: ErrorCounts,
    pub cer: ErrorCounts,
    pub utterances: usize,
}

impl Score {
    fn add(&mut self, other: Score) {
        self.wer.add(other.wer);
        self.cer.add(other.cer);
        self.utterances += other.utterances;
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusScore {
    /// Only utterances with a known language contribute here.
    pub per_lang: BTreeMap<LanguageId, Score>,
    pub overall: Score,
}

/// Score every reference, pooling counts per language and overall.
pub fn score_corpus(
    refs: &[(String, String)],
    hyps: &[(String, String)],
    langs: &HashMap<String, LanguageId>,
    opts: ScoreOptions,
) -> Result<CorpusScore, ScoreError> {
    let ref_ids: HashSet<&str> = refs.iter().map(|(id, _)| id.as_str()).collect();
    if let Some((id, _)) = hyps.iter().find(|(id, _)| !ref_ids.contains(id.as_str())) {
        return Err(ScoreError::UnknownId { id: id.clone() });
    }
    let hyp_map: HashMap<&str, &str> = hyps.iter().map(|(id, t)| (id.as_str(), t.as_str())).collect();
    let mut out = CorpusScore::default();
    for (id, r) in refs {
        let h = match hyp_map.get(id.as_str()) {
            Some(h) => *h,
            None if opts.missing == MissingPolicy::Delete => "",
            None => return Err(ScoreError::MissingHyp { id: id.clone() }),
        };
        let (r, h) = (prepare(r, opts.normalize), prepare(h, opts.normalize));
        let s = Score {
            wer: wer(&r, &h),
            cer: cer(&r, &h),
            utterances: 1,
        };
        if let Some(&l) = langs.get(id) {
            out.per_lang.entry(l).or_default().add(s);
        }
        out.overall.add(s);
    }
    Ok(out)
}

/// Read `id<TAB>text` records; the text may be empty. Ids must be unique.
pub fn read_id_text<R: BufRead>(input: R, what: &'static str) -> Result<Vec<(String, String)>, ScoreError> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (n, line) in input.lines().enumerate() {
        let line = line?;
        let err = |message: String| ScoreError::Parse {
            what,
            line: n + 1,
            message,
        };
        let body = line.trim_end_matches('\r');
        if body.is_empty() {
            continue;
        }
        let (id, text) = body.split_once('\t').unwrap_or((body, ""));
        if id.is_empty() || id.chars().any(char::is_whitespace) {
            return Err(err(format!("bad id `{id}`")));
        }
        if !seen.insert(id.to_string()) {
            return Err(err(format!("duplicate id `{id}`")));
        }
        out.push((id.to_string(), text.to_string()));
    }
    Ok(out)
}

/// Read an `id<TAB>language` map.
pub fn read_lang_map<R: BufRead>(input: R) -> Result<HashMap<String, LanguageId>, ScoreError> {
    let mut out = HashMap::new();
    for (n, (id, lang)) in read_id_text(input, "language map")?.into_iter().enumerate() {
        let lang = lang.trim().parse().map_err(|_| ScoreError::Parse {
            what: "language map",
            line: n + 1,
            message: format!("unknown language `{lang}`"),
        })?;
        out.insert(id, lang);
    }
    Ok(out)
}
