//! Utterance manifests: `id<TAB>lang<TAB>duration_sec<TAB>audio_path<TAB>transcript`.

use std::collections::HashSet;
use std::io::{self, BufRead};

use thiserror::Error;

use crate::script::{self, Detected, LanguageId};

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("manifest line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("manifest line {line}: duplicate utterance id `{id}`")]
    DuplicateId { line: usize, id: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Utterance {
    pub id: String,
    pub lang: LanguageId,
    /// Signed so that negative durations survive parsing and can be
    /// reported per record.
    pub duration_ms: i64,
    pub audio_path: String,
    pub transcript: String,
    /// 1-based manifest line.
    pub line: usize,
}

/// A record-level validation failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecordProblem {
    #[error("negative duration {0} ms")]
    NegativeDuration(i64),
    #[error("transcript is in the {found} script, expected {expected}")]
    ScriptMismatch { expected: script::ScriptId, found: Detected },
}

impl Utterance {
    pub fn duration_sec(&self) -> f64 {
        self.duration_ms as f64 / 1000.0
    }

    /// Problems that make the record unusable. Transcripts with no Indic
    /// letters at all (empty, digits only) are accepted.
    pub fn validate(&self) -> Vec<RecordProblem> {
        let mut out = Vec::new();
        if self.duration_ms < 0 {
            out.push(RecordProblem::NegativeDuration(self.duration_ms));
        }
        let expected = self.lang.script();
        match script::detect_script(&self.transcript).script {
            Detected::None => {}
            Detected::Script(s) if s == expected => {}
            found => out.push(RecordProblem::ScriptMismatch { expected, found }),
        }
        out
    }
}

/// Parse a decimal number of seconds into whole milliseconds, rounding
/// half away from zero. No floating point is involved.
pub fn parse_duration_ms(s: &str) -> Option<i64> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let whole: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let mut ms: i64 = 0;
    let digits = frac.as_bytes();
    for k in 0..3 {
        ms = ms * 10 + digits.get(k).map_or(0, |d| (d - b'0') as i64);
    }
    if digits.get(3).is_some_and(|&d| d >= b'5') {
        ms += 1;
    }
    let total = whole.checked_mul(1000)?.checked_add(ms)?;
    Some(if neg { -total } else { total })
}

/// Render milliseconds as seconds with three decimals.
pub fn format_duration_ms(ms: i64) -> String {
    let sign = if ms < 0 { "-" } else { "" };
    let a = ms.unsigned_abs();
    format!("{sign}{}.{:03}", a / 1000, a % 1000)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Manifest {
    pub utterances: Vec<Utterance>,
}

impl Manifest {
    pub fn len(&self) -> usize {
        self.utterances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.utterances.is_empty()
    }

    /// Parse a manifest. Blank lines and lines starting with `#` are skipped.
    /// Malformed lines and duplicate ids are fatal; record-level problems
    /// are left to [`Utterance::validate`].
    pub fn parse<R: BufRead>(input: R) -> Result<Manifest, ManifestError> {
        let mut utterances = Vec::new();
        let mut seen = HashSet::new();
        for (n, line) in input.lines().enumerate() {
            let line = line?;
            let lineno = n + 1;
            let err = |message: String| ManifestError::Parse { line: lineno, message };
            let body = line.trim_end_matches('\r');
            if body.trim().is_empty() || body.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = body.splitn(5, '\t').collect();
            let [id, lang, dur, audio, transcript] = fields[..] else {
                return Err(err(format!("expected 5 tab-separated fields, got {}", fields.len())));
            };
            if id.is_empty() || id.chars().any(char::is_whitespace) {
                return Err(err(format!("bad utterance id `{id}`")));
            }
            let lang: LanguageId = lang.parse().map_err(|_| err(format!("unknown language `{lang}`")))?;
            let duration_ms = parse_duration_ms(dur).ok_or_else(|| err(format!("bad duration `{dur}`")))?;
            if !seen.insert(id.to_string()) {
                return Err(ManifestError::DuplicateId {
                    line: lineno,
                    id: id.to_string(),
                });
            }
            utterances.push(Utterance {
                id: id.to_string(),
                lang,
                duration_ms,
                audio_path: audio.to_string(),
                transcript: transcript.to_string(),
                line: lineno,
            });
        }
        Ok(Manifest { utterances })
    }

    pub fn parse_str(text: &str) -> Result<Manifest, ManifestError> {
        Manifest::parse(text.as_bytes())
    }
}
