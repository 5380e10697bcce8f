//! Comparison reports: systems as rows, languages as columns.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::score::{CorpusScore, ErrorCounts};
use crate::script::LanguageId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReportError {
    #[error("report line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A non-negative percentage held as an exact fraction.
#[derive(Debug, Clone, Copy)]
pub struct Percent {
    num: u128,
    den: u128,
}

impl Percent {
    /// `100 · errors / total`; `None` when `total` is zero.
    pub fn from_counts(errors: u64, total: u64) -> Option<Percent> {
        (total > 0).then(|| Percent {
            num: 100 * errors as u128,
            den: total as u128,
        })
    }

    /// Percentage of an [`ErrorCounts`]; an empty reference with no errors
    /// is 0, with errors undefined.
    pub fn of_counts(c: &ErrorCounts) -> Option<Percent> {
        match (c.ref_len(), c.errors()) {
            (0, 0) => Some(Percent { num: 0, den: 1 }),
            (n, e) => Percent::from_counts(e, n),
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Value in tenths, halves rounded up.
    pub fn tenths(self) -> u128 {
        (20 * self.num + self.den) / (2 * self.den)
    }

    /// One decimal place, e.g. `27.0`, `23.5`.
    pub fn display(self) -> String {
        let t = self.tenths();
        format!("{}.{}", t / 10, t % 10)
    }
}

impl PartialEq for Percent {
    fn eq(&self, other: &Self) -> bool {
        self.num * other.den == other.num * self.den
    }
}

impl Eq for Percent {}

impl FromStr for Percent {
    type Err = String;

    /// Parse a plain decimal such as `23.45` or `27` exactly.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("bad percentage `{s}`");
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() || frac.len() > 18 || !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10u128.pow(frac.len() as u32);
        let digits = format!("{int}{frac}");
        let num: u128 = digits.parse().map_err(|_| bad())?;
        Ok(Percent { num, den })
    }
}

impl fmt::Display for Percent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub system: String,
    /// One entry per report language; `None` renders as `-`.
    pub wer: Vec<Option<Percent>>,
    pub cer: Option<Vec<Option<Percent>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalReport {
    pub languages: Vec<LanguageId>,
    pub rows: Vec<ReportRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Tsv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "tsv" => Ok(ReportFormat::Tsv),
            _ => Err(format!("unknown report format `{s}` (expected text or tsv)")),
        }
    }
}

impl EvalReport {
    pub fn new(languages: Vec<LanguageId>) -> Self {
        EvalReport {
            languages,
            rows: Vec::new(),
        }
    }

    /// Append a row built from pooled corpus counts.
    pub fn push_score(&mut self, system: &str, score: &CorpusScore, with_cer: bool) {
        let col = |f: &dyn Fn(&super::score::Score) -> ErrorCounts| -> Vec<Option<Percent>> {
            self.languages
                .iter()
                .map(|l| score.per_lang.get(l).and_then(|s| Percent::of_counts(&f(s))))
                .collect()
        };
        let wer = col(&|s| s.wer);
        let cer = with_cer.then(|| col(&|s| s.cer));
        self.rows.push(ReportRow {
            system: system.to_string(),
            wer,
            cer,
        });
    }

    fn has_cer(&self) -> bool {
        self.rows.iter().any(|r| r.cer.is_some())
    }

    fn header(&self) -> Vec<String> {
        let mut h = vec!["System".to_string()];
        h.extend(self.languages.iter().map(|l| l.display_name().to_string()));
        if self.has_cer() {
            h.extend(self.languages.iter().map(|l| format!("{} CER", l.display_name())));
        }
        h
    }

    fn cells(&self) -> Vec<Vec<String>> {
        let show = |p: &Option<Percent>| p.map_or_else(|| "-".to_string(), |p| p.display());
        let n = self.languages.len();
        let mut out = vec![self.header()];
        for r in &self.rows {
            let mut row = vec![r.system.clone()];
            row.extend((0..n).map(|i| show(r.wer.get(i).unwrap_or(&None))));
            if self.has_cer() {
                let cer = r.cer.as_deref().unwrap_or(&[]);
                row.extend((0..n).map(|i| show(cer.get(i).unwrap_or(&None))));
            }
            out.push(row);
        }
        out
    }

    /// Parse the TSV form: a header `System<TAB>Lang...[<TAB>Lang CER...]`
    /// and one row per system. Values are decimals or `-`.
    pub fn parse_tsv(text: &str) -> Result<EvalReport, ReportError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
        let Some((hline, header)) = lines.next() else {
            return Ok(EvalReport::new(Vec::new()));
        };
        let err = |line: usize, message: String| ReportError::Parse { line, message };
        let cols: Vec<&str> = header.split('\t').collect();
        let mut languages = Vec::new();
        let mut cer_langs = Vec::new();
        for c in &cols[1..] {
            match c.strip_suffix(" CER") {
                Some(l) => cer_langs.push(l.parse::<LanguageId>().map_err(|e| err(hline, e.to_string()))?),
                None => {
                    if !cer_langs.is_empty() {
                        return Err(err(hline, "WER columns must come before CER columns".into()));
                    }
                    languages.push(c.parse::<LanguageId>().map_err(|e| err(hline, e.to_string()))?)
                }
            }
        }
        if !cer_langs.is_empty() && cer_langs != languages {
            return Err(err(hline, "CER columns must repeat the WER languages in order".into()));
        }
        let n = languages.len();
        let mut rows = Vec::new();
        for (line, body) in lines {
            let fields: Vec<&str> = body.split('\t').collect();
            if fields.len() != cols.len() {
                return Err(err(line, format!("expected {} fields, got {}", cols.len(), fields.len())));
            }
            let vals = fields[1..]
                .iter()
                .map(|v| match *v {
                    "-" => Ok(None),
                    v => v.parse::<Percent>().map(Some).map_err(|e| err(line, e)),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let (wer, cer) = vals.split_at(n);
            rows.push(ReportRow {
                system: fields[0].to_string(),
                wer: wer.to_vec(),
                cer: (!cer_langs.is_empty()).then(|| cer.to_vec()),
            });
        }
        Ok(EvalReport { languages, rows })
    }
}

/// Render a report as an aligned text table or as TSV. Both carry the same
/// one-decimal values.
pub fn render_report(report: &EvalReport, format: ReportFormat) -> String {
    let cells = report.cells();
    let mut out = String::new();
    match format {
        ReportFormat::Tsv => {
            for row in &cells {
                out.push_str(&row.join("\t"));
                out.push('\n');
            }
        }
        ReportFormat::Text => {
            let widths: Vec<usize> = (0..cells[0].len())
                .map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
                .collect();
            for (i, row) in cells.iter().enumerate() {
                let line: Vec<String> = row
                    .iter()
                    .enumerate()
                    .map(|(c, v)| {
                        if c == 0 {
                            format!("{v:<w$}", w = widths[0])
                        } else {
                            format!("{v:>w$}", w = widths[c])
                        }
                    })
                    .collect();
                out.push_str(line.join(" | ").trim_end());
                out.push('\n');
                if i == 0 {
                    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
                    out.push_str(&rule.join("-+-"));
                    out.push('\n');
                }
            }
        }
    }
    out
}
