use std::sync::OnceLock;

use thiserror::Error;

use crate::script::LanguageId;

const BUNDLED: &str = include_str!("../../data/schwa_rules.tsv");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("schwa rule file line {line}: {message}")]
pub struct RuleError {
    pub line: usize,
    pub message: String,
}

/// Schwa deletion switches for one language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SchwaRuleSet {
    pub lang: LanguageId,
    pub delete_word_final: bool,
    pub delete_medial: bool,
}

impl SchwaRuleSet {
    /// A rule set that deletes nothing.
    pub fn disabled(lang: LanguageId) -> Self {
        SchwaRuleSet {
            lang,
            delete_word_final: false,
            delete_medial: false,
        }
    }

    pub fn is_disabled(&self) -> bool {
        !self.delete_word_final && !self.delete_medial
    }
}

/// Exactly one [`SchwaRuleSet`] per language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleTable {
    sets: [SchwaRuleSet; 5],
}

fn lang_slot(lang: LanguageId) -> usize {
    LanguageId::ALL.iter().position(|&l| l == lang).unwrap()
}

impl RuleTable {
    pub fn bundled() -> &'static RuleTable {
        static TABLE: OnceLock<RuleTable> = OnceLock::new();
        TABLE.get_or_init(|| RuleTable::parse(BUNDLED).expect("bundled schwa rules are valid"))
    }

    pub fn parse(text: &str) -> Result<Self, RuleError> {
        let mut sets: [Option<SchwaRuleSet>; 5] = [None; 5];
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let err = |message: String| RuleError { line, message };
            let body = raw.trim_end_matches('\r');
            if body.trim().is_empty() || body.trim_start().starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = body.split('\t').collect();
            if fields.len() != 3 {
                return Err(err(format!("expected 3 tab-separated fields, got {}", fields.len())));
            }
            let lang: LanguageId = fields[0].parse().map_err(|_| err(format!("unknown language `{}`", fields[0])))?;
            let flag = |s: &str| match s {
                "yes" => Ok(true),
                "no" => Ok(false),
                other => Err(err(format!("expected yes or no, got `{other}`"))),
            };
            let set = SchwaRuleSet {
                lang,
                delete_word_final: flag(fields[1])?,
                delete_medial: flag(fields[2])?,
            };
            if sets[lang_slot(lang)].replace(set).is_some() {
                return Err(err(format!("duplicate record for {lang}")));
            }
        }
        let mut out = Vec::with_capacity(5);
        for (lang, set) in LanguageId::ALL.into_iter().zip(sets) {
            out.push(set.ok_or(RuleError {
                line: text.lines().count(),
                message: format!("no record for {lang}"),
            })?);
        }
        Ok(RuleTable {
            sets: out.try_into().unwrap(),
        })
    }

    pub fn get(&self, lang: LanguageId) -> &SchwaRuleSet {
        &self.sets[lang_slot(lang)]
    }
}
