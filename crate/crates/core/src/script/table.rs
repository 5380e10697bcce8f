use std::sync::OnceLock;

use thiserror::Error;

use super::{CharCategory, CommonIndex, ScriptId};

const BUNDLED: &str = include_str!("../../data/categories.tsv");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("category table line {line}: {message}")]
pub struct TableError {
    pub line: usize,
    pub message: String,
}

/// Per-block character categories, built from a common slot pattern plus
/// per-script exceptions. `None` marks an unassigned slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryTable {
    slots: [[Option<CharCategory>; 128]; 4],
}

fn script_slot(script: ScriptId) -> usize {
    match script {
        ScriptId::Devanagari => 0,
        ScriptId::Bengali => 1,
        ScriptId::Gujarati => 2,
        ScriptId::Odia => 3,
    }
}

fn parse_category(s: &str) -> Option<Option<CharCategory>> {
    let c = match s {
        "vowel" => CharCategory::IndependentVowel,
        "consonant" => CharCategory::Consonant,
        "matra" => CharCategory::VowelSign,
        "virama" => CharCategory::Virama,
        "nukta" => CharCategory::Nukta,
        "anusvara" => CharCategory::Anusvara,
        "visarga" => CharCategory::Visarga,
        "candrabindu" => CharCategory::Candrabindu,
        "digit" => CharCategory::Digit,
        "punctuation" => CharCategory::Punctuation,
        "other" => CharCategory::Other,
        "unassigned" => return Some(None),
        _ => return None,
    };
    Some(Some(c))
}

pub(crate) fn parse_hex_index(s: &str) -> Option<CommonIndex> {
    let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X"))?;
    let v = u16::from_str_radix(digits, 16).ok()?;
    CommonIndex::new(v).ok()
}

impl CategoryTable {
    /// The table shipped in `data/categories.tsv`.
    pub fn bundled() -> &'static CategoryTable {
        static TABLE: OnceLock<CategoryTable> = OnceLock::new();
        TABLE.get_or_init(|| CategoryTable::parse(BUNDLED).expect("bundled category table is valid"))
    }

    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut common: [Option<CharCategory>; 128] = [None; 128];
        let mut exceptions = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let err = |message: String| TableError { line, message };
            let body = raw.trim_end_matches('\r');
            if body.trim().is_empty() || body.trim_start().starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = body.split('\t').collect();
            if fields.len() != 3 {
                return Err(err(format!("expected 3 tab-separated fields, got {}", fields.len())));
            }
            let idx = parse_hex_index(fields[1]).ok_or_else(|| err(format!("bad index `{}`", fields[1])))?;
            let cat = parse_category(fields[2]).ok_or_else(|| err(format!("bad category `{}`", fields[2])))?;
            if fields[0] == "*" {
                if cat.is_none() {
                    return Err(err("the common pattern cannot list unassigned slots".into()));
                }
                if common[idx.value() as usize].is_some() {
                    return Err(err(format!("duplicate common record for {idx}")));
                }
                common[idx.value() as usize] = cat;
            } else {
                let script: ScriptId = fields[0].parse().map_err(|_| err(format!("bad scope `{}`", fields[0])))?;
                exceptions.push((line, script, idx, cat));
            }
        }
        let mut slots = [common; 4];
        let mut seen = std::collections::HashSet::new();
        for (line, script, idx, cat) in exceptions {
            if !seen.insert((script, idx)) {
                return Err(TableError {
                    line,
                    message: format!("duplicate exception for {script} {idx}"),
                });
            }
            slots[script_slot(script)][idx.value() as usize] = cat;
        }
        Ok(CategoryTable { slots })
    }

    pub fn category(&self, script: ScriptId, idx: CommonIndex) -> Option<CharCategory> {
        self.slots[script_slot(script)][idx.value() as usize]
    }

    pub fn is_assigned(&self, script: ScriptId, idx: CommonIndex) -> bool {
        self.category(script, idx).is_some()
    }

    /// All assigned slots of `script` in `category`, in index order.
    pub fn slots_in(&self, script: ScriptId, category: CharCategory) -> impl Iterator<Item = CommonIndex> + '_ {
        (0u8..128)
            .map(CommonIndex::from_u8)
            .filter(move |&i| self.category(script, i) == Some(category))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ci(v: u8) -> CommonIndex {
        CommonIndex::from_u8(v)
    }

    #[test]
    fn bundled_table_loads() {
        let t = CategoryTable::bundled();
        assert_eq!(t.category(ScriptId::Devanagari, ci(0x4D)), Some(CharCategory::Virama));
        assert_eq!(t.category(ScriptId::Devanagari, ci(0x06)), Some(CharCategory::IndependentVowel));
        assert_eq!(t.category(ScriptId::Bengali, ci(0x15)), Some(CharCategory::Consonant));
        assert_eq!(t.category(ScriptId::Odia, ci(0x71)), Some(CharCategory::Consonant));
        assert_eq!(t.category(ScriptId::Devanagari, ci(0x71)), Some(CharCategory::Other));
    }

    #[test]
    fn unassigned_slots_match_unicode() {
        // Unicode 13 charts for the Bengali, Gujarati and Oriya blocks.
        let t = CategoryTable::bundled();
        let unassigned = |s: ScriptId| -> Vec<u8> {
            (0u8..128).filter(|&i| !t.is_assigned(s, ci(i))).collect()
        };
        assert!(unassigned(ScriptId::Devanagari).is_empty());
        assert_eq!(
            unassigned(ScriptId::Bengali),
            vec![
                0x04, 0x0D, 0x0E, 0x11, 0x12, 0x29, 0x31, 0x33, 0x34, 0x35, 0x3A, 0x3B, 0x45, 0x46, 0x49, 0x4A,
                0x4F, 0x50, 0x51, 0x52, 0x53, 0x54, 0x55, 0x56, 0x58, 0x59, 0x5A, 0x5B, 0x5E, 0x64, 0x65, 0x7F
            ]
        );
        assert_eq!(
            unassigned(ScriptId::Gujarati),
            vec![
                0x00, 0x04, 0x0E, 0x12, 0x29, 0x31, 0x34, 0x3A, 0x3B, 0x46, 0x4A, 0x4E, 0x4F, 0x51, 0x52, 0x53,
                0x54, 0x55, 0x56, 0x57, 0x58, 0x59, 0x5A, 0x5B, 0x5C, 0x5D, 0x5E, 0x5F, 0x64, 0x65, 0x72, 0x73,
                0x74, 0x75, 0x76, 0x77, 0x78
            ]
        );
        assert_eq!(
            unassigned(ScriptId::Odia),
            vec![
                0x00, 0x04, 0x0D, 0x0E, 0x11, 0x12, 0x29, 0x31, 0x34, 0x3A, 0x3B, 0x45, 0x46, 0x49, 0x4A, 0x4E,
                0x4F, 0x50, 0x51, 0x52, 0x53, 0x54, 0x58, 0x59, 0x5A, 0x5B, 0x5E, 0x64, 0x65, 0x78, 0x79, 0x7A,
                0x7B, 0x7C, 0x7D, 0x7E, 0x7F
            ]
        );
    }

    #[test]
    fn assigned_slots_agree_across_scripts() {
        // Wherever two blocks both assign a slot they classify it the same,
        // apart from Odia WA which sits on a Devanagari sign slot.
        let t = CategoryTable::bundled();
        for i in 0u8..128 {
            let cats: Vec<_> = ScriptId::ALL
                .iter()
                .filter(|&&s| !(s == ScriptId::Odia && i == 0x71))
                .filter_map(|&s| t.category(s, ci(i)))
                .collect();
            assert!(cats.windows(2).all(|w| w[0] == w[1]), "slot {i:#x}: {cats:?}");
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = CategoryTable::parse("# c\n*\t0x01\tvowel\n*\t0x99\tvowel\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = CategoryTable::parse("*\t0x01\tbogus\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = CategoryTable::parse("klingon\t0x01\tvowel\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(CategoryTable::parse("*\t0x01\tunassigned\n").is_err());
        assert!(CategoryTable::parse("*\t0x01\n").is_err());
    }
}
