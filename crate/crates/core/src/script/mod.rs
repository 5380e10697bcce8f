//! Unicode-level services for the four parallel Indic blocks.
//!
//! Devanagari, Bengali, Gujarati and Odia each occupy a 128-slot block laid
//! out in the same order, so a code point minus its block base (a
//! [`CommonIndex`]) identifies "the same letter" in every script. Detection,
//! offset transliteration and character classification are all built on that
//! arithmetic.

pub(crate) mod table;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

pub use table::{CategoryTable, TableError};

const ZWNJ: char = '\u{200C}';
const ZWJ: char = '\u{200D}';

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScriptError {
    #[error("input is not valid UTF-8 (at byte {valid_up_to})")]
    InvalidUtf8 { valid_up_to: usize },
    #[error("common index {0:#04x} is outside 0x00..=0x7F")]
    IndexOutOfRange(u16),
    #[error("slot {index} is unassigned in the {script} block")]
    Unassigned { script: ScriptId, index: CommonIndex },
    #[error("character U+{code_point:04X} at position {position} has no counterpart in the target block")]
    UnmappableChar { position: usize, code_point: u32 },
    #[error("text is not in the {expected} script (detected {found})")]
    ScriptMismatch { expected: ScriptId, found: Detected },
    #[error("unknown script name `{0}`")]
    UnknownScript(String),
    #[error("unknown language name `{0}`")]
    UnknownLanguage(String),
}

/// One of the four Indic blocks handled by the toolkit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScriptId {
    Devanagari,
    Bengali,
    Gujarati,
    Odia,
}

impl ScriptId {
    pub const ALL: [ScriptId; 4] = [
        ScriptId::Devanagari,
        ScriptId::Bengali,
        ScriptId::Gujarati,
        ScriptId::Odia,
    ];

    pub const BLOCK_SIZE: u32 = 128;

    /// First code point of the script's block.
    pub const fn block_base(self) -> u32 {
        match self {
            ScriptId::Devanagari => 0x0900,
            ScriptId::Bengali => 0x0980,
            ScriptId::Gujarati => 0x0A80,
            ScriptId::Odia => 0x0B00,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            ScriptId::Devanagari => "devanagari",
            ScriptId::Bengali => "bengali",
            ScriptId::Gujarati => "gujarati",
            ScriptId::Odia => "odia",
        }
    }

    /// Languages written in this script.
    pub fn languages(self) -> &'static [LanguageId] {
        match self {
            ScriptId::Devanagari => &[LanguageId::Hindi, LanguageId::Marathi],
            ScriptId::Bengali => &[LanguageId::Bengali],
            ScriptId::Gujarati => &[LanguageId::Gujarati],
            ScriptId::Odia => &[LanguageId::Odia],
        }
    }

    fn of_code_point(cp: u32) -> Option<ScriptId> {
        ScriptId::ALL
            .into_iter()
            .find(|s| (s.block_base()..s.block_base() + Self::BLOCK_SIZE).contains(&cp))
    }
}

impl fmt::Display for ScriptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScriptId {
    type Err = ScriptError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "devanagari" | "deva" => Ok(ScriptId::Devanagari),
            "bengali" | "beng" | "bangla" => Ok(ScriptId::Bengali),
            "gujarati" | "gujr" => Ok(ScriptId::Gujarati),
            "odia" | "oriya" | "orya" => Ok(ScriptId::Odia),
            _ => Err(ScriptError::UnknownScript(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LanguageId {
    Hindi,
    Marathi,
    Gujarati,
    Bengali,
    Odia,
}

impl LanguageId {
    pub const ALL: [LanguageId; 5] = [
        LanguageId::Hindi,
        LanguageId::Marathi,
        LanguageId::Gujarati,
        LanguageId::Bengali,
        LanguageId::Odia,
    ];

    pub const fn script(self) -> ScriptId {
        match self {
            LanguageId::Hindi | LanguageId::Marathi => ScriptId::Devanagari,
            LanguageId::Gujarati => ScriptId::Gujarati,
            LanguageId::Bengali => ScriptId::Bengali,
            LanguageId::Odia => ScriptId::Odia,
        }
    }

    /// Lowercase English name, also used to build LID tokens.
    pub const fn name(self) -> &'static str {
        match self {
            LanguageId::Hindi => "hindi",
            LanguageId::Marathi => "marathi",
            LanguageId::Gujarati => "gujarati",
            LanguageId::Bengali => "bengali",
            LanguageId::Odia => "odia",
        }
    }

    /// Capitalized name for report headers.
    pub const fn display_name(self) -> &'static str {
        match self {
            LanguageId::Hindi => "Hindi",
            LanguageId::Marathi => "Marathi",
            LanguageId::Gujarati => "Gujarati",
            LanguageId::Bengali => "Bengali",
            LanguageId::Odia => "Odia",
        }
    }
}

impl fmt::Display for LanguageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LanguageId {
    type Err = ScriptError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hindi" | "hi" => Ok(LanguageId::Hindi),
            "marathi" | "mr" => Ok(LanguageId::Marathi),
            "gujarati" | "gu" => Ok(LanguageId::Gujarati),
            "bengali" | "bn" | "bangla" => Ok(LanguageId::Bengali),
            "odia" | "oriya" | "or" => Ok(LanguageId::Odia),
            _ => Err(ScriptError::UnknownLanguage(s.to_string())),
        }
    }
}

/// Offset of a code point from its block base, in `0x00..=0x7F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommonIndex(u8);

impl CommonIndex {
    pub fn new(value: u16) -> Result<Self, ScriptError> {
        if value < ScriptId::BLOCK_SIZE as u16 {
            Ok(CommonIndex(value as u8))
        } else {
            Err(ScriptError::IndexOutOfRange(value))
        }
    }

    /// For use with literal slot numbers known to be in range.
    pub(crate) const fn from_u8(value: u8) -> Self {
        assert!(value < 0x80);
        CommonIndex(value)
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    /// True if at least one of the four blocks assigns this slot.
    pub fn is_assigned_anywhere(self) -> bool {
        ScriptId::ALL
            .into_iter()
            .any(|s| CategoryTable::bundled().is_assigned(s, self))
    }
}

impl fmt::Display for CommonIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#04x}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharCategory {
    IndependentVowel,
    Consonant,
    VowelSign,
    Virama,
    Nukta,
    Anusvara,
    Visarga,
    Candrabindu,
    Digit,
    Punctuation,
    ZeroWidth,
    Other,
}

impl CharCategory {
    /// Anusvara, visarga and candrabindu: the signs that trail an akshara.
    pub fn is_sign(self) -> bool {
        matches!(
            self,
            CharCategory::Anusvara | CharCategory::Visarga | CharCategory::Candrabindu
        )
    }
}

/// Category of an arbitrary character, Indic or not.
///
/// Non-Indic characters get `Digit` (ASCII digits), `Punctuation` (any
/// Unicode punctuation), `ZeroWidth` (ZWJ/ZWNJ) or `Other`.
pub fn category_of(c: char) -> CharCategory {
    match to_common_index(c) {
        Some((script, idx)) => CategoryTable::bundled()
            .category(script, idx)
            .unwrap_or(CharCategory::Other),
        None if c == ZWJ || c == ZWNJ => CharCategory::ZeroWidth,
        None if c.is_ascii_digit() => CharCategory::Digit,
        None if c.is_ascii_punctuation() || is_general_punctuation(c) => CharCategory::Punctuation,
        None => CharCategory::Other,
    }
}

fn is_general_punctuation(c: char) -> bool {
    // General Punctuation block minus the format controls at 200B..200F.
    matches!(c, '\u{2010}'..='\u{2027}' | '\u{2030}'..='\u{205E}')
        || matches!(c, '\u{00A1}' | '\u{00A7}' | '\u{00AB}' | '\u{00B6}' | '\u{00B7}' | '\u{00BB}' | '\u{00BF}')
}

/// NFC-normalize `text` and drop ZWJ/ZWNJ.
///
/// Consonant + nukta pairs compose where Unicode allows it (for example
/// U+0928 U+093C becomes U+0929). Letters that are composition exclusions,
/// such as U+0958, stay decomposed because NFC requires it.
pub fn normalize(text: &str) -> String {
    text.chars()
        .filter(|&c| c != ZWJ && c != ZWNJ)
        .nfc()
        .collect()
}

/// [`normalize`] over raw bytes, rejecting invalid UTF-8.
pub fn normalize_bytes(bytes: &[u8]) -> Result<String, ScriptError> {
    let text = std::str::from_utf8(bytes).map_err(|e| ScriptError::InvalidUtf8 {
        valid_up_to: e.valid_up_to(),
    })?;
    Ok(normalize(text))
}

/// Outcome of script detection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Detected {
    Script(ScriptId),
    Mixed,
    None,
}

impl fmt::Display for Detected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Detected::Script(s) => write!(f, "{s}"),
            Detected::Mixed => f.write_str("mixed"),
            Detected::None => f.write_str("none"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectionResult {
    pub script: Detected,
    /// Number of counted code points per block; blocks with zero are absent.
    pub per_script_counts: BTreeMap<ScriptId, usize>,
}

/// Determine the script of normalized text from the Unicode ranges it uses.
///
/// Dandas are shared punctuation and do not count toward Devanagari.
pub fn detect_script(text: &str) -> DetectionResult {
    let mut counts = BTreeMap::new();
    for c in text.chars() {
        if let Some((script, idx)) = to_common_index(c) {
            if is_shared_punctuation(script, idx) {
                continue;
            }
            *counts.entry(script).or_insert(0usize) += 1;
        }
    }
    let script = match counts.len() {
        0 => Detected::None,
        1 => Detected::Script(*counts.keys().next().unwrap()),
        _ => Detected::Mixed,
    };
    DetectionResult {
        script,
        per_script_counts: counts,
    }
}

fn is_shared_punctuation(script: ScriptId, idx: CommonIndex) -> bool {
    script == ScriptId::Devanagari && matches!(idx.value(), 0x64 | 0x65)
}

/// Map a character to its block and common index, or `None` if it lies
/// outside the four blocks.
pub fn to_common_index(c: char) -> Option<(ScriptId, CommonIndex)> {
    let cp = c as u32;
    ScriptId::of_code_point(cp).map(|s| (s, CommonIndex((cp - s.block_base()) as u8)))
}

/// The character at `idx` in `script`'s block, if that slot is assigned.
pub fn from_common_index(script: ScriptId, idx: CommonIndex) -> Result<char, ScriptError> {
    if !CategoryTable::bundled().is_assigned(script, idx) {
        return Err(ScriptError::Unassigned { script, index: idx });
    }
    Ok(char::from_u32(script.block_base() + idx.value() as u32).expect("block code points are scalar values"))
}

/// Move every code point of `from`'s block to the same slot of `to`'s block.
///
/// Characters outside the four blocks and the shared dandas pass through.
/// Fails at the first character whose slot is unassigned in `to`.
pub fn transliterate_offset(text: &str, from: ScriptId, to: ScriptId) -> Result<String, ScriptError> {
    match detect_script(text).script {
        Detected::Script(s) if s != from => {
            return Err(ScriptError::ScriptMismatch {
                expected: from,
                found: Detected::Script(s),
            })
        }
        Detected::Mixed => {
            return Err(ScriptError::ScriptMismatch {
                expected: from,
                found: Detected::Mixed,
            })
        }
        _ => {}
    }
    let mut out = String::with_capacity(text.len());
    for (position, c) in text.chars().enumerate() {
        match to_common_index(c) {
            Some((script, idx)) if !is_shared_punctuation(script, idx) => {
                let mapped = from_common_index(to, idx).map_err(|_| ScriptError::UnmappableChar {
                    position,
                    code_point: c as u32,
                })?;
                out.push(mapped);
            }
            _ => out.push(c),
        }
    }
    Ok(out)
}
