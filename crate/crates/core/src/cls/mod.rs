//! Native script → common label set conversion.
//!
//! A word is segmented into aksharas, each akshara emits its onset consonant
//! labels, its vowel label and its trailing sign labels, and then the
//! language's schwa deletion and geminate correction run over the result.

mod inventory;
mod rules;

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

pub use inventory::{ClsInventory, ClsLabel, InventoryError, LabelKind, LabelReading, MATRA_PAIRS};
pub use rules::{RuleError, RuleTable, SchwaRuleSet};

use crate::akshara::{self, AksharaError, ParsedWord, VowelSpec};
use crate::script::{self, CharCategory, CommonIndex, LanguageId, ScriptId};

/// Token placed between CLS words in running text.
pub const WORD_BOUNDARY: &str = "|";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConvertError {
    #[error(transparent)]
    Akshara(#[from] AksharaError),
    #[error("no CLS label for slot {index} of the {script} block")]
    InventoryGap { script: ScriptId, index: CommonIndex },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConvertOptions {
    pub schwa: bool,
    pub geminate: bool,
}

impl Default for ConvertOptions {
    fn default() -> Self {
        ConvertOptions {
            schwa: true,
            geminate: true,
        }
    }
}

impl ConvertOptions {
    pub const RAW: ConvertOptions = ConvertOptions {
        schwa: false,
        geminate: false,
    };
}

/// A word as a sequence of CLS labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClsWord {
    pub labels: Vec<ClsLabel>,
    pub source_lang: Option<LanguageId>,
}

impl ClsWord {
    pub fn new(labels: Vec<ClsLabel>) -> Self {
        ClsWord {
            labels,
            source_lang: None,
        }
    }

    /// Parse a space-separated label sequence.
    pub fn parse(text: &str) -> Result<Self, InventoryError> {
        let labels = text.split_whitespace().map(ClsLabel::new).collect::<Result<_, _>>()?;
        Ok(ClsWord::new(labels))
    }

    /// Labels joined by single spaces; the lexicon key.
    pub fn key(&self) -> String {
        let mut out = String::new();
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(l.as_str());
        }
        out
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

impl fmt::Display for ClsWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// Labels of one akshara, kept apart so the schwa rules can see syllable
/// boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyllableLabels {
    pub onset: Vec<ClsLabel>,
    pub vowel: Option<ClsLabel>,
    /// The vowel (present or deleted) is the inherent schwa.
    pub inherent: bool,
    pub trailing: Vec<ClsLabel>,
}

impl SyllableLabels {
    fn has_vowel(&self) -> bool {
        self.vowel.is_some()
    }
}

pub fn flatten(syllables: &[SyllableLabels]) -> Vec<ClsLabel> {
    let mut out = Vec::new();
    for s in syllables {
        out.extend(s.onset.iter().cloned());
        out.extend(s.vowel.iter().cloned());
        out.extend(s.trailing.iter().cloned());
    }
    out
}

/// Apply schwa deletion to an akshara-segmented label sequence.
///
/// Word-final: drop the last akshara's inherent vowel when the word has at
/// least two aksharas and the last one is a single consonant with no trailing
/// sign. Medial (right to left, after the final rule): in V C ə C V, drop the
/// schwa when both flanking aksharas keep a vowel, every onset involved is a
/// single consonant and no trailing sign intervenes. Only inherent vowels are
/// ever removed.
pub fn schwa_delete(syllables: &[SyllableLabels], rules: &SchwaRuleSet) -> Vec<SyllableLabels> {
    let mut out = syllables.to_vec();
    let n = out.len();
    if rules.delete_word_final && n >= 2 {
        let last = &mut out[n - 1];
        if last.inherent && last.has_vowel() && last.onset.len() == 1 && last.trailing.is_empty() {
            last.vowel = None;
        }
    }
    if rules.delete_medial && n >= 3 {
        for i in (1..n - 1).rev() {
            let (prev, cur, next) = (&out[i - 1], &out[i], &out[i + 1]);
            let deletable = cur.inherent
                && cur.has_vowel()
                && cur.onset.len() == 1
                && cur.trailing.is_empty()
                && prev.has_vowel()
                && prev.trailing.is_empty()
                && next.onset.len() == 1
                && next.has_vowel()
                && cur.onset.len() + next.onset.len() < 3;
            if deletable {
                out[i].vowel = None;
            }
        }
    }
    out
}

/// Inventory plus per-language rules: everything needed to convert words.
#[derive(Debug, Clone)]
pub struct ClsConverter {
    inventory: ClsInventory,
    rules: RuleTable,
}

impl ClsConverter {
    pub fn new(inventory: ClsInventory, rules: RuleTable) -> Self {
        ClsConverter { inventory, rules }
    }

    /// Converter over the bundled inventory and rule table.
    pub fn bundled() -> &'static ClsConverter {
        static CONV: OnceLock<ClsConverter> = OnceLock::new();
        CONV.get_or_init(|| ClsConverter::new(ClsInventory::bundled().clone(), RuleTable::bundled().clone()))
    }

    pub fn inventory(&self) -> &ClsInventory {
        &self.inventory
    }

    pub fn rules(&self, lang: LanguageId) -> &SchwaRuleSet {
        self.rules.get(lang)
    }

    /// Per-akshara labels before any rule runs.
    pub fn syllabify(&self, parsed: &ParsedWord) -> Result<Vec<SyllableLabels>, ConvertError> {
        let script = parsed.script;
        let inv = &self.inventory;
        let gap = |index: CommonIndex| ConvertError::InventoryGap { script, index };
        let mut out = Vec::with_capacity(parsed.aksharas.len());
        for a in &parsed.aksharas {
            let onset = a
                .onset
                .iter()
                .map(|&c| inv.consonant_label(script, c).cloned().ok_or_else(|| gap(c.index)))
                .collect::<Result<Vec<_>, _>>()?;
            let (vowel, inherent) = match a.nucleus {
                VowelSpec::Inherent => (Some(inv.schwa().clone()), true),
                VowelSpec::Matra(m) => (Some(inv.label(script, LabelKind::Matra, m).cloned().ok_or_else(|| gap(m))?), false),
                VowelSpec::Independent(v) => {
                    (Some(inv.label(script, LabelKind::Vowel, v).cloned().ok_or_else(|| gap(v))?), false)
                }
                VowelSpec::NoVowel => (None, false),
            };
            let trailing = a
                .trailing
                .iter()
                .map(|&s| inv.label(script, LabelKind::Sign, s).cloned().ok_or_else(|| gap(s)))
                .collect::<Result<Vec<_>, _>>()?;
            out.push(SyllableLabels {
                onset,
                vowel,
                inherent,
                trailing,
            });
        }
        Ok(out)
    }

    /// Convert one normalized word in `lang`'s script.
    pub fn word_to_cls(&self, word: &str, lang: LanguageId, opts: ConvertOptions) -> Result<ClsWord, ConvertError> {
        let labels = self.word_to_cls_with_rules(word, lang.script(), self.rules.get(lang), opts)?;
        Ok(ClsWord {
            labels,
            source_lang: Some(lang),
        })
    }

    /// [`word_to_cls`](Self::word_to_cls) with an explicit script and rule set.
    pub fn word_to_cls_with_rules(
        &self,
        word: &str,
        script: ScriptId,
        rules: &SchwaRuleSet,
        opts: ConvertOptions,
    ) -> Result<Vec<ClsLabel>, ConvertError> {
        let parsed = akshara::segment_aksharas(word, script)?;
        let mut syllables = self.syllabify(&parsed)?;
        if opts.schwa {
            syllables = schwa_delete(&syllables, rules);
        }
        if opts.geminate {
            // C-virama-C only arises inside an onset cluster.
            for s in &mut syllables {
                if s.onset.len() > 1 {
                    s.onset = self.inventory.geminate_correct(&s.onset);
                }
            }
        }
        Ok(flatten(&syllables))
    }

    /// Convert whitespace-tokenized running text.
    ///
    /// Words are joined by ` | `, labels within a word by a single space.
    /// Punctuation is dropped; all-digit tokens pass through unchanged.
    /// In strict mode the first failing word aborts the conversion.
    pub fn text_to_cls(
        &self,
        text: &str,
        lang: LanguageId,
        opts: &TextOptions,
    ) -> Result<TextConversion, WordError> {
        let mut words: Vec<String> = Vec::new();
        let mut errors = Vec::new();
        for (position, raw) in text.split_whitespace().enumerate() {
            let token: String = script::normalize(raw)
                .chars()
                .filter(|&c| script::category_of(c) != CharCategory::Punctuation)
                .collect();
            if token.is_empty() {
                continue;
            }
            if token.chars().all(|c| script::category_of(c) == CharCategory::Digit) {
                words.push(token);
                continue;
            }
            match self.word_to_cls(&token, lang, opts.convert) {
                Ok(w) => words.push(w.key()),
                Err(error) => {
                    let e = WordError {
                        position,
                        word: raw.to_string(),
                        error,
                    };
                    if opts.strict {
                        return Err(e);
                    }
                    errors.push(e);
                }
            }
        }
        let sep = format!(" {} ", opts.boundary);
        Ok(TextConversion {
            text: words.join(&sep),
            errors,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextOptions {
    pub convert: ConvertOptions,
    pub boundary: String,
    pub strict: bool,
}

impl Default for TextOptions {
    fn default() -> Self {
        TextOptions {
            convert: ConvertOptions::default(),
            boundary: WORD_BOUNDARY.to_string(),
            strict: false,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("word {position} (`{word}`): {error}")]
pub struct WordError {
    pub position: usize,
    pub word: String,
    pub error: ConvertError,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextConversion {
    pub text: String,
    /// Words skipped in lenient mode.
    pub errors: Vec<WordError>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conv() -> &'static ClsConverter {
        ClsConverter::bundled()
    }

    fn keys(w: &ClsWord) -> Vec<&str> {
        w.labels.iter().map(|l| l.as_str()).collect()
    }

    fn syl(onset: &[&str], vowel: Option<&str>, inherent: bool) -> SyllableLabels {
        SyllableLabels {
            onset: onset.iter().map(|s| ClsLabel::new(s).unwrap()).collect(),
            vowel: vowel.map(|v| ClsLabel::new(v).unwrap()),
            inherent,
            trailing: vec![],
        }
    }

    #[test]
    fn aa_anchor() {
        let w = conv().word_to_cls("\u{0906}", LanguageId::Hindi, ConvertOptions::default()).unwrap();
        assert_eq!(keys(&w), ["aa"]);
        assert_eq!(w.source_lang, Some(LanguageId::Hindi));
    }

    #[test]
    fn kamal_hindi_and_odia_rules() {
        let kamal = "\u{0915}\u{092E}\u{0932}";
        let w = conv().word_to_cls(kamal, LanguageId::Hindi, ConvertOptions::default()).unwrap();
        assert_eq!(keys(&w), ["k", "a", "m", "a", "l"]);
        let odia_rules = *conv().rules(LanguageId::Odia);
        let l = conv()
            .word_to_cls_with_rules(kamal, ScriptId::Devanagari, &odia_rules, ConvertOptions::default())
            .unwrap();
        assert_eq!(l.iter().map(|l| l.as_str()).collect::<Vec<_>>(), ["k", "a", "m", "a", "l", "a"]);
    }

    #[test]
    fn schwa_delete_examples() {
        let hindi = *conv().rules(LanguageId::Hindi);
        let one = vec![syl(&["k"], Some("a"), true)];
        assert_eq!(schwa_delete(&one, &hindi), one);

        let kamala = vec![
            syl(&["k"], Some("a"), true),
            syl(&["m"], Some("a"), true),
            syl(&["l"], Some("a"), true),
        ];
        let out = flatten(&schwa_delete(&kamala, &hindi));
        assert_eq!(out.iter().map(|l| l.as_str()).collect::<Vec<_>>(), ["k", "a", "m", "a", "l"]);

        let off = SchwaRuleSet::disabled(LanguageId::Hindi);
        assert_eq!(schwa_delete(&kamala, &off), kamala);
    }

    #[test]
    fn medial_deletion() {
        // समझना → s a m a jh n aa
        let w = conv()
            .word_to_cls("\u{0938}\u{092E}\u{091D}\u{0928}\u{093E}", LanguageId::Hindi, ConvertOptions::default())
            .unwrap();
        assert_eq!(keys(&w), ["s", "a", "m", "a", "jh", "n", "aa"]);
        // Marathi has no medial rule
        let w = conv()
            .word_to_cls("\u{0938}\u{092E}\u{091D}\u{0928}\u{093E}", LanguageId::Marathi, ConvertOptions::default())
            .unwrap();
        assert_eq!(keys(&w), ["s", "a", "m", "a", "jh", "a", "n", "aa"]);
    }

    #[test]
    fn matra_schwa_is_never_deleted() {
        let hindi = *conv().rules(LanguageId::Hindi);
        let s = vec![syl(&["k"], Some("a"), true), syl(&["m"], Some("aa"), false)];
        assert_eq!(schwa_delete(&s, &hindi), s);
    }

    #[test]
    fn final_cluster_keeps_schwa() {
        // कक्ष : final onset has two consonants
        let w = conv()
            .word_to_cls("\u{0915}\u{0915}\u{094D}\u{0937}", LanguageId::Hindi, ConvertOptions::default())
            .unwrap();
        assert_eq!(keys(&w), ["k", "a", "k", "sx", "a"]);
    }

    #[test]
    fn geminate_inside_cluster() {
        // पक्का
        let word = "\u{092A}\u{0915}\u{094D}\u{0915}\u{093E}";
        let w = conv().word_to_cls(word, LanguageId::Hindi, ConvertOptions::default()).unwrap();
        assert_eq!(keys(&w), ["p", "a", "kk", "aa"]);
        let opts = ConvertOptions {
            schwa: true,
            geminate: false,
        };
        let w = conv().word_to_cls(word, LanguageId::Hindi, opts).unwrap();
        assert_eq!(keys(&w), ["p", "a", "k", "k", "aa"]);
    }

    #[test]
    fn signs_and_nukta() {
        // कं : inherent vowel kept before anusvara
        let w = conv().word_to_cls("\u{0915}\u{0902}", LanguageId::Hindi, ConvertOptions::default()).unwrap();
        assert_eq!(keys(&w), ["k", "a", "nb"]);
        // ज़रा with decomposed za
        let w = conv()
            .word_to_cls("\u{091C}\u{093C}\u{0930}\u{093E}", LanguageId::Hindi, ConvertOptions::default())
            .unwrap();
        assert_eq!(keys(&w), ["z", "a", "r", "aa"]);
    }

    #[test]
    fn errors_propagate() {
        assert_eq!(
            conv().word_to_cls("\u{094D}", LanguageId::Hindi, ConvertOptions::default()),
            Err(ConvertError::Akshara(AksharaError::MalformedWord { position: 0 }))
        );
        // NNNA + NUKTA has no label
        assert_eq!(
            conv().word_to_cls("\u{0929}\u{093C}", LanguageId::Hindi, ConvertOptions::default()),
            Err(ConvertError::InventoryGap {
                script: ScriptId::Devanagari,
                index: CommonIndex::new(0x29).unwrap()
            })
        );
    }

    #[test]
    fn text_examples() {
        let o = TextOptions::default();
        assert_eq!(conv().text_to_cls("", LanguageId::Hindi, &o).unwrap().text, "");
        assert_eq!(conv().text_to_cls("आ", LanguageId::Hindi, &o).unwrap().text, "aa");
        assert_eq!(conv().text_to_cls("आ आ", LanguageId::Hindi, &o).unwrap().text, "aa | aa");
        assert_eq!(conv().text_to_cls("आ, १२ आ।", LanguageId::Hindi, &o).unwrap().text, "aa | १२ | aa");
    }

    #[test]
    fn text_lenient_and_strict() {
        let mut o = TextOptions::default();
        let r = conv().text_to_cls("आ ्क आ", LanguageId::Hindi, &o).unwrap();
        assert_eq!(r.text, "aa | aa");
        assert_eq!(r.errors.len(), 1);
        assert_eq!(r.errors[0].position, 1);
        o.strict = true;
        let e = conv().text_to_cls("आ ्क आ", LanguageId::Hindi, &o).unwrap_err();
        assert_eq!(e.position, 1);
    }

    #[test]
    fn label_count_without_rules() {
        let w = "\u{0915}\u{094D}\u{0937}\u{093E}\u{0902}\u{0915}\u{094D}";
        let parsed = akshara::segment_aksharas(w, ScriptId::Devanagari).unwrap();
        let expected: usize = parsed
            .aksharas
            .iter()
            .map(|a| a.onset.len() + (a.nucleus != VowelSpec::NoVowel) as usize + a.trailing.len())
            .sum();
        let l = conv().word_to_cls(w, LanguageId::Hindi, ConvertOptions::RAW).unwrap();
        assert_eq!(l.len(), expected);
    }
}
