//! Akshara (orthographic syllable) segmentation.
//!
//! Grammar, applied greedily left to right:
//!
//! ```text
//! akshara   := consonant (virama consonant)* (virama | matra | ε) sign*
//!            | independent-vowel sign*
//! consonant := consonant-letter nukta?
//! ```
//!
//! A consonant cluster with neither virama nor matra carries the inherent
//! vowel. A trailing virama closes the akshara with no vowel.

use thiserror::Error;

use crate::script::{self, CategoryTable, CharCategory, CommonIndex, ScriptId};

const VIRAMA: CommonIndex = CommonIndex::from_u8(0x4D);
const NUKTA: CommonIndex = CommonIndex::from_u8(0x3C);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AksharaError {
    #[error("slot {index} is unassigned in the {script} block")]
    UnassignedSlot { script: ScriptId, index: CommonIndex },
    #[error("malformed word at character {position}")]
    MalformedWord { position: usize },
    #[error("character {position} belongs to the {found} block, not the word's script")]
    MixedScript { position: usize, found: ScriptId },
}

/// A consonant letter, optionally modified by a following nukta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Consonant {
    pub index: CommonIndex,
    pub nukta: bool,
}

impl Consonant {
    pub fn plain(index: CommonIndex) -> Self {
        Consonant { index, nukta: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VowelSpec {
    Inherent,
    Matra(CommonIndex),
    Independent(CommonIndex),
    /// Explicit virama after the last consonant.
    NoVowel,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Akshara {
    pub onset: Vec<Consonant>,
    pub nucleus: VowelSpec,
    /// Anusvara, visarga and candrabindu signs, in surface order.
    pub trailing: Vec<CommonIndex>,
}

impl Akshara {
    /// Number of code points this akshara occupies in the surface form.
    pub fn char_len(&self) -> usize {
        let consonants: usize = self.onset.iter().map(|c| 1 + c.nukta as usize).sum();
        let joins = self.onset.len().saturating_sub(1);
        let nucleus = match self.nucleus {
            VowelSpec::Inherent => 0,
            _ => 1,
        };
        consonants + joins + nucleus + self.trailing.len()
    }

    fn render_into(&self, script: ScriptId, out: &mut String) {
        let ch = |idx: CommonIndex| char::from_u32(script.block_base() + idx.value() as u32).unwrap();
        for (i, c) in self.onset.iter().enumerate() {
            if i > 0 {
                out.push(ch(VIRAMA));
            }
            out.push(ch(c.index));
            if c.nukta {
                out.push(ch(NUKTA));
            }
        }
        match self.nucleus {
            VowelSpec::Inherent => {}
            VowelSpec::Matra(m) => out.push(ch(m)),
            VowelSpec::Independent(v) => out.push(ch(v)),
            VowelSpec::NoVowel => out.push(ch(VIRAMA)),
        }
        for &s in &self.trailing {
            out.push(ch(s));
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedWord {
    pub aksharas: Vec<Akshara>,
    pub script: ScriptId,
    pub surface: String,
}

impl ParsedWord {
    /// Rebuild the surface string from the aksharas.
    pub fn render(&self) -> String {
        render(&self.aksharas, self.script)
    }
}

pub fn render(aksharas: &[Akshara], script: ScriptId) -> String {
    let mut out = String::new();
    for a in aksharas {
        a.render_into(script, &mut out);
    }
    out
}

pub fn classify_char(script: ScriptId, idx: CommonIndex) -> Result<CharCategory, AksharaError> {
    CategoryTable::bundled()
        .category(script, idx)
        .ok_or(AksharaError::UnassignedSlot { script, index: idx })
}

/// Split a normalized single word into aksharas.
pub fn segment_aksharas(word: &str, script: ScriptId) -> Result<ParsedWord, AksharaError> {
    let table = CategoryTable::bundled();
    let mut units = Vec::with_capacity(word.len() / 3);
    for (position, c) in word.chars().enumerate() {
        match script::to_common_index(c) {
            Some((s, _)) if s != script => return Err(AksharaError::MixedScript { position, found: s }),
            Some((_, idx)) => match table.category(script, idx) {
                Some(cat) => units.push((idx, cat)),
                None => return Err(AksharaError::MalformedWord { position }),
            },
            None => return Err(AksharaError::MalformedWord { position }),
        }
    }

    let mut parser = Parser { units: &units, pos: 0 };
    let mut aksharas = Vec::new();
    while parser.pos < units.len() {
        aksharas.push(parser.akshara()?);
    }
    Ok(ParsedWord {
        aksharas,
        script,
        surface: word.to_string(),
    })
}

struct Parser<'a> {
    units: &'a [(CommonIndex, CharCategory)],
    pos: usize,
}

impl Parser<'_> {
    fn peek_at(&self, offset: usize) -> Option<CharCategory> {
        self.units.get(self.pos + offset).map(|u| u.1)
    }

    fn malformed(&self) -> AksharaError {
        AksharaError::MalformedWord { position: self.pos }
    }

    fn consonant(&mut self) -> Consonant {
        let index = self.units[self.pos].0;
        self.pos += 1;
        let nukta = self.peek_at(0) == Some(CharCategory::Nukta);
        if nukta {
            self.pos += 1;
        }
        Consonant { index, nukta }
    }

    fn akshara(&mut self) -> Result<Akshara, AksharaError> {
        let (onset, nucleus) = match self.peek_at(0) {
            Some(CharCategory::Consonant) => {
                let mut onset = vec![self.consonant()];
                let nucleus = loop {
                    match self.peek_at(0) {
                        Some(CharCategory::Virama) if self.peek_at(1) == Some(CharCategory::Consonant) => {
                            self.pos += 1;
                            onset.push(self.consonant());
                        }
                        Some(CharCategory::Virama) => {
                            self.pos += 1;
                            break VowelSpec::NoVowel;
                        }
                        Some(CharCategory::VowelSign) => {
                            let m = self.units[self.pos].0;
                            self.pos += 1;
                            break VowelSpec::Matra(m);
                        }
                        _ => break VowelSpec::Inherent,
                    }
                };
                (onset, nucleus)
            }
            Some(CharCategory::IndependentVowel) => {
                let v = self.units[self.pos].0;
                self.pos += 1;
                (Vec::new(), VowelSpec::Independent(v))
            }
            _ => return Err(self.malformed()),
        };
        let mut trailing = Vec::new();
        while let Some(cat) = self.peek_at(0) {
            if !cat.is_sign() {
                break;
            }
            trailing.push(self.units[self.pos].0);
            self.pos += 1;
        }
        Ok(Akshara { onset, nucleus, trailing })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ci(v: u8) -> CommonIndex {
        CommonIndex::from_u8(v)
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_char(ScriptId::Devanagari, ci(0x4D)), Ok(CharCategory::Virama));
        assert_eq!(classify_char(ScriptId::Devanagari, ci(0x06)), Ok(CharCategory::IndependentVowel));
        assert_eq!(classify_char(ScriptId::Bengali, ci(0x15)), Ok(CharCategory::Consonant));
        assert_eq!(
            classify_char(ScriptId::Odia, ci(0x29)),
            Err(AksharaError::UnassignedSlot {
                script: ScriptId::Odia,
                index: ci(0x29)
            })
        );
    }

    #[test]
    fn single_independent_vowel() {
        let p = segment_aksharas("\u{0906}", ScriptId::Devanagari).unwrap();
        assert_eq!(
            p.aksharas,
            vec![Akshara {
                onset: vec![],
                nucleus: VowelSpec::Independent(ci(0x06)),
                trailing: vec![]
            }]
        );
    }

    #[test]
    fn three_inherent_aksharas() {
        let p = segment_aksharas("\u{0915}\u{092E}\u{0932}", ScriptId::Devanagari).unwrap();
        assert_eq!(p.aksharas.len(), 3);
        for (a, idx) in p.aksharas.iter().zip([0x15, 0x2E, 0x32]) {
            assert_eq!(a.onset, vec![Consonant::plain(ci(idx))]);
            assert_eq!(a.nucleus, VowelSpec::Inherent);
            assert!(a.trailing.is_empty());
        }
    }

    #[test]
    fn leading_virama_is_malformed() {
        assert_eq!(
            segment_aksharas("\u{094D}\u{0915}", ScriptId::Devanagari),
            Err(AksharaError::MalformedWord { position: 0 })
        );
    }

    #[test]
    fn leading_matra_and_sign_are_malformed() {
        assert_eq!(
            segment_aksharas("\u{093E}", ScriptId::Devanagari),
            Err(AksharaError::MalformedWord { position: 0 })
        );
        assert_eq!(
            segment_aksharas("\u{0902}", ScriptId::Devanagari),
            Err(AksharaError::MalformedWord { position: 0 })
        );
        // double matra
        assert_eq!(
            segment_aksharas("\u{0915}\u{093E}\u{093F}", ScriptId::Devanagari),
            Err(AksharaError::MalformedWord { position: 2 })
        );
    }

    #[test]
    fn stray_nukta_is_malformed() {
        assert_eq!(
            segment_aksharas("\u{0906}\u{093C}", ScriptId::Devanagari),
            Err(AksharaError::MalformedWord { position: 1 })
        );
    }

    #[test]
    fn mixed_script_rejected() {
        assert_eq!(
            segment_aksharas("\u{0915}\u{0A95}", ScriptId::Devanagari),
            Err(AksharaError::MixedScript {
                position: 1,
                found: ScriptId::Gujarati
            })
        );
        assert_eq!(
            segment_aksharas("\u{0915}a", ScriptId::Devanagari),
            Err(AksharaError::MalformedWord { position: 1 })
        );
    }

    #[test]
    fn conjunct_matra_and_sign() {
        // क्षां : ksha + aa + anusvara
        let w = "\u{0915}\u{094D}\u{0937}\u{093E}\u{0902}";
        let p = segment_aksharas(w, ScriptId::Devanagari).unwrap();
        assert_eq!(
            p.aksharas,
            vec![Akshara {
                onset: vec![Consonant::plain(ci(0x15)), Consonant::plain(ci(0x37))],
                nucleus: VowelSpec::Matra(ci(0x3E)),
                trailing: vec![ci(0x02)]
            }]
        );
        assert_eq!(p.render(), w);
        assert_eq!(p.aksharas[0].char_len(), 5);
    }

    #[test]
    fn final_virama_is_dead_consonant() {
        let p = segment_aksharas("\u{0915}\u{0932}\u{094D}", ScriptId::Devanagari).unwrap();
        assert_eq!(p.aksharas.len(), 2);
        assert_eq!(p.aksharas[1].nucleus, VowelSpec::NoVowel);
    }

    #[test]
    fn nukta_consonant() {
        // decomposed qa, as NFC leaves it
        let p = segment_aksharas("\u{0915}\u{093C}\u{093E}", ScriptId::Devanagari).unwrap();
        assert_eq!(p.aksharas[0].onset, vec![Consonant { index: ci(0x15), nukta: true }]);
        assert_eq!(p.aksharas[0].nucleus, VowelSpec::Matra(ci(0x3E)));
    }

    #[test]
    fn empty_word_has_no_aksharas() {
        let p = segment_aksharas("", ScriptId::Odia).unwrap();
        assert!(p.aksharas.is_empty());
    }
}
