//! CLS → native script reconstruction.
//!
//! Each CLS word is looked up in the language's frequency lexicon first and
//! otherwise spelled by inverting the forward conversion rules. Running text
//! is converted per language (`Mono`) or dispatched on a leading language-ID
//! token (`Unified`).

mod lexicon;

use std::collections::BTreeMap;

use thiserror::Error;

pub use lexicon::{BuildStats, Lexicon, LexiconError};

use crate::akshara::Consonant;
use crate::cls::{ClsConverter, ClsLabel, ConvertOptions, LabelReading, SchwaRuleSet, WORD_BOUNDARY};
use crate::corpus::lid::{LidError, LidFormat};
use crate::script::{self, CharCategory, CommonIndex, LanguageId, ScriptId};

const VIRAMA: CommonIndex = CommonIndex::from_u8(0x4D);
const NUKTA: CommonIndex = CommonIndex::from_u8(0x3C);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NsError {
    #[error("unknown CLS label `{token}`")]
    UnknownLabel { token: String },
    #[error("CLS label `{token}` has no spelling in the {script} script")]
    UnmappableLabel { token: String, script: ScriptId },
    #[error("malformed CLS sequence at label {position}")]
    MalformedCls { position: usize },
    #[error("text does not start with a known LID token")]
    MissingLid,
    #[error("word {word}: {source}")]
    InWord {
        word: usize,
        #[source]
        source: Box<NsError>,
    },
}

impl From<LidError> for NsError {
    fn from(_: LidError) -> Self {
        NsError::MissingLid
    }
}

/// How a word was reconstructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NsFlag {
    /// Rule inverse with a unique spelling.
    Exact,
    LexiconHit,
    /// Rule inverse where schwa deletion makes more than one spelling
    /// possible; the one returned is a guess.
    RuleFallbackAmbiguous,
}

impl NsFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            NsFlag::Exact => "exact",
            NsFlag::LexiconHit => "lexicon",
            NsFlag::RuleFallbackAmbiguous => "ambiguous",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsResult {
    pub text: String,
    /// One flag per CLS word.
    pub flags: Vec<NsFlag>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NsMode {
    Mono(LanguageId),
    /// Language taken from the leading LID token.
    Unified,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsOptions {
    /// Must match the options the CLS text was produced with.
    pub convert: ConvertOptions,
    /// Correct unknown keys to the unique lexicon key one substitution away.
    pub fuzzy: bool,
    pub boundary: String,
    pub lid: LidFormat,
}

impl Default for NsOptions {
    fn default() -> Self {
        NsOptions {
            convert: ConvertOptions::default(),
            fuzzy: false,
            boundary: WORD_BOUNDARY.to_string(),
            lid: LidFormat::default(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Unit<'a> {
    Cons { c: Consonant, geminate: bool },
    Vowel { schwa: bool, reading: &'a LabelReading },
    Sign(CommonIndex),
}

impl Unit<'_> {
    fn is_cons(&self) -> bool {
        matches!(self, Unit::Cons { .. })
    }

    fn is_vowel(&self) -> bool {
        matches!(self, Unit::Vowel { .. })
    }

    fn is_single_cons(&self) -> bool {
        matches!(self, Unit::Cons { geminate: false, .. })
    }
}

fn classify<'a>(conv: &'a ClsConverter, label: &str, script: ScriptId) -> Result<Unit<'a>, NsError> {
    let inv = conv.inventory();
    let unmappable = || NsError::UnmappableLabel {
        token: label.to_string(),
        script,
    };
    let (base, geminate) = match inv.geminate_base(label) {
        Some(b) => (b, true),
        None => (label, false),
    };
    let Some(r) = inv.reading(script, base) else {
        let known = ScriptId::ALL.iter().any(|&s| inv.reading(s, base).is_some());
        return Err(if known {
            unmappable()
        } else {
            NsError::UnknownLabel {
                token: label.to_string(),
            }
        });
    };
    if let Some(c) = r.consonant {
        return Ok(Unit::Cons { c, geminate });
    }
    if geminate {
        return Err(unmappable());
    }
    if r.independent.is_some() {
        return Ok(Unit::Vowel {
            schwa: label == inv.schwa().as_str(),
            reading: r,
        });
    }
    match r.sign {
        Some(s) => Ok(Unit::Sign(s)),
        None => Err(unmappable()),
    }
}

fn push(out: &mut String, script: ScriptId, idx: CommonIndex) {
    out.push(script::from_common_index(script, idx).expect("inventory readings use assigned slots"));
}

fn push_consonant(out: &mut String, script: ScriptId, c: Consonant) {
    push(out, script, c.index);
    if c.nukta {
        push(out, script, NUKTA);
    }
}

/// The effective rule set: schwa deletion off means nothing was deleted.
fn effective_rules(conv: &ClsConverter, lang: LanguageId, opts: ConvertOptions) -> SchwaRuleSet {
    if opts.schwa {
        *conv.rules(lang)
    } else {
        SchwaRuleSet::disabled(lang)
    }
}

/// Spell a CLS word by inverting the forward rules of `lang`.
///
/// Consonants followed by a consonant, a sign or (unless the final schwa
/// rule applies) the end of the word take a virama. Where the language's
/// schwa rules could have removed an inherent vowel, the inherent-vowel
/// spelling is produced and the word is flagged ambiguous. The result is
/// converted forward again and flagged ambiguous if it does not reproduce
/// `labels`.
pub fn rule_inverse(
    conv: &ClsConverter,
    labels: &[ClsLabel],
    lang: LanguageId,
    opts: ConvertOptions,
) -> Result<(String, NsFlag), NsError> {
    let script = lang.script();
    let units = labels
        .iter()
        .map(|l| classify(conv, l.as_str(), script))
        .collect::<Result<Vec<_>, _>>()?;
    let rules = effective_rules(conv, lang, opts);
    let n = units.len();
    let mut ambiguous = false;

    // Consonants whose inherent vowel the forward rules may have deleted.
    let mut deleted = vec![false; n];
    if rules.delete_word_final && n >= 2 && units[n - 1].is_single_cons() && !units[n - 2].is_cons() {
        deleted[n - 1] = true;
    }
    if rules.delete_medial && n >= 4 {
        for i in 1..n - 2 {
            if units[i - 1].is_vowel()
                && units[i].is_single_cons()
                && units[i + 1].is_single_cons()
                && units[i + 2].is_vowel()
            {
                deleted[i] = true;
            }
        }
    }

    let mut out = String::new();
    let mut i = 0;
    while i < n {
        match units[i] {
            Unit::Cons { c, geminate } => {
                push_consonant(&mut out, script, c);
                if geminate {
                    push(&mut out, script, VIRAMA);
                    push_consonant(&mut out, script, c);
                }
                match units.get(i + 1) {
                    Some(Unit::Vowel { schwa: true, .. }) => i += 1,
                    Some(Unit::Vowel { reading, .. }) => match reading.matra {
                        Some(m) => {
                            push(&mut out, script, m);
                            i += 1;
                        }
                        // No sign form: dead consonant, then the vowel letter.
                        None => push(&mut out, script, VIRAMA),
                    },
                    _ if deleted[i] => ambiguous = true,
                    _ => push(&mut out, script, VIRAMA),
                }
            }
            Unit::Vowel { reading, .. } => {
                push(&mut out, script, reading.independent.expect("vowel units have a letter"));
            }
            Unit::Sign(s) => {
                if i == 0 {
                    return Err(NsError::MalformedCls { position: 0 });
                }
                push(&mut out, script, s);
            }
        }
        i += 1;
    }
    let out = script::normalize(&out);
    let forward = conv.word_to_cls_with_rules(&out, script, &rules, opts);
    if forward.as_deref() != Ok(labels) {
        ambiguous = true;
    }
    let flag = if ambiguous { NsFlag::RuleFallbackAmbiguous } else { NsFlag::Exact };
    Ok((out, flag))
}

/// Lexicons per language plus conversion options.
#[derive(Debug, Clone)]
pub struct Reconstructor<'a> {
    converter: &'a ClsConverter,
    lexicons: BTreeMap<LanguageId, Lexicon>,
    opts: NsOptions,
}

impl<'a> Reconstructor<'a> {
    pub fn new(converter: &'a ClsConverter, opts: NsOptions) -> Self {
        Reconstructor {
            converter,
            lexicons: BTreeMap::new(),
            opts,
        }
    }

    /// Register a lexicon, replacing any earlier one for the same language.
    pub fn with_lexicon(mut self, lexicon: Lexicon) -> Self {
        self.lexicons.insert(lexicon.lang(), lexicon);
        self
    }

    pub fn lexicon(&self, lang: LanguageId) -> Option<&Lexicon> {
        self.lexicons.get(&lang)
    }

    pub fn options(&self) -> &NsOptions {
        &self.opts
    }

    /// Reconstruct one CLS word.
    pub fn cls_word_to_ns(&self, labels: &[ClsLabel], lang: LanguageId) -> Result<(String, NsFlag), NsError> {
        if let Some(lex) = self.lexicons.get(&lang) {
            let key = labels.iter().map(ClsLabel::as_str).collect::<Vec<_>>().join(" ");
            if let Some(top) = lex.top(&key) {
                return Ok((top.to_string(), NsFlag::LexiconHit));
            }
            if self.opts.fuzzy {
                if let Some(top) = lex.fuzzy_key(labels).and_then(|k| lex.top(k)) {
                    return Ok((top.to_string(), NsFlag::LexiconHit));
                }
            }
        }
        rule_inverse(self.converter, labels, lang, self.opts.convert)
    }

    /// Reconstruct running CLS text. Words are separated by the boundary
    /// token and joined by single spaces in the output.
    pub fn cls_text_to_ns(&self, text: &str, mode: NsMode) -> Result<NsResult, NsError> {
        let (lang, body) = match mode {
            NsMode::Mono(l) => (l, text),
            NsMode::Unified => self.opts.lid.strip(text.trim_start())?,
        };
        let mut words = Vec::new();
        let mut flags = Vec::new();
        if body.trim().is_empty() {
            return Ok(NsResult {
                text: String::new(),
                flags,
            });
        }
        for (w, group) in body.split(self.opts.boundary.as_str()).enumerate() {
            let in_word = |e: NsError| NsError::InWord {
                word: w,
                source: Box::new(e),
            };
            let tokens: Vec<&str> = group.split_whitespace().collect();
            if tokens.is_empty() {
                return Err(in_word(NsError::MalformedCls { position: 0 }));
            }
            if let [t] = tokens[..] {
                if t.chars().all(|c| script::category_of(c) == CharCategory::Digit) {
                    words.push(t.to_string());
                    flags.push(NsFlag::Exact);
                    continue;
                }
            }
            let labels = tokens
                .iter()
                .map(|t| {
                    ClsLabel::new(t).map_err(|_| NsError::UnknownLabel {
                        token: t.to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(in_word)?;
            let (native, flag) = self.cls_word_to_ns(&labels, lang).map_err(in_word)?;
            words.push(native);
            flags.push(flag);
        }
        Ok(NsResult {
            text: words.join(" "),
            flags,
        })
    }
}
