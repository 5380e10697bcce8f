use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

use crate::akshara::Consonant;
use crate::script::table::parse_hex_index;
use crate::script::{CategoryTable, CharCategory, CommonIndex, ScriptId};

const BUNDLED: &str = include_str!("../../data/inventory.tsv");

/// Vowel sign slot → independent vowel slot with the same sound.
pub const MATRA_PAIRS: [(u8, u8); 17] = [
    (0x3E, 0x06),
    (0x3F, 0x07),
    (0x40, 0x08),
    (0x41, 0x09),
    (0x42, 0x0A),
    (0x43, 0x0B),
    (0x44, 0x60),
    (0x45, 0x0D),
    (0x46, 0x0E),
    (0x47, 0x0F),
    (0x48, 0x10),
    (0x49, 0x11),
    (0x4A, 0x12),
    (0x4B, 0x13),
    (0x4C, 0x14),
    (0x62, 0x0C),
    (0x63, 0x61),
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InventoryError {
    #[error("inventory line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid CLS label `{0}`")]
    BadLabel(String),
    #[error("inventory has no label for {category:?} slot {index} in {script}")]
    Gap {
        script: ScriptId,
        category: LabelKind,
        index: CommonIndex,
    },
    #[error("inconsistent inventory: {0}")]
    Inconsistent(String),
}

/// A common-label-set token such as `aa`, `k` or `kh`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClsLabel(String);

impl ClsLabel {
    pub fn new(token: &str) -> Result<Self, InventoryError> {
        if !token.is_empty() && token.bytes().all(|b| b.is_ascii_lowercase() || b.is_ascii_digit()) {
            Ok(ClsLabel(token.to_string()))
        } else {
            Err(InventoryError::BadLabel(token.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub(crate) fn doubled(&self) -> ClsLabel {
        ClsLabel(format!("{0}{0}", self.0))
    }
}

impl fmt::Display for ClsLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::borrow::Borrow<str> for ClsLabel {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for ClsLabel {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Which map of the inventory a record belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelKind {
    Vowel,
    Matra,
    Consonant,
    /// Base consonant followed by nukta.
    Nukta,
    Sign,
}

impl LabelKind {
    fn for_category(cat: CharCategory) -> Option<LabelKind> {
        match cat {
            CharCategory::IndependentVowel => Some(LabelKind::Vowel),
            CharCategory::VowelSign => Some(LabelKind::Matra),
            CharCategory::Consonant => Some(LabelKind::Consonant),
            c if c.is_sign() => Some(LabelKind::Sign),
            _ => None,
        }
    }
}

/// What a label means in one script, for the CLS → native direction.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelReading {
    pub independent: Option<CommonIndex>,
    /// `None` with `independent` set means the vowel has no sign form in the
    /// script, except for the schwa whose sign form is the inherent vowel.
    pub matra: Option<CommonIndex>,
    pub consonant: Option<Consonant>,
    pub sign: Option<CommonIndex>,
}

/// The label inventory: common records keyed by slot plus per-script
/// overrides.
#[derive(Debug, Clone)]
pub struct ClsInventory {
    schwa: ClsLabel,
    common: HashMap<(LabelKind, CommonIndex), ClsLabel>,
    overrides: HashMap<(ScriptId, LabelKind, CommonIndex), ClsLabel>,
    readings: [BTreeMap<ClsLabel, LabelReading>; 4],
}

fn script_slot(script: ScriptId) -> usize {
    ScriptId::ALL.iter().position(|&s| s == script).unwrap()
}

impl ClsInventory {
    /// The inventory shipped in `data/inventory.tsv`.
    pub fn bundled() -> &'static ClsInventory {
        static INV: OnceLock<ClsInventory> = OnceLock::new();
        INV.get_or_init(|| ClsInventory::parse(BUNDLED).expect("bundled inventory is valid"))
    }

    pub fn parse(text: &str) -> Result<Self, InventoryError> {
        let mut schwa = None;
        let mut common = HashMap::new();
        let mut overrides = HashMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let err = |message: String| InventoryError::Parse { line, message };
            let body = raw.trim_end_matches('\r');
            if body.trim().is_empty() || body.trim_start().starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = body.split('\t').collect();
            if !(3..=4).contains(&fields.len()) {
                return Err(err(format!("expected 3 or 4 tab-separated fields, got {}", fields.len())));
            }
            let label = ClsLabel::new(fields[2]).map_err(|_| err(format!("bad label `{}`", fields[2])))?;
            if fields[1] == "schwa" {
                if fields[0] != "-" || fields.len() != 3 {
                    return Err(err("schwa record must be `-<TAB>schwa<TAB>label`".into()));
                }
                if schwa.replace(label).is_some() {
                    return Err(err("duplicate schwa record".into()));
                }
                continue;
            }
            let kind = match fields[1] {
                "vowel" => LabelKind::Vowel,
                "matra" => LabelKind::Matra,
                "consonant" => LabelKind::Consonant,
                "nukta" => LabelKind::Nukta,
                "anusvara" | "visarga" | "candrabindu" => LabelKind::Sign,
                other => return Err(err(format!("bad category `{other}`"))),
            };
            let idx = parse_hex_index(fields[0]).ok_or_else(|| err(format!("bad index `{}`", fields[0])))?;
            let duplicate = match fields.get(3) {
                Some(s) => {
                    let script: ScriptId = s.parse().map_err(|_| err(format!("bad script `{s}`")))?;
                    overrides.insert((script, kind, idx), label).is_some()
                }
                None => common.insert((kind, idx), label).is_some(),
            };
            if duplicate {
                return Err(err(format!("duplicate record for {idx} {}", fields[1])));
            }
        }
        let schwa = schwa.ok_or_else(|| InventoryError::Inconsistent("missing schwa record".into()))?;
        let mut inv = ClsInventory {
            schwa,
            common,
            overrides,
            readings: Default::default(),
        };
        inv.validate(CategoryTable::bundled())?;
        for script in ScriptId::ALL {
            inv.readings[script_slot(script)] = inv.build_readings(script)?;
        }
        Ok(inv)
    }

    fn validate(&self, table: &CategoryTable) -> Result<(), InventoryError> {
        for script in ScriptId::ALL {
            for i in 0u8..128 {
                let idx = CommonIndex::from_u8(i);
                let Some(kind) = table.category(script, idx).and_then(LabelKind::for_category) else {
                    continue;
                };
                if self.label(script, kind, idx).is_none() {
                    return Err(InventoryError::Gap {
                        script,
                        category: kind,
                        index: idx,
                    });
                }
            }
            for (m, v) in MATRA_PAIRS {
                let (m, v) = (CommonIndex::from_u8(m), CommonIndex::from_u8(v));
                if let Some(ml) = self.label(script, LabelKind::Matra, m) {
                    if self.label(script, LabelKind::Vowel, v) != Some(ml) {
                        return Err(InventoryError::Inconsistent(format!(
                            "{script}: matra {m} and vowel {v} carry different labels"
                        )));
                    }
                }
            }
        }
        if self.label(ScriptId::Devanagari, LabelKind::Vowel, CommonIndex::from_u8(0x05)) != Some(&self.schwa) {
            return Err(InventoryError::Inconsistent(
                "the schwa label must equal the label of the short-a vowel".into(),
            ));
        }
        Ok(())
    }

    fn build_readings(&self, script: ScriptId) -> Result<BTreeMap<ClsLabel, LabelReading>, InventoryError> {
        let table = CategoryTable::bundled();
        let mut readings: BTreeMap<ClsLabel, LabelReading> = BTreeMap::new();
        let conflict = |label: &ClsLabel, what: &str| {
            InventoryError::Inconsistent(format!("{script}: label `{label}` has two {what} readings"))
        };
        let ch = |idx: CommonIndex| char::from_u32(script.block_base() + idx.value() as u32).unwrap();

        for i in 0u8..128 {
            let idx = CommonIndex::from_u8(i);
            let Some(cat) = table.category(script, idx) else { continue };
            let Some(kind) = LabelKind::for_category(cat) else { continue };
            let label = self.label(script, kind, idx).unwrap().clone();
            let r = readings.entry(label.clone()).or_default();
            match kind {
                LabelKind::Vowel => {
                    if r.independent.replace(idx).is_some() {
                        return Err(conflict(&label, "independent vowel"));
                    }
                }
                LabelKind::Matra => {
                    if r.matra.replace(idx).is_some() {
                        return Err(conflict(&label, "vowel sign"));
                    }
                }
                LabelKind::Sign => {
                    if r.sign.replace(idx).is_some() {
                        return Err(conflict(&label, "sign"));
                    }
                }
                LabelKind::Consonant => {
                    // Only NFC-stable letters are usable as output spellings.
                    let c = ch(idx);
                    if c.to_string().nfc().eq(std::iter::once(c)) && r.consonant.is_none() {
                        r.consonant = Some(Consonant::plain(idx));
                    }
                }
                LabelKind::Nukta => unreachable!(),
            }
        }
        for i in 0u8..128 {
            let base = CommonIndex::from_u8(i);
            if table.category(script, base) != Some(CharCategory::Consonant) {
                continue;
            }
            if let Some(label) = self.label(script, LabelKind::Nukta, base) {
                let r = readings.entry(label.clone()).or_default();
                if r.consonant.is_none() {
                    r.consonant = Some(Consonant { index: base, nukta: true });
                }
            }
        }
        for (label, r) in &readings {
            let roles = r.independent.is_some() as u8 + r.consonant.is_some() as u8 + r.sign.is_some() as u8;
            let matra_only = roles == 0 && r.matra.is_some();
            if roles > 1 || matra_only {
                return Err(InventoryError::Inconsistent(format!(
                    "{script}: label `{label}` is not a single vowel, consonant or sign"
                )));
            }
            if r.consonant.is_some() {
                let doubled = label.doubled();
                if readings.contains_key(&doubled) {
                    return Err(InventoryError::Inconsistent(format!(
                        "{script}: geminate `{doubled}` collides with an inventory label"
                    )));
                }
            }
        }
        Ok(readings)
    }

    pub fn schwa(&self) -> &ClsLabel {
        &self.schwa
    }

    /// Label for a slot, preferring a per-script override.
    pub fn label(&self, script: ScriptId, kind: LabelKind, idx: CommonIndex) -> Option<&ClsLabel> {
        self.overrides
            .get(&(script, kind, idx))
            .or_else(|| self.common.get(&(kind, idx)))
    }

    pub fn has_override(&self, script: ScriptId, idx: CommonIndex) -> bool {
        self.overrides.keys().any(|&(s, _, i)| s == script && i == idx)
    }

    pub fn overrides(&self) -> impl Iterator<Item = (ScriptId, LabelKind, CommonIndex)> + '_ {
        self.overrides.keys().copied()
    }

    /// Label of an onset consonant, with or without nukta.
    pub fn consonant_label(&self, script: ScriptId, c: Consonant) -> Option<&ClsLabel> {
        let kind = if c.nukta { LabelKind::Nukta } else { LabelKind::Consonant };
        self.label(script, kind, c.index)
    }

    /// How `label` is written in `script`, if at all.
    pub fn reading(&self, script: ScriptId, label: &str) -> Option<&LabelReading> {
        self.readings[script_slot(script)].get(label)
    }

    /// Every label with a spelling in `script`, in label order.
    pub fn readings(&self, script: ScriptId) -> impl Iterator<Item = (&ClsLabel, &LabelReading)> {
        self.readings[script_slot(script)].iter()
    }

    /// True for labels that denote a single consonant in some script.
    pub fn is_consonant(&self, label: &str) -> bool {
        ScriptId::ALL
            .iter()
            .any(|&s| self.reading(s, label).is_some_and(|r| r.consonant.is_some()))
    }

    pub fn is_vowel(&self, label: &str) -> bool {
        ScriptId::ALL
            .iter()
            .any(|&s| self.reading(s, label).is_some_and(|r| r.independent.is_some()))
    }

    /// The consonant `g` if `label` is the geminate form `gg`.
    pub fn geminate_base<'a>(&self, label: &'a str) -> Option<&'a str> {
        if !label.len().is_multiple_of(2) {
            return None;
        }
        let (a, b) = label.split_at(label.len() / 2);
        (a == b && self.is_consonant(a)).then_some(a)
    }

    /// Merge each pair of identical adjacent consonant labels into one
    /// doubled label (`k`, `k` → `kk`). Doubled labels never merge again.
    pub fn geminate_correct(&self, labels: &[ClsLabel]) -> Vec<ClsLabel> {
        let mut out = Vec::with_capacity(labels.len());
        let mut i = 0;
        while i < labels.len() {
            let cur = &labels[i];
            if i + 1 < labels.len() && labels[i + 1] == *cur && self.is_consonant(cur.as_str()) {
                out.push(cur.doubled());
                i += 2;
            } else {
                out.push(cur.clone());
                i += 1;
            }
        }
        out
    }
}
