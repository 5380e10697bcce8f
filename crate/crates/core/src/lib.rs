//! Common-label-set (CLS) text processing for multilingual Indic ASR.
//!
//! Covers Hindi, Marathi, Gujarati, Bengali and Odia:
//!
//! - [`script`]: normalization, script detection and offset transliteration
//!   across the parallel Unicode blocks.
//! - [`akshara`]: orthographic syllable segmentation.
//! - [`cls`]: native script → CLS labels with schwa deletion and geminate
//!   correction.
//! - [`ns`]: CLS → native script through a rule inverse and a frequency
//!   lexicon, per language or dispatched on a language-ID token.
//! - [`corpus`]: language-ID tokens, manifest parsing, training-target
//!   preparation and duration statistics.
//! - [`eval`]: WER/CER scoring and comparison reports.

pub mod akshara;
pub mod cls;
pub mod corpus;
pub mod eval;
pub mod generate;
pub mod ns;
pub mod script;

pub use akshara::{segment_aksharas, Akshara, ParsedWord, VowelSpec};
pub use cls::{ClsConverter, ClsLabel, ClsWord, ConvertOptions};
pub use script::{CharCategory, CommonIndex, LanguageId, ScriptId};
