//! Corpus-side tooling: language-ID tokens, manifests, training-target
//! preparation and duration statistics.

pub mod lid;
pub mod manifest;
pub mod prep;
pub mod stats;

pub use lid::{inject_lid, strip_lid, LidError, LidFormat};
pub use manifest::{format_duration_ms, parse_duration_ms, Manifest, ManifestError, RecordProblem, Utterance};
pub use prep::{prep_corpus, PrepOptions, PrepOutput, ReportRecord, Stage, TargetFlavor};
pub use stats::{corpus_stats, render_stats_table, CorpusStats, LangStats};
