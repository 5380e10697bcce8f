//! Error-rate scoring and comparison reports.

pub mod align;
pub mod report;
pub mod score;

pub use align::{align, Alignment, EditOp};
pub use report::{render_report, EvalReport, Percent, ReportError, ReportFormat, ReportRow};
pub use score::{
    cer, read_id_text, read_lang_map, score_corpus, wer, CorpusScore, ErrorCounts, MissingPolicy, Score,
    ScoreError, ScoreOptions,
};
