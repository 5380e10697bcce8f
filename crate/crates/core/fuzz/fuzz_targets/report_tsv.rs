#![no_main]

use indic_cls::eval::{render_report, EvalReport, ReportFormat};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(r) = EvalReport::parse_tsv(text) {
        let tsv = render_report(&r, ReportFormat::Tsv);
        let _ = render_report(&r, ReportFormat::Text);
        let again = EvalReport::parse_tsv(&tsv).unwrap();
        assert_eq!(render_report(&again, ReportFormat::Tsv), tsv);
    }
});
