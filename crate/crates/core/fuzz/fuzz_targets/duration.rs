#![no_main]

use indic_cls::corpus::{format_duration_ms, parse_duration_ms};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Some(ms) = parse_duration_ms(text) {
        assert_eq!(parse_duration_ms(&format_duration_ms(ms)), Some(ms));
    }
});
