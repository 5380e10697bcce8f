#![no_main]

use indic_cls::script::{detect_script, normalize, normalize_bytes};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    match normalize_bytes(data) {
        Ok(s) => {
            assert_eq!(normalize(&s), s);
            let d = detect_script(&s);
            assert!(d.per_script_counts.values().all(|&n| n > 0));
        }
        Err(_) => assert!(std::str::from_utf8(data).is_err()),
    }
});
