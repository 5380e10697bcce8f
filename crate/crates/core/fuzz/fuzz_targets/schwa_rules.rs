#![no_main]

use indic_cls::cls::RuleTable;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let _ = RuleTable::parse(text);
});
