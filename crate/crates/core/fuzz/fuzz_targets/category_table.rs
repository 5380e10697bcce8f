#![no_main]

use indic_cls::script::CategoryTable;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let _ = CategoryTable::parse(text);
});
