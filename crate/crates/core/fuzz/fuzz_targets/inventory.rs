#![no_main]

use indic_cls::cls::ClsInventory;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let _ = ClsInventory::parse(text);
});
