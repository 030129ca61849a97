#![no_main]

use insep_core::scenario::parse_curve;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&k, json)) = data.split_first() else { return };
    if let Ok(c) = parse_curve(json, u32::from(k % 8)) {
        let _ = c.genus();
        let _ = c.describe();
    }
});
