#![no_main]

use insep_core::scenario::{run_scenario, Scenario};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(mut s) = Scenario::parse(data) {
        // keep runs short: no point counting, small fields only
        s.options.zeta = false;
        if s.base_field <= 4 {
            let _ = run_scenario(&s);
        }
    }
});
