#![no_main]

use insep_core::scenario::{parse_local_request, resolve_local};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(req) = parse_local_request(data) {
        if req.a <= 12 && req.b <= 12 {
            let _ = resolve_local(&req, None);
        }
    }
});
