#![no_main]

use libfuzzer_sys::fuzz_target;
use parteq::BijectionTrace;

fuzz_target!(|data: &[u8]| {
    if let Ok(trace) = serde_json::from_slice::<BijectionTrace>(data) {
        let _ = trace.validate();
    }
});
