#![no_main]

use libfuzzer_sys::fuzz_target;
use parteq::TruncatedSeries;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = serde_json::from_slice::<TruncatedSeries>(data) {
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<TruncatedSeries>(&json).unwrap(), s);
        let _ = s.to_string();
    }
});
