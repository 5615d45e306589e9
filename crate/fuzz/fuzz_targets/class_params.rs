#![no_main]

use libfuzzer_sys::fuzz_target;
use parteq::ClassParams;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(ps) = text.parse::<ClassParams>() {
        assert_eq!(ps.to_string().parse::<ClassParams>().unwrap(), ps);
        assert!(ps.k >= 1 && ps.d >= 1 && ps.m >= 1);
    }
});
