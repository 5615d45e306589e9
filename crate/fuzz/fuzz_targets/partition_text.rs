#![no_main]

use libfuzzer_sys::fuzz_target;
use parteq::Partition;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = Partition::parse(text) {
        assert_eq!(p.render(), text);
        assert_eq!(p.conjugate().conjugate(), p);
    }
});
