#![no_main]

use libfuzzer_sys::fuzz_target;
use parteq::Partition;

fuzz_target!(|data: &[u8]| {
    if let Ok(p) = serde_json::from_slice::<Partition>(data) {
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), p);
        assert_eq!(Partition::parse(&p.render()).unwrap(), p);
    }
});
