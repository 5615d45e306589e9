//! Replays the checked-in fuzz seed corpora through the same checks the
//! fuzz targets make, so the parsers stay exercised on stable toolchains.

use std::fs;
use std::path::PathBuf;

use parteq::{BijectionTrace, ClassParams, Partition, TruncatedSeries};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fuzz", "corpus", target]
        .iter()
        .collect();
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn partition_text_seeds() {
    let mut parsed = 0;
    for (name, data) in seeds("partition_text") {
        let text = String::from_utf8(data).unwrap();
        if let Ok(p) = Partition::parse(&text) {
            assert_eq!(p.render(), text, "{name}");
            parsed += 1;
        }
    }
    assert!(parsed >= 2);
}

#[test]
fn partition_json_seeds() {
    for (name, data) in seeds("partition_json") {
        if let Ok(p) = serde_json::from_slice::<Partition>(&data) {
            let json = serde_json::to_string(&p).unwrap();
            assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), p, "{name}");
        }
    }
}

#[test]
fn series_json_seeds() {
    for (name, data) in seeds("series_json") {
        let s: TruncatedSeries = serde_json::from_slice(&data).unwrap_or_else(|e| panic!("{name}: {e}"));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json.as_bytes(), &data[..], "{name}");
    }
}

#[test]
fn class_params_seeds() {
    for (name, data) in seeds("class_params") {
        let text = String::from_utf8(data).unwrap();
        let ps: ClassParams = text.parse().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(ps.to_string(), text);
    }
}

#[test]
fn trace_json_seeds() {
    for (name, data) in seeds("trace_json") {
        let trace: BijectionTrace = serde_json::from_slice(&data).unwrap();
        trace.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
