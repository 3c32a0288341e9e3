use std::fs;
use std::path::PathBuf;

use turan_cert::symbolic::identities::snapshot_text;

fn snapshot_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/coefficients.txt")
}

/// Derived coefficient lists are frozen; set `TURAN_CERT_UPDATE_SNAPSHOT=1` to rewrite.
#[test]
fn derived_coefficients_match_snapshot() {
    let text = snapshot_text().unwrap();
    let path = snapshot_path();
    if std::env::var_os("TURAN_CERT_UPDATE_SNAPSHOT").is_some() {
        fs::write(&path, &text).unwrap();
    }
    let frozen = fs::read_to_string(&path).expect("snapshot file present");
    assert_eq!(text, frozen);
}

#[test]
fn snapshot_covers_exact_index_ranges() {
    let text = snapshot_text().unwrap();
    let mut counts = Vec::new();
    for section in text.split('[').skip(1) {
        let (name, body) = section.split_once("]\n").unwrap();
        let idx: Vec<u32> = body.lines().map(|l| l.split(':').next().unwrap().parse().unwrap()).collect();
        assert_eq!(idx, (0..idx.len() as u32).collect::<Vec<_>>(), "{name}");
        counts.push((name.to_string(), idx.len()));
    }
    let want = [("a", 27), ("b", 27), ("c", 22), ("d", 20)];
    assert_eq!(counts, want.iter().map(|(n, c)| (n.to_string(), *c)).collect::<Vec<_>>());
}
