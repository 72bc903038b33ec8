//! The checked-in fixture corpus against the built-in one.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use fcat_core::cli_io::{builtin_corpus, check_fixture, load_fixture, parse_fixture_str, payload_to_value, Fixture};

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn checked_in() -> Vec<(PathBuf, Fixture)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixture_dir())
        .expect("fixtures directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    files.into_iter().map(|p| (p.clone(), load_fixture(&p).expect("fixture loads"))).collect()
}

#[test]
fn checked_in_files_match_builtin_corpus() {
    let builtin = builtin_corpus();
    let on_disk = checked_in();
    let disk_names: BTreeSet<&str> = on_disk.iter().map(|(_, f)| f.name.as_str()).collect();
    let builtin_names: BTreeSet<&str> = builtin.iter().map(|f| f.name.as_str()).collect();
    assert_eq!(disk_names, builtin_names);
    for f in &builtin {
        let path = fixture_dir().join(format!("{}.json", f.name));
        let disk = std::fs::read_to_string(&path).expect("fixture file");
        assert_eq!(disk, f.to_canonical_string().expect("canonical"), "{} is stale; rerun `fcat corpus --out`", f.name);
    }
}

#[test]
fn file_names_match_fixture_names() {
    for (path, f) in checked_in() {
        assert_eq!(path.file_stem().and_then(|s| s.to_str()), Some(f.name.as_str()));
    }
}

#[test]
fn names_are_unique() {
    let corpus = builtin_corpus();
    let names: BTreeSet<&str> = corpus.iter().map(|f| f.name.as_str()).collect();
    assert_eq!(names.len(), corpus.len());
}

#[test]
fn round_trip_is_byte_identical() {
    for (path, f) in checked_in() {
        let s = std::fs::read_to_string(&path).expect("read");
        let again = parse_fixture_str(&s, "again").expect("reparse");
        assert_eq!(again, f);
        assert_eq!(again.to_canonical_string().expect("canonical"), s, "{}", f.name);
        let payload = payload_to_value(&f.parse().expect("parse")).expect("serialize");
        assert_eq!(payload, f.payload, "{}", f.name);
    }
}

#[test]
fn every_expectation_holds() {
    for (_, f) in checked_in() {
        for r in check_fixture(&f) {
            assert!(r.ok, "{}: {} expected {} got {}", f.name, r.key, r.expected, r.actual);
        }
    }
}

fn source_text() -> String {
    let mut out = String::new();
    let mut stack = vec![Path::new(env!("CARGO_MANIFEST_DIR")).join("src")];
    while let Some(dir) = stack.pop() {
        for e in std::fs::read_dir(dir).expect("src dir") {
            let p = e.expect("entry").path();
            if p.is_dir() {
                stack.push(p);
            } else if p.extension().is_some_and(|e| e == "rs") {
                out += &std::fs::read_to_string(p).expect("source file");
            }
        }
    }
    out
}

#[test]
fn provenance_names_existing_functions() {
    let src = source_text();
    for f in builtin_corpus() {
        let rest = f.provenance.strip_prefix("derived: ").unwrap_or_else(|| panic!("{}: {}", f.name, f.provenance));
        for part in rest.split(", ") {
            let head = part.split([' ', '(']).next().expect("function name");
            let func = head.rsplit("::").next().expect("segment");
            if !func.chars().next().is_some_and(|c| c.is_ascii_lowercase()) {
                continue;
            }
            assert!(src.contains(&format!("fn {func}(")), "{}: no function `{func}`", f.name);
        }
    }
}
