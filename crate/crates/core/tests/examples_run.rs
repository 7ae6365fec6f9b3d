//! Every program in `examples/` builds and exits successfully.

use std::path::{Path, PathBuf};
use std::process::Command;

const EXAMPLES: &[&str] = &[
    "branch_evidence",
    "classify",
    "discriminant_curve",
    "finite_automorphisms",
    "moduli",
    "normal_form",
    "series_expansion",
    "stanton_family",
    "symmetry_algebra",
    "worked_examples",
];

fn examples_dir() -> PathBuf {
    // target/<profile>/deps/<this test> -> target/<profile>/examples
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().join("examples")
}

fn binary(name: &str) -> PathBuf {
    let path = examples_dir().join(format!("{name}{}", std::env::consts::EXE_SUFFIX));
    if !path.exists() {
        // `cargo test --test examples_run` does not build the examples itself
        let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
        let status = Command::new(cargo)
            .args(["build", "--examples", "-p", "rsl-core"])
            .current_dir(env!("CARGO_MANIFEST_DIR"))
            .status()
            .expect("cargo runs");
        assert!(status.success());
    }
    path
}

#[test]
fn listed_examples_match_directory() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples");
    let mut found: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| e.ok()?.path().file_stem()?.to_str().map(String::from))
        .collect();
    found.sort();
    assert_eq!(found, EXAMPLES);
}

#[test]
fn every_example_runs() {
    for name in EXAMPLES {
        let out = Command::new(binary(name)).output().unwrap();
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stdout.is_empty(), "{name} printed nothing");
    }
}

#[test]
fn curve_example_is_lf_csv() {
    let out = Command::new(binary("discriminant_curve")).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().count(), 101);
    assert!(text.lines().skip(1).all(|l| l.split(',').count() == 7));
}
