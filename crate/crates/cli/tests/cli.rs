use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use apartment::pipeline::{sha256_hex, RunManifest};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn apartment(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apartment")).args(args).current_dir(cwd).output().unwrap()
}

/// A scratch directory holding copies of every fixture.
fn workspace() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for entry in fs::read_dir(fixture("")).unwrap() {
        let p = entry.unwrap().path();
        fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    dir
}

fn text(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn hecke_counts_csv() {
    let dir = workspace();
    let o = apartment(&["hecke-counts", "--d", "2", "--q", "2"], dir.path());
    assert!(o.status.success());
    assert_eq!(text(&o), "j,gaussian_binomial,c_j,eta1\n1,7,343,64\n2,7,343,64\n");
    let o = apartment(&["hecke-counts", "--d", "1", "--q", "2", "--convention", "spherical"], dir.path());
    assert_eq!(text(&o), "j,gaussian_binomial,c_j,eta1\n1,3,9,9\n");
}

#[test]
fn run_writes_five_artifacts_and_a_manifest() {
    let dir = workspace();
    let o = apartment(&["--quiet", "run", "k33.conf"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = dir.path().join("out-k33");
    let manifest: RunManifest = serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    let names: Vec<&str> = manifest.outputs.iter().map(|f| f.path.as_str()).collect();
    assert_eq!(names, ["complex.json", "spectra.json", "census.csv", "fit.json", "asymptotics.json"]);
    for f in &manifest.outputs {
        assert_eq!(sha256_hex(&fs::read(out.join(&f.path)).unwrap()), f.sha256);
    }
    assert_eq!(manifest.inputs.len(), 1);
    let fit: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("fit.json")).unwrap()).unwrap();
    assert_eq!(fit["predictive"], true);

    // identical rerun, identical digests
    fs::remove_dir_all(&out).unwrap();
    assert!(apartment(&["--quiet", "run", "k33.conf"], dir.path()).status.success());
    let again: RunManifest = serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(again.outputs, manifest.outputs);
}

#[test]
fn missing_input_aborts_at_validate() {
    let dir = workspace();
    fs::write(dir.path().join("bad.conf"), "complex = nowhere.txt\nmax_k = 4\noutput = out-bad\n").unwrap();
    let o = apartment(&["run", "bad.conf"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("stage validate"));
    assert!(!dir.path().join("out-bad").exists());
}

#[test]
fn resource_guard_removes_partial_outputs() {
    let dir = workspace();
    // walk length 2·16 exceeds the guard after complex and spectra are written
    fs::write(dir.path().join("big.conf"), "complex = k33.txt\nmax_k = 16\noutput = out-big\n").unwrap();
    let o = apartment(&["run", "big.conf"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("stage census"));
    assert!(!dir.path().join("out-big").exists());
}

#[test]
fn cover_census_and_zeta_by_hand() {
    let dir = workspace();
    let p = dir.path();
    let o = apartment(&["complex", "cover", "fano.txt", "--subgroup", "fano_kernel.txt", "--limit", "1000", "--out", "cover.json"], p);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(p.join("cover.json")).unwrap()).unwrap();
    assert_eq!(doc["chambers"], 63);
    assert!(apartment(&["--quiet", "spectra", "cover.json", "--out", "s.json"], p).status.success());
    assert!(apartment(&["census", "--complex", "cover.json", "--max-k", "6", "--out", "c.csv"], p).status.success());
    let o = apartment(&["zeta", "asymptotics", "--census", "c.csv", "--spectra", "s.json", "--out", "a.json"], p);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(text(&o).contains("theta=0.125000"));
    fs::write(p.join("r.csv"), "order_id,n,h,R,splitting,units\nA,3,2,1.5,w1:inert,1 1\nB,3,1,2.0,w1:ramified,\"1 1;1 0\"\n").unwrap();
    let o = apartment(&["class-sum", "--records", "r.csv", "--asymptotics", "a.json", "--places", "w1", "--out", "cs.json"], p);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let cs: serde_json::Value = serde_json::from_str(&fs::read_to_string(p.join("cs.json")).unwrap()).unwrap();
    let rows = cs["comparison"]["rows"].as_array().unwrap();
    let diag = rows.iter().find(|r| r["k"] == serde_json::json!([1, 1])).unwrap();
    assert!(diag["sum"].as_f64().unwrap() > 0.0);
    // (1, 0) is off the coroot lattice
    assert_eq!(rows.iter().filter(|r| r["flagged"] == true).count(), 1);
}

#[test]
fn validation_failures_exit_2() {
    let dir = workspace();
    let p = dir.path();
    assert_eq!(apartment(&["spectra", "petersen.txt"], p).status.code(), Some(2));
    assert!(apartment(&["--quiet", "spectra", "petersen.txt", "--double-cover", "--out", "s.json"], p).status.success());
    fs::write(p.join("broken.txt"), "graph q=2\n0 1\n0 two\n").unwrap();
    let o = apartment(&["complex", "validate", "broken.txt"], p);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("broken.txt:3"));
    let o = apartment(&["census", "--complex", "fano.txt", "--subgroup", "fano_kernel.txt", "--max-k", "11"], p);
    assert_eq!(o.status.code(), Some(3));
    let o = apartment(&["complex", "cover", "fano.txt", "--subgroup", "fano_kernel.txt", "--limit", "5"], p);
    assert_eq!(o.status.code(), Some(3));
}
