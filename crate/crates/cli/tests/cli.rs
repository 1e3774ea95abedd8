//! End-to-end tests of the binary: exit-status contract, file round-trips
//! and report determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn entlab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entlab"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn tmpdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("entlab-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn states_round_trip_through_compute() {
    let dir = tmpdir("roundtrip");
    for (name, extra) in [
        ("singlet", vec![]),
        ("product", vec![]),
        ("classically_correlated", vec![]),
        ("werner", vec!["--p", "0.8"]),
        ("isotropic", vec!["--p", "0.5", "--d", "3"]),
        ("tiles", vec![]),
        ("random_separable", vec!["--k", "3", "--seed", "9"]),
    ] {
        let file = format!("{name}.json");
        let mut args = vec!["states", name];
        args.extend(extra.iter());
        args.extend(["-o", &file]);
        let out = entlab(&args, &dir);
        assert_eq!(code(&out), 0, "states {name}: {}", String::from_utf8_lossy(&out.stderr));

        let out = entlab(
            &["compute", "--measure", "entropy", "--state", &file, "--seed", "1"],
            &dir,
        );
        assert_eq!(code(&out), 0, "entropy on {name} failed");
    }
}

#[test]
fn malformed_file_exits_2() {
    let dir = tmpdir("schema");
    std::fs::write(dir.join("broken.json"), "{ not json").unwrap();
    let out = entlab(
        &["compute", "--measure", "entropy", "--state", "broken.json", "--seed", "1"],
        &dir,
    );
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema"));

    let out = entlab(
        &["compute", "--measure", "entropy", "--state", "missing.json", "--seed", "1"],
        &dir,
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn invariant_violation_exits_3() {
    let dir = tmpdir("invariant");
    // well-formed schema, trace 2
    std::fs::write(
        dir.join("badtrace.json"),
        r#"{"dims":[2],"re":[[1.0,0.0],[0.0,1.0]],"im":[[0.0,0.0],[0.0,0.0]]}"#,
    )
    .unwrap();
    let out = entlab(
        &["compute", "--measure", "entropy", "--state", "badtrace.json", "--seed", "1"],
        &dir,
    );
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("trace"));

    // negative eigenvalue
    std::fs::write(
        dir.join("negative.json"),
        r#"{"dims":[2],"re":[[1.5,0.0],[0.0,-0.5]],"im":[[0.0,0.0],[0.0,0.0]]}"#,
    )
    .unwrap();
    let out = entlab(
        &["compute", "--measure", "entropy", "--state", "negative.json", "--seed", "1"],
        &dir,
    );
    assert_eq!(code(&out), 3);
}

#[test]
fn measure_mismatch_exits_4() {
    let dir = tmpdir("mismatch");
    let out = entlab(&["states", "tiles", "-o", "tiles.json"], &dir);
    assert_eq!(code(&out), 0);

    // eof-exact needs a 2x2 cut
    let out = entlab(
        &["compute", "--measure", "eof-exact", "--state", "tiles.json", "--cut", "0/1", "--seed", "1"],
        &dir,
    );
    assert_eq!(code(&out), 4, "stderr: {}", String::from_utf8_lossy(&out.stderr));

    // unknown measure and unknown canonical state
    let out = entlab(
        &["compute", "--measure", "bogus", "--state", "tiles.json", "--seed", "1"],
        &dir,
    );
    assert_eq!(code(&out), 4);
    let out = entlab(&["states", "bogus", "-o", "x.json"], &dir);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("available"));

    // sound mode rejects non-qubit anchors
    let out = entlab(
        &["verify", "duality", "--samples", "1", "--dims", "3,2,3", "--seed", "1"],
        &dir,
    );
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("sound"));
}

#[test]
fn witness_files_support_roof_initialization() {
    let dir = tmpdir("witness");
    let out = entlab(
        &["states", "random_separable", "--k", "3", "--seed", "11", "-o", "sep.json"],
        &dir,
    );
    assert_eq!(code(&out), 0);
    assert!(dir.join("sep.witness.json").exists());

    let out = entlab(
        &[
            "compute", "--measure", "g-hv", "--state", "sep.json",
            "--witness", "sep.witness.json", "--restarts", "1",
            "--max-iterations", "30", "--ensemble-size", "3", "--seed", "2",
            "-o", "g.json",
        ],
        &dir,
    );
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("g.json")).unwrap()).unwrap();
    assert!(report["value_bits"].as_f64().unwrap() < 1e-3);
    assert_eq!(report["direction"], "upper");

    // witness that does not decompose the state is rejected
    let out = entlab(
        &["states", "random_separable", "--k", "3", "--seed", "12", "-o", "other.json"],
        &dir,
    );
    assert_eq!(code(&out), 0);
    let out = entlab(
        &[
            "compute", "--measure", "g-hv", "--state", "sep.json",
            "--witness", "other.witness.json", "--seed", "2",
        ],
        &dir,
    );
    assert_eq!(code(&out), 4);
}

#[test]
fn verify_single_state_cloning() {
    let dir = tmpdir("cloning");
    let out = entlab(&["states", "singlet", "-o", "s.json"], &dir);
    assert_eq!(code(&out), 0);
    let out = entlab(
        &[
            "verify", "cloning", "--state", "s.json", "--seed", "3",
            "--restarts", "2", "--max-iterations", "100", "-o", "rep.json",
        ],
        &dir,
    );
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("gap"), "stdout: {stdout}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("rep.json")).unwrap()).unwrap();
    let gap = report["records"][0]["slack_bits"].as_f64().unwrap();
    assert!((gap - 1.0).abs() < 1e-6, "gap {gap}");
}

#[test]
fn csv_reports_have_contract_columns() {
    let dir = tmpdir("csv");
    let out = entlab(
        &[
            "verify", "duality", "--samples", "2", "--dims", "2,2,2", "--seed", "5",
            "--restarts", "4", "--max-iterations", "300",
            "--format", "csv", "-o", "rep.csv",
        ],
        &dir,
    );
    assert_eq!(code(&out), 0);
    let csv = std::fs::read_to_string(dir.join("rep.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "sample,seed,lhs_bits,rhs_bits,slack_bits,sound"
    );
    assert_eq!(lines.count(), 2);
}
