//! End-to-end tests of the qtunnel binary.

use std::path::Path;
use std::process::{Command, Output};

fn qtunnel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtunnel"))
        .args(args)
        .output()
        .expect("spawn qtunnel")
}

fn stdout_of(args: &[&str]) -> String {
    let out = qtunnel(args);
    assert!(
        out.status.success(),
        "qtunnel {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn simulate_tunneling_run_to_stdout() {
    let csv = stdout_of(&[
        "simulate", "--qubits", "2", "--dt", "0.1", "--steps", "4", "--v", "10",
        "--well-qubit", "0", "--init", "01",
    ]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "step,t,p0,p1,p2,p3");
    assert_eq!(lines[1], "0,0.0,0,1,0,0");
    assert!(lines[5].starts_with("4,0.4,"));
    let p3: f64 = lines[5].rsplit(',').next().unwrap().parse().unwrap();
    assert!((p3 - 0.122120377646).abs() < 1e-9);
}

#[test]
fn simulate_writes_csv_and_pgm_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("trace.csv");
    let pgm_path = dir.path().join("trace.pgm");
    let out = qtunnel(&[
        "simulate", "--qubits", "3", "--dt", "0.2", "--steps", "10", "--v", "5",
        "--well-qubit", "1", "--init", "110",
        "--csv", csv_path.to_str().unwrap(),
        "--pgm", pgm_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(out.stdout.is_empty());

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[0].split(',').count(), 10);
    assert_eq!(lines[1], "0,0.0,0,0,0,0,0,0,1,0");

    let pgm = std::fs::read_to_string(&pgm_path).unwrap();
    let mut it = pgm.lines();
    assert_eq!(it.next(), Some("P2"));
    assert!(it.next().unwrap().starts_with("# pmax="));
    assert_eq!(it.next(), Some("8 11"));
    assert_eq!(it.next(), Some("255"));
    let first_row = it.next().unwrap();
    assert_eq!(first_row, "0 0 0 0 0 0 255 0");
}

#[test]
fn simulate_missing_dt_is_a_usage_error() {
    let out = qtunnel(&["simulate", "--qubits", "2", "--steps", "4"]);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("--dt"), "stderr: {stderr}");
}

#[test]
fn simulate_rejects_bad_init_string() {
    let out = qtunnel(&[
        "simulate", "--qubits", "2", "--dt", "0.1", "--steps", "1", "--init", "012",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn config_file_drives_a_run_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("run.cfg");
    std::fs::write(
        &cfg_path,
        "# two-qubit tunneling\nqubits = 2\ndt = 0.1\nsteps = 4\nv = 10\nwell_qubit = 0\ninit = 01\n",
    )
    .unwrap();
    let from_file = stdout_of(&["simulate", "--config", cfg_path.to_str().unwrap()]);
    let from_flags = stdout_of(&[
        "simulate", "--qubits", "2", "--dt", "0.1", "--steps", "4", "--v", "10",
        "--well-qubit", "0", "--init", "01",
    ]);
    assert_eq!(from_file, from_flags);

    // a flag wins over the file value
    let overridden = stdout_of(&[
        "simulate", "--config", cfg_path.to_str().unwrap(), "--steps", "2",
    ]);
    assert_eq!(overridden.lines().count(), 4);
}

#[test]
fn reruns_are_byte_identical() {
    let args = [
        "simulate", "--qubits", "3", "--dt", "0.2", "--steps", "10", "--v", "5",
        "--well-qubit", "1", "--init", "110",
    ];
    assert_eq!(stdout_of(&args), stdout_of(&args));
}

#[test]
fn census_reports_per_step_and_total_counts() {
    let text = stdout_of(&["census", "--qubits", "2", "--steps", "4"]);
    assert!(text.contains("per step: 10 gates (7 single-qubit, 3 two-qubit, 0 three-plus-qubit)"));
    assert!(text.contains("4 steps: 40 gates"));

    let text = stdout_of(&["census", "--qubits", "3", "--steps", "7"]);
    assert!(text.contains("per step: 19 gates (10 single-qubit, 9 two-qubit, 0 three-plus-qubit)"));
    assert!(text.contains("7 steps: 133 gates"));

    let text = stdout_of(&["census", "--qubits", "3", "--steps", "4"]);
    assert!(text.contains("4 steps: 76 gates"));
}

#[test]
fn census_dump_lists_one_gate_per_line() {
    let text = stdout_of(&["census", "--qubits", "2", "--dump"]);
    let gate_lines: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("H ") || l.starts_with("RZ ") || l.starts_with("CP "))
        .collect();
    assert_eq!(gate_lines.len(), 10);
}

#[test]
fn decompose_kinetic_prints_the_coefficient_table() {
    let text = stdout_of(&["decompose", "--qubits", "2", "--dt", "0.1", "--kinetic"]);
    assert!(text.contains("subset"));
    assert!(text.contains("{}"));
    assert!(text.contains("{0}"));
    assert!(text.contains("{0,1}"));
    for needle in ["-4\n", "-1\n", " 4\n"] {
        assert!(text.contains(needle), "missing {needle:?} in:\n{text}");
    }
}

#[test]
fn decompose_reads_a_diagonal_file() {
    let dir = tempfile::tempdir().unwrap();
    let diag = dir.path().join("diag.txt");
    std::fs::write(&diag, "0.5  # constant diagonal\n0.5\n0.5\n0.5\n").unwrap();
    let text = stdout_of(&[
        "decompose", "--qubits", "2", "--dt", "1", "--diag-file", diag.to_str().unwrap(),
    ]);
    let global = text.lines().nth(1).unwrap();
    assert!(global.starts_with("{}"));
    assert!(global.contains("0.5"));
    for line in text.lines().skip(2) {
        let a = line.split_whitespace().nth(1).unwrap();
        assert_eq!(a, "0");
    }
}

#[test]
fn decompose_rejects_wrong_length_file() {
    let dir = tempfile::tempdir().unwrap();
    let diag = dir.path().join("diag.txt");
    std::fs::write(&diag, "0.1\n0.2\n").unwrap();
    let out = qtunnel(&[
        "decompose", "--qubits", "2", "--dt", "1", "--diag-file", diag.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn verify_defaults_pass() {
    let out = qtunnel(&["verify"]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verification: PASS"));
    assert!(text.contains("convergence slope:"));
}

#[test]
fn verify_free_particle_skips_the_slope_check() {
    let out = qtunnel(&["verify", "--v", "0"]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("splitting is exact"));
}

#[test]
fn verify_rejects_oversized_lattice() {
    let out = qtunnel(&["verify", "--qubits", "13"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn paper_figs_writes_all_reference_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = qtunnel(&["paper-figs", "--outdir", dir.path().to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);

    for name in ["fig1_free", "fig1_tunnel", "fig2"] {
        for ext in ["csv", "pgm"] {
            let path = dir.path().join(format!("{name}.{ext}"));
            assert!(path.exists(), "missing {}", path.display());
        }
    }

    let fig1 = std::fs::read_to_string(dir.path().join("fig1_tunnel.pgm")).unwrap();
    assert!(fig1.contains("\n4 5\n"));
    let fig2_csv = std::fs::read_to_string(dir.path().join("fig2.csv")).unwrap();
    assert_eq!(fig2_csv.lines().count(), 12);
    assert!(fig2_csv.lines().all(|l| l.split(',').count() == 10));
}

#[test]
fn paper_figs_reruns_are_byte_identical() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    qtunnel(&["paper-figs", "--outdir", dir_a.path().to_str().unwrap()]);
    qtunnel(&["paper-figs", "--outdir", dir_b.path().to_str().unwrap()]);
    let read = |dir: &Path, name: &str| std::fs::read(dir.join(name)).unwrap();
    for name in ["fig1_free.csv", "fig1_tunnel.csv", "fig2.csv", "fig2.pgm"] {
        assert_eq!(read(dir_a.path(), name), read(dir_b.path(), name));
    }
}
