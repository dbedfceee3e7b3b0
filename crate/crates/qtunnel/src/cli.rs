//! Command-line front end logic: config parsing, CSV/PGM emitters and
//! the report generators behind the subcommands. Flag handling lives in
//! the binary; everything here is pure string-in/string-out so it can be
//! tested directly.
//!
//! Output formats are deterministic: identical inputs produce byte-
//! identical files (no timestamps, fixed 12-significant-digit decimals).

use std::fs;
use std::path::{Path, PathBuf};

use crate::circuit::MAX_DENSE_QUBITS;
use crate::diagsynth;
use crate::oracle;
use crate::simulate::{
    self, InitialState, LatticeSpec, PotentialSpec, SimulationConfig, SimulationTrace,
};

/// Shortest decimal form with at most 12 significant digits.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

/// Like [`fmt_sig`] but always with a decimal point (time column).
pub fn fmt_time(t: f64) -> String {
    let s = fmt_sig(t);
    if s.contains('.') {
        s
    } else {
        format!("{s}.0")
    }
}

/// Values read from a key=value run config file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FileConfig {
    pub qubits: Option<usize>,
    pub mass: Option<f64>,
    pub dt: Option<f64>,
    pub steps: Option<usize>,
    pub v: Option<f64>,
    pub well_qubit: Option<usize>,
    pub init: Option<String>,
    pub output: Option<PathBuf>,
}

/// Parse flat `key=value` lines; '#' starts a comment, blank lines are
/// skipped. Unknown keys are rejected so typos fail loudly.
pub fn parse_config_file(text: &str) -> Result<FileConfig, String> {
    let mut config = FileConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value, got '{line}'", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |e: &dyn std::fmt::Display| format!("line {}: bad {key}: {e}", lineno + 1);
        match key {
            "qubits" => config.qubits = Some(value.parse().map_err(|e| bad(&e))?),
            "mass" => config.mass = Some(value.parse().map_err(|e| bad(&e))?),
            "dt" => config.dt = Some(value.parse().map_err(|e| bad(&e))?),
            "steps" => config.steps = Some(value.parse().map_err(|e| bad(&e))?),
            "v" => config.v = Some(value.parse().map_err(|e| bad(&e))?),
            "well_qubit" => config.well_qubit = Some(value.parse().map_err(|e| bad(&e))?),
            "init" => config.init = Some(value.to_string()),
            "output" => config.output = Some(PathBuf::from(value)),
            other => return Err(format!("line {}: unknown key '{other}'", lineno + 1)),
        }
    }
    Ok(config)
}

/// Bitstring in ket order: leftmost character is the highest qubit, so
/// "110" names lattice site 6.
pub fn parse_init_bitstring(bits: &str, n_qubits: usize) -> Result<usize, String> {
    if bits.len() != n_qubits {
        return Err(format!(
            "init bitstring '{bits}' has {} bits, expected {n_qubits}",
            bits.len()
        ));
    }
    usize::from_str_radix(bits, 2).map_err(|_| format!("init bitstring '{bits}' is not binary"))
}

/// Assemble a validated simulation config from resolved parameters.
/// `well_qubit` defaults to the highest qubit, `init` to site 0.
#[allow(clippy::too_many_arguments)]
pub fn build_simulation_config(
    qubits: usize,
    mass: f64,
    dt: f64,
    steps: usize,
    v: f64,
    well_qubit: Option<usize>,
    init: Option<&str>,
    omit_trivial_potential: bool,
) -> Result<SimulationConfig, String> {
    let lattice = LatticeSpec {
        n_qubits: qubits,
        mass,
    };
    if !(1..=MAX_DENSE_QUBITS).contains(&qubits) {
        return Err(format!("qubits must be in 1..={MAX_DENSE_QUBITS}"));
    }
    let initial = match init {
        None => InitialState::Basis(0),
        Some(bits) => InitialState::Basis(parse_init_bitstring(bits, qubits)?),
    };
    let potential = if omit_trivial_potential && v == 0.0 {
        None
    } else {
        Some(PotentialSpec {
            well_qubit: well_qubit.unwrap_or(qubits - 1),
            strength: v,
        })
    };
    let config = SimulationConfig {
        lattice,
        potential,
        delta_t: dt,
        steps,
        initial,
    };
    config.validate().map_err(|e| e.to_string())?;
    Ok(config)
}

/// CSV with header `step,t,p0,...,p{N-1}`.
pub fn trace_to_csv(trace: &SimulationTrace) -> String {
    let n_sites = trace.rows.first().map_or(0, |r| r.probabilities.len());
    let mut out = String::from("step,t");
    for k in 0..n_sites {
        out.push_str(&format!(",p{k}"));
    }
    out.push('\n');
    for row in &trace.rows {
        out.push_str(&format!("{},{}", row.step, fmt_time(row.time)));
        for p in &row.probabilities {
            out.push(',');
            out.push_str(&fmt_sig(*p));
        }
        out.push('\n');
    }
    out
}

/// Plain PGM heatmap: lattice sites across, time steps down the page,
/// gray levels normalized to the file's own probability maximum (recorded
/// in a `# pmax=` comment since the reference gray scale is unspecified).
pub fn trace_to_pgm(trace: &SimulationTrace) -> String {
    let width = trace.rows.first().map_or(0, |r| r.probabilities.len());
    let height = trace.rows.len();
    let pmax = trace
        .rows
        .iter()
        .flat_map(|r| r.probabilities.iter().copied())
        .fold(0.0f64, f64::max);
    let mut out = format!("P2\n# pmax={}\n{width} {height}\n255\n", fmt_sig(pmax));
    for row in &trace.rows {
        let pixels: Vec<String> = row
            .probabilities
            .iter()
            .map(|p| format!("{}", (255.0 * p / pmax).round() as u32))
            .collect();
        out.push_str(&pixels.join(" "));
        out.push('\n');
    }
    out
}

/// Gate counts for one step and for `steps` repetitions.
pub fn census_report(n_qubits: usize, steps: usize) -> Result<String, String> {
    let circuit = census_circuit(n_qubits)?;
    let per_step = circuit.census();
    let total = per_step * steps;
    let line = |label: &str, c: crate::circuit::GateCensus| {
        format!(
            "{label}: {} gates ({} single-qubit, {} two-qubit, {} three-plus-qubit)\n",
            c.total, c.single_qubit, c.two_qubit, c.three_plus_qubit
        )
    };
    let mut out = line("per step", per_step);
    out.push_str(&line(&format!("{steps} steps"), total));
    Ok(out)
}

/// One-gate-per-line dump of a single time step (dt = 1, v = 0; the
/// potential gate is retained so the count matches tunneling runs).
pub fn census_dump(n_qubits: usize) -> Result<String, String> {
    Ok(census_circuit(n_qubits)?.dump())
}

fn census_circuit(n_qubits: usize) -> Result<crate::circuit::Circuit, String> {
    let config = build_simulation_config(n_qubits, 0.5, 1.0, 1, 0.0, None, None, false)?;
    simulate::build_step_circuit(&config).map_err(|e| e.to_string())
}

/// Coefficient table for a diagonal phase vector: subset, coefficient
/// a_S, and the dimensionless c = a_S / (gamma dt).
pub fn decompose_report(dt: f64, phases: &[f64]) -> Result<String, String> {
    let decomp = diagsynth::decompose_diagonal(phases).map_err(|e| e.to_string())?;
    let gamma = diagsynth::coefficient_scale(decomp.n_qubits());
    let mut out = format!("{:<12} {:>20} {:>20}\n", "subset", "a", "c");
    let mut rows = vec![(String::from("{}"), decomp.global_phase())];
    for (subset, a) in decomp.coefficients() {
        let names: Vec<String> = subset.iter().map(|q| q.to_string()).collect();
        rows.push((format!("{{{}}}", names.join(",")), a));
    }
    for (label, a) in rows {
        out.push_str(&format!(
            "{label:<12} {:>20} {:>20}\n",
            fmt_sig(a),
            fmt_sig(a / (gamma * dt))
        ));
    }
    Ok(out)
}

/// Read a diagonal phase vector, one real per line ('#' comments allowed).
pub fn read_diag_file(path: &Path) -> Result<Vec<f64>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut phases = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        phases.push(
            line.parse::<f64>()
                .map_err(|e| format!("line {}: {e}", lineno + 1))?,
        );
    }
    Ok(phases)
}

pub struct VerifyOutcome {
    pub report: String,
    pub passed: bool,
}

const VERIFY_DEVIATION_LIMIT: f64 = 1e-9;
const VERIFY_SLOPE_RANGE: (f64, f64) = (0.8, 1.2);
const VERIFY_EXACT_LIMIT: f64 = 1e-9;

/// Circuit-vs-oracle deviation plus a Trotter convergence study over
/// three dt halvings at fixed total time.
pub fn verify(
    qubits: usize,
    dt: f64,
    steps: usize,
    v: f64,
    well_qubit: Option<usize>,
) -> Result<VerifyOutcome, String> {
    let config = build_simulation_config(qubits, 0.5, dt, steps, v, well_qubit, None, false)?;
    let circuit_unitary = simulate::build_step_circuit(&config)
        .and_then(|c| c.to_unitary())
        .map_err(|e| e.to_string())?;
    let oracle_unitary = oracle::exact_step_operator(&config).map_err(|e| e.to_string())?;
    let deviation = circuit_unitary.max_deviation_up_to_phase(&oracle_unitary);

    let t_final = steps as f64 * dt;
    let mut report = format!("circuit vs oracle max deviation: {:e}\n", deviation);
    let mut errors = Vec::new();
    for halving in 0..4 {
        let scale = 1usize << halving;
        let refined = SimulationConfig {
            delta_t: dt / scale as f64,
            steps: steps * scale,
            ..config.clone()
        };
        let err = oracle::trotter_error(&refined, t_final).map_err(|e| e.to_string())?;
        report.push_str(&format!(
            "dt={:<12} trotter error {:e}\n",
            fmt_sig(refined.delta_t),
            err
        ));
        errors.push((refined.delta_t, err));
    }

    let exact_split = errors.iter().all(|&(_, e)| e < VERIFY_EXACT_LIMIT);
    let slope_ok = if exact_split {
        report.push_str("splitting is exact (single-term Hamiltonian); slope check skipped\n");
        true
    } else {
        let slope = log_log_slope(&errors);
        report.push_str(&format!("convergence slope: {}\n", fmt_sig(slope)));
        (VERIFY_SLOPE_RANGE.0..=VERIFY_SLOPE_RANGE.1).contains(&slope)
    };
    let passed = deviation < VERIFY_DEVIATION_LIMIT && slope_ok;
    report.push_str(if passed {
        "verification: PASS\n"
    } else {
        "verification: FAIL\n"
    });
    Ok(VerifyOutcome { report, passed })
}

/// Least-squares slope of ln(err) against ln(dt).
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(dt, err) in points {
        let (x, y) = (dt.ln(), err.ln());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// The three reference runs: 2-qubit free particle, 2-qubit double-well
/// tunneling, 3-qubit double-well with two lattice points per well.
pub fn reference_runs() -> [(&'static str, SimulationConfig); 3] {
    let two_qubit = |v: f64| SimulationConfig {
        lattice: LatticeSpec::new(2),
        potential: Some(PotentialSpec {
            well_qubit: 0,
            strength: v,
        }),
        delta_t: 0.1,
        steps: 4,
        initial: InitialState::Basis(1),
    };
    let three_qubit = SimulationConfig {
        lattice: LatticeSpec::new(3),
        potential: Some(PotentialSpec {
            well_qubit: 1,
            strength: 5.0,
        }),
        delta_t: 0.2,
        steps: 10,
        initial: InitialState::Basis(6),
    };
    [
        ("fig1_free", two_qubit(0.0)),
        ("fig1_tunnel", two_qubit(10.0)),
        ("fig2", three_qubit),
    ]
}

/// Write CSV and PGM for each reference run; returns the paths written.
pub fn paper_figs(outdir: &Path) -> Result<Vec<PathBuf>, String> {
    fs::create_dir_all(outdir).map_err(|e| format!("{}: {e}", outdir.display()))?;
    let mut written = Vec::new();
    for (name, config) in reference_runs() {
        let trace = simulate::run(&config).map_err(|e| e.to_string())?;
        for (ext, contents) in [("csv", trace_to_csv(&trace)), ("pgm", trace_to_pgm(&trace))] {
            let path = outdir.join(format!("{name}.{ext}"));
            fs::write(&path, contents).map_err(|e| format!("{}: {e}", path.display()))?;
            written.push(path);
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulate::TraceRow;

    #[test]
    fn fmt_sig_trims_and_caps_digits() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(0.25), "0.25");
        assert_eq!(fmt_sig(-0.5), "-0.5");
        assert_eq!(fmt_sig(std::f64::consts::PI), "3.14159265359");
        assert_eq!(fmt_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig(1234.5), "1234.5");
    }

    #[test]
    fn fmt_time_keeps_decimal_point() {
        assert_eq!(fmt_time(0.0), "0.0");
        assert_eq!(fmt_time(0.1), "0.1");
        assert_eq!(fmt_time(2.0), "2.0");
        assert_eq!(fmt_time(3.0 * 0.1), "0.3");
    }

    #[test]
    fn config_file_round_trip() {
        let text = "\
# reference tunneling run
qubits = 2
dt = 0.1
steps = 4
v = 10   # well depth parameter
well_qubit = 0
init = 01
output = out.csv
";
        let parsed = parse_config_file(text).unwrap();
        assert_eq!(parsed.qubits, Some(2));
        assert_eq!(parsed.dt, Some(0.1));
        assert_eq!(parsed.steps, Some(4));
        assert_eq!(parsed.v, Some(10.0));
        assert_eq!(parsed.well_qubit, Some(0));
        assert_eq!(parsed.init.as_deref(), Some("01"));
        assert_eq!(parsed.output, Some(PathBuf::from("out.csv")));
        assert_eq!(parsed.mass, None);

        assert!(parse_config_file("bogus = 1").is_err());
        assert!(parse_config_file("qubits two").is_err());
    }

    #[test]
    fn init_bitstring_is_ket_ordered() {
        assert_eq!(parse_init_bitstring("01", 2).unwrap(), 1);
        assert_eq!(parse_init_bitstring("110", 3).unwrap(), 6);
        assert!(parse_init_bitstring("01", 3).is_err());
        assert!(parse_init_bitstring("02", 2).is_err());
    }

    fn tiny_trace() -> SimulationTrace {
        SimulationTrace {
            rows: vec![
                TraceRow {
                    step: 0,
                    time: 0.0,
                    probabilities: vec![0.0, 1.0, 0.0, 0.0],
                },
                TraceRow {
                    step: 1,
                    time: 0.1,
                    probabilities: vec![0.25, 0.5, 0.125, 0.125],
                },
            ],
        }
    }

    #[test]
    fn csv_format() {
        let csv = trace_to_csv(&tiny_trace());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "step,t,p0,p1,p2,p3");
        assert_eq!(lines[1], "0,0.0,0,1,0,0");
        assert_eq!(lines[2], "1,0.1,0.25,0.5,0.125,0.125");
    }

    #[test]
    fn csv_parses_back_to_the_trace() {
        let trace = simulate::run(&reference_runs()[1].1).unwrap();
        let csv = trace_to_csv(&trace);
        for (lineno, line) in csv.lines().skip(1).enumerate() {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields[0].parse::<usize>().unwrap(), lineno);
            let t: f64 = fields[1].parse().unwrap();
            assert!((t - trace.rows[lineno].time).abs() < 1e-12);
            for (k, p) in fields[2..].iter().enumerate() {
                let p: f64 = p.parse().unwrap();
                let expected = trace.rows[lineno].probabilities[k];
                assert!((p - expected).abs() <= 1e-12 * expected.abs().max(1.0));
            }
        }
    }

    #[test]
    fn pgm_format() {
        let pgm = trace_to_pgm(&tiny_trace());
        let lines: Vec<&str> = pgm.lines().collect();
        assert_eq!(lines[0], "P2");
        assert_eq!(lines[1], "# pmax=1");
        assert_eq!(lines[2], "4 2");
        assert_eq!(lines[3], "255");
        assert_eq!(lines[4], "0 255 0 0");
        assert_eq!(lines[5], "64 128 32 32");
    }

    #[test]
    fn census_reports_reference_totals() {
        let report = census_report(2, 4).unwrap();
        assert!(report.contains("per step: 10 gates (7 single-qubit, 3 two-qubit"));
        assert!(report.contains("4 steps: 40 gates (28 single-qubit, 12 two-qubit"));

        let dump = census_dump(2).unwrap();
        assert_eq!(dump.lines().count(), 10);
    }

    #[test]
    fn decompose_report_normalizes_by_gamma() {
        let phases = simulate::kinetic_phase_vector(&LatticeSpec::new(2), 0.1);
        let report = decompose_report(0.1, &phases).unwrap();
        assert!(report.contains("{0}"), "{report}");
        // paper-normalized values -1, -4, 4 and global phase 1
        for needle in ["-4\n", "-1\n", " 4\n", " 1\n"] {
            assert!(report.contains(needle), "missing {needle:?} in:\n{report}");
        }
    }

    #[test]
    fn verify_defaults_pass() {
        let outcome = verify(2, 0.1, 4, 10.0, Some(0)).unwrap();
        assert!(outcome.passed, "{}", outcome.report);
        assert!(outcome.report.contains("convergence slope"));

        let outcome = verify(2, 0.1, 4, 0.0, Some(0)).unwrap();
        assert!(outcome.passed, "{}", outcome.report);
        assert!(outcome.report.contains("splitting is exact"));
    }

    #[test]
    fn build_config_defaults() {
        let config = build_simulation_config(3, 0.5, 0.2, 10, 5.0, None, Some("110"), false).unwrap();
        assert_eq!(config.potential.unwrap().well_qubit, 2);
        assert_eq!(config.initial, InitialState::Basis(6));

        // omit-trivial-potential drops the v = 0 gate
        let config = build_simulation_config(2, 0.5, 0.1, 4, 0.0, None, None, true).unwrap();
        assert!(config.potential.is_none());

        assert!(build_simulation_config(13, 0.5, 0.1, 1, 0.0, None, None, false).is_err());
        assert!(build_simulation_config(2, 0.5, 0.1, 1, 1.0, Some(5), None, false).is_err());
    }
}
