//! Per-time-step split-operator circuits and multi-step tunneling runs.
//!
//! One step is the kinetic propagator (QFT-dagger, synthesized diagonal,
//! QFT) followed by a single sigma_z rotation implementing the square-well
//! potential. Sites whose well-qubit bit reads 1 are the wells (potential
//! -v), the bit-0 half-spaces the barriers (+v).

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate, MAX_DENSE_QUBITS};
use crate::diagsynth::{self, DEFAULT_PRUNE_EPS};
use crate::error::{Error, Result};
use crate::qft;
use crate::qstate::StateVector;

/// Uniform lattice of 2^n points with spacing 1 in dimensionless units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticeSpec {
    pub n_qubits: usize,
    pub mass: f64,
}

impl LatticeSpec {
    /// Lattice with the default mass 1/2, under which the kinetic
    /// diagonal reduces to integer multiples of (2 pi / N)^2.
    pub fn new(n_qubits: usize) -> LatticeSpec {
        LatticeSpec {
            n_qubits,
            mass: 0.5,
        }
    }

    pub fn n_sites(&self) -> usize {
        1 << self.n_qubits
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.n_qubits < 1 || self.n_qubits > MAX_DENSE_QUBITS {
            return Err(Error::UnsupportedSize(self.n_qubits));
        }
        if self.mass.is_nan() || self.mass <= 0.0 {
            return Err(Error::NotNormalized(self.mass));
        }
        Ok(())
    }
}

/// Square-well family: one qubit's bit value splits the lattice into
/// wells (bit 1, potential -v) and barriers (bit 0, potential +v).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PotentialSpec {
    pub well_qubit: usize,
    pub strength: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum InitialState {
    Basis(usize),
    Amplitudes(Vec<Complex64>),
}

#[derive(Clone, Debug)]
pub struct SimulationConfig {
    pub lattice: LatticeSpec,
    pub potential: Option<PotentialSpec>,
    pub delta_t: f64,
    pub steps: usize,
    pub initial: InitialState,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        self.lattice.validate()?;
        if let Some(p) = &self.potential {
            if p.well_qubit >= self.lattice.n_qubits {
                return Err(Error::IndexOutOfRange {
                    index: p.well_qubit,
                    dim: self.lattice.n_qubits,
                });
            }
        }
        if self.delta_t.is_nan() || self.delta_t <= 0.0 {
            return Err(Error::NotNormalized(self.delta_t));
        }
        match &self.initial {
            InitialState::Basis(index) => {
                if *index >= self.lattice.n_sites() {
                    return Err(Error::IndexOutOfRange {
                        index: *index,
                        dim: self.lattice.n_sites(),
                    });
                }
            }
            InitialState::Amplitudes(amps) => {
                if amps.len() != self.lattice.n_sites() {
                    return Err(Error::LengthMismatch {
                        expected: self.lattice.n_sites(),
                        got: amps.len(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn initial_state(&self) -> Result<StateVector> {
        match &self.initial {
            InitialState::Basis(index) => StateVector::basis_state(self.lattice.n_qubits, *index),
            InitialState::Amplitudes(amps) => {
                StateVector::from_amplitudes(self.lattice.n_qubits, amps.clone())
            }
        }
    }
}

/// Per-step probability table; row 0 is the initial state.
#[derive(Clone, Debug, PartialEq)]
pub struct SimulationTrace {
    pub rows: Vec<TraceRow>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceRow {
    pub step: usize,
    pub time: f64,
    pub probabilities: Vec<f64>,
}

/// Centered Fourier wavenumber: j for j <= N/2, j - N above.
pub fn centered_wavenumber(mode: usize, n_sites: usize) -> f64 {
    if mode <= n_sites / 2 {
        mode as f64
    } else {
        mode as f64 - n_sites as f64
    }
}

/// Phase accumulated by diagonal entry k of the kinetic operator between
/// the swap-free QFTs: (2 pi / N)^2 qbar(rev(k))^2 / (2 m) * dt. The bit
/// reversal compensates the QFT's reversed output order; at mass 1/2 the
/// bracketed integers are (0,4,1,1) for n=2 and (0,16,4,4,1,9,9,1) for
/// n=3.
pub fn kinetic_phase_vector(lattice: &LatticeSpec, delta_t: f64) -> Vec<f64> {
    let n_sites = lattice.n_sites();
    let unit = 2.0 * std::f64::consts::PI / n_sites as f64;
    (0..n_sites)
        .map(|k| {
            let q = centered_wavenumber(qft::bit_reverse(k, lattice.n_qubits), n_sites);
            unit * unit * q * q / (2.0 * lattice.mass) * delta_t
        })
        .collect()
}

/// QFT-dagger, synthesized kinetic diagonal, QFT. Realizes the exact
/// lattice propagator exp(-i K dt) up to a global phase.
pub fn build_kinetic_circuit(lattice: &LatticeSpec, delta_t: f64) -> Result<Circuit> {
    lattice.validate()?;
    let phases = kinetic_phase_vector(lattice, delta_t);
    let decomp = diagsynth::decompose_diagonal(&phases)?;
    let mut circuit = qft::build_qft_dagger(lattice.n_qubits)?;
    circuit.extend(&diagsynth::synthesize(&decomp, DEFAULT_PRUNE_EPS))?;
    circuit.extend(&qft::build_qft(lattice.n_qubits)?)?;
    Ok(circuit)
}

/// The whole potential evolution is one Z rotation by v * dt.
pub fn square_well_gate(
    lattice: &LatticeSpec,
    potential: &PotentialSpec,
    delta_t: f64,
) -> Result<Gate> {
    lattice.validate()?;
    if potential.well_qubit >= lattice.n_qubits {
        return Err(Error::IndexOutOfRange {
            index: potential.well_qubit,
            dim: lattice.n_qubits,
        });
    }
    Ok(Gate::z_rotation(
        potential.well_qubit,
        potential.strength * delta_t,
    ))
}

/// Kinetic circuit followed by the potential gate. The gate is emitted
/// even at v = 0 so free-particle and tunneling runs share a census;
/// callers wanting it dropped pass `potential: None`.
pub fn build_step_circuit(config: &SimulationConfig) -> Result<Circuit> {
    config.validate()?;
    let mut circuit = build_kinetic_circuit(&config.lattice, config.delta_t)?;
    if let Some(potential) = &config.potential {
        circuit.push(square_well_gate(&config.lattice, potential, config.delta_t)?);
    }
    Ok(circuit)
}

/// Apply the step circuit `steps` times, recording probabilities after
/// each application (rows 0..=steps).
pub fn run(config: &SimulationConfig) -> Result<SimulationTrace> {
    config.validate()?;
    let circuit = build_step_circuit(config)?;
    let mut state = config.initial_state()?;
    let mut rows = Vec::with_capacity(config.steps + 1);
    rows.push(TraceRow {
        step: 0,
        time: 0.0,
        probabilities: state.probabilities(),
    });
    for step in 1..=config.steps {
        circuit.apply(&mut state)?;
        rows.push(TraceRow {
            step,
            time: step as f64 * config.delta_t,
            probabilities: state.probabilities(),
        });
    }
    Ok(SimulationTrace { rows })
}
