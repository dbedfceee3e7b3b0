//! Independent dense-linear-algebra ground truth.
//!
//! Everything here is built directly from formulas (DFT matrix, spectral
//! kinetic operator, diagonal potential); none of the circuit-construction
//! modules are called, so agreement between the two paths is evidence
//! rather than tautology.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::circuit::{DenseUnitary, MAX_DENSE_QUBITS};
use crate::error::{Error, Result};
use crate::simulate::{
    centered_wavenumber, LatticeSpec, SimulationConfig, SimulationTrace, TraceRow,
};

/// Hermitian H = K + V on the full lattice.
#[derive(Clone, Debug)]
pub struct Hamiltonian {
    mat: DMatrix<Complex64>,
}

impl Hamiltonian {
    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    /// Largest |H[i,j] - conj(H[j,i])|.
    pub fn hermiticity_defect(&self) -> f64 {
        (&self.mat - self.mat.adjoint())
            .iter()
            .map(|d| d.norm())
            .fold(0.0, f64::max)
    }

    /// ⟨psi|H|psi⟩ (real part; the imaginary part vanishes for Hermitian H).
    pub fn expectation(&self, amps: &[Complex64]) -> f64 {
        let v = DVector::from_column_slice(amps);
        let hv = &self.mat * &v;
        v.dotc(&hv).re
    }
}

fn check_size(n_qubits: usize) -> Result<()> {
    if !(1..=MAX_DENSE_QUBITS).contains(&n_qubits) {
        Err(Error::UnsupportedSize(n_qubits))
    } else {
        Ok(())
    }
}

/// W[j,k] = exp(2 pi i j k / N) / sqrt(N), natural order.
pub fn dft_matrix(n_qubits: usize) -> Result<DenseUnitary> {
    check_size(n_qubits)?;
    let dim = 1usize << n_qubits;
    let unit = 2.0 * std::f64::consts::PI / dim as f64;
    let scale = 1.0 / (dim as f64).sqrt();
    let mat = DMatrix::from_fn(dim, dim, |j, k| {
        Complex64::from_polar(scale, unit * (j * k) as f64)
    });
    Ok(DenseUnitary::from_matrix(mat))
}

/// Kinetic eigenvalues (2 pi / N)^2 qbar(q)^2 / (2 m) in natural mode order.
pub fn kinetic_eigenvalues(lattice: &LatticeSpec) -> Vec<f64> {
    let n_sites = lattice.n_sites();
    let unit = 2.0 * std::f64::consts::PI / n_sites as f64;
    (0..n_sites)
        .map(|q| {
            let qbar = centered_wavenumber(q, n_sites);
            unit * unit * qbar * qbar / (2.0 * lattice.mass)
        })
        .collect()
}

/// Diagonal of V over sites: +v on barriers (well-qubit bit 0), -v on
/// wells (bit 1); all zeros without a potential.
pub fn potential_diagonal(config: &SimulationConfig) -> Vec<f64> {
    let n_sites = config.lattice.n_sites();
    match &config.potential {
        None => vec![0.0; n_sites],
        Some(p) => (0..n_sites)
            .map(|k| {
                if k & (1 << p.well_qubit) != 0 {
                    -p.strength
                } else {
                    p.strength
                }
            })
            .collect(),
    }
}

/// W * diag(f(kappa)) * W^dagger for a scalar function of the kinetic
/// eigenvalues.
fn kinetic_conjugation(
    lattice: &LatticeSpec,
    f: impl Fn(f64) -> Complex64,
) -> Result<DMatrix<Complex64>> {
    let w = dft_matrix(lattice.n_qubits)?;
    let diag = DMatrix::from_diagonal(&DVector::from_iterator(
        lattice.n_sites(),
        kinetic_eigenvalues(lattice).into_iter().map(f),
    ));
    Ok(w.matrix() * diag * w.matrix().adjoint())
}

/// H = K + V with K built spectrally and V diagonal over sites.
pub fn exact_hamiltonian(config: &SimulationConfig) -> Result<Hamiltonian> {
    config.validate()?;
    let mut mat = kinetic_conjugation(&config.lattice, |k| Complex64::new(k, 0.0))?;
    for (k, v) in potential_diagonal(config).into_iter().enumerate() {
        mat[(k, k)] += Complex64::new(v, 0.0);
    }
    Ok(Hamiltonian { mat })
}

/// exp(-i H t) through the eigendecomposition of (H + H^dagger)/2.
pub fn exact_propagator(hamiltonian: &Hamiltonian, t: f64) -> Result<DenseUnitary> {
    let symmetrized = (&hamiltonian.mat + hamiltonian.mat.adjoint()) * Complex64::new(0.5, 0.0);
    let eigen = nalgebra::SymmetricEigen::try_new(symmetrized, 1e-14, 10_000)
        .ok_or(Error::EigenFailure)?;
    let dim = hamiltonian.dim();
    let exp_diag = DMatrix::from_diagonal(&DVector::from_iterator(
        dim,
        eigen
            .eigenvalues
            .iter()
            .map(|&lambda| Complex64::from_polar(1.0, -lambda * t)),
    ));
    let q = &eigen.eigenvectors;
    Ok(DenseUnitary::from_matrix(q * exp_diag * q.adjoint()))
}

/// Exact lattice kinetic propagator W * diag(exp(-i kappa dt)) * W^dagger.
pub fn exact_kinetic_propagator(lattice: &LatticeSpec, delta_t: f64) -> Result<DenseUnitary> {
    lattice.validate()?;
    kinetic_conjugation(lattice, |k| Complex64::from_polar(1.0, -k * delta_t))
        .map(DenseUnitary::from_matrix)
}

/// One split-operator step exp(-i V dt) * exp(-i K dt) as dense matrices,
/// without any circuit approximations.
pub fn exact_step_operator(config: &SimulationConfig) -> Result<DenseUnitary> {
    config.validate()?;
    let mut mat = kinetic_conjugation(&config.lattice, |k| {
        Complex64::from_polar(1.0, -k * config.delta_t)
    })?;
    let dim = config.lattice.n_sites();
    for (k, v) in potential_diagonal(config).into_iter().enumerate() {
        let phase = Complex64::from_polar(1.0, -v * config.delta_t);
        for j in 0..dim {
            mat[(k, j)] *= phase;
        }
    }
    Ok(DenseUnitary::from_matrix(mat))
}

/// Per-step probability table from powers of the exact step operator;
/// the dense counterpart of `simulate::run`.
pub fn exact_trace(config: &SimulationConfig) -> Result<SimulationTrace> {
    config.validate()?;
    let step = exact_step_operator(config)?;
    let mut amps = config.initial_state()?.amplitudes().to_vec();
    let mut rows = Vec::with_capacity(config.steps + 1);
    rows.push(TraceRow {
        step: 0,
        time: 0.0,
        probabilities: amps.iter().map(|a| a.norm_sqr()).collect(),
    });
    for s in 1..=config.steps {
        amps = step.apply(&amps);
        rows.push(TraceRow {
            step: s,
            time: s as f64 * config.delta_t,
            probabilities: amps.iter().map(|a| a.norm_sqr()).collect(),
        });
    }
    Ok(SimulationTrace { rows })
}

/// Worst-case splitting error over basis initial states:
/// max_k || (step^steps - exp(-i H t_final)) e_k ||_2.
pub fn trotter_error(config: &SimulationConfig, t_final: f64) -> Result<f64> {
    config.validate()?;
    let steps = (t_final / config.delta_t).round() as usize;
    let trotterized = exact_step_operator(config)?.pow(steps);
    let exact = exact_propagator(&exact_hamiltonian(config)?, t_final)?;
    let diff = trotterized.matrix() - exact.matrix();
    Ok((0..diff.ncols())
        .map(|c| diff.column(c).norm())
        .fold(0.0, f64::max))
}
