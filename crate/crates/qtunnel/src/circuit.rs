//! Gate intermediate representation, circuit assembly and census, and a
//! dense-matrix realization used for verification against the oracle.
//!
//! Gates are applied in list order (position 0 first). Operator products
//! written right-to-left elsewhere are translated to this order at
//! construction time.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qstate::{self, StateVector};

/// Largest register for which a dense 2^n x 2^n realization is allowed.
pub const MAX_DENSE_QUBITS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    Hadamard { qubit: usize },
    ZRotation { qubit: usize, theta: f64 },
    /// Diagonal phase on the all-ones subspace of the listed qubits.
    /// Symmetric in its qubits; three or more make a multi-controlled phase.
    ControlledPhase { qubits: Vec<usize>, phase: f64 },
}

impl Gate {
    pub fn hadamard(qubit: usize) -> Gate {
        Gate::Hadamard { qubit }
    }

    pub fn z_rotation(qubit: usize, theta: f64) -> Gate {
        Gate::ZRotation { qubit, theta }
    }

    /// Qubits are stored sorted so equal gates compare equal.
    pub fn controlled_phase(qubits: &[usize], phase: f64) -> Gate {
        let mut qubits = qubits.to_vec();
        qubits.sort_unstable();
        Gate::ControlledPhase { qubits, phase }
    }

    /// Number of qubits the gate acts on.
    pub fn arity(&self) -> usize {
        match self {
            Gate::Hadamard { .. } | Gate::ZRotation { .. } => 1,
            Gate::ControlledPhase { qubits, .. } => qubits.len(),
        }
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        match self {
            Gate::Hadamard { qubit } => check_index(*qubit, n_qubits),
            Gate::ZRotation { qubit, theta } => {
                check_finite(*theta)?;
                check_index(*qubit, n_qubits)
            }
            Gate::ControlledPhase { qubits, phase } => {
                check_finite(*phase)?;
                if qubits.len() < 2 {
                    return Err(Error::UnsupportedSize(qubits.len()));
                }
                qstate::controlled_mask(n_qubits, qubits).map(|_| ())
            }
        }
    }

    fn adjoint(&self) -> Gate {
        match self {
            Gate::Hadamard { qubit } => Gate::Hadamard { qubit: *qubit },
            Gate::ZRotation { qubit, theta } => Gate::ZRotation {
                qubit: *qubit,
                theta: -theta,
            },
            Gate::ControlledPhase { qubits, phase } => Gate::ControlledPhase {
                qubits: qubits.clone(),
                phase: -phase,
            },
        }
    }
}

fn check_index(index: usize, dim: usize) -> Result<()> {
    if index >= dim {
        Err(Error::IndexOutOfRange { index, dim })
    } else {
        Ok(())
    }
}

fn check_finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::NotNormalized(x))
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Hadamard { qubit } => write!(f, "H q{qubit}"),
            Gate::ZRotation { qubit, theta } => {
                write!(f, "RZ q{qubit} {}", crate::cli::fmt_sig(*theta))
            }
            Gate::ControlledPhase { qubits, phase } => {
                let qs: Vec<String> = qubits.iter().map(|q| format!("q{q}")).collect();
                write!(f, "CP {} {}", qs.join(","), crate::cli::fmt_sig(*phase))
            }
        }
    }
}

/// Ordered gate list over a fixed register width.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Circuit {
        Circuit {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Append a gate; panics if the gate is invalid for this register.
    pub fn push(&mut self, gate: Gate) {
        gate.validate(self.n_qubits)
            .unwrap_or_else(|e| panic!("invalid gate {gate:?}: {e}"));
        self.gates.push(gate);
    }

    /// Append all gates of `other` (same register width required).
    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::SizeMismatch(self.n_qubits, other.n_qubits));
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(())
    }

    /// Apply gates in list order, mutating the state in place.
    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::SizeMismatch(self.n_qubits, state.n_qubits()));
        }
        for gate in &self.gates {
            match gate {
                Gate::Hadamard { qubit } => state.apply_hadamard(*qubit)?,
                Gate::ZRotation { qubit, theta } => state.apply_z_rotation(*qubit, *theta)?,
                Gate::ControlledPhase { qubits, phase } => {
                    state.apply_controlled_phase(qubits, *phase)?
                }
            }
        }
        Ok(())
    }

    /// Reversed gate list with every rotation angle negated.
    pub fn adjoint(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::adjoint).collect(),
        }
    }

    pub fn census(&self) -> GateCensus {
        let mut census = GateCensus::default();
        for gate in &self.gates {
            match gate.arity() {
                1 => census.single_qubit += 1,
                2 => census.two_qubit += 1,
                _ => census.three_plus_qubit += 1,
            }
            census.total += 1;
        }
        census
    }

    /// Dense matrix product of the gate matrices in application order.
    pub fn to_unitary(&self) -> Result<DenseUnitary> {
        if self.n_qubits > MAX_DENSE_QUBITS {
            return Err(Error::TooLarge(self.n_qubits));
        }
        let dim = 1usize << self.n_qubits;
        let mut mat = DMatrix::<Complex64>::identity(dim, dim);
        let mut col = vec![Complex64::ZERO; dim];
        for gate in &self.gates {
            for c in 0..dim {
                for r in 0..dim {
                    col[r] = mat[(r, c)];
                }
                match gate {
                    Gate::Hadamard { qubit } => qstate::hadamard_in_place(&mut col, *qubit),
                    Gate::ZRotation { qubit, theta } => {
                        qstate::z_rotation_in_place(&mut col, *qubit, *theta)
                    }
                    Gate::ControlledPhase { qubits, phase } => {
                        let mask = qstate::controlled_mask(self.n_qubits, qubits)?;
                        qstate::controlled_phase_in_place(&mut col, mask, *phase)
                    }
                }
                for r in 0..dim {
                    mat[(r, c)] = col[r];
                }
            }
        }
        Ok(DenseUnitary::from_matrix(mat))
    }

    /// One gate per line, `H q0` / `RZ q0 <theta>` / `CP q0,q1 <phase>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for gate in &self.gates {
            out.push_str(&gate.to_string());
            out.push('\n');
        }
        out
    }
}

/// Gate counts classified by arity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GateCensus {
    pub single_qubit: usize,
    pub two_qubit: usize,
    pub three_plus_qubit: usize,
    pub total: usize,
}

impl std::ops::Add for GateCensus {
    type Output = GateCensus;
    fn add(self, rhs: GateCensus) -> GateCensus {
        GateCensus {
            single_qubit: self.single_qubit + rhs.single_qubit,
            two_qubit: self.two_qubit + rhs.two_qubit,
            three_plus_qubit: self.three_plus_qubit + rhs.three_plus_qubit,
            total: self.total + rhs.total,
        }
    }
}

impl std::ops::Mul<usize> for GateCensus {
    type Output = GateCensus;
    fn mul(self, k: usize) -> GateCensus {
        GateCensus {
            single_qubit: self.single_qubit * k,
            two_qubit: self.two_qubit * k,
            three_plus_qubit: self.three_plus_qubit * k,
            total: self.total * k,
        }
    }
}

/// Dense complex matrix wrapper shared by the circuit and oracle paths.
#[derive(Clone, Debug)]
pub struct DenseUnitary {
    mat: DMatrix<Complex64>,
}

impl DenseUnitary {
    pub fn from_matrix(mat: DMatrix<Complex64>) -> DenseUnitary {
        assert_eq!(mat.nrows(), mat.ncols());
        DenseUnitary { mat }
    }

    pub fn identity(dim: usize) -> DenseUnitary {
        DenseUnitary {
            mat: DMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn adjoint(&self) -> DenseUnitary {
        DenseUnitary {
            mat: self.mat.adjoint(),
        }
    }

    /// self * other (other acts first).
    pub fn compose(&self, other: &DenseUnitary) -> DenseUnitary {
        DenseUnitary {
            mat: &self.mat * &other.mat,
        }
    }

    pub fn pow(&self, k: usize) -> DenseUnitary {
        let mut out = DenseUnitary::identity(self.dim());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    pub fn apply(&self, amps: &[Complex64]) -> Vec<Complex64> {
        let v = nalgebra::DVector::from_column_slice(amps);
        (&self.mat * v).iter().copied().collect()
    }

    /// Largest |self[i,j] - other[i,j]|.
    pub fn max_deviation(&self, other: &DenseUnitary) -> f64 {
        (&self.mat - &other.mat)
            .iter()
            .map(|d| d.norm())
            .fold(0.0, f64::max)
    }

    /// Deviation after aligning the global phase of `other` to `self` by
    /// the Frobenius inner product (the least-squares optimal phase; it
    /// is insensitive to ties between equal-modulus entries). Diagonal
    /// synthesis drops the constant phase term, so circuit/oracle
    /// comparisons go through here.
    pub fn max_deviation_up_to_phase(&self, other: &DenseUnitary) -> f64 {
        let overlap: Complex64 = self
            .mat
            .iter()
            .zip(other.mat.iter())
            .map(|(a, b)| b.conj() * a)
            .sum();
        let phase = if overlap.norm() > 0.0 {
            overlap / overlap.norm()
        } else {
            Complex64::ONE
        };
        let aligned = DenseUnitary {
            mat: other.mat.map(|x| x * phase),
        };
        self.max_deviation(&aligned)
    }

    /// Largest |(U†U - I)[i,j]|.
    pub fn unitarity_defect(&self) -> f64 {
        let dim = self.dim();
        let prod = self.mat.adjoint() * &self.mat;
        (prod - DMatrix::<Complex64>::identity(dim, dim))
            .iter()
            .map(|d| d.norm())
            .fold(0.0, f64::max)
    }
}
