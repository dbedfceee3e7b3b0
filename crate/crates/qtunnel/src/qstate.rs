//! Dense state vector over n qubits and in-place gate kernels.
//!
//! Index `k` of the amplitude array encodes the lattice position with
//! qubit `j` as bit `j` of `k` (qubit 0 is the least significant bit).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported register: 2^24 amplitudes is ~256 MB of f64 pairs.
pub const MAX_QUBITS: usize = 24;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// 2^n complex amplitudes of a pure state on an n-qubit lattice register.
#[derive(Clone, Debug)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Computational basis state |index⟩.
    pub fn basis_state(n_qubits: usize, index: usize) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n_qubits) {
            return Err(Error::UnsupportedSize(n_qubits));
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut amps = vec![Complex64::ZERO; dim];
        amps[index] = Complex64::ONE;
        Ok(StateVector { n_qubits, amps })
    }

    /// State from explicit amplitudes. Renormalizes when the norm is
    /// within 1e-6 of 1, rejects anything farther off.
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n_qubits) {
            return Err(Error::UnsupportedSize(n_qubits));
        }
        let dim = 1usize << n_qubits;
        if amps.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                got: amps.len(),
            });
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-6 {
            return Err(Error::NotNormalized(norm));
        }
        let amps = amps.into_iter().map(|a| a / norm).collect();
        Ok(StateVector { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            Err(Error::IndexOutOfRange {
                index: qubit,
                dim: self.n_qubits,
            })
        } else {
            Ok(())
        }
    }

    /// Hadamard on one qubit: mixes every amplitude pair differing in that bit.
    pub fn apply_hadamard(&mut self, qubit: usize) -> Result<()> {
        self.check_qubit(qubit)?;
        hadamard_in_place(&mut self.amps, qubit);
        Ok(())
    }

    /// exp(-i theta sigma_z) on one qubit: phase e^{-i theta} on bit 0,
    /// e^{+i theta} on bit 1 (sigma_z = diag(1, -1)).
    pub fn apply_z_rotation(&mut self, qubit: usize, theta: f64) -> Result<()> {
        self.check_qubit(qubit)?;
        z_rotation_in_place(&mut self.amps, qubit, theta);
        Ok(())
    }

    /// Controlled phase: multiplies by e^{i phase} exactly where every
    /// listed bit of the index is 1.
    pub fn apply_controlled_phase(&mut self, qubits: &[usize], phase: f64) -> Result<()> {
        let mask = controlled_mask(self.n_qubits, qubits)?;
        controlled_phase_in_place(&mut self.amps, mask, phase);
        Ok(())
    }

    /// Site occupation probabilities |amps[k]|^2.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// ⟨self|other⟩ = sum_k conj(self[k]) * other[k].
    pub fn inner_product(&self, other: &StateVector) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::SizeMismatch(self.n_qubits, other.n_qubits));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// Validate a controlled-phase qubit set and pack it into a bit mask.
pub(crate) fn controlled_mask(n_qubits: usize, qubits: &[usize]) -> Result<usize> {
    let mut mask = 0usize;
    for &q in qubits {
        if q >= n_qubits {
            return Err(Error::IndexOutOfRange {
                index: q,
                dim: n_qubits,
            });
        }
        if mask & (1 << q) != 0 {
            return Err(Error::DuplicateQubit(q));
        }
        mask |= 1 << q;
    }
    Ok(mask)
}

// The raw kernels below also back the dense-matrix realization in the
// circuit module, which applies them column by column.

pub(crate) fn hadamard_in_place(amps: &mut [Complex64], qubit: usize) {
    let bit = 1usize << qubit;
    for k in 0..amps.len() {
        if k & bit == 0 {
            let a = amps[k];
            let b = amps[k | bit];
            amps[k] = (a + b) * FRAC_1_SQRT_2;
            amps[k | bit] = (a - b) * FRAC_1_SQRT_2;
        }
    }
}

pub(crate) fn z_rotation_in_place(amps: &mut [Complex64], qubit: usize, theta: f64) {
    let bit = 1usize << qubit;
    let lo = Complex64::from_polar(1.0, -theta);
    let hi = Complex64::from_polar(1.0, theta);
    for (k, a) in amps.iter_mut().enumerate() {
        *a *= if k & bit == 0 { lo } else { hi };
    }
}

pub(crate) fn controlled_phase_in_place(amps: &mut [Complex64], mask: usize, phase: f64) {
    let factor = Complex64::from_polar(1.0, phase);
    for (k, a) in amps.iter_mut().enumerate() {
        if k & mask == mask {
            *a *= factor;
        }
    }
}
