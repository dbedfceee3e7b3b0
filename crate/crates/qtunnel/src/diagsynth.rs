//! Decomposition of diagonal phase vectors over the Z-product basis and
//! synthesis of the matching gate sequence.
//!
//! The basis element for a qubit subset S has diagonal value -1 where
//! every qubit of S reads 1, and +1 elsewhere; the empty subset is the
//! all-ones vector carrying the global phase. Singletons are the sigma_z
//! diagonals, pairs the controlled-phase diag(1,1,1,-1) pattern, and the
//! 2^n elements are linearly independent, so any real diagonal has a
//! unique expansion. The solve runs as a subset Moebius transform in
//! O(n 2^n); tests cross-check it against a dense linear solve.

use crate::circuit::{Circuit, Gate, MAX_DENSE_QUBITS};
use crate::error::{Error, Result};

/// Default pruning threshold: drops coefficients that are exactly zero up
/// to solver noise (like the three-qubit term of the 8-point kinetic
/// diagonal) without touching any physical coefficient.
pub const DEFAULT_PRUNE_EPS: f64 = 1e-9;

/// One basis vector b_S over the 2^n diagonal entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalBasisElement {
    n_qubits: usize,
    subset: Vec<usize>,
}

impl DiagonalBasisElement {
    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    /// The explicit +/-1 diagonal.
    pub fn values(&self) -> Vec<f64> {
        let mask = subset_to_mask(&self.subset);
        (0..1usize << self.n_qubits)
            .map(|k| basis_value(mask, k))
            .collect()
    }
}

fn subset_to_mask(subset: &[usize]) -> usize {
    subset.iter().fold(0, |m, &q| m | (1 << q))
}

fn mask_to_subset(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize)
        .filter(|q| mask & (1 << q) != 0)
        .collect()
}

/// b_S(k): -1 iff every qubit of S has bit 1 in k (b_empty is all ones).
fn basis_value(mask: usize, k: usize) -> f64 {
    if mask != 0 && k & mask == mask {
        -1.0
    } else {
        1.0
    }
}

/// All subset masks of an n-qubit register in canonical order: by subset
/// size, then lexicographically on the sorted index list.
pub fn canonical_masks(n_qubits: usize) -> Vec<usize> {
    let mut masks: Vec<usize> = (0..1usize << n_qubits).collect();
    masks.sort_by_key(|&m| (m.count_ones(), mask_to_subset(m)));
    masks
}

/// The full 2^n-element Z-product basis in canonical order.
pub fn zproduct_basis(n_qubits: usize) -> Result<Vec<DiagonalBasisElement>> {
    if !(1..=MAX_DENSE_QUBITS).contains(&n_qubits) {
        return Err(Error::UnsupportedSize(n_qubits));
    }
    Ok(canonical_masks(n_qubits)
        .into_iter()
        .map(|mask| DiagonalBasisElement {
            n_qubits,
            subset: mask_to_subset(mask),
        })
        .collect())
}

/// Expansion coefficients of a diagonal phase vector: phases[k] =
/// global_phase + sum_S a_S * b_S(k).
#[derive(Clone, Debug)]
pub struct DiagonalDecomposition {
    n_qubits: usize,
    /// Indexed by subset mask; entry 0 is the global phase.
    coeffs: Vec<f64>,
}

impl DiagonalDecomposition {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn global_phase(&self) -> f64 {
        self.coeffs[0]
    }

    /// Coefficient a_S for the subset packed as a bit mask.
    pub fn coefficient(&self, mask: usize) -> f64 {
        self.coeffs[mask]
    }

    /// (subset, coefficient) pairs for nonempty subsets in canonical order.
    pub fn coefficients(&self) -> Vec<(Vec<usize>, f64)> {
        canonical_masks(self.n_qubits)
            .into_iter()
            .filter(|&m| m != 0)
            .map(|m| (mask_to_subset(m), self.coeffs[m]))
            .collect()
    }

    /// Evaluate the expansion at diagonal index k.
    pub fn reconstruct(&self, k: usize) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(mask, a)| a * basis_value(mask, k))
            .sum()
    }
}

/// Solve phases = global + sum_S a_S b_S exactly.
///
/// With g(k) = (phases[0] - phases[k]) / 2 the coefficients are the
/// Moebius inversion of g over the subset lattice; the global phase then
/// balances the k = 0 entry.
pub fn decompose_diagonal(phases: &[f64]) -> Result<DiagonalDecomposition> {
    let dim = phases.len();
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::BadLength(dim));
    }
    let n_qubits = dim.trailing_zeros() as usize;
    if !(1..=MAX_DENSE_QUBITS).contains(&n_qubits) {
        return Err(Error::UnsupportedSize(n_qubits));
    }
    if phases.iter().any(|p| !p.is_finite()) {
        return Err(Error::NotNormalized(f64::NAN));
    }

    let mut coeffs: Vec<f64> = phases.iter().map(|p| (phases[0] - p) / 2.0).collect();
    for bit in 0..n_qubits {
        let step = 1usize << bit;
        for mask in 0..dim {
            if mask & step != 0 {
                coeffs[mask] -= coeffs[mask ^ step];
            }
        }
    }
    coeffs[0] = phases[0] - coeffs[1..].iter().sum::<f64>();
    Ok(DiagonalDecomposition { n_qubits, coeffs })
}

/// Emit one gate per retained coefficient, in canonical subset order.
///
/// A singleton a_S maps to RZ(theta = a_S): exp(-i a_S sigma_z) has the
/// diagonal exp(-i a_S b_S(k)). For |S| >= 2, b_S = 1 - 2*[all bits set],
/// so exp(-i a_S b_S(k)) equals a controlled phase of +2 a_S on the
/// all-ones component times the unobservable factor exp(-i a_S). The
/// global phase term is dropped entirely.
pub fn synthesize(decomp: &DiagonalDecomposition, prune_eps: f64) -> Circuit {
    let mut circuit = Circuit::new(decomp.n_qubits);
    for (subset, a) in decomp.coefficients() {
        if a.abs() <= prune_eps {
            continue;
        }
        if subset.len() == 1 {
            circuit.push(Gate::z_rotation(subset[0], a));
        } else {
            circuit.push(Gate::controlled_phase(&subset, 2.0 * a));
        }
    }
    circuit
}

/// Worst-case operator counts for a diagonal on 2^n points:
/// (this Z-product basis, Benenti-Strini quadratic construction).
pub fn synthesis_cost(n_qubits: usize) -> (usize, usize) {
    ((1usize << n_qubits) - 1, n_qubits * n_qubits)
}

/// Normalization constant gamma = (2 pi / N)^2 / sqrt(N) relating kinetic
/// decomposition coefficients to the dimensionless c values reported per
/// subset (a_S = gamma * c_S * dt).
pub fn coefficient_scale(n_qubits: usize) -> f64 {
    let n_sites = (1usize << n_qubits) as f64;
    let w = 2.0 * std::f64::consts::PI / n_sites;
    w * w / n_sites.sqrt()
}
