//! Swap-free quantum Fourier transform circuits.
//!
//! The builders emit no terminal swap gates: the output is in bit-reversed
//! order and the reversal is absorbed into the kinetic diagonal ordering
//! downstream. Gate count is exactly n(n+1)/2, of which n are Hadamards.

use std::f64::consts::PI;

use crate::circuit::{Circuit, Gate, MAX_DENSE_QUBITS};
use crate::error::{Error, Result};

fn check_size(n_qubits: usize) -> Result<()> {
    if !(1..=MAX_DENSE_QUBITS).contains(&n_qubits) {
        Err(Error::UnsupportedSize(n_qubits))
    } else {
        Ok(())
    }
}

/// Inverse-DFT circuit up to bit reversal: the realized matrix is
/// P_rev * W^dagger with W[j,k] = exp(2*pi*i*j*k/N)/sqrt(N).
///
/// Targets run from the highest qubit down; each Hadamard is followed by
/// controlled phases -2*pi/2^(d+1) linking the target to each lower qubit
/// at bit distance d. The negative phase sign is pinned by the matrix
/// identity above (checked in tests) and, independently of DFT sign
/// conventions, by the exact kinetic-propagator test in the simulate
/// module.
pub fn build_qft_dagger(n_qubits: usize) -> Result<Circuit> {
    check_size(n_qubits)?;
    let mut circuit = Circuit::new(n_qubits);
    for target in (0..n_qubits).rev() {
        circuit.push(Gate::hadamard(target));
        for control in (0..target).rev() {
            let distance = target - control;
            let phase = -2.0 * PI / (1u64 << (distance + 1)) as f64;
            circuit.push(Gate::controlled_phase(&[control, target], phase));
        }
    }
    Ok(circuit)
}

/// Adjoint of [`build_qft_dagger`]; realizes W * P_rev.
pub fn build_qft(n_qubits: usize) -> Result<Circuit> {
    Ok(build_qft_dagger(n_qubits)?.adjoint())
}

/// Reverse the low `n_bits` bits of `index`.
pub fn bit_reverse(index: usize, n_bits: usize) -> usize {
    let mut out = 0;
    for bit in 0..n_bits {
        if index & (1 << bit) != 0 {
            out |= 1 << (n_bits - 1 - bit);
        }
    }
    out
}
