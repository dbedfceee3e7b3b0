//! Digital quantum simulation of particle tunneling on 2^n-point
//! lattices.
//!
//! The library builds first-order split-operator time steps as quantum
//! circuits over four gate kinds (Hadamard, Z rotation, controlled phase,
//! multi-controlled phase): the kinetic propagator is a swap-free QFT
//! conjugating a diagonal synthesized over the Z-product basis, and the
//! square-well potential costs a single Z rotation per step. A dense
//! linear-algebra oracle built independently from the same formulas
//! cross-checks every circuit.
//!
//! Modules:
//! - [`qstate`]: dense state vector and gate kernels
//! - [`circuit`]: gate IR, census, adjoint, dense realization
//! - [`qft`]: swap-free (bit-reversing) QFT builders
//! - [`diagsynth`]: diagonal decomposition and gate synthesis
//! - [`simulate`]: step-circuit assembly and multi-step runs
//! - [`oracle`]: exact dense evolution and Trotter-error measurement
//! - [`cli`]: config parsing and report/CSV/PGM emitters

pub mod circuit;
pub mod cli;
pub mod diagsynth;
pub mod error;
pub mod oracle;
pub mod qft;
pub mod qstate;
pub mod simulate;

pub use error::{Error, Result};
