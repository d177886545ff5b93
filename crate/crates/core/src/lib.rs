//! Noiseless subsystems of universal collective rotation channels.
//!
//! A universal collective rotation channel acts on `n` qudits of dimension `d`
//! by averaging conjugations `exp(i theta u_n(x))`, where `u_n(x)` applies the
//! same single-qudit Hermitian `x` to every tensor factor. For a maximal
//! generator set its fixed-point algebra is the algebra spanned by the qudit
//! permutations, whose block structure is read off from Young tableaux:
//!
//! ```text
//! Fix(E) = sum over partitions lambda of  M_{dim S^lambda} (x) 1_{m_{lambda,d}}
//! ```
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! - [`combinatorics`]: partitions, standard and semistandard tableaux, Specht
//!   dimensions, Kostka numbers and the multiplicities `m_{lambda,d}`.
//! - [`spechtspace`]: exact integer vectors spanning each isotypic component,
//!   their equivariant orthonormalization and the central projections.
//! - [`linalg`]: the dense complex kernel (Kronecker products, Hermitian
//!   eigensolver, exponentials, partial traces).
//! - [`channel`]: channel construction, application and noiseless encoding.
//! - [`verify`]: brute-force numerical oracles for the block structure.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod channel;
pub mod combinatorics;
pub mod error;
pub mod linalg;
pub mod spechtspace;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix, C64};

/// Size caps guarding the dense constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest admissible state-space dimension `d^n`.
    pub state_cap: usize,
    /// Largest stabilizer subgroup that may be materialized.
    pub stabilizer_cap: usize,
    /// Largest operator size `N` accepted by the commutant oracle (`N^2` unknowns).
    pub oracle_cap: usize,
    /// Largest `d^n` accepted by the channel-superoperator oracle.
    pub superoperator_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            state_cap: 4096,
            stabilizer_cap: 1_000_000,
            oracle_cap: 81,
            superoperator_cap: 32,
        }
    }
}
