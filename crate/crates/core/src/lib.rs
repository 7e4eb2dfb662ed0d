//! Qutrit magic state distillation in the discrete phase-space picture.
//!
//! This crate simulates 4-to-1 magic state distillation routines for qutrits
//! and the phase-space geometry that decides which states they can purify:
//!
//! - [`gf`]: exact arithmetic over ℤ_d and the symplectic groups
//!   SL(2,ℤ_d) / PSL(2,ℤ_d);
//! - [`pauli`]: generalized Pauli (displacement) operators and the
//!   single-qudit Clifford unitaries U_F;
//! - [`wigner`]: phase-point operators, the discrete Wigner function,
//!   sum-negativity, and membership tests for the Wigner and stabilizer
//!   polytopes;
//! - [`abb`]: the Bloch-like sphere of states in the `(a,b,b)` eigenspace
//!   of the A₀,₀ phase-point operator, and its twelve Clifford-equivalent
//!   wedges;
//! - [`codes`]: `[[4,1,2]]₃` stabilizer codes from `(x|z)` generator
//!   tables, their trivial-syndrome projectors and decoding isometries;
//! - [`distill`]: one distillation round, fixed-point iteration, and
//!   depolarizing-noise thresholds along magic state axes;
//! - [`search`]: seeded randomized search over four-qutrit codes,
//!   classified by the limiting states they distill towards.
//!
//! Everything is deterministic: dense complex matrices, a self-contained
//! phase-1 simplex for polytope membership, and counter-seeded RNG streams
//! for the code search. The crate is `no_std` (with `alloc`); IO and file
//! formats live in the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod abb;
pub mod codes;
pub mod distill;
mod error;
pub mod gf;
pub mod linalg;
pub mod pauli;
pub mod search;
mod simplex;
pub mod wigner;

pub use error::Error;
pub use linalg::Operator;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Entrywise max-modulus tolerance for operator comparisons. All operator
/// constructions here are exact up to rounding of `e^{2πi/3}`.
pub const OP_TOL: f64 = 1e-10;
