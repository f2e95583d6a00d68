//! Wigner–Yanase skew information as a multi-qubit entanglement witness.
//!
//! The separable bound `I(ρ, A_1 + ... + A_n) ≤ n` holds for every separable
//! state and any local spin observables `A_j` (`A_j² = 1`). States whose
//! blocks cover at most `k` particles obey the sharper bound `E_k`, so the
//! optimized value [`optimizer::nonlocal_skew_information`] certifies a
//! lower bound on entanglement depth through [`classify::classify`].
//!
//! Module map:
//!
//! - [`linalg`]: dense Hermitian algebra, spectral decomposition, PSD roots
//! - [`states`]: GHZ, generalized GHZ, Werner-like mixtures, products, random states
//! - [`observables`]: Pauli/Bloch spin observables and local sums
//! - [`skew`]: skew information (trace form, commutator form, pure variance)
//! - [`bounds`]: `E_k`, Werner thresholds and other closed forms
//! - [`optimizer`]: multi-start search for the nonlocal skew information
//! - [`classify`]: entanglement-depth verdicts and `E_k` attaining states
//! - [`cli`], [`io`]: command implementations, reports and the state file format

// `!(x <= tol)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod classify;
pub mod cli;
pub mod error;
pub mod exec;
pub mod io;
pub mod linalg;
pub mod nelder_mead;
pub mod observables;
pub mod optimizer;
pub mod skew;
pub mod states;

pub use error::{Error, Result};
pub use exec::Execution;
