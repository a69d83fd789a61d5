//! Exact counting of Hamiltonian cycles, Hamiltonian paths and rooted
//! functional trees in weighted directed graphs.
//!
//! Every count is the value of a polynomial in the entries of an `n × n`
//! integer matrix `A`, evaluated exactly with arbitrary-precision integers:
//!
//! * Hamiltonian cycles: `Σ_{S ⊆ [n-1]} det(-A_S) · per(A_{[n]∖S})`
//! * Hamiltonian paths: `Σ_{i≠j, {i,j} ⊆ T ⊆ [n]} a_jj · det(-A)_{[n]∖T} · per(A)_{T∖{j}, T∖{i}}`
//! * rooted trees: `Σ_i a_ii · det(diag(A·1) - A)_{[n]∖{i}}`
//!
//! The [`oracles`] module holds brute-force enumerators for each of these and
//! [`symbolic`] re-derives the identities as polynomial identities for small
//! `n`.

pub mod error;
pub mod identities;
pub mod io;
pub mod linalg;
pub mod oracles;
pub mod random;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
pub use identities::{CountReport, EvalOptions, Method};
pub use linalg::{IndexSet, SquareMatrix};
pub use num_bigint::BigInt;
