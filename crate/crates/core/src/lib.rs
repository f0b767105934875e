//! Exact certification of p-adic equiangular line configurations in `Q_p^d`.
//!
//! A family `tau_1, ..., tau_n` in `Q_p^d` is *(gamma, a)-equiangular* when
//! every `<tau_j, tau_j>` equals `a`, every off-diagonal pairing has the same
//! p-adic absolute value `gamma`, and the frame operator
//! `S = sum_j tau_j tau_j^T` is diagonalizable over `Q_p` with eigenvalues
//! satisfying `|sum lambda|^2 <= |d| |sum lambda^2|`. Such families obey the
//! relative bound `|n|^2 <= |d| max(|n|, gamma^2 / |a|^2)`.
//!
//! Everything is computed exactly over `Q`: see [`padic`] for valuations and
//! absolute values, [`linalg`] for frame operators and eigenvalue evidence,
//! [`equiangular`] for certification and bounds, and [`search`] for the
//! exhaustive lattice search.

mod arith;
pub mod equiangular;
pub mod error;
pub mod linalg;
pub mod padic;
pub mod search;

pub use equiangular::{
    certify, BoundName, BoundReport, BoundValue, Certificate, Configuration, Evidence, Verdict,
};
pub use error::{Error, Result};
pub use linalg::{Matrix, Polynomial, Vector};
pub use padic::{abs_max, abs_p, valuation, PadicAbs, Prime, Rational, Valuation};
pub use search::{run_search, SearchResult, SearchSpace};
