//! Exact computations on square-free monomial ideals through the extremal
//! ideal `E_q` and the ring map `ψ_I`.
//!
//! Integral closures, symbolic powers, irreducible decompositions and Betti
//! numbers of powers of an ideal `I` with `q` square-free generators are
//! obtained by computing once for `E_q` and transporting the answer with
//! `ψ_I`. Every membership decision is made in exact rational arithmetic.

pub mod betti;
pub mod closure;
pub mod decomposition;
pub mod error;
pub mod extremal;
pub mod format;
pub mod ideal;
pub mod limits;
pub mod linalg;
pub mod lp;
pub mod monomial;
pub mod psi;
pub mod random;
pub mod symbolic;

pub use betti::BettiTable;
pub use decomposition::IrreducibleComponent;
pub use error::{Error, Result};
pub use extremal::{ExtremalExponent, ExtremalRing, SubsetMask};
pub use ideal::MonomialIdeal;
pub use limits::Limits;
pub use monomial::{Monomial, Ring, RingId, Variable};
pub use psi::PsiMap;
