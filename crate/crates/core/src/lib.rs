//! Cyclotomic matrices involving squares over finite fields.
//!
//! The crate builds the matrices `B_q(m) = [(s_i + s_j)^m]` indexed by the
//! nonzero squares of `F_q`, the character matrices `D_q^±(ψ)` and the
//! classical Carlitz, Chapman and Sun matrices, evaluates their determinants
//! through independent engines, and checks the closed forms against them.
//! It also carries the Pell-sequence machinery used to locate the primes for
//! which `B_p((p-3)/2)` and `B_p((p-1)/2)` become singular.

pub mod arith;
pub mod cyclo;
pub mod chars;
pub mod error;
pub mod ff;
pub mod linalg;
pub mod padic;
pub mod pell;
pub mod search;
pub mod verify;

pub use arith::{ModRing, PrimePowerCtx, Rational};
pub use chars::Character;
pub use cyclo::CycNum;
pub use error::{Error, Result};
pub use ff::{FqCtx, FqElem};
pub use linalg::Matrix;
pub use verify::{CheckReport, Verdict};
