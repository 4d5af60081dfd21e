//! Exact arithmetic over complete non-Archimedean valued fields and algebras.
//!
//! * [`valcore`]: value ranks, absolute values, the trivial valuation and the
//!   product formula over `Q`.
//! * [`padic`]: fixed-precision `Q_p` with tracked absolute precision.
//! * [`laurent`]: truncated Laurent series over `F_p`.
//! * [`quadext`]: unramified quadratic extensions `Q_p(sqrt u)`.
//! * [`quaternion`]: quaternion algebras `(s,t / F)`.
//! * [`funcalg`]: finite models of the closed unit ball of `Q_p(sqrt u)` and
//!   of function algebras on it.
//! * [`cli`]: text reports behind the `nonarch` binary.

pub mod cli;
pub mod error;
pub mod expr;
pub mod funcalg;
pub mod laurent;
pub mod padic;
pub mod quadext;
pub mod quaternion;
pub mod valcore;

pub use error::{Error, Result};
pub use laurent::LaurentSeries;
pub use padic::Padic;
pub use quadext::{QuadElement, QuadField};
pub use quaternion::{Quaternion, QuaternionAlgebra};
pub use valcore::{AbsValue, FieldElement, Scalar, ValRank};
