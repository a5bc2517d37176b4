//! Exact computations with Noetherian operators on non-reduced spaces
//! `X = (U, O_U/J)`, where `U` has coordinates `(z, w)` and `J` contains a
//! power of `(w)`.

pub mod cm;
pub mod diffop;
pub mod error;
pub mod linalg;
pub mod membership;
pub mod noetherian;
pub mod poly;

pub use diffop::{DiffOp, OpKey, TiltMatrix};
pub use error::{Error, Result};
pub use noetherian::{CHDatum, IdealSpec, NoetherianGens};
pub use poly::{Dims, Monomial, MultiIndex, Poly, RatFunc, Rational};
