//! Numerics for Euclidean Jordan algebras of rank at most two (plus `Sym(r, R)`),
//! symmetric-cone geometry and scalar holographic operators.
//!
//! The crate is organised bottom-up:
//!
//! * [`jordan`]: algebras, elements, the operator calculus `L`, `P`, `D`, `B`
//!   and the spectral functional calculus.
//! * [`geometry`]: cones, tubes, bounded domains, generator actions and the
//!   reference-domain chart used to parametrise contours.
//! * [`special`]: complex log-gamma, the cone gamma function, Pochhammer
//!   symbols, beta constants and generalized power functions.
//! * [`quadrature`]: rules over the matrix interval `0 < z < e` and the cone.
//! * [`operators`]: the scalar holographic operator, its rank-one
//!   specialisations and Rankin–Cohen brackets.

pub mod error;
pub mod geometry;
pub mod jordan;
pub mod operators;
pub mod quadrature;
pub mod special;

pub use error::{Error, Result};
pub use jordan::{AlgebraKind, Element, JordanAlgebra, LinearMap, ScalarKind};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Shorthand for building a complex scalar.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
