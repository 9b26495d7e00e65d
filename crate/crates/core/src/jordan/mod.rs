//! Concrete Euclidean Jordan algebras.
//!
//! Three families are supported. `Rank1` is the field itself. `SymReal(r)` is
//! symmetric `r x r` matrices with `x∘y = (xy + yx)/2`, stored as the packed
//! upper triangle `(x11, x12, .., x1r, x22, ..)`. `Spin(n)` is `C^n` with unit
//! `e = (1, 0, .., 0)` and `x∘y = (x1 y1 + <x', y'>, x1 y' + y1 x')`.
//!
//! Elements carry complex coordinates; an element is real when every
//! imaginary part vanishes.

mod element;
mod iso;
mod linear;
mod spectral;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

pub use element::{mul, Element, ScalarKind};
pub use iso::{spin3_to_sym2, sym2_to_spin3};
pub use linear::{bmap_b, dmap_d, generic_norm, lmap_l, quad_p, LinearMap};
pub use spectral::{spectral, spectral_fn, spectral_norm, SpectralData, SpectralFn};

/// Which family an algebra belongs to, with its size parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum AlgebraKind {
    Rank1,
    SymReal(usize),
    Spin(usize),
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::Rank1 => write!(f, "rank1"),
            AlgebraKind::SymReal(r) => write!(f, "sym({r})"),
            AlgebraKind::Spin(n) => write!(f, "spin({n})"),
        }
    }
}

impl FromStr for AlgebraKind {
    type Err = Error;

    /// Accepts `rank1`, `sym(r)`, `symreal(r)`, `sym2`, `spin(n)`, `spin3` (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.trim().to_ascii_lowercase().chars().filter(|c| !c.is_whitespace()).collect();
        if t == "rank1" {
            return Ok(AlgebraKind::Rank1);
        }
        let bad = || Error::InvalidAlgebra(s.to_string());
        let split = |prefix: &str| -> Option<&str> {
            let rest = t.strip_prefix(prefix)?;
            let rest = rest.strip_prefix('(').map(|r| r.strip_suffix(')')).unwrap_or(Some(rest))?;
            Some(rest)
        };
        let kind = if let Some(p) = split("symreal").or_else(|| split("sym")) {
            AlgebraKind::SymReal(p.parse().map_err(|_| bad())?)
        } else if let Some(p) = split("spin") {
            AlgebraKind::Spin(p.parse().map_err(|_| bad())?)
        } else {
            return Err(bad());
        };
        JordanAlgebra::new(kind)?;
        Ok(kind)
    }
}

impl TryFrom<String> for AlgebraKind {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<AlgebraKind> for String {
    fn from(k: AlgebraKind) -> String {
        k.to_string()
    }
}

/// Largest supported `SymReal` rank and `Spin` dimension.
pub const MAX_SIZE: usize = 16;

/// A concrete simple Euclidean Jordan algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct JordanAlgebra {
    kind: AlgebraKind,
}

impl JordanAlgebra {
    pub fn new(kind: AlgebraKind) -> Result<Self> {
        match kind {
            AlgebraKind::Rank1 => {}
            AlgebraKind::SymReal(r) if (1..=MAX_SIZE).contains(&r) => {}
            AlgebraKind::Spin(n) if (3..=MAX_SIZE).contains(&n) => {}
            _ => return Err(Error::InvalidAlgebra(kind.to_string())),
        }
        Ok(Self { kind })
    }

    pub fn rank1() -> Self {
        Self { kind: AlgebraKind::Rank1 }
    }

    pub fn sym_real(r: usize) -> Result<Self> {
        Self::new(AlgebraKind::SymReal(r))
    }

    pub fn spin(n: usize) -> Result<Self> {
        Self::new(AlgebraKind::Spin(n))
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        match self.kind {
            AlgebraKind::Rank1 => 1,
            AlgebraKind::SymReal(r) => r,
            AlgebraKind::Spin(_) => 2,
        }
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            AlgebraKind::Rank1 => 1,
            AlgebraKind::SymReal(r) => r * (r + 1) / 2,
            AlgebraKind::Spin(n) => n,
        }
    }

    /// Peirce constant `d`.
    pub fn peirce_d(&self) -> f64 {
        match self.kind {
            AlgebraKind::Rank1 => 0.0,
            AlgebraKind::SymReal(_) => 1.0,
            AlgebraKind::Spin(n) => (n - 2) as f64,
        }
    }

    /// `n / r`.
    pub fn n_over_r(&self) -> f64 {
        self.dim() as f64 / self.rank() as f64
    }

    pub fn zero(&self) -> Element {
        Element::from_parts(*self, vec![C64::new(0.0, 0.0); self.dim()])
    }

    pub fn unit(&self) -> Element {
        let mut c = vec![C64::new(0.0, 0.0); self.dim()];
        match self.kind {
            AlgebraKind::Rank1 | AlgebraKind::Spin(_) => c[0] = C64::new(1.0, 0.0),
            AlgebraKind::SymReal(r) => {
                for i in 0..r {
                    c[sym_idx(r, i, i)] = C64::new(1.0, 0.0);
                }
            }
        }
        Element::from_parts(*self, c)
    }

    /// The `i`-th coordinate basis vector.
    pub fn basis(&self, i: usize) -> Element {
        let mut c = vec![C64::new(0.0, 0.0); self.dim()];
        c[i] = C64::new(1.0, 0.0);
        Element::from_parts(*self, c)
    }

    /// The fixed Jordan frame `e_1, .., e_r`.
    pub fn frame(&self) -> Vec<Element> {
        match self.kind {
            AlgebraKind::Rank1 => vec![self.unit()],
            AlgebraKind::SymReal(r) => (0..r).map(|i| self.basis(sym_idx(r, i, i))).collect(),
            AlgebraKind::Spin(n) => {
                let mut c1 = vec![0.0; n];
                let mut c2 = vec![0.0; n];
                c1[0] = 0.5;
                c1[1] = 0.5;
                c2[0] = 0.5;
                c2[1] = -0.5;
                vec![Element::real_unchecked(*self, &c1), Element::real_unchecked(*self, &c2)]
            }
        }
    }

    /// The element `Σ a_j e_j` over the fixed frame.
    pub fn frame_diag(&self, a: &[C64]) -> Result<Element> {
        if a.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: a.len() });
        }
        let mut out = self.zero();
        for (aj, ej) in a.iter().zip(self.frame()) {
            out = &out + &ej.scale(*aj);
        }
        Ok(out)
    }

    /// Builds an element from complex coordinates.
    pub fn element(&self, coords: Vec<C64>) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: coords.len() });
        }
        Ok(Element::from_parts(*self, coords))
    }

    /// Builds an element from real coordinates.
    pub fn real(&self, coords: &[f64]) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: coords.len() });
        }
        Ok(Element::real_unchecked(*self, coords))
    }

    /// Factors `s_i` such that `(s_i x_i)` are coordinates in a basis that is
    /// orthonormal for the trace form.
    pub fn orthonormal_scales(&self) -> Vec<f64> {
        match self.kind {
            AlgebraKind::Rank1 => vec![1.0],
            AlgebraKind::SymReal(r) => {
                let mut s = Vec::with_capacity(self.dim());
                for i in 0..r {
                    for j in i..r {
                        s.push(if i == j { 1.0 } else { std::f64::consts::SQRT_2 });
                    }
                }
                s
            }
            AlgebraKind::Spin(n) => vec![std::f64::consts::SQRT_2; n],
        }
    }

    /// Density of trace-form Lebesgue measure with respect to raw coordinates.
    pub fn measure_factor(&self) -> f64 {
        self.orthonormal_scales().iter().product()
    }
}

impl fmt::Display for JordanAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

/// Packed index of entry `(i, j)` of an `r x r` symmetric matrix.
#[inline]
pub(crate) fn sym_idx(r: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * r - i * (i + 1) / 2 + j
}
