use std::ops::{Add, Neg, Sub};

use nalgebra::DMatrix;

use super::{sym_idx, AlgebraKind, JordanAlgebra};
use crate::error::{Error, Result};
use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Real,
    Complex,
}

/// A point of the algebra, tagged with the algebra it lives in.
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    alg: JordanAlgebra,
    coords: Vec<C64>,
}

impl Element {
    pub(crate) fn from_parts(alg: JordanAlgebra, coords: Vec<C64>) -> Self {
        debug_assert_eq!(coords.len(), alg.dim());
        Self { alg, coords }
    }

    pub(crate) fn real_unchecked(alg: JordanAlgebra, coords: &[f64]) -> Self {
        Self::from_parts(alg, coords.iter().map(|&v| C64::new(v, 0.0)).collect())
    }

    pub fn algebra(&self) -> JordanAlgebra {
        self.alg
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }

    pub fn scalar_kind(&self) -> ScalarKind {
        if self.coords.iter().all(|c| c.im == 0.0) {
            ScalarKind::Real
        } else {
            ScalarKind::Complex
        }
    }

    pub fn is_real(&self) -> bool {
        self.scalar_kind() == ScalarKind::Real
    }

    /// Real parts of the coordinates.
    pub fn re_coords(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.re).collect()
    }

    pub fn re(&self) -> Element {
        self.map(|c| C64::new(c.re, 0.0))
    }

    pub fn im(&self) -> Element {
        self.map(|c| C64::new(c.im, 0.0))
    }

    /// Complex conjugate with respect to the real form.
    pub fn conj(&self) -> Element {
        self.map(|c| c.conj())
    }

    pub fn scale(&self, s: C64) -> Element {
        self.map(|c| c * s)
    }

    pub fn scale_re(&self, s: f64) -> Element {
        self.map(|c| c * s)
    }

    fn map(&self, f: impl Fn(C64) -> C64) -> Element {
        Element::from_parts(self.alg, self.coords.iter().map(|&c| f(c)).collect())
    }

    pub(crate) fn check_same(&self, other: &Element) -> Result<()> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch(self.alg.kind(), other.alg.kind()));
        }
        Ok(())
    }

    /// Largest coordinate modulus.
    pub fn max_abs(&self) -> f64 {
        self.coords.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// Largest coordinate-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Element) -> f64 {
        assert_eq!(self.alg, other.alg, "algebra mismatch");
        self.coords.iter().zip(&other.coords).fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// Jordan product.
    pub fn jordan_mul(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Ok(self.mul_raw(other))
    }

    pub(crate) fn mul_raw(&self, other: &Element) -> Element {
        let x = &self.coords;
        let y = &other.coords;
        let out = match self.alg.kind() {
            AlgebraKind::Rank1 => vec![x[0] * y[0]],
            AlgebraKind::Spin(n) => {
                let mut o = vec![C64::new(0.0, 0.0); n];
                let mut s = x[0] * y[0];
                for i in 1..n {
                    s += x[i] * y[i];
                    o[i] = x[0] * y[i] + y[0] * x[i];
                }
                o[0] = s;
                o
            }
            AlgebraKind::SymReal(r) => {
                let mut o = vec![C64::new(0.0, 0.0); x.len()];
                for i in 0..r {
                    for j in i..r {
                        let mut s = C64::new(0.0, 0.0);
                        for k in 0..r {
                            s += x[sym_idx(r, i, k)] * y[sym_idx(r, k, j)]
                                + y[sym_idx(r, i, k)] * x[sym_idx(r, k, j)];
                        }
                        o[sym_idx(r, i, j)] = s * 0.5;
                    }
                }
                o
            }
        };
        Element::from_parts(self.alg, out)
    }

    pub fn square(&self) -> Element {
        self.mul_raw(self)
    }

    /// `x^k` by repeated Jordan multiplication (power associativity).
    pub fn powi(&self, k: u32) -> Element {
        let mut acc = self.alg.unit();
        for _ in 0..k {
            acc = acc.mul_raw(self);
        }
        acc
    }

    pub fn trace(&self) -> C64 {
        let x = &self.coords;
        match self.alg.kind() {
            AlgebraKind::Rank1 => x[0],
            AlgebraKind::Spin(_) => x[0] * 2.0,
            AlgebraKind::SymReal(r) => (0..r).map(|i| x[sym_idx(r, i, i)]).sum(),
        }
    }

    pub fn det(&self) -> C64 {
        let x = &self.coords;
        match self.alg.kind() {
            AlgebraKind::Rank1 => x[0],
            AlgebraKind::Spin(n) => x[0] * x[0] - (1..n).map(|i| x[i] * x[i]).sum::<C64>(),
            AlgebraKind::SymReal(1) => x[0],
            AlgebraKind::SymReal(2) => x[0] * x[2] - x[1] * x[1],
            AlgebraKind::SymReal(_) => self.to_matrix().determinant(),
        }
    }

    /// Trace form `(x|y) = tr(x∘y)`.
    pub fn inner(&self, other: &Element) -> Result<C64> {
        self.check_same(other)?;
        Ok(self.inner_raw(other))
    }

    pub(crate) fn inner_raw(&self, other: &Element) -> C64 {
        let x = &self.coords;
        let y = &other.coords;
        match self.alg.kind() {
            AlgebraKind::Rank1 => x[0] * y[0],
            AlgebraKind::Spin(_) => x.iter().zip(y).map(|(a, b)| a * b).sum::<C64>() * 2.0,
            AlgebraKind::SymReal(r) => {
                let mut s = C64::new(0.0, 0.0);
                for i in 0..r {
                    for j in i..r {
                        let k = sym_idx(r, i, j);
                        let w = if i == j { 1.0 } else { 2.0 };
                        s += x[k] * y[k] * w;
                    }
                }
                s
            }
        }
    }

    /// Jordan inverse.
    pub fn inverse(&self) -> Result<Element> {
        let scale = self.max_abs();
        if scale == 0.0 || !scale.is_finite() {
            return Err(Error::Singular);
        }
        match self.alg.kind() {
            AlgebraKind::Rank1 | AlgebraKind::SymReal(1) => Ok(self.map(|c| c.inv())),
            AlgebraKind::Spin(_) | AlgebraKind::SymReal(2) => {
                let d = self.det();
                if d.norm() <= 1e-14 * scale * scale {
                    return Err(Error::Singular);
                }
                let t = self.trace();
                Ok((&self.alg.unit().scale(t) - self).scale(d.inv()))
            }
            AlgebraKind::SymReal(r) => {
                let m = self.to_matrix();
                let inv = m.try_inverse().ok_or(Error::Singular)?;
                let bound = inv.iter().fold(0.0f64, |a, c| a.max(c.norm()));
                if !bound.is_finite() || bound * scale > 1e14 * r as f64 {
                    return Err(Error::Singular);
                }
                Ok(Element::from_matrix_sym(self.alg, &inv))
            }
        }
    }

    /// Matrix form (`SymReal` and `Rank1` only).
    pub fn to_matrix(&self) -> DMatrix<C64> {
        match self.alg.kind() {
            AlgebraKind::Rank1 => DMatrix::from_element(1, 1, self.coords[0]),
            AlgebraKind::SymReal(r) => DMatrix::from_fn(r, r, |i, j| self.coords[sym_idx(r, i, j)]),
            AlgebraKind::Spin(_) => panic!("spin factor elements have no matrix form"),
        }
    }

    /// Inverse of [`Element::to_matrix`], symmetrising the input.
    pub fn from_matrix_sym(alg: JordanAlgebra, m: &DMatrix<C64>) -> Element {
        match alg.kind() {
            AlgebraKind::Rank1 => Element::from_parts(alg, vec![m[(0, 0)]]),
            AlgebraKind::SymReal(r) => {
                let mut c = vec![C64::new(0.0, 0.0); alg.dim()];
                for i in 0..r {
                    for j in i..r {
                        c[sym_idx(r, i, j)] = (m[(i, j)] + m[(j, i)]) * 0.5;
                    }
                }
                Element::from_parts(alg, c)
            }
            AlgebraKind::Spin(_) => panic!("spin factor elements have no matrix form"),
        }
    }

    /// Checked sum.
    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Ok(self + other)
    }

    /// Checked difference.
    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Ok(self - other)
    }
}

/// Jordan product of two elements of the same algebra.
pub fn mul(x: &Element, y: &Element) -> Result<Element> {
    x.jordan_mul(y)
}

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;
    /// # Panics
    /// On algebra mismatch; use [`Element::try_add`] for a checked variant.
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.alg, rhs.alg, "algebra mismatch");
        Element::from_parts(self.alg, self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;
    /// # Panics
    /// On algebra mismatch; use [`Element::try_sub`] for a checked variant.
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.alg, rhs.alg, "algebra mismatch");
        Element::from_parts(self.alg, self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.map(|c| -c)
    }
}
