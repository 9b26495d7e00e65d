use nalgebra::DMatrix;

use super::{AlgebraKind, Element, JordanAlgebra};
use crate::error::{Error, Result};
use crate::C64;

/// A complex-linear endomorphism of the algebra, as a matrix on coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    alg: JordanAlgebra,
    m: DMatrix<C64>,
}

impl LinearMap {
    pub fn identity(alg: JordanAlgebra) -> Self {
        Self { alg, m: DMatrix::identity(alg.dim(), alg.dim()) }
    }

    pub fn from_matrix(alg: JordanAlgebra, m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != alg.dim() || m.ncols() != alg.dim() {
            return Err(Error::DimensionMismatch { expected: alg.dim(), got: m.nrows() });
        }
        Ok(Self { alg, m })
    }

    /// Builds the map whose `j`-th column is `f(b_j)`.
    pub fn from_fn(alg: JordanAlgebra, f: impl Fn(&Element) -> Element) -> Self {
        let n = alg.dim();
        let mut m = DMatrix::zeros(n, n);
        for j in 0..n {
            let col = f(&alg.basis(j));
            for i in 0..n {
                m[(i, j)] = col.coords()[i];
            }
        }
        Self { alg, m }
    }

    pub fn algebra(&self) -> JordanAlgebra {
        self.alg
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.algebra() != self.alg {
            return Err(Error::AlgebraMismatch(self.alg.kind(), x.algebra().kind()));
        }
        Ok(self.apply_raw(x))
    }

    pub(crate) fn apply_raw(&self, x: &Element) -> Element {
        let n = self.alg.dim();
        let c = x.coords();
        let out = (0..n).map(|i| (0..n).map(|j| self.m[(i, j)] * c[j]).sum()).collect();
        Element::from_parts(self.alg, out)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        self.check_same(other)?;
        Ok(Self { alg: self.alg, m: &self.m * &other.m })
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        self.check_same(other)?;
        Ok(Self { alg: self.alg, m: &self.m + &other.m })
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        self.check_same(other)?;
        Ok(Self { alg: self.alg, m: &self.m - &other.m })
    }

    pub fn scale(&self, s: C64) -> LinearMap {
        Self { alg: self.alg, m: self.m.map(|v| v * s) }
    }

    pub fn det(&self) -> C64 {
        self.m.determinant()
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        let inv = self.m.clone().try_inverse().ok_or(Error::Singular)?;
        if inv.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Singular);
        }
        Ok(Self { alg: self.alg, m: inv })
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().fold(0.0, |a, v| a.max(v.norm()))
    }

    pub fn max_abs_diff(&self, other: &LinearMap) -> f64 {
        assert_eq!(self.alg, other.alg, "algebra mismatch");
        self.m.iter().zip(other.m.iter()).fold(0.0, |a, (x, y)| a.max((x - y).norm()))
    }

    /// Matrix of the map in a trace-form orthonormal basis.
    pub fn orthonormal_matrix(&self) -> DMatrix<C64> {
        let s = self.alg.orthonormal_scales();
        let n = self.alg.dim();
        DMatrix::from_fn(n, n, |i, j| self.m[(i, j)] * (s[i] / s[j]))
    }

    /// Operator norm with respect to the Hermitian trace form.
    pub fn op_norm(&self) -> f64 {
        let o = self.orthonormal_matrix();
        o.singular_values().iter().fold(0.0, |a, &v| a.max(v))
    }

    fn check_same(&self, other: &LinearMap) -> Result<()> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch(self.alg.kind(), other.alg.kind()));
        }
        Ok(())
    }
}

/// Multiplication operator `L(x)z = x∘z`.
pub fn lmap_l(x: &Element) -> LinearMap {
    LinearMap::from_fn(x.algebra(), |b| x.mul_raw(b))
}

/// Quadratic representation `P(x) = 2L(x)^2 - L(x^2)`.
pub fn quad_p(x: &Element) -> LinearMap {
    let x2 = x.square();
    LinearMap::from_fn(x.algebra(), |b| {
        let xb = x.mul_raw(b);
        &x.mul_raw(&xb).scale_re(2.0) - &x2.mul_raw(b)
    })
}

/// `D(x, y) = 2(L(x)L(y) - L(y)L(x) + L(x∘y))`.
pub fn dmap_d(x: &Element, y: &Element) -> Result<LinearMap> {
    x.check_same(y)?;
    let xy = x.mul_raw(y);
    Ok(LinearMap::from_fn(x.algebra(), |b| {
        let a = x.mul_raw(&y.mul_raw(b));
        let c = y.mul_raw(&x.mul_raw(b));
        (&(&a - &c) + &xy.mul_raw(b)).scale_re(2.0)
    }))
}

/// Bergman operator `B(x, y) = I - D(x, y) + P(x)P(y)`.
pub fn bmap_b(x: &Element, y: &Element) -> Result<LinearMap> {
    let d = dmap_d(x, y)?;
    let pp = quad_p(x).compose(&quad_p(y))?;
    LinearMap::identity(x.algebra()).sub(&d)?.add(&pp)
}

/// Generic norm `h(x, y)`, complex bilinear in both arguments, normalised by
/// `h(0, 0) = 1` and `Det B(x, y) = h(x, y)^(2n/r)`. Points of the bounded
/// domain use `h(x, conj x)`.
pub fn generic_norm(x: &Element, y: &Element) -> Result<C64> {
    x.check_same(y)?;
    let one = C64::new(1.0, 0.0);
    Ok(match x.algebra().kind() {
        AlgebraKind::Rank1 | AlgebraKind::SymReal(1) => one - x.coords()[0] * y.coords()[0],
        AlgebraKind::Spin(_) | AlgebraKind::SymReal(2) => one - x.inner_raw(y) + x.det() * y.det(),
        AlgebraKind::SymReal(r) => {
            let m = DMatrix::<C64>::identity(r, r) - x.to_matrix() * y.to_matrix();
            m.determinant()
        }
    })
}
