//! Rankin–Cohen brackets on polynomials and the `sl(2)` actions they intertwine.
//!
//! Coefficients are generic over [`RcScalar`], so brackets can be computed
//! exactly over `BigRational` or in floating point over `C64`.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::traits::{One, Zero};
use num::{BigInt, BigRational};

use crate::error::{Error, Result};
use crate::C64;

use super::kp::{kp_closed_form, kp_holo_1d};
use super::ScalarFunction;

/// Coefficient field for polynomial brackets.
pub trait RcScalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

impl RcScalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl RcScalar for C64 {
    fn from_i64(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }
}

impl RcScalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

/// Univariate polynomial `Σ c_a z^a`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly1<T>(BTreeMap<u32, T>);

/// Bivariate polynomial `Σ c_{a,b} x^a y^b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly2<T>(BTreeMap<(u32, u32), T>);

fn insert<K: Ord, T: RcScalar>(m: &mut BTreeMap<K, T>, key: K, c: T) {
    let v = match m.remove(&key) {
        Some(old) => old + c,
        None => c,
    };
    if !v.is_zero() {
        m.insert(key, v);
    }
}

impl<T: RcScalar> Default for Poly1<T> {
    fn default() -> Self {
        Poly1(BTreeMap::new())
    }
}

impl<T: RcScalar> Poly1<T> {
    pub fn monomial(a: u32, c: T) -> Self {
        let mut p = Self::default();
        p.add_term(a, c);
        p
    }

    pub fn add_term(&mut self, a: u32, c: T) {
        insert(&mut self.0, a, c);
    }

    pub fn coeff(&self, a: u32) -> T {
        self.0.get(&a).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &T)> {
        self.0.iter().map(|(a, c)| (*a, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::default();
        for (&a, c) in &self.0 {
            if a > 0 {
                out.add_term(a - 1, c.clone() * T::from_i64(a as i64));
            }
        }
        out
    }

    fn shift(&self, by: u32, s: &T) -> Self {
        let mut out = Self::default();
        for (&a, c) in &self.0 {
            out.add_term(a + by, c.clone() * s.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&a, c) in &other.0 {
            out.add_term(a, c.clone());
        }
        out
    }
}

impl<T: RcScalar> Default for Poly2<T> {
    fn default() -> Self {
        Poly2(BTreeMap::new())
    }
}

impl<T: RcScalar> Poly2<T> {
    pub fn monomial(a: u32, b: u32, c: T) -> Self {
        let mut p = Self::default();
        p.add_term(a, b, c);
        p
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: T) {
        insert(&mut self.0, (a, b), c);
    }

    pub fn coeff(&self, a: u32, b: u32) -> T {
        self.0.get(&(a, b)).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &T)> {
        self.0.iter().map(|(k, c)| (*k, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &other.0 {
            out.add_term(a, b, c.clone());
        }
        out
    }

    /// Applies a one-variable operator to the `x` (or `y`) slot, coefficient by
    /// coefficient in the other variable.
    fn map_slot(&self, in_x: bool, op: impl Fn(&Poly1<T>) -> Poly1<T>) -> Self {
        let mut slices: BTreeMap<u32, Poly1<T>> = BTreeMap::new();
        for (&(a, b), c) in &self.0 {
            let (inner, outer) = if in_x { (a, b) } else { (b, a) };
            slices.entry(outer).or_default().add_term(inner, c.clone());
        }
        let mut out = Self::default();
        for (outer, p) in slices {
            for (inner, c) in op(&p).terms() {
                let (a, b) = if in_x { (inner, outer) } else { (outer, inner) };
                out.add_term(a, b, c.clone());
            }
        }
        out
    }
}

/// Infinitesimal generators of the weight-`λ` action of `sl(2)` on functions
/// of one variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl2Generator {
    /// `∂_x`
    Translation,
    /// `2x ∂_x + λ`
    Dilation,
    /// `x² ∂_x + λ x`
    Inversion,
}

impl Sl2Generator {
    pub const ALL: [Sl2Generator; 3] = [Sl2Generator::Translation, Sl2Generator::Dilation, Sl2Generator::Inversion];
}

/// Weight-`λ` action of `gen` on a polynomial in one variable.
pub fn sl2_action<T: RcScalar>(gen: Sl2Generator, weight: &T, p: &Poly1<T>) -> Poly1<T> {
    let d = p.derivative();
    match gen {
        Sl2Generator::Translation => d,
        Sl2Generator::Dilation => d.shift(1, &T::from_i64(2)).add(&p.shift(0, weight)),
        Sl2Generator::Inversion => d.shift(2, &T::one()).add(&p.shift(1, weight)),
    }
}

/// Tensor-product action with weights `λ` on `x` and `μ` on `y`.
pub fn sl2_action_pair<T: RcScalar>(gen: Sl2Generator, lambda: &T, mu: &T, f: &Poly2<T>) -> Poly2<T> {
    let ax = f.map_slot(true, |p| sl2_action(gen, lambda, p));
    let ay = f.map_slot(false, |p| sl2_action(gen, mu, p));
    ax.add(&ay)
}

fn pochhammer<T: RcScalar>(a: &T, m: u32) -> T {
    (0..m).fold(T::one(), |acc, i| acc * (a.clone() + T::from_i64(i as i64)))
}

fn falling(n: u32, m: u32) -> i64 {
    (0..m).map(|i| (n - i) as i64).product()
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

/// Rankin–Cohen bracket
/// `Σ_j (-1)^j (λ+l-j)_j (μ+j)_{l-j} / (j! (l-j)!) ∂^l f / ∂x^(l-j) ∂y^j` on `x = y = z`.
pub fn rankin_cohen<T: RcScalar>(lambda: &T, mu: &T, l: u32, f: &Poly2<T>) -> Poly1<T> {
    let lt = T::from_i64(l as i64);
    let mut out = Poly1::default();
    for j in 0..=l {
        let sign = if j % 2 == 0 { T::one() } else { -T::one() };
        let c = sign
            * pochhammer(&(lambda.clone() + lt.clone() - T::from_i64(j as i64)), j)
            * pochhammer(&(mu.clone() + T::from_i64(j as i64)), l - j)
            / T::from_i64(factorial(j) * factorial(l - j));
        if c.is_zero() {
            continue;
        }
        for ((a, b), fc) in f.terms() {
            if a >= l - j && b >= j {
                let k = T::from_i64(falling(a, l - j) * falling(b, j));
                out.add_term(a + b - l, c.clone() * fc.clone() * k);
            }
        }
    }
    out
}

const PROBE: (C64, C64) = (C64::new(0.35, 1.2), C64::new(-0.25, 0.7));

/// `RC_l(F_l w^j) / w^j` for `j = 0..=degree_cap`, where `F_l` is the
/// Kobayashi–Pevzner operator. Each bivariate image is taken from its closed
/// form after checking it against the Gauss–Jacobi evaluation at a probe point.
pub fn rc_kp_composition(lambda: C64, mu: C64, l: u32, degree_cap: u32) -> Result<Vec<C64>> {
    let (px, py) = PROBE;
    let mut out = Vec::with_capacity(degree_cap as usize + 1);
    for j in 0..=degree_cap {
        let mut poly = Poly2::<C64>::default();
        for ((a, b), c) in kp_closed_form(lambda, mu, l, j)? {
            poly.add_term(a, b, c);
        }
        let quad = kp_holo_1d(lambda, mu, l, &ScalarFunction::Monomial(vec![j]), px, py)?;
        let closed: C64 = poly.terms().map(|((a, b), c)| c * px.powu(a) * py.powu(b)).sum();
        if (quad - closed).norm() > 1e-8 * closed.norm().max(1e-300) {
            return Err(Error::Numerical(format!("KP closed form disagrees with quadrature for w^{j}")));
        }
        let rc = rankin_cohen(&lambda, &mu, l, &poly);
        let ratio = rc.coeff(j);
        let stray = rc.terms().filter(|(a, _)| *a != j).map(|(_, c)| c.norm()).fold(0.0, f64::max);
        if stray > 1e-8 * ratio.norm().max(1.0) {
            return Err(Error::Numerical(format!("RC∘KP image of w^{j} is not a multiple of w^{j}")));
        }
        out.push(ratio);
    }
    Ok(out)
}
