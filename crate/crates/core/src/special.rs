//! Gamma-type special functions of a symmetric cone and generalized power
//! functions.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jordan::{AlgebraKind, Element, JordanAlgebra};
use crate::C64;

const BERNOULLI_TERMS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

fn is_pole(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor()
}

/// Complex log-gamma. The imaginary part is determined only modulo `2π`.
pub fn ln_gamma(z: C64) -> Result<C64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::InvalidParams(format!("ln_gamma of non-finite {z}")));
    }
    if is_pole(z) {
        return Err(Error::Pole(z.to_string()));
    }
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return Ok(C64::new(PI.ln(), 0.0) - s.ln() - ln_gamma(C64::new(1.0, 0.0) - z)?);
    }
    let mut z = z;
    let mut prod = C64::new(1.0, 0.0);
    while z.norm() < 15.0 {
        prod *= z;
        z += 1.0;
    }
    let zi = z.inv();
    let zi2 = zi * zi;
    let mut series = C64::new(0.0, 0.0);
    let mut pow = zi;
    for b in BERNOULLI_TERMS {
        series += pow * b;
        pow *= zi2;
    }
    Ok((z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - prod.ln())
}

/// Complex gamma function.
pub fn gamma(z: C64) -> Result<C64> {
    let v = ln_gamma(z)?.exp();
    if z.im == 0.0 {
        return Ok(C64::new(v.re, 0.0));
    }
    Ok(v)
}

/// Rising factorial `(a)_m`.
pub fn pochhammer(a: C64, m: u32) -> C64 {
    (0..m).fold(C64::new(1.0, 0.0), |acc, i| acc * (a + i as f64))
}

/// A non-increasing, non-negative integer vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Signature(Vec<u32>);

impl Signature {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidParams("empty signature".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParams(format!("signature {parts:?} is not non-increasing")));
        }
        Ok(Self(parts))
    }

    pub fn zeros(r: usize) -> Self {
        Self(vec![0; r.max(1)])
    }

    /// `(l, .., l)` of length `r`.
    pub fn constant(r: usize, l: u32) -> Self {
        Self(vec![l; r.max(1)])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `|k|`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn last(&self) -> u32 {
        *self.0.last().unwrap()
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    fn check_rank(&self, alg: JordanAlgebra) -> Result<()> {
        if self.len() != alg.rank() {
            return Err(Error::DimensionMismatch { expected: alg.rank(), got: self.len() });
        }
        Ok(())
    }
}

impl TryFrom<Vec<u32>> for Signature {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Signature> for Vec<u32> {
    fn from(s: Signature) -> Vec<u32> {
        s.0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Scalar weights and signature of one holographic operator.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightParams {
    pub algebra: JordanAlgebra,
    pub lambda: C64,
    pub mu: C64,
    pub k: Signature,
}

impl WeightParams {
    /// Validates the signature length and the convergence condition
    /// `Re λ, Re μ > -k_r + n/r - 1`.
    pub fn new(algebra: JordanAlgebra, lambda: C64, mu: C64, k: Signature) -> Result<Self> {
        k.check_rank(algebra)?;
        let bound = -(k.last() as f64) + algebra.n_over_r() - 1.0;
        if !(lambda.re > bound && mu.re > bound) || !lambda.im.is_finite() || !mu.im.is_finite() {
            return Err(Error::InvalidParams(format!(
                "need Re λ, Re μ > {bound} for {algebra} with k = {k}; got λ = {lambda}, μ = {mu}"
            )));
        }
        Ok(Self { algebra, lambda, mu, k })
    }
}

fn two_pi_factor(alg: JordanAlgebra) -> f64 {
    let r = alg.rank() as f64;
    (2.0 * PI).powf(alg.peirce_d() * r * (r - 1.0) / 4.0)
}

fn ln_gamma_r(alg: JordanAlgebra, lambda: C64, k: &[u32]) -> Result<C64> {
    let half_d = alg.peirce_d() / 2.0;
    let mut s = C64::new(two_pi_factor(alg).ln(), 0.0);
    for (j, &kj) in k.iter().enumerate() {
        s += ln_gamma(lambda + kj as f64 - half_d * j as f64)?;
    }
    Ok(s)
}

/// Cone gamma function `Γ_r(λ + k) = (2π)^(d r (r-1)/4) Π_j Γ(λ + k_j - (d/2)(j-1))`.
pub fn gamma_r(alg: JordanAlgebra, lambda: C64, k: &Signature) -> Result<C64> {
    k.check_rank(alg)?;
    let v = ln_gamma_r(alg, lambda, k.parts())?.exp();
    Ok(if lambda.im == 0.0 { C64::new(v.re, 0.0) } else { v })
}

/// Vector Pochhammer `Π_j (λ + k_j - (d/2)(j-1))_{m_j}` as a finite product.
///
/// `k` may carry negative entries and `m` need not be ordered.
pub fn pochhammer_r(alg: JordanAlgebra, lambda: C64, k: &[i64], m: &[u32]) -> Result<C64> {
    if k.len() != alg.rank() || m.len() != alg.rank() {
        return Err(Error::DimensionMismatch { expected: alg.rank(), got: k.len().min(m.len()) });
    }
    let half_d = alg.peirce_d() / 2.0;
    Ok(k.iter()
        .zip(m)
        .enumerate()
        .map(|(j, (&kj, &mj))| pochhammer(lambda + kj as f64 - half_d * j as f64, mj))
        .product())
}

/// Closed-form beta constant `B_r(λ, μ, k)`.
pub fn beta_constant(p: &WeightParams) -> Result<C64> {
    beta_raw(p.algebra, p.lambda, p.mu, &p.k)
}

/// [`beta_constant`] without the convergence-condition check.
pub fn beta_raw(alg: JordanAlgebra, lambda: C64, mu: C64, k: &Signature) -> Result<C64> {
    k.check_rank(alg)?;
    let r = alg.rank();
    let half_d = alg.peirce_d() / 2.0;
    let s = lambda + mu;
    let zero = Signature::zeros(r);
    let mut ln = ln_gamma_r(alg, lambda, k.parts())? + ln_gamma_r(alg, mu, k.parts())?
        - ln_gamma_r(alg, s, zero.parts())?;
    let mut ratio = C64::new(1.0, 0.0);
    let kk = k.parts();
    for i in 1..=r {
        for j in i..=r {
            let m = kk[i - 1] + kk[j - 1];
            let den = pochhammer(s - half_d * (i + j - 2) as f64, m);
            if den.norm() == 0.0 {
                return Err(Error::Pole(format!("vanishing Pochhammer at λ+μ = {s}")));
            }
            ratio /= den;
            if i < j {
                ratio *= pochhammer(s - half_d * (i + j - 1) as f64, m);
            }
        }
    }
    ln += ratio.ln();
    let v = ln.exp();
    Ok(if lambda.im == 0.0 && mu.im == 0.0 { C64::new(v.re, 0.0) } else { v })
}

/// Both sides of `B_r(λ, μ, (l, .., l)) = B_r(λ + l, μ + l, 0)`.
pub fn collapse_check(alg: JordanAlgebra, lambda: C64, mu: C64, l: u32) -> Result<(C64, C64)> {
    let r = alg.rank();
    let a = beta_raw(alg, lambda, mu, &Signature::constant(r, l))?;
    let b = beta_raw(alg, lambda + l as f64, mu + l as f64, &Signature::zeros(r))?;
    Ok((a, b))
}

fn minor(x: &Element, j: usize, leading: bool) -> C64 {
    match x.algebra().kind() {
        AlgebraKind::Rank1 => x.coords()[0],
        AlgebraKind::Spin(_) => {
            let c = x.coords();
            match (j, leading) {
                (1, true) => c[0] + c[1],
                (1, false) => c[0] - c[1],
                _ => x.det(),
            }
        }
        AlgebraKind::SymReal(r) => {
            let m = x.to_matrix();
            let off = if leading { 0 } else { r - j };
            let sub: DMatrix<C64> = m.view((off, off), (j, j)).into_owned();
            match j {
                1 => sub[(0, 0)],
                2 => sub[(0, 0)] * sub[(1, 1)] - sub[(0, 1)] * sub[(1, 0)],
                _ => sub.determinant(),
            }
        }
    }
}

/// Frame-adapted leading principal minors `Δ_1(x), .., Δ_r(x)`.
pub fn leading_minors(x: &Element) -> Vec<C64> {
    (1..=x.algebra().rank()).map(|j| minor(x, j, true)).collect()
}

/// `Π_j m_j^(k_j - k_{j+1})` from precomputed minors `m`.
pub fn delta_from_minors(minors: &[C64], k: &Signature) -> C64 {
    let kk = k.parts();
    let r = kk.len();
    let mut out = C64::new(1.0, 0.0);
    for j in 1..=r {
        let e = kk[j - 1] - if j < r { kk[j] } else { 0 };
        if e > 0 {
            out *= minors[j - 1].powu(e);
        }
    }
    out
}

fn power_product(x: &Element, k: &Signature, leading: bool) -> Result<C64> {
    k.check_rank(x.algebra())?;
    let minors: Vec<C64> = (1..=k.len()).map(|j| minor(x, j, leading)).collect();
    Ok(delta_from_minors(&minors, k))
}

/// Generalized power function `Δ_k(x) = Π_j Δ_j(x)^(k_j - k_{j+1})`, built from
/// frame-adapted leading minors.
pub fn delta_k(x: &Element, k: &Signature) -> Result<C64> {
    power_product(x, k, true)
}

/// Highest-weight counterpart of [`delta_k`], built from trailing minors.
pub fn delta_check_k(x: &Element, k: &Signature) -> Result<C64> {
    power_product(x, k, false)
}

/// Both sides of `det(x)^k0 Δ_k(x^-1) = Δ̌_(k0 - k^∨)(x)`.
pub fn check_dual_power(x: &Element, k: &Signature, k0: u32) -> Result<(C64, C64)> {
    k.check_rank(x.algebra())?;
    if k.parts()[0] > k0 {
        return Err(Error::InvalidParams(format!("k0 = {k0} below k_1 = {}", k.parts()[0])));
    }
    let lhs = x.det().powu(k0) * delta_k(&x.inverse()?, k)?;
    let dual: Vec<u32> = k.parts().iter().rev().map(|&kj| k0 - kj).collect();
    let rhs = delta_check_k(x, &Signature::new(dual)?)?;
    Ok((lhs, rhs))
}
