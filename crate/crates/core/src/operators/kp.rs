//! Rank-one Kobayashi–Pevzner holographic operator
//!
//! ```text
//! (F f)(x, y) = (x - y)^l / (2^(λ+μ+2l-1) l!)
//!               ∫_{-1}^{1} f(((y - x) z + x + y) / 2) (1 - z)^(λ+l-1) (1 + z)^(μ+l-1) dz.
//! ```

use crate::error::{Error, Result};
use crate::jordan::JordanAlgebra;
use crate::quadrature::gauss_jacobi;
use crate::special::ln_gamma;
use crate::C64;

use super::ScalarFunction;

/// Default node count.
pub const KP_NODES: usize = 64;

fn check(lambda: C64, mu: C64, l: u32, x: C64, y: C64) -> Result<()> {
    let lf = l as f64;
    if !(lambda.re > -lf && mu.re > -lf) {
        return Err(Error::InvalidParams(format!("need Re λ, Re μ > -{l}; got λ = {lambda}, μ = {mu}")));
    }
    if !(x.im > 0.0 && y.im > 0.0) {
        return Err(Error::InvalidParams(format!("x = {x}, y = {y} must lie in the upper half-plane")));
    }
    if x == y {
        return Err(Error::InvalidParams("x and y must differ".into()));
    }
    Ok(())
}

/// Nodes `z` and log-weights of `∫_{-1}^{1} g(z) (1 - z)^a (1 + z)^b dz ≈ Σ g(z) e^(ln w)`
/// under `z = tanh(π/2 sinh t)`, for `Re a, Re b > -1`. Uses at least `nodes` points.
fn tanh_sinh_jacobi(nodes: usize, a: C64, b: C64) -> Vec<(f64, C64)> {
    use std::f64::consts::{FRAC_PI_2, LN_2};
    // ln(1 + e^v) without overflow.
    let softplus = |v: f64| if v > 0.0 { v + (-v).exp().ln_1p() } else { v.exp().ln_1p() };
    // Truncate where the weight has decayed below e^-40.
    let decay = (a.re + 1.0).min(b.re + 1.0).max(1e-3);
    let t_max = (20.0 / decay / FRAC_PI_2).asinh();
    // The weight stays analytic and decaying in a strip of half-width
    // atan(Re / |Im|) of the exponents; the step keeps e^(-2π d / h) near 1e-15.
    let strip = |e: C64| (e.re + 1.0).atan2(e.im.abs()).min(FRAC_PI_2);
    let h_strip = 2.0 * std::f64::consts::PI * strip(a).min(strip(b)) / 35.0;
    let m = ((nodes.max(3) - 1) / 2).max((t_max / h_strip).ceil() as usize);
    let h = t_max / m as f64;
    (-(m as i64)..=m as i64)
        .map(|k| {
            let t = k as f64 * h;
            let u = FRAC_PI_2 * t.sinh();
            let ln_minus = LN_2 - softplus(2.0 * u);
            let ln_plus = LN_2 - softplus(-2.0 * u);
            let ln_w = (a + 1.0) * ln_minus + (b + 1.0) * ln_plus + (h * FRAC_PI_2 * t.cosh()).ln();
            (u.tanh(), ln_w)
        })
        .collect()
}

fn ln_factorial(l: u32) -> f64 {
    (1..=l).map(|i| (i as f64).ln()).sum()
}

/// [`kp_holo_1d`] with an explicit number of nodes.
pub fn kp_holo_1d_sized(
    lambda: C64,
    mu: C64,
    l: u32,
    f: &ScalarFunction,
    x: C64,
    y: C64,
    nodes: usize,
) -> Result<C64> {
    check(lambda, mu, l, x, y)?;
    let lf = l as f64;
    let (a, b) = (lambda + lf - 1.0, mu + lf - 1.0);
    let alg = JordanAlgebra::rank1();
    let mut terms = Vec::with_capacity(nodes);
    if a.im == 0.0 && b.im == 0.0 {
        let (t, w) = gauss_jacobi(nodes, a.re, b.re)?;
        for (&z, &wz) in t.iter().zip(&w) {
            let pt = ((y - x) * z + x + y) * 0.5;
            terms.push(f.eval(&alg.element(vec![pt])?) * wz);
        }
    } else {
        // (1 - z)^(i Im a) is not smooth at z = 1, which caps a Gauss–Jacobi rule
        // at algebraic convergence; the tanh-sinh rule absorbs the whole weight.
        for (z, ln_w) in tanh_sinh_jacobi(nodes, a, b) {
            let pt = ((y - x) * z + x + y) * 0.5;
            terms.push(f.eval(&alg.element(vec![pt])?) * ln_w.exp());
        }
    }
    let integral = crate::quadrature::pairwise_sum(&terms);
    let ln_pref = -(lambda + mu + 2.0 * lf - 1.0) * 2f64.ln() - ln_factorial(l);
    let v = (x - y).powu(l) * ln_pref.exp() * integral;
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::NonFinite(0));
    }
    Ok(v)
}

/// Kobayashi–Pevzner integral with [`KP_NODES`] nodes: Gauss–Jacobi for real
/// weights, tanh-sinh otherwise.
pub fn kp_holo_1d(lambda: C64, mu: C64, l: u32, f: &ScalarFunction, x: C64, y: C64) -> Result<C64> {
    kp_holo_1d_sized(lambda, mu, l, f, x, y, KP_NODES)
}

/// Coefficients `c_{a,b}` of `F[w^j](x, y) = Σ c_{a,b} x^a y^b`, computed from
/// `F[w^j] = (x-y)^l / l! Σ_i C(j,i) B(λ+l+i, μ+l) (x-y)^i y^(j-i)`.
pub fn kp_closed_form(lambda: C64, mu: C64, l: u32, j: u32) -> Result<Vec<((u32, u32), C64)>> {
    let lf = l as f64;
    let lnb = |a: C64, b: C64| -> Result<C64> { Ok(ln_gamma(a)? + ln_gamma(b)? - ln_gamma(a + b)?) };
    let mut out = std::collections::BTreeMap::<(u32, u32), C64>::new();
    for i in 0..=j {
        let beta = (lnb(lambda + lf + i as f64, mu + lf)? - ln_factorial(l)).exp() * binom(j, i);
        // (x - y)^(l+i) y^(j-i)
        let m = l + i;
        for s in 0..=m {
            let sign = if (m - s) % 2 == 0 { 1.0 } else { -1.0 };
            *out.entry((s, m - s + j - i)).or_default() += beta * binom(m, s) * sign;
        }
    }
    Ok(out.into_iter().collect())
}

pub(crate) fn binom(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
