//! Scalar holographic operators.
//!
//! [`holo_up_scalar`] evaluates
//!
//! ```text
//! (F f)(x, y) = ∫_{0<z<e} det(z)^(λ-n/r) det(e-z)^(μ-n/r)
//!               Δ_k(P(u^1/2)(z - z²)) f(y + P(u^1/2) z) dz,    u = x - y,
//! ```
//!
//! the pull-back of the contour integral over `C(x, y)` to the reference
//! domain. Rank-one specialisations and Rankin–Cohen brackets live in [`kp`]
//! and [`rankin_cohen`].

pub mod kp;
pub mod rankin_cohen;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{act, cocycle_log_chi, contour_chart, in_cone, GroupGenerator};
use crate::jordan::{sym_idx, AlgebraKind, Element, JordanAlgebra};
use crate::quadrature::{integrate_many, reference_rule_jacobi, QuadratureRule};
use crate::special::{beta_constant, delta_from_minors, delta_k, leading_minors, Signature, WeightParams};
use crate::C64;

pub use kp::{kp_closed_form, kp_holo_1d, kp_holo_1d_sized, KP_NODES};
pub use rankin_cohen::{
    rankin_cohen, rc_kp_composition, sl2_action, sl2_action_pair, Poly1, Poly2, RcScalar, Sl2Generator,
};

/// Holomorphic test function sampled on the contour.
#[derive(Clone)]
pub enum ScalarFunction {
    Constant(C64),
    /// `Π_i w_i^α_i` in the coordinates of the algebra.
    Monomial(Vec<u32>),
    DeltaPower(Signature),
    Callback(Arc<dyn Fn(&Element) -> C64 + Send + Sync>),
}

impl ScalarFunction {
    pub fn one() -> Self {
        ScalarFunction::Constant(C64::new(1.0, 0.0))
    }

    pub fn callback(f: impl Fn(&Element) -> C64 + Send + Sync + 'static) -> Self {
        ScalarFunction::Callback(Arc::new(f))
    }

    /// Value at `w`. Shape mismatches evaluate to NaN so that quadrature
    /// reports them as non-finite node values.
    pub fn eval(&self, w: &Element) -> C64 {
        match self {
            ScalarFunction::Constant(c) => *c,
            ScalarFunction::Monomial(alpha) => {
                if alpha.len() != w.coords().len() {
                    return C64::new(f64::NAN, f64::NAN);
                }
                w.coords().iter().zip(alpha).map(|(c, &a)| c.powu(a)).product()
            }
            ScalarFunction::DeltaPower(k) => delta_k(w, k).unwrap_or(C64::new(f64::NAN, f64::NAN)),
            ScalarFunction::Callback(f) => f(w),
        }
    }
}

impl fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarFunction::Constant(c) => write!(f, "Constant({c})"),
            ScalarFunction::Monomial(a) => write!(f, "Monomial({a:?})"),
            ScalarFunction::DeltaPower(k) => write!(f, "DeltaPower({k})"),
            ScalarFunction::Callback(_) => write!(f, "Callback"),
        }
    }
}

/// One evaluation of the holographic operator.
#[derive(Clone, Debug)]
pub struct HoloResult {
    pub value: C64,
    pub quad_error: f64,
    pub params: WeightParams,
    pub point: (Element, Element),
}

/// Both sides of the minimal-K-type identity `F1(u, 0) = B(λ, μ, k) Δ_k(u)`.
#[derive(Clone, Debug)]
pub struct MinKType {
    pub lhs: C64,
    pub lhs_error: f64,
    pub rhs: C64,
}

impl MinKType {
    pub fn rel_error(&self) -> f64 {
        (self.lhs - self.rhs).norm() / self.rhs.norm()
    }
}

/// Gauss–Jacobi rule on `(0, 1)` absorbing the rank-one endpoint behaviour
/// `z^(Re λ + l - 1) (1 - z)^(Re μ + l - 1)` of the integrand.
pub fn rank1_rule(params: &WeightParams, size: usize) -> Result<QuadratureRule> {
    if params.algebra.kind() != AlgebraKind::Rank1 {
        return Err(Error::Unsupported(format!("rank-one rule requested for {}", params.algebra)));
    }
    let l = params.k.parts()[0] as f64;
    reference_rule_jacobi(size, params.lambda.re - 1.0 + l, params.mu.re - 1.0 + l)
}

fn check_rule(alg: JordanAlgebra, rule: &QuadratureRule) -> Result<()> {
    if rule.algebra() != alg {
        return Err(Error::AlgebraMismatch(alg.kind(), rule.algebra().kind()));
    }
    Ok(())
}

/// Evaluates `F f(x, y)` for several weight triples over one set of nodes.
pub fn holo_up_many(
    params: &[WeightParams],
    f: &ScalarFunction,
    x: &Element,
    y: &Element,
    rule: &QuadratureRule,
) -> Result<Vec<HoloResult>> {
    let alg = x.algebra();
    for p in params {
        if p.algebra != alg {
            return Err(Error::AlgebraMismatch(alg.kind(), p.algebra.kind()));
        }
    }
    check_rule(alg, rule)?;
    let chart = contour_chart(x, y)?;
    if !chart.valid {
        return Err(Error::Numerical("square root of P(x - y) failed its residual check".into()));
    }
    let (ja, jb) = rule.jacobi_exponents().unwrap_or((0.0, 0.0));
    let nr = alg.n_over_r();
    let exps: Vec<(C64, C64)> = params.iter().map(|p| (p.lambda - nr - ja, p.mu - nr - jb)).collect();
    let e = alg.unit();
    let vals = integrate_many(rule, params.len(), |z, out| {
        let dz = z.det().re;
        let dez = (&e - z).det().re;
        let (lz, lez) = (dz.ln(), dez.ln());
        let v = chart.sqrt_map.apply_raw(&(z - &z.square()));
        let minors = leading_minors(&v);
        let fw = f.eval(&(&chart.base + &chart.sqrt_map.apply_raw(z)));
        for ((o, (a, b)), p) in out.iter_mut().zip(&exps).zip(params) {
            *o = (a * lz + b * lez).exp() * delta_from_minors(&minors, &p.k) * fw;
        }
    })?;
    Ok(vals
        .into_iter()
        .zip(params)
        .map(|(v, p)| HoloResult {
            value: v.value,
            quad_error: v.error,
            params: p.clone(),
            point: (x.clone(), y.clone()),
        })
        .collect())
}

/// Scalar holographic operator `F f(x, y)` through the reference-domain chart.
pub fn holo_up_scalar(
    params: &WeightParams,
    f: &ScalarFunction,
    x: &Element,
    y: &Element,
    rule: &QuadratureRule,
) -> Result<HoloResult> {
    Ok(holo_up_many(std::slice::from_ref(params), f, x, y, rule)?.remove(0))
}

/// Minimal-K-type images for several weight triples at one cone point `u`.
pub fn min_ktype_many(params: &[WeightParams], u: &Element, rule: &QuadratureRule) -> Result<Vec<MinKType>> {
    if !in_cone(u, 0.0) {
        return Err(Error::Inadmissible("minimal K-type check needs u in the cone".into()));
    }
    let lhs = holo_up_many(params, &ScalarFunction::one(), u, &u.algebra().zero(), rule)?;
    lhs.into_iter()
        .zip(params)
        .map(|(h, p)| {
            Ok(MinKType { lhs: h.value, lhs_error: h.quad_error, rhs: beta_constant(p)? * delta_k(u, &p.k)? })
        })
        .collect()
}

/// `F1(u, 0)` against `B_r(λ, μ, k) Δ_k(u)`.
pub fn min_ktype_image(params: &WeightParams, u: &Element, rule: &QuadratureRule) -> Result<MinKType> {
    Ok(min_ktype_many(std::slice::from_ref(params), u, rule)?.remove(0))
}

/// Outcome of an equivariance check.
#[derive(Clone, Copy, Debug)]
pub struct Equivariance {
    pub lhs: C64,
    pub rhs: C64,
    pub residual: f64,
    /// Propagated quadrature error of both sides.
    pub error_estimate: f64,
}

fn in_imaginary_cone(x: &Element) -> bool {
    x.re().max_abs() <= 1e-14 * x.max_abs() && in_cone(&x.im(), 0.0)
}

fn is_frame_diagonal(a: &Element) -> bool {
    let c = a.coords();
    match a.algebra().kind() {
        AlgebraKind::Rank1 => true,
        AlgebraKind::Spin(_) => c[2..].iter().all(|v| v.norm() == 0.0),
        AlgebraKind::SymReal(r) => (0..r).all(|i| (i + 1..r).all(|j| c[sym_idx(r, i, j)].norm() == 0.0)),
    }
}

/// Compares `χ(κ(g,x))^λ χ(κ(g,y))^μ F f(g.x, g.y)` with `F[ρ(g) f](x, y)`,
/// where `ρ(g) f(w) = χ(κ(g,w))^(λ+μ) Δ_k(κ(g,w) e) f(g.w)`.
///
/// Only configurations with a scalar `Δ_k`-cocycle are accepted: translations,
/// dilations by frame-diagonal elements (any `k`) or by general cone elements
/// (constant `k`), and the inversion at points of `iΩ` with `x - y ∈ iΩ` and
/// constant `k`.
pub fn equivariance_residual(
    params: &WeightParams,
    f: &ScalarFunction,
    g: &GroupGenerator,
    x: &Element,
    y: &Element,
    rule: &QuadratureRule,
) -> Result<Equivariance> {
    let alg = params.algebra;
    let k = &params.k;
    let l = k.parts()[0] as f64;
    let (lambda, mu) = (params.lambda, params.mu);
    // Scalar Δ_k-cocycle: a constant factor, or an extra power of χ.
    let (delta_const, extra_power) = match g {
        GroupGenerator::Translate(_) => (C64::new(1.0, 0.0), 0.0),
        GroupGenerator::Dilate(a) => {
            if !k.is_constant() && !is_frame_diagonal(a) {
                return Err(Error::BranchUnsafe("dilation by a non-diagonal element needs constant k".into()));
            }
            (delta_k(&a.square(), k)?, 0.0)
        }
        GroupGenerator::Invert => {
            if !k.is_constant() {
                return Err(Error::BranchUnsafe("inversion needs constant k".into()));
            }
            if !(in_imaginary_cone(x) && in_imaginary_cone(y) && in_imaginary_cone(&(x - y))) {
                return Err(Error::BranchUnsafe("inversion is checked at x, y, x - y in iΩ".into()));
            }
            (C64::new(1.0, 0.0), 2.0 * l)
        }
        GroupGenerator::Cayley | GroupGenerator::InverseCayley => {
            return Err(Error::BranchUnsafe("Cayley generators are not checked".into()));
        }
    };
    if x.algebra() != alg {
        return Err(Error::AlgebraMismatch(alg.kind(), x.algebra().kind()));
    }
    let gx = act(g, x)?;
    let gy = act(g, y)?;
    let lhs_raw = holo_up_scalar(params, f, &gx, &gy, rule)?;
    let factor = (lambda * cocycle_log_chi(g, x)? + mu * cocycle_log_chi(g, y)?).exp();
    let power = lambda + mu + extra_power;
    let (g2, f2) = (g.clone(), f.clone());
    let twisted = ScalarFunction::callback(move |w| {
        let (Ok(lc), Ok(gw)) = (cocycle_log_chi(&g2, w), act(&g2, w)) else {
            return C64::new(f64::NAN, f64::NAN);
        };
        (power * lc).exp() * delta_const * f2.eval(&gw)
    });
    let rhs = holo_up_scalar(params, &twisted, x, y, rule)?;
    let lhs = factor * lhs_raw.value;
    Ok(Equivariance {
        lhs,
        rhs: rhs.value,
        residual: (lhs - rhs.value).norm(),
        error_estimate: factor.norm() * lhs_raw.quad_error + rhs.quad_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{reference_rule, Scheme};
    use crate::special::Signature;
    use crate::c64;

    #[test]
    fn rank1_beta_two_two() {
        let alg = JordanAlgebra::rank1();
        let p = WeightParams::new(alg, c64(2.0, 0.0), c64(2.0, 0.0), Signature::zeros(1)).unwrap();
        let rule = rank1_rule(&p, 16).unwrap();
        let x = alg.element(vec![c64(0.3, 1.0)]).unwrap();
        let y = alg.element(vec![c64(-0.2, 0.5)]).unwrap();
        let h = holo_up_scalar(&p, &ScalarFunction::one(), &x, &y, &rule).unwrap();
        assert!((h.value - 1.0 / 6.0).norm() < 1e-14);
    }

    #[test]
    fn rank1_min_ktype() {
        let alg = JordanAlgebra::rank1();
        let p = WeightParams::new(alg, c64(2.0, 0.0), c64(2.0, 0.0), Signature::new(vec![1]).unwrap()).unwrap();
        let m = min_ktype_image(&p, &alg.unit(), &rank1_rule(&p, 16).unwrap()).unwrap();
        assert!((m.lhs - 1.0 / 30.0).norm() < 1e-14);
        assert!((m.rhs - 1.0 / 30.0).norm() < 1e-14);
    }

    #[test]
    fn rejects_cayley_and_non_cone_u() {
        let alg = JordanAlgebra::sym_real(2).unwrap();
        let p = WeightParams::new(alg, c64(3.0, 0.0), c64(3.0, 0.0), Signature::zeros(2)).unwrap();
        let rule = reference_rule(alg, Scheme::EigenAngle, 8).unwrap();
        let e = alg.unit();
        let r = equivariance_residual(&p, &ScalarFunction::one(), &GroupGenerator::Cayley, &e, &alg.zero(), &rule);
        assert!(matches!(r, Err(Error::BranchUnsafe(_))));
        assert!(matches!(min_ktype_image(&p, &(-&e), &rule), Err(Error::Inadmissible(_))));
    }
}
