//! Quadrature over the matrix interval `Ω ∩ (e - Ω)` and over the cone `Ω`.
//!
//! Weights are with respect to Lebesgue measure in a trace-form orthonormal
//! basis. Every rule except Monte Carlo carries a coarser companion, and the
//! error estimate is the companion discrepancy plus a roundoff floor.

mod calibrate;
mod gauss;

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::in_reference_domain;
use crate::jordan::{spectral, AlgebraKind, Element, JordanAlgebra};
use crate::C64;

pub use calibrate::{angular_constant, calibrate_angular_constant, iterated_reference_integral};
pub use gauss::{endpoint_transform, exp_exp, gauss_jacobi, gauss_legendre, gauss_legendre_unit, graded_unit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    #[serde(rename = "gauss-jacobi-1d")]
    GaussJacobi1D,
    #[serde(rename = "eigen-angle")]
    EigenAngle,
    #[serde(rename = "cartesian-indicator")]
    CartesianIndicator,
    #[serde(rename = "monte-carlo")]
    MonteCarlo { seed: u64 },
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::GaussJacobi1D => "gauss-jacobi-1d",
            Scheme::EigenAngle => "eigen-angle",
            Scheme::CartesianIndicator => "cartesian-indicator",
            Scheme::MonteCarlo { .. } => "monte-carlo",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleDomain {
    /// `0 < z < e`.
    Reference,
    /// The open cone `Ω`.
    Cone,
}

/// Nodes (flat, `dim` reals per node) and positive weights.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    algebra: JordanAlgebra,
    scheme: Scheme,
    domain: RuleDomain,
    size: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    companion: Option<Box<QuadratureRule>>,
    jacobi: Option<(f64, f64)>,
    mc_samples: Option<usize>,
}

/// Value of an integral with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: C64,
    pub error: f64,
}

/// JSON view of a rule.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RuleDump {
    pub scheme: Scheme,
    pub size: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn algebra(&self) -> JordanAlgebra {
        self.algebra
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn domain(&self) -> RuleDomain {
        self.domain
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn companion(&self) -> Option<&QuadratureRule> {
        self.companion.as_deref()
    }

    /// Endpoint exponents `(a, b)` folded into the weights of a rank-one rule:
    /// the rule integrates `g(z)` against `z^a (1 - z)^b`.
    pub fn jacobi_exponents(&self) -> Option<(f64, f64)> {
        self.jacobi
    }

    pub fn node(&self, i: usize) -> Element {
        let d = self.algebra.dim();
        self.algebra.real(&self.nodes[i * d..(i + 1) * d]).expect("node dimension")
    }

    pub fn nodes(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.len()).map(|i| self.node(i))
    }

    pub fn dump(&self) -> RuleDump {
        let d = self.algebra.dim();
        RuleDump {
            scheme: self.scheme,
            size: self.size,
            nodes: self.nodes.chunks(d).map(|c| c.to_vec()).collect(),
            weights: self.weights.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.dump()).expect("rule dump serialises")
    }

    fn new(algebra: JordanAlgebra, scheme: Scheme, domain: RuleDomain, size: usize) -> Self {
        Self {
            algebra,
            scheme,
            domain,
            size,
            nodes: Vec::new(),
            weights: Vec::new(),
            companion: None,
            jacobi: None,
            mc_samples: None,
        }
    }

    fn push(&mut self, node: &[f64], w: f64) {
        self.nodes.extend_from_slice(node);
        self.weights.push(w);
    }
}

fn unsupported(alg: JordanAlgebra, scheme: Scheme, domain: RuleDomain) -> Error {
    Error::Unsupported(format!("{scheme:?} over {domain:?} for {alg}"))
}

/// Rule over the reference domain `0 < z < e`.
pub fn reference_rule(alg: JordanAlgebra, scheme: Scheme, size: usize) -> Result<QuadratureRule> {
    if size == 0 {
        return Err(Error::InvalidParams("rule size must be positive".into()));
    }
    let mut rule = match scheme {
        Scheme::GaussJacobi1D => {
            if alg.kind() != AlgebraKind::Rank1 {
                return Err(unsupported(alg, scheme, RuleDomain::Reference));
            }
            return reference_rule_jacobi(size, 0.0, 0.0).map(|mut r| {
                r.jacobi = None;
                if let Some(c) = r.companion.as_mut() {
                    c.jacobi = None;
                }
                r
            });
        }
        Scheme::EigenAngle => eigen_angle(alg, size, RuleDomain::Reference, angular_constant(alg)?)?,
        Scheme::CartesianIndicator => cartesian(alg, size)?,
        Scheme::MonteCarlo { seed } => monte_carlo(alg, size, seed)?,
    };
    if rule.companion.is_none() && !matches!(scheme, Scheme::MonteCarlo { .. }) && size >= 4 {
        let mut comp = reference_rule(alg, scheme, size / 2)?;
        comp.companion = None;
        rule.companion = Some(Box::new(comp));
    }
    Ok(rule)
}

/// Rank-one Gauss–Jacobi rule on `(0, 1)` integrating `g(z) z^a (1 - z)^b`.
pub fn reference_rule_jacobi(size: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    let alg = JordanAlgebra::rank1();
    let (x, w) = if a == 0.0 && b == 0.0 { gauss_legendre(size)? } else { gauss_jacobi(size, b, a)? };
    let scale = 2f64.powf(-(a + b + 1.0));
    let mut rule = QuadratureRule::new(alg, Scheme::GaussJacobi1D, RuleDomain::Reference, size);
    for (xi, wi) in x.iter().zip(&w) {
        rule.push(&[0.5 * (xi + 1.0)], wi * scale);
    }
    rule.jacobi = Some((a, b));
    if size >= 4 {
        let mut comp = reference_rule_jacobi(size / 2, a, b)?;
        comp.companion = None;
        rule.companion = Some(Box::new(comp));
    }
    Ok(rule)
}

/// Rule over the cone, for integrands decaying like `e^{-tr x}`.
///
/// Eigenvalues are integrated with an exp-sinh rule; the angular part is shared
/// with the eigen-angle reference rule.
pub fn cone_rule(alg: JordanAlgebra, size: usize) -> Result<QuadratureRule> {
    if size < 4 {
        return Err(Error::InvalidParams("cone rule size must be at least 4".into()));
    }
    let mut rule = match alg.kind() {
        AlgebraKind::Rank1 => {
            let (x, w) = exp_exp(size)?;
            let mut r = QuadratureRule::new(alg, Scheme::GaussJacobi1D, RuleDomain::Cone, size);
            for (xi, wi) in x.iter().zip(&w) {
                r.push(&[*xi], *wi);
            }
            r
        }
        AlgebraKind::SymReal(2) | AlgebraKind::Spin(_) => {
            eigen_angle(alg, size, RuleDomain::Cone, angular_constant(alg)?)?
        }
        _ => return Err(unsupported(alg, Scheme::EigenAngle, RuleDomain::Cone)),
    };
    if size >= 8 {
        let mut comp = cone_rule(alg, size / 2)?;
        comp.companion = None;
        rule.companion = Some(Box::new(comp));
    }
    Ok(rule)
}

/// Points and normalised weights on the unit sphere `S^m ⊂ R^{m+1}`.
pub(crate) fn sphere_rule(m: usize, n: usize) -> Result<Vec<(Vec<f64>, f64)>> {
    if m == 1 {
        return Ok((0..n)
            .map(|j| {
                let phi = 2.0 * PI * (j as f64 + 0.5) / n as f64;
                (vec![phi.cos(), phi.sin()], 1.0 / n as f64)
            })
            .collect());
    }
    let a = (m as f64 - 2.0) / 2.0;
    let (t, w) = gauss_jacobi(n, a, a)?;
    let total: f64 = w.iter().sum();
    let inner = sphere_rule(m - 1, n)?;
    let mut out = Vec::with_capacity(n * inner.len());
    for (ti, wi) in t.iter().zip(&w) {
        let rho = (1.0 - ti * ti).sqrt();
        for (p, wp) in &inner {
            let mut v = Vec::with_capacity(m + 1);
            v.push(*ti);
            v.extend(p.iter().map(|c| rho * c));
            out.push((v, wi / total * wp));
        }
    }
    Ok(out)
}

/// Frame pairs `(c1, c2)` sampled over the orbit of the fixed frame, with
/// normalised weights.
fn angular_frames(alg: JordanAlgebra, n: usize) -> Result<Vec<(Vec<f64>, Vec<f64>, f64)>> {
    match alg.kind() {
        AlgebraKind::SymReal(2) => Ok((0..n)
            .map(|j| {
                let th = PI * (j as f64 + 0.5) / n as f64;
                let (s, c) = th.sin_cos();
                (vec![c * c, c * s, s * s], vec![s * s, -c * s, c * c], 1.0 / n as f64)
            })
            .collect()),
        AlgebraKind::Spin(dim) => Ok(sphere_rule(dim - 2, n)?
            .into_iter()
            .map(|(v, w)| {
                let mut c1 = vec![0.5; dim];
                let mut c2 = vec![0.5; dim];
                for (i, vi) in v.iter().enumerate() {
                    c1[i + 1] = 0.5 * vi;
                    c2[i + 1] = -0.5 * vi;
                }
                (c1, c2, w)
            })
            .collect()),
        _ => Err(unsupported(alg, Scheme::EigenAngle, RuleDomain::Reference)),
    }
}

/// Eigenvalue/angle rule for rank two: `z = a1 c1 + a2 c2` with `a1 > a2`,
/// density `c (a1 - a2)^d`. On the reference domain `a1 = s`, `a2 = s t`; on
/// the cone `a1` runs over `(0, ∞)`.
pub(crate) fn eigen_angle(alg: JordanAlgebra, size: usize, domain: RuleDomain, constant: f64) -> Result<QuadratureRule> {
    if alg.rank() != 2 {
        return Err(unsupported(alg, Scheme::EigenAngle, domain));
    }
    let d = alg.peirce_d();
    let frames = angular_frames(alg, size)?;
    let (s_nodes, s_w) = match domain {
        RuleDomain::Reference => graded_unit(size)?,
        RuleDomain::Cone => exp_exp(size)?,
    };
    let (t_nodes, t_w) = graded_unit(size)?;
    let mut rule = QuadratureRule::new(alg, Scheme::EigenAngle, domain, size);
    let dim = alg.dim();
    let mut node = vec![0.0; dim];
    for (&s, &ws) in s_nodes.iter().zip(&s_w) {
        for (&t, &wt) in t_nodes.iter().zip(&t_w) {
            let a1 = s;
            let a2 = s * t;
            let radial = constant * ws * wt * s * (a1 - a2).powf(d);
            for (c1, c2, wa) in &frames {
                for i in 0..dim {
                    node[i] = a1 * c1[i] + a2 * c2[i];
                }
                rule.push(&node, radial * wa);
            }
        }
    }
    Ok(rule)
}

/// Half-widths of the bounding box of `0 < z < e` per coordinate, with centres.
fn bounding_box(alg: JordanAlgebra) -> Vec<(f64, f64)> {
    match alg.kind() {
        AlgebraKind::Rank1 => vec![(0.0, 1.0)],
        AlgebraKind::SymReal(r) => {
            let mut b = Vec::with_capacity(alg.dim());
            for i in 0..r {
                for j in i..r {
                    b.push(if i == j { (0.0, 1.0) } else { (-0.5, 0.5) });
                }
            }
            b
        }
        AlgebraKind::Spin(n) => {
            let mut b = vec![(-0.5, 0.5); n];
            b[0] = (0.0, 1.0);
            b
        }
    }
}

const MAX_CARTESIAN_NODES: usize = 1 << 26;

/// Tensor midpoint grid over the bounding box, keeping interior points.
fn cartesian(alg: JordanAlgebra, size: usize) -> Result<QuadratureRule> {
    let dim = alg.dim();
    if dim > 6 {
        return Err(unsupported(alg, Scheme::CartesianIndicator, RuleDomain::Reference));
    }
    let total = size.checked_pow(dim as u32).filter(|&t| t <= MAX_CARTESIAN_NODES).ok_or_else(|| {
        Error::InvalidParams(format!("Cartesian grid of {size}^{dim} nodes is too large"))
    })?;
    let bx = bounding_box(alg);
    let cell: f64 = bx.iter().map(|(lo, hi)| (hi - lo) / size as f64).product::<f64>() * alg.measure_factor();
    let mut rule = QuadratureRule::new(alg, Scheme::CartesianIndicator, RuleDomain::Reference, size);
    let mut node = vec![0.0; dim];
    for flat in 0..total {
        let mut rem = flat;
        for (k, (lo, hi)) in bx.iter().enumerate() {
            let idx = rem % size;
            rem /= size;
            node[k] = lo + (hi - lo) * (idx as f64 + 0.5) / size as f64;
        }
        let z = alg.real(&node)?;
        if in_reference_domain(&z, 0.0) {
            rule.push(&node, cell);
        }
    }
    Ok(rule)
}

/// Uniform sampling of the bounding box with rejection; `size` is the number
/// of samples drawn.
fn monte_carlo(alg: JordanAlgebra, size: usize, seed: u64) -> Result<QuadratureRule> {
    let dim = alg.dim();
    if dim > 6 {
        return Err(unsupported(alg, Scheme::MonteCarlo { seed }, RuleDomain::Reference));
    }
    let bx = bounding_box(alg);
    let vol: f64 = bx.iter().map(|(lo, hi)| hi - lo).product::<f64>() * alg.measure_factor();
    let w = vol / size as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rule = QuadratureRule::new(alg, Scheme::MonteCarlo { seed }, RuleDomain::Reference, size);
    let mut node = vec![0.0; dim];
    for _ in 0..size {
        for (k, (lo, hi)) in bx.iter().enumerate() {
            node[k] = lo + (hi - lo) * rng.random::<f64>();
        }
        let z = alg.real(&node)?;
        if in_reference_domain(&z, 0.0) {
            rule.push(&node, w);
        }
    }
    rule.mc_samples = Some(size);
    Ok(rule)
}

const CHUNK: usize = 2048;

/// Fixed-shape pairwise sum.
pub fn pairwise_sum(v: &[C64]) -> C64 {
    if v.len() <= 8 {
        return v.iter().fold(C64::new(0.0, 0.0), |a, b| a + b);
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

fn pairwise_sum_f64(v: &[f64]) -> f64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum_f64(&v[..mid]) + pairwise_sum_f64(&v[mid..])
}

struct Sums {
    value: Vec<C64>,
    abs: Vec<f64>,
    sq: Vec<f64>,
}

/// Evaluates `m` integrands at once. `f(z, out)` writes the `m` values at node `z`.
fn raw_sums<F>(rule: &QuadratureRule, m: usize, f: &F) -> Result<Sums>
where
    F: Fn(&Element, &mut [C64]) + Sync,
{
    let n = rule.len();
    let chunks: Vec<std::result::Result<Sums, usize>> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(n);
            let mut vals = vec![C64::new(0.0, 0.0); (hi - lo) * m];
            let mut out = vec![C64::new(0.0, 0.0); m];
            for i in lo..hi {
                f(&rule.node(i), &mut out);
                let w = rule.weights[i];
                for (k, v) in out.iter().enumerate() {
                    if !v.re.is_finite() || !v.im.is_finite() {
                        return Err(i);
                    }
                    vals[k * (hi - lo) + (i - lo)] = v * w;
                }
            }
            let len = hi - lo;
            let mut s = Sums { value: Vec::with_capacity(m), abs: Vec::with_capacity(m), sq: Vec::with_capacity(m) };
            for k in 0..m {
                let slice = &vals[k * len..(k + 1) * len];
                s.value.push(pairwise_sum(slice));
                s.abs.push(pairwise_sum_f64(&slice.iter().map(|v| v.norm()).collect::<Vec<_>>()));
                s.sq.push(pairwise_sum_f64(&slice.iter().map(|v| v.norm_sqr()).collect::<Vec<_>>()));
            }
            Ok(s)
        })
        .collect();
    let mut parts = Vec::with_capacity(chunks.len());
    for c in chunks {
        parts.push(c.map_err(Error::NonFinite)?);
    }
    let mut out = Sums { value: Vec::with_capacity(m), abs: Vec::with_capacity(m), sq: Vec::with_capacity(m) };
    for k in 0..m {
        out.value.push(pairwise_sum(&parts.iter().map(|p| p.value[k]).collect::<Vec<_>>()));
        out.abs.push(pairwise_sum_f64(&parts.iter().map(|p| p.abs[k]).collect::<Vec<_>>()));
        out.sq.push(pairwise_sum_f64(&parts.iter().map(|p| p.sq[k]).collect::<Vec<_>>()));
    }
    Ok(out)
}

/// Integrates `m` functions sharing node evaluations.
pub fn integrate_many<F>(rule: &QuadratureRule, m: usize, f: F) -> Result<Vec<Integral>>
where
    F: Fn(&Element, &mut [C64]) + Sync,
{
    let main = raw_sums(rule, m, &f)?;
    let floor = |k: usize| 64.0 * f64::EPSILON * main.abs[k];
    if let Some(samples) = rule.mc_samples {
        let nf = samples as f64;
        return Ok((0..m)
            .map(|k| {
                let mean = main.value[k];
                let sum_sq = nf * nf * main.sq[k];
                let var = ((sum_sq - nf * mean.norm_sqr()) / (nf - 1.0).max(1.0)).max(0.0);
                Integral { value: mean, error: (var / nf).sqrt() + floor(k) }
            })
            .collect());
    }
    let comp = match rule.companion() {
        Some(c) => Some(raw_sums(c, m, &f)?),
        None => None,
    };
    Ok((0..m)
        .map(|k| {
            let diff = comp.as_ref().map_or(0.0, |c| (main.value[k] - c.value[k]).norm());
            Integral { value: main.value[k], error: diff + floor(k) }
        })
        .collect())
}

/// `Σ w_i f(z_i)` with an error estimate.
pub fn integrate<F>(rule: &QuadratureRule, f: F) -> Result<Integral>
where
    F: Fn(&Element) -> C64 + Sync,
{
    Ok(integrate_many(rule, 1, |z, out| out[0] = f(z))?[0])
}

/// `∫_Ω g(x) dx` through a reference-domain rule, using the bijection
/// `x = z ∘ (e - z)^-1` of `0 < z < e` onto `Ω` with Jacobian `det(e - z)^(-2n/r)`.
/// `g` must decay at infinity.
pub fn integrate_cone_pullback<F>(rule: &QuadratureRule, g: F) -> Result<Integral>
where
    F: Fn(&Element) -> C64 + Sync,
{
    if rule.domain() != RuleDomain::Reference || rule.jacobi_exponents().is_some() {
        return Err(Error::Unsupported("cone pull-back needs an unweighted reference rule".into()));
    }
    let power = -2.0 * rule.algebra().n_over_r();
    integrate(rule, |z| {
        let Ok(sd) = spectral(z) else {
            return C64::new(f64::NAN, f64::NAN);
        };
        // Nodes whose image is not representable sit at infinity in Ω, where
        // an integrable `g` has vanished.
        if sd.eigenvalues.iter().any(|&a| a >= 1.0) {
            return C64::new(0.0, 0.0);
        }
        let gv = g(&sd.apply(|a| a / (1.0 - a)));
        // `g` has decayed to zero long before the Jacobian overflows.
        if gv == C64::new(0.0, 0.0) {
            return gv;
        }
        let ln_jac: f64 = sd.eigenvalues.iter().map(|a| power * (1.0 - a).ln()).sum();
        gv / gv.norm() * (gv.norm().ln() + ln_jac).exp()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn rank1_beta() {
        let rule = reference_rule(JordanAlgebra::rank1(), Scheme::GaussJacobi1D, 64).unwrap();
        let v = integrate(&rule, |z| {
            let t = z.coords()[0].re;
            c64(t * t * (1.0 - t) * (1.0 - t), 0.0)
        })
        .unwrap();
        assert!((v.value.re - 1.0 / 30.0).abs() < 1e-12);
    }

    #[test]
    fn zero_integrand() {
        let rule = reference_rule(JordanAlgebra::sym_real(2).unwrap(), Scheme::EigenAngle, 8).unwrap();
        let v = integrate(&rule, |_| c64(0.0, 0.0)).unwrap();
        assert_eq!(v.value, c64(0.0, 0.0));
        assert_eq!(v.error, 0.0);
    }

    #[test]
    fn non_finite_is_reported() {
        let rule = reference_rule(JordanAlgebra::rank1(), Scheme::GaussJacobi1D, 8).unwrap();
        assert!(matches!(integrate(&rule, |_| c64(f64::NAN, 0.0)), Err(Error::NonFinite(0))));
    }

    #[test]
    fn unsupported_combinations() {
        let s = JordanAlgebra::sym_real(2).unwrap();
        assert!(reference_rule(s, Scheme::GaussJacobi1D, 8).is_err());
        let s3 = JordanAlgebra::sym_real(3).unwrap();
        assert!(reference_rule(s3, Scheme::EigenAngle, 8).is_err());
        assert!(cone_rule(s3, 8).is_err());
        assert!(reference_rule(JordanAlgebra::sym_real(4).unwrap(), Scheme::CartesianIndicator, 4).is_err());
    }

    #[test]
    fn sphere_rule_moments() {
        // E[v_1^2] = 1/(m+1) on S^m.
        for m in 1..=3 {
            let r = sphere_rule(m, 6).unwrap();
            let tot: f64 = r.iter().map(|p| p.1).sum();
            let m2: f64 = r.iter().map(|(v, w)| w * v[0] * v[0]).sum();
            assert!((tot - 1.0).abs() < 1e-14);
            assert!((m2 - 1.0 / (m as f64 + 1.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn json_dump_fields() {
        let rule = reference_rule(JordanAlgebra::rank1(), Scheme::GaussJacobi1D, 4).unwrap();
        let v: serde_json::Value = serde_json::from_str(&rule.to_json()).unwrap();
        assert_eq!(v["size"], 4);
        assert_eq!(v["nodes"].as_array().unwrap().len(), 4);
        assert_eq!(v["weights"].as_array().unwrap().len(), 4);
        assert_eq!(v["scheme"], "gauss-jacobi-1d");
    }
}
