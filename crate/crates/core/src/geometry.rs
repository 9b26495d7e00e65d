//! Cones, tube and bounded domains, generator actions with their cocycles, and
//! the reference-domain chart of a contour.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::jordan::{bmap_b, quad_p, spectral, spectral_norm, AlgebraKind, Element, LinearMap};
use crate::C64;

/// Default membership tolerance.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Eigenvalues of a real element; `None` for complex input.
pub fn real_eigenvalues(x: &Element) -> Option<Vec<f64>> {
    if !x.is_real() {
        return None;
    }
    match x.algebra().kind() {
        AlgebraKind::Rank1 | AlgebraKind::SymReal(1) => Some(vec![x.coords()[0].re]),
        AlgebraKind::Spin(_) | AlgebraKind::SymReal(2) => {
            let h = 0.5 * x.trace().re;
            let disc = (h * h - x.det().re).max(0.0).sqrt();
            Some(vec![h + disc, h - disc])
        }
        AlgebraKind::SymReal(_) => spectral(x).ok().map(|s| s.eigenvalues),
    }
}

/// Symmetric cone `Ω`: a real element with every eigenvalue above `tol`.
pub fn in_cone(x: &Element, tol: f64) -> bool {
    if !x.is_real() {
        return false;
    }
    match x.algebra().kind() {
        // Both eigenvalues exceed `tol` iff `x - tol e` has positive trace and determinant.
        AlgebraKind::Spin(_) | AlgebraKind::SymReal(2) => {
            let shifted = x - &x.algebra().unit().scale_re(tol);
            shifted.det().re > 0.0 && shifted.trace().re > 0.0
        }
        _ => real_eigenvalues(x).is_some_and(|ev| ev.iter().all(|&l| l > tol)),
    }
}

/// Bounded domain `D = {|x|_∞ < 1}`.
pub fn in_disk(x: &Element, tol: f64) -> bool {
    spectral_norm(x) < 1.0 - tol
}

/// Tube domain `T_Ω = n + iΩ`.
pub fn in_tube(x: &Element, tol: f64) -> bool {
    in_cone(&x.im(), tol)
}

/// `0 < z < e`, i.e. `z ∈ Ω ∩ (e - Ω)`.
pub fn in_reference_domain(z: &Element, tol: f64) -> bool {
    in_cone(z, tol) && in_cone(&(&z.algebra().unit() - z), tol)
}

/// Quasi-inverse `x^v = B(x, v)^-1 (x - P(x) v)`.
pub fn quasi_inverse(x: &Element, v: &Element) -> Result<Element> {
    let b = bmap_b(x, v)?;
    let rhs = x - &quad_p(x).apply(v)?;
    b.inverse()?.apply(&rhs)
}

/// `((w - y)^-1 + (x - w)^-1)^-1`.
pub fn midpoint_resolvent(w: &Element, y: &Element, x: &Element) -> Result<Element> {
    w.check_same(y)?;
    w.check_same(x)?;
    let a = (w - y).inverse()?;
    let b = (x - w).inverse()?;
    (&a + &b).inverse()
}

/// Generators of the birational action.
#[derive(Clone, Debug, PartialEq)]
pub enum GroupGenerator {
    Translate(Element),
    Dilate(Element),
    Invert,
    Cayley,
    InverseCayley,
}

impl GroupGenerator {
    /// `Dilate(a)`, validating `a ∈ Ω`.
    pub fn dilate(a: Element) -> Result<Self> {
        if !in_cone(&a, 0.0) {
            return Err(Error::Domain { op: "dilate", detail: "dilation element must lie in the cone".into() });
        }
        Ok(GroupGenerator::Dilate(a))
    }
}

fn check_alg(g: &GroupGenerator, x: &Element) -> Result<()> {
    match g {
        GroupGenerator::Translate(a) | GroupGenerator::Dilate(a) => a.check_same(x),
        _ => Ok(()),
    }
}

fn i_unit(x: &Element) -> Element {
    x.algebra().unit().scale(C64::new(0.0, 1.0))
}

/// Action `g.x`.
pub fn act(g: &GroupGenerator, x: &Element) -> Result<Element> {
    check_alg(g, x)?;
    let e = x.algebra().unit();
    let i = C64::new(0.0, 1.0);
    match g {
        GroupGenerator::Translate(a) => Ok(x + a),
        GroupGenerator::Dilate(a) => quad_p(a).apply(x),
        GroupGenerator::Invert => Ok(-&x.inverse()?),
        GroupGenerator::Cayley => {
            let den = (&x.scale(i) + &e).inverse()?;
            (x + &i_unit(x)).jordan_mul(&den)
        }
        GroupGenerator::InverseCayley => {
            let den = (&e - &x.scale(i)).inverse()?;
            (x - &i_unit(x)).jordan_mul(&den)
        }
    }
}

/// Cocycle scalar `χ(κ(g, x))`.
pub fn cocycle_chi(g: &GroupGenerator, x: &Element) -> Result<C64> {
    check_alg(g, x)?;
    let e = x.algebra().unit();
    let i = C64::new(0.0, 1.0);
    let r = x.algebra().rank() as i32;
    let s = 2f64.powf(-0.5 * r as f64);
    let nonzero = |d: C64| if d.norm() == 0.0 { Err(Error::Singular) } else { Ok(d) };
    match g {
        GroupGenerator::Translate(_) => Ok(C64::new(1.0, 0.0)),
        GroupGenerator::Dilate(a) => Ok(a.det()),
        GroupGenerator::Invert => Ok(nonzero(x.det())?.inv()),
        GroupGenerator::Cayley => Ok((nonzero((&x.scale(i) + &e).det())? * s).inv()),
        GroupGenerator::InverseCayley => Ok((nonzero((&e - &x.scale(i)).det())? * s).inv()),
    }
}

/// Logarithm of `det x` on the tube `T_Ω`, continuous there and real on `iΩ`
/// up to the constant `i π r / 2`.
///
/// Writing `x = a + ib`, `log det x = log det b + Σ_j log(α_j + i)` with `α_j`
/// the eigenvalues of `P(b^-1/2) a`.
pub fn log_det_tube(x: &Element) -> Result<C64> {
    let b = x.im();
    if !in_cone(&b, 0.0) {
        return Err(Error::BranchUnsafe("log det requires a point of the tube".into()));
    }
    let sd = spectral(&b)?;
    let b_inv_half = sd.apply(|t| t.powf(-0.5));
    let a = quad_p(&b_inv_half).apply(&x.re())?;
    let alphas = spectral(&a)?.eigenvalues;
    let mut s = C64::new(sd.eigenvalues.iter().map(|t| t.ln()).sum(), 0.0);
    for al in alphas {
        s += C64::new(al, 1.0).ln();
    }
    Ok(s)
}

/// Continuous logarithm of `χ(κ(g, x))` on the domains used for equivariance
/// tests: real positive cases, `Invert` on the tube, `Cayley` on `D`.
pub fn cocycle_log_chi(g: &GroupGenerator, x: &Element) -> Result<C64> {
    check_alg(g, x)?;
    match g {
        GroupGenerator::Translate(_) => Ok(C64::new(0.0, 0.0)),
        GroupGenerator::Dilate(a) => Ok(C64::new(a.det().re.ln(), 0.0)),
        GroupGenerator::Invert => {
            if in_cone(x, 0.0) {
                return Ok(C64::new(-x.det().re.ln(), 0.0));
            }
            Ok(-log_det_tube(x)?)
        }
        GroupGenerator::Cayley | GroupGenerator::InverseCayley => {
            if !in_disk(x, 0.0) {
                return Err(Error::BranchUnsafe("Cayley cocycle branch requires a point of D".into()));
            }
            let sign = if matches!(g, GroupGenerator::Cayley) { 1.0 } else { -1.0 };
            let r = x.algebra().rank() as f64;
            let ev = x.eigenvalues_complex()?;
            let s: C64 = ev.iter().map(|l| (C64::new(1.0, 0.0) + C64::new(0.0, sign) * l).ln()).sum();
            Ok(-(s - 0.5 * r * 2f64.ln()))
        }
    }
}

/// Chart `z ↦ base + P(u^1/2) z` of the contour between `y = base` and
/// `x = base + u`, defined on the reference domain `0 < z < e`.
#[derive(Clone, Debug)]
pub struct ContourChart {
    pub base: Element,
    pub u: Element,
    pub sqrt_map: LinearMap,
    /// Whether `sqrt_map ∘ sqrt_map = P(u)` held to `1e-10`.
    pub valid: bool,
}

impl ContourChart {
    pub fn map(&self, z: &Element) -> Result<Element> {
        Ok(&self.base + &self.sqrt_map.apply(z)?)
    }
}

/// Rotation angle `θ` such that `e^{-iθ}` moves every eigenvalue of `u` into
/// the open right half-plane (the midpoint of the smallest arc containing
/// them). Fails unless the eigenvalues fit in an open half-plane.
pub fn admissible_phase(u: &Element) -> Result<f64> {
    let ev = u.eigenvalues_complex()?;
    let scale = u.max_abs();
    if ev.iter().any(|l| l.norm() <= 1e-13 * scale.max(f64::MIN_POSITIVE)) {
        return Err(Error::Inadmissible("x - y is singular".into()));
    }
    let mut ang: Vec<f64> = ev.iter().map(|l| l.arg()).collect();
    ang.sort_by(f64::total_cmp);
    let m = ang.len();
    let (mut best, mut at) = (-1.0, 0);
    for i in 0..m {
        let gap = if i + 1 < m { ang[i + 1] - ang[i] } else { ang[0] + 2.0 * PI - ang[m - 1] };
        if gap > best {
            best = gap;
            at = i;
        }
    }
    if best <= PI + 1e-9 {
        return Err(Error::Inadmissible("spectrum of x - y is not contained in an open half-plane".into()));
    }
    // The arc runs from ang[at + 1] round to ang[at].
    let start = ang[(at + 1) % m];
    let end = if at + 1 < m { ang[at] + 2.0 * PI } else { ang[at] };
    let mut theta = 0.5 * (start + end);
    while theta > PI {
        theta -= 2.0 * PI;
    }
    Ok(theta)
}

/// `P(u^1/2)` with the branch fixed by [`admissible_phase`].
pub fn sqrt_quad_map(u: &Element) -> Result<LinearMap> {
    let theta = admissible_phase(u)?;
    if theta == 0.0 && u.is_real() {
        let s = u.principal_sqrt()?;
        return Ok(quad_p(&s));
    }
    let rot = C64::from_polar(1.0, theta);
    let s = u.scale(rot.conj()).principal_sqrt()?;
    Ok(quad_p(&s).scale(rot))
}

/// Chart of the contour `C(x, y)` over the reference domain.
pub fn contour_chart(x: &Element, y: &Element) -> Result<ContourChart> {
    x.check_same(y)?;
    let u = x - y;
    let sqrt_map = sqrt_quad_map(&u)?;
    let pu = quad_p(&u);
    let err = sqrt_map.compose(&sqrt_map)?.max_abs_diff(&pu);
    let valid = err <= 1e-10 * pu.max_abs().max(1.0);
    Ok(ContourChart { base: y.clone(), u, sqrt_map, valid })
}
