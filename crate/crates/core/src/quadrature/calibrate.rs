//! Angular normalisation of the eigen-angle rules, and an independent
//! iterated integrator in raw coordinates used to calibrate it.

use std::f64::consts::PI;

use super::{eigen_angle, gauss_jacobi, gauss_legendre_unit, integrate, RuleDomain};
use crate::error::{Error, Result};
use crate::jordan::{AlgebraKind, Element, JordanAlgebra};
use crate::special::gamma;
use crate::C64;

/// Surface area of the unit sphere `S^m`.
fn sphere_area(m: usize) -> f64 {
    let h = (m as f64 + 1.0) / 2.0;
    2.0 * PI.powf(h) / gamma(C64::new(h, 0.0)).expect("positive argument").re
}

/// Frozen angular constant `c` of the eigen-angle parametrisation.
pub fn angular_constant(alg: JordanAlgebra) -> Result<f64> {
    match alg.kind() {
        AlgebraKind::Rank1 => Ok(1.0),
        AlgebraKind::SymReal(2) => Ok(2f64.sqrt() * PI),
        AlgebraKind::Spin(n) => Ok(2f64.powf(1.0 - n as f64 / 2.0) * sphere_area(n - 2)),
        _ => Err(Error::Unsupported(format!("no eigen-angle parametrisation for {alg}"))),
    }
}

/// Integral over `0 < z < e` by nested Gauss rules in raw coordinates, with
/// exact limits for the inner variables.
///
/// `Sym(2)`: the off-diagonal entry ranges over `|b| < min(√(ac), √((1-a)(1-c)))`,
/// the diagonal square is split along `a + c = 1`. `Spin(n)`: `x'` ranges over
/// the ball of radius `min(x1, 1 - x1)`, split at `x1 = 1/2`.
pub fn iterated_reference_integral<F>(alg: JordanAlgebra, n: usize, f: F) -> Result<C64>
where
    F: Fn(&Element) -> C64,
{
    match alg.kind() {
        AlgebraKind::Rank1 => {
            let (x, w) = gauss_legendre_unit(n)?;
            let mut s = C64::new(0.0, 0.0);
            for (xi, wi) in x.iter().zip(&w) {
                s += f(&alg.real(&[*xi])?) * *wi;
            }
            Ok(s)
        }
        AlgebraKind::SymReal(2) => sym2_iterated(alg, n, &f),
        AlgebraKind::Spin(dim) => spin_iterated(alg, dim, n, &f),
        _ => Err(Error::Unsupported(format!("iterated integration over {alg}"))),
    }
}

fn sym2_iterated(alg: JordanAlgebra, n: usize, f: &dyn Fn(&Element) -> C64) -> Result<C64> {
    let (s_nodes, s_w) = gauss_legendre_unit(n)?;
    let (tau, tau_w) = gauss_jacobi(n, 0.5, 0.5)?;
    let (w_nodes, w_w) = super::gauss_legendre(n)?;
    let mut total = C64::new(0.0, 0.0);
    for lower in [true, false] {
        for (&s, &ws) in s_nodes.iter().zip(&s_w) {
            for (&ta, &wta) in tau.iter().zip(&tau_w) {
                let t = 0.5 * (1.0 + ta);
                let (a, c) = if lower { (s * t, s * (1.0 - t)) } else { (1.0 - s * t, 1.0 - s * (1.0 - t)) };
                // ds dt db = s^2 √(t(1-t)) ds dt dw and dt √(t(1-t)) = (1/4)(1-τ²)^{1/2} dτ.
                let m = s * (t * (1.0 - t)).sqrt();
                let outer = ws * wta * 0.25 * s * s;
                for (&w, &ww) in w_nodes.iter().zip(&w_w) {
                    total += f(&alg.real(&[a, m * w, c])?) * (outer * ww);
                }
            }
        }
    }
    Ok(total * alg.measure_factor())
}

fn spin_iterated(alg: JordanAlgebra, dim: usize, n: usize, f: &dyn Fn(&Element) -> C64) -> Result<C64> {
    let m = dim - 1;
    let (x_nodes, x_w) = gauss_legendre_unit(n)?;
    // Nested ball coordinates: y_i = Π_{j<i} √(1 - s_j²) s_i.
    let mut ball: Vec<(Vec<f64>, f64)> = vec![(Vec::new(), 1.0)];
    for i in 1..=m {
        let alpha = (m - i) as f64 / 2.0;
        let (s, w) = gauss_jacobi(n, alpha, alpha)?;
        let mut next = Vec::with_capacity(ball.len() * n);
        for (y, wy) in &ball {
            let rad: f64 = y.iter().map(|v| v * v).sum::<f64>();
            let rho = (1.0 - rad).max(0.0).sqrt();
            for (&si, &wi) in s.iter().zip(&w) {
                let mut yy = y.clone();
                yy.push(rho * si);
                next.push((yy, wy * wi));
            }
        }
        ball = next;
    }
    let mut total = C64::new(0.0, 0.0);
    let mut coords = vec![0.0; dim];
    for half in [0.0, 0.5] {
        for (&xi, &wx) in x_nodes.iter().zip(&x_w) {
            let x1 = half + 0.5 * xi;
            let r = x1.min(1.0 - x1);
            let outer = 0.5 * wx * r.powi(m as i32);
            coords[0] = x1;
            for (y, wy) in &ball {
                for (k, v) in y.iter().enumerate() {
                    coords[k + 1] = r * v;
                }
                total += f(&alg.real(&coords)?) * (outer * wy);
            }
        }
    }
    Ok(total * alg.measure_factor())
}

/// Recomputes the angular constant by matching an unnormalised eigen-angle rule
/// against [`iterated_reference_integral`] on two probes, `exp(-tr z)` and
/// `det z`. The probes must agree on `c` to `1e-6`.
pub fn calibrate_angular_constant(alg: JordanAlgebra) -> Result<f64> {
    let (eig_size, iter_size) = match alg.kind() {
        AlgebraKind::Rank1 => return Ok(1.0),
        AlgebraKind::SymReal(2) | AlgebraKind::Spin(3) => (48, 24),
        AlgebraKind::Spin(4) => (24, 16),
        AlgebraKind::Spin(n) if n <= 6 => (16, 10),
        _ => return Err(Error::Unsupported(format!("calibration for {alg}"))),
    };
    let rule = eigen_angle(alg, eig_size, RuleDomain::Reference, 1.0)?;
    let probes: [fn(&Element) -> C64; 2] = [|z| (-z.trace()).exp(), |z| z.det()];
    let mut cs = Vec::new();
    for p in probes {
        let unit = integrate(&rule, p)?.value.re;
        let direct = iterated_reference_integral(alg, iter_size, p)?.re;
        cs.push(direct / unit);
    }
    if (cs[0] - cs[1]).abs() > 1e-6 * cs[0].abs() {
        return Err(Error::Numerical(format!("probe constants disagree: {} vs {}", cs[0], cs[1])));
    }
    Ok(cs[0])
}
