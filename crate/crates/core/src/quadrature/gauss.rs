//! One-dimensional Gauss and double-exponential rules.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::special::ln_gamma;
use crate::C64;

/// Gauss–Legendre nodes and weights on `(-1, 1)`, ascending.
///
/// Golub–Welsch start, then Newton polish on the three-term recurrence.
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let (mut x, _) = gauss_jacobi(n, 0.0, 0.0)?;
    let mut w = vec![0.0; n];
    for (xi, wi) in x.iter_mut().zip(w.iter_mut()) {
        let mut dp = 0.0;
        for _ in 0..3 {
            let (p, d) = legendre(n, *xi);
            dp = d;
            let step = p / d;
            *xi -= step;
            if step.abs() < 1e-17 {
                break;
            }
        }
        let (_, d) = legendre(n, *xi);
        dp = if d.is_finite() { d } else { dp };
        *wi = 2.0 / ((1.0 - *xi * *xi) * dp * dp);
    }
    Ok((x, w))
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Jacobi rule for the weight `(1 - x)^α (1 + x)^β` on `(-1, 1)`.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 || !(alpha > -1.0 && beta > -1.0) {
        return Err(Error::InvalidParams(format!("Gauss–Jacobi needs n ≥ 1, α, β > -1 (n={n}, α={alpha}, β={beta})")));
    }
    let ab = alpha + beta;
    let mut t = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        t[(k, k)] = if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
        if k + 1 < n {
            let m = kf + 1.0;
            let b = if k == 0 {
                4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * m * (m + alpha) * (m + beta) * (m + ab)
                    / ((2.0 * m + ab).powi(2) * (2.0 * m + ab + 1.0) * (2.0 * m + ab - 1.0))
            };
            t[(k, k + 1)] = b.sqrt();
            t[(k + 1, k)] = b.sqrt();
        }
    }
    let lg = |v: f64| ln_gamma(C64::new(v, 0.0)).map(|z| z.re);
    let mu0 = ((ab + 1.0) * 2f64.ln() + lg(alpha + 1.0)? + lg(beta + 1.0)? - lg(ab + 2.0)?).exp();
    let eig = SymmetricEigen::new(t);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], mu0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(pairs.into_iter().unzip())
}

/// Gauss–Legendre mapped to `(0, 1)`.
pub fn gauss_legendre_unit(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let (x, w) = gauss_legendre(n)?;
    Ok((x.iter().map(|v| 0.5 * (v + 1.0)).collect(), w.iter().map(|v| 0.5 * v).collect()))
}

/// Polynomial endpoint transform `ψ(u) = 10u³ - 15u⁴ + 6u⁵` and its derivative.
#[inline]
pub fn endpoint_transform(u: f64) -> (f64, f64) {
    let u2 = u * u;
    let psi = u2 * u * (10.0 - 15.0 * u + 6.0 * u2);
    let dpsi = 30.0 * u2 * (1.0 - u) * (1.0 - u);
    (psi, dpsi)
}

/// Gauss–Legendre on `(0, 1)` composed with [`endpoint_transform`], for
/// integrands with algebraic endpoint behaviour.
pub fn graded_unit(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let (u, w) = gauss_legendre_unit(n)?;
    Ok(u.iter()
        .zip(&w)
        .map(|(&ui, &wi)| {
            let (p, d) = endpoint_transform(ui);
            (p, wi * d)
        })
        .unzip())
}

/// Double-exponential rule on `(0, ∞)` for integrands with `e^{-x}` decay:
/// `x = exp(τ - e^{-τ})` on a uniform `τ` grid.
pub fn exp_exp(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n < 2 {
        return Err(Error::InvalidParams("the cone rule needs at least two nodes".into()));
    }
    let t_max = 4.5;
    let h = 2.0 * t_max / (n - 1) as f64;
    Ok((0..n)
        .map(|j| {
            let tau = -t_max + j as f64 * h;
            let e = (-tau).exp();
            let x = (tau - e).exp();
            (x, h * x * (1.0 + e))
        })
        .unzip())
}
