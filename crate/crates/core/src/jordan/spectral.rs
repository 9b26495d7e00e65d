use nalgebra::{DMatrix, SymmetricEigen};

use super::{dmap_d, sym_idx, AlgebraKind, Element};
use crate::error::{Error, Result};
use crate::C64;

/// Eigenvalues (non-increasing) and a Jordan frame diagonalising a real element.
#[derive(Clone, Debug)]
pub struct SpectralData {
    pub eigenvalues: Vec<f64>,
    pub idempotents: Vec<Element>,
}

impl SpectralData {
    /// `Σ f(λ_j) c_j`.
    pub fn apply(&self, mut f: impl FnMut(f64) -> f64) -> Element {
        let alg = self.idempotents[0].algebra();
        let mut out = alg.zero();
        for (l, c) in self.eigenvalues.iter().zip(&self.idempotents) {
            out = &out + &c.scale_re(f(*l));
        }
        out
    }
}

/// Scalar functions lifted through the spectral decomposition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpectralFn {
    Inv,
    Sqrt,
    Pow(f64),
    Artanh,
    Tanh,
    Log,
}

impl SpectralFn {
    fn eval(self, t: f64) -> Option<f64> {
        match self {
            SpectralFn::Inv if t != 0.0 => Some(1.0 / t),
            SpectralFn::Sqrt if t >= 0.0 => Some(t.sqrt()),
            SpectralFn::Pow(s) if t > 0.0 => Some(t.powf(s)),
            SpectralFn::Pow(s) if t == 0.0 && s > 0.0 => Some(0.0),
            SpectralFn::Artanh if t.abs() < 1.0 => Some(t.atanh()),
            SpectralFn::Tanh => Some(t.tanh()),
            SpectralFn::Log if t > 0.0 => Some(t.ln()),
            _ => None,
        }
    }
}

/// Spectral decomposition of a real element.
pub fn spectral(x: &Element) -> Result<SpectralData> {
    if !x.is_real() {
        return Err(Error::NotReal);
    }
    let alg = x.algebra();
    let c = x.re_coords();
    let data = match alg.kind() {
        AlgebraKind::Rank1 => SpectralData { eigenvalues: vec![c[0]], idempotents: vec![alg.unit()] },
        AlgebraKind::Spin(n) => {
            let s = c[1..].iter().map(|v| v * v).sum::<f64>().sqrt();
            let mut v = vec![0.0; n - 1];
            if s > 0.0 {
                for i in 0..n - 1 {
                    v[i] = c[i + 1] / s;
                }
            } else {
                v[0] = 1.0;
            }
            let mut c1 = vec![0.5; n];
            let mut c2 = vec![0.5; n];
            for i in 1..n {
                c1[i] = 0.5 * v[i - 1];
                c2[i] = -0.5 * v[i - 1];
            }
            SpectralData {
                eigenvalues: vec![c[0] + s, c[0] - s],
                idempotents: vec![alg.real(&c1)?, alg.real(&c2)?],
            }
        }
        AlgebraKind::SymReal(r) => {
            let m = DMatrix::from_fn(r, r, |i, j| c[sym_idx(r, i, j)]);
            let eig = SymmetricEigen::new(m);
            let mut order: Vec<usize> = (0..r).collect();
            order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
            let mut vals = Vec::with_capacity(r);
            let mut idem = Vec::with_capacity(r);
            for &k in &order {
                vals.push(eig.eigenvalues[k]);
                let v = eig.eigenvectors.column(k);
                let mut p = vec![0.0; alg.dim()];
                for i in 0..r {
                    for j in i..r {
                        p[sym_idx(r, i, j)] = v[i] * v[j];
                    }
                }
                idem.push(alg.real(&p)?);
            }
            SpectralData { eigenvalues: vals, idempotents: idem }
        }
    };
    let back = data.apply(|t| t);
    let scale = x.max_abs();
    if back.max_abs_diff(x) > 1e-10 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::Numerical(format!("spectral reconstruction error {:e}", back.max_abs_diff(x))));
    }
    Ok(data)
}

/// Lifts `f` through the spectral decomposition of a real element.
pub fn spectral_fn(x: &Element, f: SpectralFn) -> Result<Element> {
    let sd = spectral(x)?;
    let mut vals = Vec::with_capacity(sd.eigenvalues.len());
    for &t in &sd.eigenvalues {
        vals.push(f.eval(t).ok_or_else(|| Error::Domain { op: "spectral_fn", detail: format!("{f:?} at {t}") })?);
    }
    let mut it = vals.into_iter();
    Ok(sd.apply(|_| it.next().unwrap()))
}

/// Spectral norm: `|x|_∞^2` is the operator norm of `D(x, conj x)/2`.
pub fn spectral_norm(x: &Element) -> f64 {
    match x.algebra().kind() {
        AlgebraKind::Rank1 => x.coords()[0].norm(),
        _ => {
            let d = dmap_d(x, &x.conj()).expect("same algebra");
            (0.5 * d.op_norm()).sqrt()
        }
    }
}

impl Element {
    /// Eigenvalues of a possibly complex element (roots of the minimal
    /// polynomial over the frame), in no particular order.
    pub fn eigenvalues_complex(&self) -> Result<Vec<C64>> {
        match self.algebra().kind() {
            AlgebraKind::Rank1 | AlgebraKind::SymReal(1) => Ok(vec![self.coords()[0]]),
            AlgebraKind::Spin(_) | AlgebraKind::SymReal(2) => {
                let h = self.trace() * 0.5;
                let disc = (h * h - self.det()).sqrt();
                Ok(vec![h + disc, h - disc])
            }
            AlgebraKind::SymReal(r) => {
                let m = self.to_matrix();
                let schur = m
                    .try_schur(1e-15, 10_000)
                    .ok_or_else(|| Error::Numerical("Schur iteration did not converge".into()))?;
                let (_, t) = schur.unpack();
                Ok((0..r).map(|i| t[(i, i)]).collect())
            }
        }
    }

    /// Principal square root. Every eigenvalue must avoid the closed negative
    /// real axis.
    pub fn principal_sqrt(&self) -> Result<Element> {
        let eig = self.eigenvalues_complex()?;
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        for l in &eig {
            if l.im.abs() <= 1e-14 * scale && l.re <= 0.0 {
                return Err(Error::Domain { op: "principal_sqrt", detail: format!("eigenvalue {l}") });
            }
        }
        let alg = self.algebra();
        match alg.kind() {
            AlgebraKind::Rank1 | AlgebraKind::SymReal(1) => Ok(alg.element(vec![self.coords()[0].sqrt()])?),
            AlgebraKind::Spin(_) | AlgebraKind::SymReal(2) => {
                let s1 = eig[0].sqrt();
                let s2 = eig[1].sqrt();
                let sum = s1 + s2;
                if sum.norm() == 0.0 {
                    return Err(Error::Singular);
                }
                Ok((self + &alg.unit().scale(s1 * s2)).scale(sum.inv()))
            }
            AlgebraKind::SymReal(_) => {
                if self.is_real() {
                    return spectral_fn(self, SpectralFn::Sqrt);
                }
                denman_beavers(self)
            }
        }
    }
}

fn denman_beavers(x: &Element) -> Result<Element> {
    let a = x.to_matrix();
    let n = a.nrows();
    let mut y = a.clone();
    let mut z = DMatrix::<C64>::identity(n, n);
    for _ in 0..100 {
        let yi = y.clone().try_inverse().ok_or(Error::Singular)?;
        let zi = z.clone().try_inverse().ok_or(Error::Singular)?;
        let y2 = (&y + zi) * C64::new(0.5, 0.0);
        let z2 = (&z + yi) * C64::new(0.5, 0.0);
        let delta = (&y2 - &y).iter().fold(0.0f64, |m, v| m.max(v.norm()));
        let size = y2.iter().fold(0.0f64, |m, v| m.max(v.norm()));
        y = y2;
        z = z2;
        if delta <= 1e-15 * size {
            break;
        }
    }
    let out = Element::from_matrix_sym(x.algebra(), &y);
    let err = out.square().max_abs_diff(x);
    if !(err <= 1e-10 * x.max_abs()) {
        return Err(Error::Numerical(format!("matrix square root residual {err:e}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::JordanAlgebra;
    use crate::{c64, C64};

    #[test]
    fn spin_eigenvalues_closed_form() {
        let a = JordanAlgebra::spin(3).unwrap();
        let sd = spectral(&a.real(&[2.0, 1.0, 0.0]).unwrap()).unwrap();
        assert_eq!(sd.eigenvalues, vec![3.0, 1.0]);
        let se = spectral(&a.unit()).unwrap();
        assert_eq!(se.eigenvalues, vec![1.0, 1.0]);
    }

    #[test]
    fn scalar_sqrt_and_inverse() {
        let a = JordanAlgebra::rank1();
        let r = spectral_fn(&a.real(&[4.0]).unwrap(), SpectralFn::Sqrt).unwrap();
        assert_eq!(r.coords()[0], c64(2.0, 0.0));
        let s = JordanAlgebra::sym_real(3).unwrap();
        assert!(spectral_fn(&s.unit(), SpectralFn::Inv).unwrap().max_abs_diff(&s.unit()) < 1e-15);
    }

    #[test]
    fn domain_violation() {
        let a = JordanAlgebra::sym_real(2).unwrap();
        let x = a.real(&[1.0, 0.0, -1.0]).unwrap();
        assert!(matches!(spectral_fn(&x, SpectralFn::Log), Err(Error::Domain { .. })));
        assert!(matches!(spectral_fn(&x, SpectralFn::Artanh), Err(Error::Domain { .. })));
        assert!(matches!(spectral(&x.scale(c64(0.0, 1.0))), Err(Error::NotReal)));
    }

    #[test]
    fn spectral_norm_examples() {
        let a = JordanAlgebra::rank1();
        assert!((spectral_norm(&a.element(vec![c64(0.3, 0.4)]).unwrap()) - 0.5).abs() < 1e-15);
        for alg in [JordanAlgebra::sym_real(2).unwrap(), JordanAlgebra::spin(4).unwrap()] {
            assert!((spectral_norm(&alg.unit()) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn complex_sqrt_squares_back() {
        let a = JordanAlgebra::spin(4).unwrap();
        let x = a.element(vec![c64(2.0, 0.3), c64(0.5, -0.2), c64(0.1, 0.4), c64(-0.3, 0.0)]).unwrap();
        let s = x.principal_sqrt().unwrap();
        assert!(s.square().max_abs_diff(&x) < 1e-13);
        let b = JordanAlgebra::sym_real(3).unwrap();
        let y = b.element(vec![
            c64(3.0, 0.5), c64(0.2, 0.1), C64::new(0.0, 0.3),
            c64(2.0, -0.4), c64(0.1, 0.0), c64(1.5, 0.2),
        ]).unwrap();
        let t = y.principal_sqrt().unwrap();
        assert!(t.square().max_abs_diff(&y) < 1e-12);
    }
}
