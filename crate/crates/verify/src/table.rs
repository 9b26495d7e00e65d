//! Convergence tables of single checks across rule sizes.

use std::fmt;
use std::str::FromStr;

use holo_core::jordan::sym2_to_spin3;
use holo_core::operators::{kp_holo_1d_sized, min_ktype_image, ScalarFunction};
use holo_core::quadrature::{cone_rule, integrate, reference_rule, Scheme};
use holo_core::special::{gamma, gamma_r, Signature, WeightParams};
use holo_core::{c64, Element, JordanAlgebra, Result, C64};

/// Checks with a reference value that admit a size sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckId {
    /// `∫_0^1 z^(3/2) (1-z)^(1/2) dz` by Gauss–Legendre against `B(5/2, 3/2)`.
    Rank1Beta,
    /// KP integral at `λ = 5/2, μ = 3/2, l = 2` on `f(w) = w^3` against its closed form.
    Rank1Kp,
    Sym2MinktypeEigen,
    Sym2MinktypeCartesian,
    Spin3MinktypeEigen,
    Spin3MinktypeCartesian,
    /// Cone rule on `∫_Ω e^(-tr x) det(x)^(3/2) Δ_(2,1)(x) dx` against `Γ_Ω(3 + (2,1))`.
    Sym2GammaCone,
}

impl CheckId {
    pub const ALL: [CheckId; 7] = [
        CheckId::Rank1Beta,
        CheckId::Rank1Kp,
        CheckId::Sym2MinktypeEigen,
        CheckId::Sym2MinktypeCartesian,
        CheckId::Spin3MinktypeEigen,
        CheckId::Spin3MinktypeCartesian,
        CheckId::Sym2GammaCone,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Rank1Beta => "rank1-beta",
            CheckId::Rank1Kp => "rank1-kp",
            CheckId::Sym2MinktypeEigen => "sym2-minktype-eigen",
            CheckId::Sym2MinktypeCartesian => "sym2-minktype-cartesian",
            CheckId::Spin3MinktypeEigen => "spin3-minktype-eigen",
            CheckId::Spin3MinktypeCartesian => "spin3-minktype-cartesian",
            CheckId::Sym2GammaCone => "sym2-gamma-cone",
        }
    }

    /// Largest size accepted for this check.
    pub fn max_size(self) -> usize {
        match self {
            CheckId::Sym2MinktypeCartesian | CheckId::Spin3MinktypeCartesian => 256,
            CheckId::Sym2MinktypeEigen | CheckId::Spin3MinktypeEigen => 512,
            _ => 4096,
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        CheckId::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            let names: Vec<_> = CheckId::ALL.iter().map(|c| c.name()).collect();
            format!("unknown check {s:?}; expected one of {}", names.join(", "))
        })
    }
}

/// Parses a comma-separated list of positive sizes.
pub fn parse_sizes(s: &str) -> std::result::Result<Vec<usize>, String> {
    let sizes = s
        .split(',')
        .map(|p| match p.trim().parse::<usize>() {
            Ok(0) => Err("sizes must be positive".to_string()),
            Ok(n) => Ok(n),
            Err(_) => Err(format!("invalid size {p:?}")),
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if sizes.is_empty() {
        return Err("no sizes given".into());
    }
    Ok(sizes)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Row {
    pub size: usize,
    pub value: C64,
    pub err_est: f64,
    pub err_true: f64,
}

fn minktype(alg: JordanAlgebra, scheme: Scheme, size: usize) -> Result<Row> {
    let p = WeightParams::new(alg, c64(3.0, 0.0), c64(2.5, 0.0), Signature::new(vec![2, 1])?)?;
    let s2 = JordanAlgebra::sym_real(2)?;
    let u: Element = s2.real(&[1.0, 0.0, 2.0])?;
    let u = if alg == s2 { u } else { sym2_to_spin3(&u)? };
    let m = min_ktype_image(&p, &u, &reference_rule(alg, scheme, size)?)?;
    Ok(Row { size, value: m.lhs, err_est: m.lhs_error, err_true: (m.lhs - m.rhs).norm() })
}

fn row(check: CheckId, size: usize) -> Result<Row> {
    match check {
        CheckId::Rank1Beta => {
            let alg = JordanAlgebra::rank1();
            let rule = reference_rule(alg, Scheme::GaussJacobi1D, size)?;
            let v = integrate(&rule, |z| {
                let t = z.coords()[0];
                t.powf(1.5) * (1.0 - t).sqrt()
            })?;
            let exact = gamma(c64(2.5, 0.0))? * gamma(c64(1.5, 0.0))? / gamma(c64(4.0, 0.0))?;
            Ok(Row { size, value: v.value, err_est: v.error, err_true: (v.value - exact).norm() })
        }
        CheckId::Rank1Kp => {
            let (lam, mu, x, y) = (c64(2.5, 0.0), c64(1.5, 0.0), c64(0.6, 1.4), c64(-0.3, 0.6));
            let f = ScalarFunction::Monomial(vec![3]);
            let v = kp_holo_1d_sized(lam, mu, 2, &f, x, y, size)?;
            // (x-y)^2 / 2! ∫ t^(λ+1) (1-t)^(μ+1) (y + t(x-y))^3 dt / ∫ ... expanded binomially.
            let u = x - y;
            let mut exact = C64::new(0.0, 0.0);
            for i in 0..=3u32 {
                let binom = [1.0, 3.0, 3.0, 1.0][i as usize];
                let b = gamma(lam + 2.0 + i as f64)? * gamma(mu + 2.0)? / gamma(lam + mu + 4.0 + i as f64)?;
                exact += b * binom * u.powu(i) * y.powu(3 - i);
            }
            exact *= u.powu(2) / 2.0;
            let half = kp_holo_1d_sized(lam, mu, 2, &f, x, y, (size / 2).max(1))?;
            Ok(Row { size, value: v, err_est: (v - half).norm(), err_true: (v - exact).norm() })
        }
        CheckId::Sym2MinktypeEigen => minktype(JordanAlgebra::sym_real(2)?, Scheme::EigenAngle, size),
        CheckId::Sym2MinktypeCartesian => minktype(JordanAlgebra::sym_real(2)?, Scheme::CartesianIndicator, size),
        CheckId::Spin3MinktypeEigen => minktype(JordanAlgebra::spin(3)?, Scheme::EigenAngle, size),
        CheckId::Spin3MinktypeCartesian => minktype(JordanAlgebra::spin(3)?, Scheme::CartesianIndicator, size),
        CheckId::Sym2GammaCone => {
            let alg = JordanAlgebra::sym_real(2)?;
            let k = Signature::new(vec![2, 1])?;
            let rule = cone_rule(alg, size)?;
            let v = integrate(&rule, |x| {
                (-x.trace()).exp()
                    * x.det().re.max(0.0).powf(1.5)
                    * holo_core::special::delta_k(x, &k).unwrap_or(C64::new(f64::NAN, f64::NAN))
            })?;
            let exact = gamma_r(alg, c64(3.0, 0.0), &k)?;
            Ok(Row { size, value: v.value, err_est: v.error, err_true: (v.value - exact).norm() })
        }
    }
}

/// One row per size, in the given order.
pub fn convergence_table(check: CheckId, sizes: &[usize]) -> std::result::Result<Vec<Row>, String> {
    if let Some(&n) = sizes.iter().find(|&&n| n > check.max_size()) {
        return Err(format!("size {n} exceeds the maximum {} for {check}", check.max_size()));
    }
    sizes.iter().map(|&n| row(check, n).map_err(|e| format!("{check} at size {n}: {e}"))).collect()
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut out = String::from("size,value,err_est,err_true\n");
    for r in rows {
        let value = if r.value.im == 0.0 { format!("{:.17e}", r.value.re) } else { format!("{:.17e}{:+.17e}i", r.value.re, r.value.im) };
        out.push_str(&format!("{},{value},{:.3e},{:.3e}\n", r.size, r.err_est, r.err_true));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_parse() {
        assert_eq!(parse_sizes("8, 16,32").unwrap(), vec![8, 16, 32]);
        for bad in ["", "8,,16", "0", "8,x", "-4"] {
            assert!(parse_sizes(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn check_names_round_trip() {
        for c in CheckId::ALL {
            assert_eq!(c.name().parse::<CheckId>().unwrap(), c);
        }
        assert!("rank1".parse::<CheckId>().is_err());
    }

    #[test]
    fn rank1_checks_converge() {
        for c in [CheckId::Rank1Beta, CheckId::Rank1Kp, CheckId::Sym2GammaCone] {
            let rows = convergence_table(c, &[8, 32]).unwrap();
            assert!(rows[1].err_true < rows[0].err_true.max(1e-14), "{c}: {rows:?}");
        }
    }
}
