//! The verification suites.

use std::fmt::Display;

use holo_core::geometry::{act, in_cone, midpoint_resolvent, quasi_inverse, sqrt_quad_map, GroupGenerator};
use holo_core::jordan::{bmap_b, generic_norm, quad_p, spectral_norm, spin3_to_sym2, sym2_to_spin3};
use holo_core::operators::{
    equivariance_residual, holo_up_scalar, kp_holo_1d, min_ktype_image, min_ktype_many, rank1_rule, rankin_cohen,
    rc_kp_composition, sl2_action, sl2_action_pair, Poly2, RcScalar, ScalarFunction, Sl2Generator,
};
use holo_core::quadrature::{cone_rule, integrate, integrate_cone_pullback, reference_rule, QuadratureRule, Scheme};
use holo_core::special::{beta_raw, check_dual_power, collapse_check, delta_k, gamma, gamma_r, Signature, WeightParams};
use holo_core::{c64, AlgebraKind, Element, JordanAlgebra, C64};
use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{Suite, VerifyConfig, MAX_CARTESIAN_NODES};
use crate::report::{inputs, Record, Report};

/// Runs the selected suites in parallel.
pub fn run(cfg: &VerifyConfig) -> Report {
    let mut suites = cfg.suites.clone();
    suites.sort();
    suites.dedup();
    let records: Vec<Record> = suites.par_iter().flat_map(|&s| run_suite(cfg, s)).collect();
    Report::new(cfg.seed, suites, records)
}

/// Records of one suite. Each suite draws from its own stream, so results
/// do not depend on which other suites run.
pub fn run_suite(cfg: &VerifyConfig, suite: Suite) -> Vec<Record> {
    let index = Suite::ALL.iter().position(|&s| s == suite).unwrap_or(0) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(index));
    match suite {
        Suite::JordanIdentities => jordan_identities(cfg, &mut rng),
        Suite::GeometryIdentities => geometry_identities(cfg, &mut rng),
        Suite::GammaIntegral => gamma_integral(cfg),
        Suite::BetaMinktype => beta_minktype(cfg),
        Suite::Rank1Kp => rank1_kp(cfg),
        Suite::RankinCohen => rankin_cohen_suite(cfg),
        Suite::Equivariance => equivariance(cfg, &mut rng),
        Suite::CrossAlgebra => cross_algebra(cfg, &mut rng),
    }
}

fn fmt_c(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

fn fmt_k(k: &Signature) -> String {
    k.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

/// Algebras with operator and quadrature support.
fn low_rank(alg: &JordanAlgebra) -> bool {
    alg.rank() <= 2
}

fn cartesian_fits(cfg: &VerifyConfig, alg: JordanAlgebra) -> bool {
    alg.dim() <= 6 && cfg.sizes.cartesian.checked_pow(alg.dim() as u32).is_some_and(|n| n <= MAX_CARTESIAN_NODES)
}

fn rank2_engines(cfg: &VerifyConfig, alg: JordanAlgebra) -> Vec<(Scheme, usize, f64)> {
    let t = &cfg.tolerances;
    let mut out = vec![(Scheme::EigenAngle, cfg.sizes.eigen, t.minktype_eigen)];
    if cartesian_fits(cfg, alg) {
        out.push((Scheme::CartesianIndicator, cfg.sizes.cartesian, t.minktype_cartesian));
    }
    out
}

mod sample {
    use super::*;

    pub fn real(rng: &mut ChaCha8Rng, alg: JordanAlgebra) -> Element {
        let c: Vec<f64> = (0..alg.dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
        alg.real(&c).expect("dimension matches")
    }

    pub fn complex(rng: &mut ChaCha8Rng, alg: JordanAlgebra) -> Element {
        let c: Vec<C64> =
            (0..alg.dim()).map(|_| c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        alg.element(c).expect("dimension matches")
    }

    pub fn invertible(rng: &mut ChaCha8Rng, alg: JordanAlgebra) -> Element {
        loop {
            let x = real(rng, alg);
            if x.det().norm() >= 0.05 {
                return x;
            }
        }
    }

    /// Cone element with spectrum roughly in `[0.2, 2.2]`.
    pub fn cone(rng: &mut ChaCha8Rng, alg: JordanAlgebra) -> Element {
        loop {
            let x = &real(rng, alg).scale_re(0.6) + &alg.unit().scale_re(1.2);
            if in_cone(&x, 0.2) {
                return x;
            }
        }
    }

    pub fn disk(rng: &mut ChaCha8Rng, alg: JordanAlgebra) -> Element {
        let x = complex(rng, alg);
        let target = rng.random_range(0.1..0.9);
        x.scale_re(target / spectral_norm(&x))
    }

    pub fn imaginary_cone(rng: &mut ChaCha8Rng, alg: JordanAlgebra) -> Element {
        cone(rng, alg).scale(c64(0.0, 1.0))
    }

    pub fn tube(rng: &mut ChaCha8Rng, alg: JordanAlgebra) -> Element {
        &real(rng, alg).scale_re(0.5) + &imaginary_cone(rng, alg)
    }
}

/// Worst draw of a scalar identity.
#[derive(Default)]
struct Worst {
    rel: f64,
    pair: Option<(C64, C64)>,
    failure: Option<String>,
}

impl Worst {
    fn scalar(&mut self, expected: C64, computed: C64) {
        let r = rel(computed, expected);
        if self.pair.is_none() || !(r <= self.rel) {
            self.rel = r;
            self.pair = Some((expected, computed));
        }
    }

    /// Nonnegative discrepancy.
    fn value(&mut self, v: f64) {
        if self.pair.is_none() || !(v <= self.rel) {
            self.rel = v;
            self.pair = Some((C64::new(0.0, 0.0), C64::new(v, 0.0)));
        }
    }

    fn error(&mut self, e: impl Display) {
        self.failure.get_or_insert_with(|| e.to_string());
    }

    fn scalar_record(self, suite: Suite, id: String, anchor: &str, alg: JordanAlgebra, draws: usize, tol: f64) -> Record {
        let inp = inputs([("algebra", alg.to_string()), ("draws", draws.to_string())]);
        match (self.failure, self.pair) {
            (Some(msg), _) => Record::failure(suite, id, anchor, inp, tol, msg),
            (None, Some((e, c))) => Record::compare(suite, id, anchor, inp, e, c, tol),
            (None, None) => Record::failure(suite, id, anchor, inp, tol, "no admissible draw".into()),
        }
    }

    fn bound_record(self, suite: Suite, id: String, anchor: &str, alg: JordanAlgebra, draws: usize, tol: f64) -> Record {
        let inp = inputs([("algebra", alg.to_string()), ("draws", draws.to_string())]);
        match (self.failure, self.pair) {
            (Some(msg), _) => Record::failure(suite, id, anchor, inp, tol, msg),
            (None, Some(_)) => Record::bound(suite, id, anchor, inp, self.rel, tol),
            (None, None) => Record::failure(suite, id, anchor, inp, tol, "no admissible draw".into()),
        }
    }
}

fn rel_diff(a: &Element, b: &Element) -> f64 {
    a.max_abs_diff(b) / b.max_abs().max(f64::MIN_POSITIVE)
}

fn jordan_identities(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Vec<Record> {
    let s = Suite::JordanIdentities;
    let t = &cfg.tolerances;
    let n = cfg.draws;
    let mut out = Vec::new();
    for alg in cfg.algebras() {
        let pow = 2.0 * alg.n_over_r();
        let mut w: [Worst; 7] = Default::default();
        let [dp, db, dq, pi, it, pa, fr] = &mut w;
        for _ in 0..n {
            let x = sample::invertible(rng, alg);
            dp.scalar(x.det().powf(pow), quad_p(&x).det());

            let (bx, by) = (sample::disk(rng, alg), sample::disk(rng, alg));
            match (bmap_b(&bx, &by), generic_norm(&bx, &by)) {
                (Ok(b), Ok(h)) => db.scalar(h.powf(pow), b.det()),
                (Err(e), _) | (_, Err(e)) => db.error(e),
            }

            let y = sample::real(rng, alg);
            match quad_p(&x).apply(&y) {
                Ok(py) => dq.scalar(x.det().powu(2) * y.det(), py.det()),
                Err(e) => dq.error(e),
            }

            match (x.inverse(), quad_p(&x).inverse()) {
                (Ok(xi), Ok(inv)) => {
                    let a = quad_p(&xi);
                    pi.value(a.max_abs_diff(&inv) / inv.max_abs());
                }
                (Err(e), _) | (_, Err(e)) => pi.error(e),
            }

            let (cx, cy) = (sample::complex(rng, alg), sample::complex(rng, alg));
            match (cx.inner(&cy), cx.jordan_mul(&cy)) {
                (Ok(ip), Ok(prod)) => it.scalar(prod.trace(), ip),
                (Err(e), _) | (_, Err(e)) => it.error(e),
            }

            let x2 = cx.square();
            match (x2.jordan_mul(&x2), x2.jordan_mul(&cx).and_then(|x3| x3.jordan_mul(&cx))) {
                (Ok(a), Ok(b)) => pa.value(rel_diff(&a, &b)),
                (Err(e), _) | (_, Err(e)) => pa.error(e),
            }
        }
        let frame = alg.frame();
        let mut sum = alg.zero();
        for (i, c) in frame.iter().enumerate() {
            sum = &sum + c;
            for (j, d) in frame.iter().enumerate() {
                match c.jordan_mul(d) {
                    Ok(p) => fr.value(if i == j { p.max_abs_diff(c) } else { p.max_abs() }),
                    Err(e) => fr.error(e),
                }
            }
        }
        fr.value(sum.max_abs_diff(&alg.unit()));
        let [dp, db, dq, pi, it, pa, fr] = w;
        out.push(dp.scalar_record(s, format!("det-p/{alg}"), "Det P(x) = det(x)^(2n/r)", alg, n, t.det_p));
        out.push(db.scalar_record(s, format!("det-b/{alg}"), "Det B(x, y) = h(x, y)^(2n/r)", alg, n, t.det_b));
        out.push(dq.scalar_record(
            s,
            format!("det-quadratic/{alg}"),
            "det(P(x) y) = det(x)^2 det(y)",
            alg,
            n,
            t.det_p,
        ));
        out.push(pi.bound_record(s, format!("p-inverse/{alg}"), "P(x^-1) = P(x)^-1", alg, n, t.identity));
        out.push(it.scalar_record(s, format!("inner-trace/{alg}"), "<x, y> = tr(x y)", alg, n, t.identity));
        out.push(pa.bound_record(s, format!("power-assoc/{alg}"), "x^2 x^2 = (x^2 x) x", alg, n, t.identity));
        out.push(fr.bound_record(
            s,
            format!("frame/{alg}"),
            "c_i c_j = δ_ij c_i, Σ c_i = e",
            alg,
            1,
            t.frame,
        ));
    }
    out
}

fn geometry_identities(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Vec<Record> {
    let s = Suite::GeometryIdentities;
    let t = &cfg.tolerances;
    let n = cfg.draws;
    let mut out = Vec::new();
    for alg in cfg.algebras() {
        let mut w: [Worst; 6] = Default::default();
        for _ in 0..n {
            let x = sample::invertible(rng, alg);
            let v = sample::real(rng, alg).scale_re(0.3);
            if let Ok(q) = quasi_inverse(&x, &v) {
                match x.inverse().and_then(|xi| (&xi - &v).inverse()) {
                    Ok(direct) => w[0].value(rel_diff(&q, &direct)),
                    Err(e) => w[0].error(e),
                }
            }

            let (y, m) = (sample::real(rng, alg), sample::real(rng, alg));
            let xc = &y + &sample::cone(rng, alg);
            let (a, b, c) = ((&m - &y).det(), (&xc - &m).det(), (&xc - &y).det());
            if a.norm() > 0.05 && b.norm() > 0.05 {
                match midpoint_resolvent(&m, &y, &xc) {
                    Ok(r) => w[1].scalar(a * b / c, r.det()),
                    Err(e) => w[1].error(e),
                }
            }

            let (cx, cy) = (sample::cone(rng, alg), sample::cone(rng, alg));
            if (&cx - &cy).det().norm() > 0.05 {
                let lhs = cy.inverse().and_then(|a| cx.inverse().map(|b| quad_p(&(&a - &b))));
                let rhs = quad_p(&cx).inverse().and_then(|a| {
                    a.compose(&quad_p(&(&cx - &cy)))?.compose(&quad_p(&cy).inverse()?)
                });
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) => w[2].value(l.max_abs_diff(&r) / r.max_abs()),
                    (Err(e), _) | (_, Err(e)) => w[2].error(e),
                }
            }

            let z = sample::cone(rng, alg);
            let mut parts: Vec<u32> = (0..alg.rank()).map(|_| rng.random_range(0..4)).collect();
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let k0 = parts[0] + rng.random_range(0..3);
            match Signature::new(parts).and_then(|k| check_dual_power(&z, &k, k0)) {
                Ok((l, r)) => w[3].scalar(r, l),
                Err(e) => w[3].error(e),
            }

            let d = sample::disk(rng, alg);
            match act(&GroupGenerator::Cayley, &d).and_then(|c| act(&GroupGenerator::InverseCayley, &c)) {
                Ok(back) => w[4].value(back.max_abs_diff(&d) / d.max_abs().max(1.0)),
                Err(e) => w[4].error(e),
            }

            let theta = rng.random_range(-1.0..1.0);
            let u = sample::cone(rng, alg).scale(C64::from_polar(1.0, theta));
            match sqrt_quad_map(&u).and_then(|m| m.compose(&m)) {
                Ok(sq) => {
                    let pu = quad_p(&u);
                    w[5].value(sq.max_abs_diff(&pu) / pu.max_abs());
                }
                Err(e) => w[5].error(e),
            }
        }
        let [qi, hua, inv, dual, cay, chart] = w;
        out.push(qi.bound_record(s, format!("quasi-inverse/{alg}"), "x^v = (x^-1 - v)^-1", alg, n, t.quasi_inverse));
        out.push(hua.scalar_record(
            s,
            format!("hua-det/{alg}"),
            "det((w-y)^-1 + (x-w)^-1)^-1 = det(w-y) det(x-w) / det(x-y)",
            alg,
            n,
            t.hua,
        ));
        out.push(inv.bound_record(
            s,
            format!("inversion-factorization/{alg}"),
            "P(y^-1 - x^-1) = P(x)^-1 P(x-y) P(y)^-1",
            alg,
            n,
            t.inversion,
        ));
        out.push(dual.scalar_record(
            s,
            format!("dual-power/{alg}"),
            "det(z)^k0 Δ_k(z^-1) = Δ*_(k0-k^∨)(z)",
            alg,
            n,
            t.dual_power,
        ));
        out.push(cay.bound_record(s, format!("cayley-round-trip/{alg}"), "c^-1(c(z)) = z on D", alg, n, t.identity));
        out.push(chart.bound_record(
            s,
            format!("chart-square-root/{alg}"),
            "P(u^1/2)^2 = P(u) on the admissible branch",
            alg,
            n,
            t.identity,
        ));
    }
    out
}

fn gamma_integral(cfg: &VerifyConfig) -> Vec<Record> {
    let s = Suite::GammaIntegral;
    let tol = cfg.tolerances.gamma;
    let anchor = "∫_Ω e^(-tr x) det(x)^(λ-n/r) Δ_k(x) dx = Γ_Ω(λ+k)";
    let mut out = Vec::new();
    for alg in cfg.algebras().into_iter().filter(low_rank) {
        let mut engines: Vec<(&str, Result<QuadratureRule, holo_core::Error>, bool)> =
            vec![("cone", cone_rule(alg, cfg.sizes.cone), false)];
        if alg.rank() == 1 {
            engines.push(("pullback", reference_rule(alg, Scheme::GaussJacobi1D, cfg.sizes.rank1), true));
        } else if cartesian_fits(cfg, alg) {
            engines.push(("pullback", reference_rule(alg, Scheme::CartesianIndicator, cfg.sizes.cartesian), true));
        }
        let shift = alg.n_over_r();
        for (name, rule, pullback) in &engines {
            for &lam in &cfg.gamma_lambdas {
                for k in cfg.gamma_signatures_for(alg.rank()) {
                    let id = format!("{alg}/{name}/l={lam}/k={}", fmt_k(&k));
                    let inp = inputs([
                        ("algebra", alg.to_string()),
                        ("engine", name.to_string()),
                        ("lambda", lam.to_string()),
                        ("k", fmt_k(&k)),
                    ]);
                    let g = |x: &Element| {
                        let d = delta_k(x, &k).unwrap_or(C64::new(f64::NAN, f64::NAN));
                        (-x.trace()).exp() * x.det().re.max(0.0).powf(lam - shift) * d
                    };
                    let value = rule.as_ref().map_err(Clone::clone).and_then(|r| {
                        if *pullback {
                            integrate_cone_pullback(r, g)
                        } else {
                            integrate(r, g)
                        }
                    });
                    out.push(match (value, gamma_r(alg, c64(lam, 0.0), &k)) {
                        (Ok(v), Ok(exact)) => Record::compare(s, id, anchor, inp, exact, v.value, tol),
                        (Err(e), _) | (_, Err(e)) => Record::failure(s, id, anchor, inp, tol, e.to_string()),
                    });
                }
            }
        }
    }
    out
}

fn operator_inputs(p: &WeightParams, engine: &str, size: usize, u: &[f64]) -> crate::report::Inputs {
    inputs([
        ("algebra", p.algebra.to_string()),
        ("engine", engine.to_string()),
        ("size", size.to_string()),
        ("lambda", fmt_c(p.lambda)),
        ("mu", fmt_c(p.mu)),
        ("k", fmt_k(&p.k)),
        ("u", fmt_list(u)),
    ])
}

fn operator_id(p: &WeightParams, engine: &str, u: &[f64]) -> String {
    format!("{}/{engine}/l={}/m={}/k={}/u={}", p.algebra, fmt_c(p.lambda), fmt_c(p.mu), fmt_k(&p.k), fmt_list(u))
}

fn frame_point(alg: JordanAlgebra, d: &[f64]) -> Result<Element, holo_core::Error> {
    alg.frame_diag(&d.iter().map(|&v| c64(v, 0.0)).collect::<Vec<_>>())
}

/// Minimal-K-type images for every parameter and point of `alg` under one engine.
fn minktype_grid(
    cfg: &VerifyConfig,
    alg: JordanAlgebra,
    scheme: Scheme,
    size: usize,
) -> Vec<(WeightParams, Vec<f64>, Result<holo_core::operators::MinKType, holo_core::Error>)> {
    let params = cfg.params_for(alg);
    let rule = reference_rule(alg, scheme, size);
    let mut out = Vec::new();
    for d in cfg.points_for(alg.rank()) {
        let res = rule.as_ref().map_err(Clone::clone).and_then(|r| min_ktype_many(&params, &frame_point(alg, &d)?, r));
        match res {
            Ok(ms) => out.extend(params.iter().cloned().zip(ms).map(|(p, m)| (p, d.clone(), Ok(m)))),
            Err(e) => out.extend(params.iter().cloned().map(|p| (p, d.clone(), Err(e.clone())))),
        }
    }
    out
}

fn beta_minktype(cfg: &VerifyConfig) -> Vec<Record> {
    let s = Suite::BetaMinktype;
    let t = &cfg.tolerances;
    let anchor = "F1(u, 0) = B(λ, μ, k) Δ_k(u)";
    let mut out = Vec::new();
    for alg in cfg.algebras() {
        if alg.rank() == 1 {
            for p in cfg.params_for(alg) {
                for d in cfg.points_for(1) {
                    let id = operator_id(&p, "jacobi", &d);
                    let inp = operator_inputs(&p, "jacobi", cfg.sizes.rank1, &d);
                    let m = rank1_rule(&p, cfg.sizes.rank1)
                        .and_then(|r| min_ktype_image(&p, &frame_point(alg, &d)?, &r));
                    out.push(match m {
                        Ok(m) => Record::compare(s, id, anchor, inp, m.rhs, m.lhs, t.minktype_rank1),
                        Err(e) => Record::failure(s, id, anchor, inp, t.minktype_rank1, e.to_string()),
                    });
                }
            }
        } else if low_rank(&alg) {
            for (scheme, size, tol) in rank2_engines(cfg, alg) {
                for (p, d, m) in minktype_grid(cfg, alg, scheme, size) {
                    let id = operator_id(&p, scheme.name(), &d);
                    let inp = operator_inputs(&p, scheme.name(), size, &d);
                    out.push(match m {
                        Ok(m) => Record::compare(s, id, anchor, inp, m.rhs, m.lhs, tol)
                            .with_message(format!("quadrature error estimate {:.3e}", m.lhs_error)),
                        Err(e) => Record::failure(s, id, anchor, inp, tol, e.to_string()),
                    });
                }
            }
        }
        for (lam, mu) in cfg.weight_pairs() {
            for l in 0..=cfg.l_max {
                let id = format!("collapse/{alg}/l={}/m={}/k={l}", fmt_c(lam), fmt_c(mu));
                let anchor = "B(λ, μ, (l,..,l)) = B(λ+l, μ+l, 0)";
                let inp = inputs([
                    ("algebra", alg.to_string()),
                    ("lambda", fmt_c(lam)),
                    ("mu", fmt_c(mu)),
                    ("l", l.to_string()),
                ]);
                out.push(match collapse_check(alg, lam, mu, l) {
                    Ok((a, b)) => Record::compare(s, id, anchor, inp, b, a, t.collapse),
                    Err(e) => Record::failure(s, id, anchor, inp, t.collapse, e.to_string()),
                });
            }
        }
    }
    out
}

/// Base points of the rank-one checks; `x - y` lies in the right half-plane.
const KP_X: C64 = C64::new(0.7, 1.3);
const KP_Y: C64 = C64::new(-0.4, 0.5);

fn factorial(l: u32) -> f64 {
    (1..=l).map(|i| i as f64).product()
}

fn rank1_kp(cfg: &VerifyConfig) -> Vec<Record> {
    let s = Suite::Rank1Kp;
    let t = &cfg.tolerances;
    let one = ScalarFunction::one();
    let alg = JordanAlgebra::rank1();
    let xy = [("x", fmt_c(KP_X)), ("y", fmt_c(KP_Y))];
    let mut out = Vec::new();
    let base_anchor = "KP at λ = μ = 2, l = 0 on f = 1 equals 1/6";
    let inp = inputs(xy.clone());
    out.push(match kp_holo_1d(c64(2.0, 0.0), c64(2.0, 0.0), 0, &one, KP_X, KP_Y) {
        Ok(v) => Record::compare(s, "kp/base".into(), base_anchor, inp, c64(1.0 / 6.0, 0.0), v, t.kp_base),
        Err(e) => Record::failure(s, "kp/base".into(), base_anchor, inp, t.kp_base, e.to_string()),
    });
    let (xe, ye) = (alg.element(vec![KP_X]).expect("rank one"), alg.element(vec![KP_Y]).expect("rank one"));
    for (lam, mu) in cfg.weight_pairs() {
        for l in 0..=cfg.l_max {
            let lf = l as f64;
            let inp = inputs([
                ("lambda", fmt_c(lam)),
                ("mu", fmt_c(mu)),
                ("l", l.to_string()),
                xy[0].clone(),
                xy[1].clone(),
            ]);
            let tag = format!("l={}/m={}/k={l}", fmt_c(lam), fmt_c(mu));
            let kp = kp_holo_1d(lam, mu, l, &one, KP_X, KP_Y);
            let exact = gamma(lam + lf)
                .and_then(|a| Ok(a * gamma(mu + lf)? / gamma(lam + mu + 2.0 * lf)?))
                .map(|b| b * (KP_X - KP_Y).powu(l) / factorial(l));
            let anchor = "KP[1](x, y) = B(λ+l, μ+l) (x-y)^l / l!";
            let id = format!("kp/{tag}");
            out.push(match (kp.as_ref(), exact.as_ref()) {
                (Ok(v), Ok(e)) => Record::compare(s, id, anchor, inp.clone(), *e, *v, t.kp),
                (Err(e), _) | (_, Err(e)) => Record::failure(s, id, anchor, inp.clone(), t.kp, e.to_string()),
            });

            let anchor = "KP[f] = F[f] / l!";
            let id = format!("bridge/{tag}");
            let h = WeightParams::new(alg, lam, mu, Signature::new(vec![l]).expect("one part"))
                .and_then(|p| holo_up_scalar(&p, &one, &xe, &ye, &rank1_rule(&p, cfg.sizes.rank1)?));
            out.push(match (kp.as_ref(), h.as_ref()) {
                (Ok(k), Ok(h)) => {
                    Record::compare(s, id, anchor, inp, c64(1.0 / factorial(l), 0.0), *k / h.value, t.bridge)
                }
                (Err(e), _) | (_, Err(e)) => Record::failure(s, id, anchor, inp, t.bridge, e.to_string()),
            });
        }
    }
    out
}

/// Largest coefficient mismatch of `RC(dπ(X) f) = dπ(X) RC(f)` over monomials of degree ≤ 5 in each variable.
fn rc_mismatch<T: RcScalar>(lam: &T, mu: &T, l: u32, gen: Sl2Generator, diff: impl Fn(&T, &T) -> f64) -> f64 {
    let target = lam.clone() + mu.clone() + T::from_i64(2 * l as i64);
    let mut worst: f64 = 0.0;
    for a in 0..=5 {
        for b in 0..=5 {
            let f = Poly2::monomial(a, b, T::from_i64(1));
            let lhs = rankin_cohen(lam, mu, l, &sl2_action_pair(gen, lam, mu, &f));
            let rhs = sl2_action(gen, &target, &rankin_cohen(lam, mu, l, &f));
            for deg in 0..=(a + b + 2) {
                worst = worst.max(diff(&lhs.coeff(deg), &rhs.coeff(deg)));
            }
        }
    }
    worst
}

fn rankin_cohen_suite(cfg: &VerifyConfig) -> Vec<Record> {
    let s = Suite::RankinCohen;
    let t = &cfg.tolerances;
    let mut out = Vec::new();
    for (lam, mu) in cfg.weight_pairs() {
        let exact = (lam.im == 0.0 && mu.im == 0.0)
            .then(|| Some((BigRational::from_float(lam.re)?, BigRational::from_float(mu.re)?)))
            .flatten();
        for l in 0..=cfg.l_max {
            for gen in Sl2Generator::ALL {
                let id = format!("intertwining/l={}/m={}/k={l}/{gen:?}", fmt_c(lam), fmt_c(mu)).to_lowercase();
                let anchor = "RC_l(dπ_λ⊗dπ_μ(X) f) = dπ_(λ+μ+2l)(X) RC_l(f)";
                let mut inp = inputs([
                    ("lambda", fmt_c(lam)),
                    ("mu", fmt_c(mu)),
                    ("l", l.to_string()),
                    ("generator", format!("{gen:?}")),
                ]);
                out.push(match &exact {
                    Some((a, b)) => {
                        inp.insert("arithmetic".into(), "exact".into());
                        let n = rc_mismatch(a, b, l, gen, |x, y| if x == y { 0.0 } else { 1.0 });
                        Record::bound(s, id, anchor, inp, n, 0.0)
                    }
                    None => {
                        inp.insert("arithmetic".into(), "float".into());
                        let d = rc_mismatch(&lam, &mu, l, gen, |x: &C64, y: &C64| (x - y).norm() / y.norm().max(1.0));
                        Record::bound(s, id, anchor, inp, d, t.rankin_cohen)
                    }
                });
            }
            let id = format!("rc-kp/l={}/m={}/k={l}", fmt_c(lam), fmt_c(mu));
            let anchor = "RC_l ∘ KP_l is a constant multiple of the identity";
            let inp = inputs([("lambda", fmt_c(lam)), ("mu", fmt_c(mu)), ("l", l.to_string())]);
            out.push(match rc_kp_composition(lam, mu, l, 6) {
                Ok(r) => {
                    let spread = r.iter().map(|v| rel(*v, r[0])).fold(0.0, f64::max);
                    Record::bound(s, id, anchor, inp, spread, t.rc_kp)
                }
                Err(e) => Record::failure(s, id, anchor, inp, t.rc_kp, e.to_string()),
            });
        }
    }
    out
}

struct EquivSetup {
    params: WeightParams,
    invert_params: WeightParams,
    rule: QuadratureRule,
    invert_rule: QuadratureRule,
    f: ScalarFunction,
}

fn equiv_setup(cfg: &VerifyConfig, alg: JordanAlgebra) -> Result<EquivSetup, holo_core::Error> {
    let r = alg.rank();
    let (lam, mu) = cfg.weight_pairs().first().copied().unwrap_or((c64(3.0, 0.0), c64(3.0, 0.0)));
    let sigs = cfg.signatures_for(r);
    let k = sigs
        .iter()
        .filter(|k| !k.is_constant())
        .max_by_key(|k| k.total())
        .or_else(|| sigs.last())
        .cloned()
        .unwrap_or_else(|| Signature::zeros(r));
    let params = WeightParams::new(alg, lam, mu, k)?;
    let invert_params = WeightParams::new(alg, lam, mu, Signature::constant(r, 1))?;
    let (rule, invert_rule, f) = if r == 1 {
        (
            rank1_rule(&params, cfg.sizes.rank1)?,
            rank1_rule(&invert_params, cfg.sizes.rank1)?,
            ScalarFunction::callback(|w: &Element| (w.coords()[0] * 0.3).exp() + w.coords()[0].powu(2)),
        )
    } else {
        let rule = reference_rule(alg, Scheme::EigenAngle, cfg.sizes.eigen)?;
        let d = Signature::new(vec![1, 0])?;
        let f = ScalarFunction::callback(move |w: &Element| {
            (w.trace() * 0.25).exp() + delta_k(w, &d).unwrap_or(C64::new(f64::NAN, f64::NAN)).powu(2) * 0.2
        });
        (rule.clone(), rule, f)
    };
    Ok(EquivSetup { params, invert_params, rule, invert_rule, f })
}

fn equivariance(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Vec<Record> {
    let s = Suite::Equivariance;
    let tol = cfg.tolerances.equivariance_factor;
    let anchor = "F[ρ(g) f] = cocycle · (F f)∘g, residual within a multiple of the quadrature estimate";
    let names = ["translate", "dilate", "invert"];
    let mut out = Vec::new();
    for alg in cfg.algebras().into_iter().filter(low_rank) {
        let setup = match equiv_setup(cfg, alg) {
            Ok(v) => v,
            Err(e) => {
                for name in names {
                    let inp = inputs([("algebra", alg.to_string()), ("generator", name.into())]);
                    out.push(Record::failure(s, format!("{alg}/{name}"), anchor, inp, tol, e.to_string()));
                }
                continue;
            }
        };
        let mut worst = [0.0f64; 3];
        let mut errors: [Option<String>; 3] = Default::default();
        for _ in 0..cfg.equivariance_configs {
            let y = sample::tube(rng, alg);
            let theta = rng.random_range(-1.0..1.0);
            let x = &y + &sample::cone(rng, alg).scale(C64::from_polar(1.0, theta));
            let a: Vec<C64> = (0..alg.rank()).map(|_| c64(rng.random_range(0.5..1.5), 0.0)).collect();
            let dil = alg.frame_diag(&a).and_then(GroupGenerator::dilate);
            let yi = sample::imaginary_cone(rng, alg);
            let xi = &yi + &sample::imaginary_cone(rng, alg).scale_re(0.5);
            let translate = GroupGenerator::Translate(sample::real(rng, alg));
            let runs = [
                Ok((translate, &setup.params, &setup.rule, x.clone(), y.clone())),
                dil.map(|g| (g, &setup.params, &setup.rule, x, y)),
                Ok((GroupGenerator::Invert, &setup.invert_params, &setup.invert_rule, xi, yi)),
            ];
            for (slot, run) in runs.into_iter().enumerate() {
                match run.and_then(|(g, p, rule, x, y)| equivariance_residual(p, &setup.f, &g, &x, &y, rule)) {
                    Ok(e) => {
                        let ratio = if e.residual == 0.0 { 0.0 } else { e.residual / e.error_estimate };
                        if !(ratio <= worst[slot]) {
                            worst[slot] = ratio;
                        }
                    }
                    Err(e) => {
                        errors[slot].get_or_insert_with(|| e.to_string());
                    }
                }
            }
        }
        for (slot, name) in names.into_iter().enumerate() {
            let p = if slot == 2 { &setup.invert_params } else { &setup.params };
            let inp = inputs([
                ("algebra", alg.to_string()),
                ("generator", name.into()),
                ("configs", cfg.equivariance_configs.to_string()),
                ("lambda", fmt_c(p.lambda)),
                ("mu", fmt_c(p.mu)),
                ("k", fmt_k(&p.k)),
            ]);
            let id = format!("{alg}/{name}");
            out.push(match errors[slot].take() {
                Some(msg) => Record::failure(s, id, anchor, inp, tol, msg),
                None => Record::bound(s, id, anchor, inp, worst[slot], tol),
            });
        }
    }
    out
}

fn cross_algebra(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Vec<Record> {
    let s = Suite::CrossAlgebra;
    let t = &cfg.tolerances;
    let sym = JordanAlgebra::new(AlgebraKind::SymReal(2)).expect("sym(2)");
    let spin = JordanAlgebra::new(AlgebraKind::Spin(3)).expect("spin(3)");
    let mut out = Vec::new();

    let (mut round, mut hom, mut det) = (Worst::default(), Worst::default(), Worst::default());
    for _ in 0..cfg.draws {
        let (x, y) = (sample::complex(rng, sym), sample::complex(rng, sym));
        let res = (|| {
            let (ix, iy) = (sym2_to_spin3(&x)?, sym2_to_spin3(&y)?);
            round.value(rel_diff(&spin3_to_sym2(&ix)?, &x));
            hom.value(rel_diff(&ix.jordan_mul(&iy)?, &sym2_to_spin3(&x.jordan_mul(&y)?)?));
            det.scalar(x.det(), ix.det());
            Ok::<_, holo_core::Error>(())
        })();
        if let Err(e) = res {
            round.error(e);
        }
    }
    out.push(round.bound_record(s, "iso/round-trip".into(), "ψ^-1(ψ(x)) = x", sym, cfg.draws, t.identity));
    out.push(hom.bound_record(s, "iso/product".into(), "ψ(x y) = ψ(x) ψ(y)", sym, cfg.draws, t.identity));
    out.push(det.scalar_record(s, "iso/det".into(), "det ψ(x) = det x", sym, cfg.draws, t.identity));

    for p in cfg.params_for(sym) {
        let id = format!("beta/l={}/m={}/k={}", fmt_c(p.lambda), fmt_c(p.mu), fmt_k(&p.k));
        let anchor = "B_Sym(2)(λ, μ, k) = B_Spin(3)(λ, μ, k) exactly";
        let inp = inputs([("lambda", fmt_c(p.lambda)), ("mu", fmt_c(p.mu)), ("k", fmt_k(&p.k))]);
        out.push(match (beta_raw(sym, p.lambda, p.mu, &p.k), beta_raw(spin, p.lambda, p.mu, &p.k)) {
            (Ok(a), Ok(b)) => Record::exact(s, id, anchor, inp, a, b),
            (Err(e), _) | (_, Err(e)) => Record::failure(s, id, anchor, inp, 0.0, e.to_string()),
        });
    }

    let anchor = "Sym(2) and Spin(3) minimal K-type images agree within their quadrature estimates";
    for (scheme, size, _) in rank2_engines(cfg, sym) {
        let a = minktype_grid(cfg, sym, scheme, size);
        let b = minktype_grid(cfg, spin, scheme, size);
        for ((p, d, ma), (_, _, mb)) in a.into_iter().zip(b) {
            let id = format!("minktype/{}/l={}/m={}/k={}/u={}", scheme.name(), fmt_c(p.lambda), fmt_c(p.mu), fmt_k(&p.k), fmt_list(&d));
            let inp = operator_inputs(&p, scheme.name(), size, &d);
            out.push(match (ma, mb) {
                (Ok(ma), Ok(mb)) => {
                    let diff = (ma.lhs - mb.lhs).norm();
                    let est = ma.lhs_error + mb.lhs_error;
                    let ratio = if diff == 0.0 { 0.0 } else { diff / est };
                    Record::bound(s, id, anchor, inp, ratio, 1.0)
                        .with_message(format!("|difference| {diff:.3e}, combined estimate {est:.3e}"))
                }
                (Err(e), _) | (_, Err(e)) => Record::failure(s, id, anchor, inp, 1.0, e.to_string()),
            });
        }
    }
    out
}
