mod common;

use holo_core::geometry::GroupGenerator;
use holo_core::jordan::sym2_to_spin3;
use holo_core::operators::{
    equivariance_residual, holo_up_many, holo_up_scalar, kp_holo_1d, min_ktype_image, rank1_rule, rankin_cohen,
    rc_kp_composition, sl2_action, sl2_action_pair, Poly1, Poly2, ScalarFunction, Sl2Generator,
};
use holo_core::quadrature::{reference_rule, Scheme};
use holo_core::special::{beta_raw, gamma, Signature, WeightParams};
use holo_core::{c64, Element, Error, JordanAlgebra, C64};
use num::{BigInt, BigRational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{cone, imaginary_cone, real, rel, tube};

fn sig(parts: &[u32]) -> Signature {
    Signature::new(parts.to_vec()).unwrap()
}

fn params(alg: JordanAlgebra, l: C64, m: C64, k: &[u32]) -> WeightParams {
    WeightParams::new(alg, l, m, sig(k)).unwrap()
}

fn sym2() -> JordanAlgebra {
    JordanAlgebra::sym_real(2).unwrap()
}

fn factorial(l: u32) -> f64 {
    (1..=l).map(|i| i as f64).product()
}

fn euler_beta(a: C64, b: C64) -> C64 {
    gamma(a).unwrap() * gamma(b).unwrap() / gamma(a + b).unwrap()
}

#[test]
fn rank1_constant_function_gives_euler_beta() {
    let alg = JordanAlgebra::rank1();
    let p = params(alg, c64(2.0, 0.0), c64(2.0, 0.0), &[0]);
    let rule = rank1_rule(&p, 32).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..10 {
        let (x, y) = (tube(&mut rng, alg), tube(&mut rng, alg));
        let h = holo_up_scalar(&p, &ScalarFunction::one(), &x, &y, &rule).unwrap();
        assert!((h.value - 1.0 / 6.0).norm() < 1e-13);
        assert_eq!(h.point, (x, y));
        assert!(h.quad_error >= 0.0);
    }
}

#[test]
fn unit_separation_gives_the_beta_constant() {
    for alg in [sym2(), JordanAlgebra::spin(3).unwrap(), JordanAlgebra::spin(4).unwrap()] {
        let rule = reference_rule(alg, Scheme::EigenAngle, 32).unwrap();
        for k in [[0, 0], [1, 0], [2, 1]] {
            let p = params(alg, c64(3.0, 0.0), c64(3.5, 0.0), &k);
            let h = holo_up_scalar(&p, &ScalarFunction::one(), &alg.unit(), &alg.zero(), &rule).unwrap();
            let b = beta_raw(alg, p.lambda, p.mu, &p.k).unwrap();
            assert!(rel(h.value, b) < 1e-6, "{alg} {k:?}: {} vs {b}", h.value);
        }
    }
}

#[test]
fn sym2_minimal_k_type_example() {
    let alg = sym2();
    let p = params(alg, c64(3.0, 0.0), c64(2.5, 0.0), &[2, 1]);
    let u = alg.real(&[1.0, 0.0, 2.0]).unwrap();
    let m = min_ktype_image(&p, &u, &reference_rule(alg, Scheme::EigenAngle, 32).unwrap()).unwrap();
    assert!((m.lhs - m.rhs).norm() <= m.lhs_error + 1e-12 * m.rhs.norm(), "{m:?}");
    assert!(m.rel_error() < 1e-5);
    let r1 = JordanAlgebra::rank1();
    let p1 = params(r1, c64(2.0, 0.0), c64(2.0, 0.0), &[1]);
    let m1 = min_ktype_image(&p1, &r1.unit(), &rank1_rule(&p1, 16).unwrap()).unwrap();
    assert!((m1.lhs - 1.0 / 30.0).norm() < 1e-14 && (m1.rhs - 1.0 / 30.0).norm() < 1e-14);
}

#[test]
fn spin3_minimal_k_type_matches_sym2() {
    let (s, sp) = (sym2(), JordanAlgebra::spin(3).unwrap());
    let u = s.real(&[0.5, 0.0, 3.0]).unwrap();
    let us = sym2_to_spin3(&u).unwrap();
    let a = min_ktype_image(
        &params(s, c64(4.0, 0.0), c64(3.5, 0.0), &[3, 1]),
        &u,
        &reference_rule(s, Scheme::EigenAngle, 32).unwrap(),
    )
    .unwrap();
    let b = min_ktype_image(
        &params(sp, c64(4.0, 0.0), c64(3.5, 0.0), &[3, 1]),
        &us,
        &reference_rule(sp, Scheme::EigenAngle, 32).unwrap(),
    )
    .unwrap();
    assert_eq!(a.rhs, b.rhs);
    assert!((a.lhs - b.lhs).norm() <= a.lhs_error + b.lhs_error);
}

#[test]
fn constant_signature_is_a_weight_shift() {
    // Δ_(l,l)(P(u^1/2)(z - z²)) = det(u)^l det(z)^l det(e - z)^l.
    let alg = sym2();
    let rule = reference_rule(alg, Scheme::EigenAngle, 16).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let f = ScalarFunction::Monomial(vec![1, 2, 0]);
    for l in 1..=3u32 {
        let y = tube(&mut rng, alg);
        let x = &y + &cone(&mut rng, alg);
        let (lam, mu) = (c64(2.5, 0.4), c64(3.0, 0.0));
        let a = holo_up_scalar(&params(alg, lam, mu, &[l, l]), &f, &x, &y, &rule).unwrap();
        let b = holo_up_scalar(&params(alg, lam + l as f64, mu + l as f64, &[0, 0]), &f, &x, &y, &rule).unwrap();
        let expect = b.value * (&x - &y).det().powu(l);
        assert!(rel(a.value, expect) < 1e-12, "l={l}");
    }
}

#[test]
fn swapping_weights_and_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for alg in [JordanAlgebra::rank1(), sym2(), JordanAlgebra::spin(4).unwrap()] {
        let rule = if alg.rank() == 1 {
            reference_rule(alg, Scheme::GaussJacobi1D, 48).unwrap()
        } else {
            reference_rule(alg, Scheme::EigenAngle, 16).unwrap()
        };
        let k: Vec<u32> = if alg.rank() == 1 { vec![3] } else { vec![2, 1] };
        let sign = if k.iter().sum::<u32>() % 2 == 0 { 1.0 } else { -1.0 };
        let y = tube(&mut rng, alg);
        let x = &y + &cone(&mut rng, alg);
        let (lam, mu) = (c64(3.0, 0.5), c64(2.5, 0.0));
        let a = holo_up_scalar(&params(alg, lam, mu, &k), &ScalarFunction::one(), &x, &y, &rule).unwrap();
        let b = holo_up_scalar(&params(alg, mu, lam, &k), &ScalarFunction::one(), &y, &x, &rule).unwrap();
        // The reflection z ↦ e - z maps one rule onto a different node set.
        assert!((a.value - b.value * sign).norm() <= a.quad_error + b.quad_error, "{alg}");
    }
}

#[test]
fn batched_weights_match_single_calls() {
    let alg = JordanAlgebra::spin(3).unwrap();
    let rule = reference_rule(alg, Scheme::EigenAngle, 12).unwrap();
    let ps = vec![params(alg, c64(3.0, 0.0), c64(3.0, 0.0), &[1, 0]), params(alg, c64(2.0, 1.0), c64(4.0, 0.0), &[2, 2])];
    let (x, y) = (alg.element(vec![c64(0.1, 2.0), c64(0.2, 0.3), c64(0.0, -0.1)]).unwrap(), alg.zero());
    let f = ScalarFunction::Monomial(vec![1, 0, 1]);
    let many = holo_up_many(&ps, &f, &x, &y, &rule).unwrap();
    for (m, p) in many.iter().zip(&ps) {
        let one = holo_up_scalar(p, &f, &x, &y, &rule).unwrap();
        assert_eq!(m.value, one.value);
        assert_eq!(&m.params, p);
    }
}

#[test]
fn nodes_never_fail_on_admissible_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for alg in [sym2(), JordanAlgebra::spin(3).unwrap(), JordanAlgebra::spin(5).unwrap()] {
        let rule = reference_rule(alg, Scheme::EigenAngle, 8).unwrap();
        let p = params(alg, c64(2.5, -0.3), c64(3.0, 0.2), &[2, 1]);
        for _ in 0..20 {
            let y = tube(&mut rng, alg);
            let x = &(&y + &cone(&mut rng, alg)) + &real(&mut rng, alg).scale(c64(0.0, 0.2));
            let f = ScalarFunction::DeltaPower(sig(&[1, 1]));
            let h = holo_up_scalar(&p, &f, &x, &y, &rule).unwrap();
            assert!(h.value.re.is_finite() && h.value.im.is_finite());
        }
    }
}

#[test]
fn kp_matches_euler_beta_and_the_rank1_operator() {
    let alg = JordanAlgebra::rank1();
    let one = ScalarFunction::one();
    let (x, y) = (c64(0.4, 1.3), c64(-0.3, 0.6));
    assert!((kp_holo_1d(c64(1.0, 0.0), c64(1.0, 0.0), 0, &one, x, y).unwrap() - 1.0).norm() < 1e-14);
    for (lam, mu) in [(c64(1.0, 0.0), c64(1.5, 0.0)), (c64(3.0, 0.7), c64(2.5, 0.0))] {
        for l in 0..=4u32 {
            let lf = l as f64;
            let kp = kp_holo_1d(lam, mu, l, &one, x, y).unwrap();
            let oracle = (x - y).powu(l) * euler_beta(lam + lf, mu + lf) / factorial(l);
            assert!(rel(kp, oracle) < 1e-8, "l={l}");
            let p = params(alg, lam, mu, &[l]);
            let (xe, ye) = (alg.element(vec![x]).unwrap(), alg.element(vec![y]).unwrap());
            let h = holo_up_scalar(&p, &one, &xe, &ye, &rank1_rule(&p, 64).unwrap()).unwrap();
            assert!(rel(kp / h.value, c64(1.0 / factorial(l), 0.0)) < 1e-8, "l={l}");
            // The two normalisations differ by l! for every f, not only constants.
            let f = ScalarFunction::Monomial(vec![3]);
            let hf = holo_up_scalar(&p, &f, &xe, &ye, &rank1_rule(&p, 64).unwrap()).unwrap();
            let kf = kp_holo_1d(lam, mu, l, &f, x, y).unwrap();
            assert!(rel(kf * factorial(l), hf.value) < 1e-8, "l={l}");
        }
    }
}

#[test]
fn kp_complex_weights_converge_spectrally() {
    let one = ScalarFunction::one();
    let (x, y) = (c64(0.35, 1.2), c64(-0.25, 0.7));
    for (lam, mu) in [(c64(2.5, 0.5), c64(3.5, 0.0)), (c64(1.0, 0.5), c64(1.0, 0.0)), (c64(0.2, 1.0), c64(1.0, -0.5))] {
        for l in 0..=2u32 {
            let lf = l as f64;
            let oracle = (x - y).powu(l) * euler_beta(lam + lf, mu + lf) / factorial(l);
            let kp = kp_holo_1d(lam, mu, l, &one, x, y).unwrap();
            assert!(rel(kp, oracle) < 1e-12, "{lam} {mu} l={l}: {:.2e}", rel(kp, oracle));
        }
    }
}

#[test]
fn rankin_cohen_examples() {
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let (l, m) = (q(5, 2), q(-1, 3));
    let f = Poly2::monomial(2, 1, q(3, 1)).add(&Poly2::monomial(0, 4, q(1, 2)));
    let mut restricted = Poly1::monomial(3, q(3, 1));
    restricted.add_term(4, q(1, 2));
    assert_eq!(rankin_cohen(&l, &m, 0, &f), restricted);
    assert_eq!(rankin_cohen(&l, &m, 1, &Poly2::monomial(1, 1, q(1, 1))), Poly1::monomial(1, m.clone() - l.clone()));
    assert!(rankin_cohen(&l, &m, 1, &Poly2::monomial(0, 0, q(1, 1))).is_zero());
    // l = 2 on x²: (λ+2-0)_0 (μ)_2 / 2! · 2 = μ(μ+1).
    let r = rankin_cohen(&l, &m, 2, &Poly2::monomial(2, 0, q(1, 1)));
    assert_eq!(r, Poly1::monomial(0, m.clone() * (m + q(1, 1))));
}

#[test]
fn rankin_cohen_intertwines_in_floating_point() {
    let (lam, mu) = (c64(1.3, 0.4), c64(-0.7, 2.0));
    for l in 0..=3u32 {
        let target = lam + mu + 2.0 * l as f64;
        for a in 0..=5 {
            for b in 0..=5 {
                let f = Poly2::monomial(a, b, c64(1.0, 0.0));
                for gen in Sl2Generator::ALL {
                    let lhs = rankin_cohen(&lam, &mu, l, &sl2_action_pair(gen, &lam, &mu, &f));
                    let rhs = sl2_action(gen, &target, &rankin_cohen(&lam, &mu, l, &f));
                    for deg in 0..=(a + b + 2) {
                        let d = lhs.coeff(deg) - rhs.coeff(deg);
                        assert!(d.norm() <= 1e-12 * rhs.coeff(deg).norm().max(1.0), "{gen:?} l={l} {a},{b}");
                    }
                }
            }
        }
    }
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rankin_cohen_intertwines_exactly(lam in small_rational(), mu in small_rational(), l in 0u32..4,
                                        a in 0u32..6, b in 0u32..6, g in 0usize..3) {
        let gen = Sl2Generator::ALL[g];
        let f = Poly2::monomial(a, b, BigRational::from_integer(BigInt::from(1)));
        let target = lam.clone() + mu.clone() + BigRational::from_integer(BigInt::from(2 * l));
        let lhs = rankin_cohen(&lam, &mu, l, &sl2_action_pair(gen, &lam, &mu, &f));
        let rhs = sl2_action(gen, &target, &rankin_cohen(&lam, &mu, l, &f));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn rc_kp_ratios_are_constant() {
    for (lam, mu, l) in [(c64(1.0, 0.0), c64(1.0, 0.0), 0), (c64(2.5, 0.0), c64(3.0, 0.0), 2), (c64(3.0, 0.7), c64(1.5, 0.0), 3)] {
        let r = rc_kp_composition(lam, mu, l, 6).unwrap();
        assert_eq!(r.len(), 7);
        for v in &r {
            assert!((v - r[0]).norm() <= 1e-8 * r[0].norm(), "{r:?}");
        }
        if l == 0 {
            assert!((r[0] - 1.0).norm() < 1e-12);
        }
    }
    assert!(rc_kp_composition(c64(-2.0, 0.0), c64(1.0, 0.0), 1, 3).is_err());
}

fn diagonal_equivariance(alg: JordanAlgebra, rng: &mut ChaCha8Rng) -> (Element, Element, GroupGenerator) {
    let y = tube(rng, alg);
    let x = &y + &cone(rng, alg);
    let d: Vec<C64> = (0..alg.rank()).map(|_| c64(rng.random_range(0.5..2.0), 0.0)).collect();
    (x, y, GroupGenerator::dilate(alg.frame_diag(&d).unwrap()).unwrap())
}

#[test]
fn equivariance_generators() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let f = ScalarFunction::callback(|w: &Element| (w.trace() * c64(0.0, 0.5)).exp() * (w.det() + 2.0));
    let r1 = JordanAlgebra::rank1();
    for alg in [r1, sym2(), JordanAlgebra::spin(4).unwrap()] {
        let rule = if alg == r1 {
            reference_rule(alg, Scheme::GaussJacobi1D, 48).unwrap()
        } else {
            reference_rule(alg, Scheme::EigenAngle, 24).unwrap()
        };
        let k: Vec<u32> = if alg == r1 { vec![1] } else { vec![2, 1] };
        let kc: Vec<u32> = vec![1; alg.rank()];
        let p = params(alg, c64(3.0, 0.3), c64(3.5, 0.0), &k);
        let pc = params(alg, c64(3.0, 0.3), c64(3.5, 0.0), &kc);
        for _ in 0..3 {
            let y = tube(&mut rng, alg);
            let x = &y + &cone(&mut rng, alg);
            let t = GroupGenerator::Translate(real(&mut rng, alg));
            let e = equivariance_residual(&p, &f, &t, &x, &y, &rule).unwrap();
            assert!(e.residual <= 10.0 * e.error_estimate + 1e-13 * e.lhs.norm(), "{alg} translate {e:?}");

            let (x, y, g) = diagonal_equivariance(alg, &mut rng);
            let e = equivariance_residual(&p, &f, &g, &x, &y, &rule).unwrap();
            assert!(e.residual <= 10.0 * e.error_estimate + 1e-13 * e.lhs.norm(), "{alg} dilate {e:?}");

            let y = imaginary_cone(&mut rng, alg);
            let x = &y + &imaginary_cone(&mut rng, alg);
            let e = equivariance_residual(&pc, &f, &GroupGenerator::Invert, &x, &y, &rule).unwrap();
            assert!(e.residual <= 10.0 * e.error_estimate + 1e-13 * e.lhs.norm(), "{alg} invert {e:?}");
        }
    }
}

#[test]
fn equivariance_rejects_unsafe_configurations() {
    let alg = sym2();
    let rule = reference_rule(alg, Scheme::EigenAngle, 8).unwrap();
    let f = ScalarFunction::one();
    let p = params(alg, c64(3.0, 0.0), c64(3.0, 0.0), &[2, 1]);
    let (x, y) = (alg.unit().scale(c64(0.0, 2.0)), alg.unit().scale(c64(0.0, 1.0)));
    let bad = |r: Result<_, Error>| matches!(r, Err(Error::BranchUnsafe(_)));
    assert!(bad(equivariance_residual(&p, &f, &GroupGenerator::Cayley, &x, &y, &rule)));
    assert!(bad(equivariance_residual(&p, &f, &GroupGenerator::InverseCayley, &x, &y, &rule)));
    assert!(bad(equivariance_residual(&p, &f, &GroupGenerator::Invert, &x, &y, &rule)));
    let a = GroupGenerator::dilate(alg.real(&[2.0, 0.5, 1.0]).unwrap()).unwrap();
    assert!(bad(equivariance_residual(&p, &f, &a, &x, &y, &rule)));
    let pc = params(alg, c64(3.0, 0.0), c64(3.0, 0.0), &[1, 1]);
    let off = &x + &alg.unit().scale_re(0.3);
    assert!(bad(equivariance_residual(&pc, &f, &GroupGenerator::Invert, &off, &y, &rule)));
}

#[test]
fn invalid_inputs_are_rejected() {
    let alg = sym2();
    assert!(WeightParams::new(alg, c64(0.2, 0.0), c64(3.0, 0.0), sig(&[0, 0])).is_err());
    let p = params(alg, c64(3.0, 0.0), c64(3.0, 0.0), &[0, 0]);
    let rule = reference_rule(alg, Scheme::EigenAngle, 8).unwrap();
    let one = ScalarFunction::one();
    let u = alg.real(&[1.0, 0.0, -1.0]).unwrap();
    assert!(matches!(holo_up_scalar(&p, &one, &u, &alg.zero(), &rule), Err(Error::Inadmissible(_))));
    assert!(matches!(min_ktype_image(&p, &u, &rule), Err(Error::Inadmissible(_))));
    let other = reference_rule(JordanAlgebra::spin(3).unwrap(), Scheme::EigenAngle, 8).unwrap();
    assert!(holo_up_scalar(&p, &one, &alg.unit(), &alg.zero(), &other).is_err());
    assert!(rank1_rule(&p, 8).is_err());
    let wrong = ScalarFunction::Monomial(vec![1]);
    assert!(matches!(holo_up_scalar(&p, &wrong, &alg.unit(), &alg.zero(), &rule), Err(Error::NonFinite(_))));
}
