mod common;

use std::f64::consts::PI;

use holo_core::jordan::quad_p;
use holo_core::special::{
    beta_raw, check_dual_power, collapse_check, delta_check_k, delta_k, gamma, gamma_r, pochhammer, pochhammer_r,
    Signature,
};
use holo_core::{c64, JordanAlgebra, C64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{algebras, complex, cone, rel};

fn sig(parts: &[u32]) -> Signature {
    Signature::new(parts.to_vec()).unwrap()
}

fn sym2() -> JordanAlgebra {
    JordanAlgebra::sym_real(2).unwrap()
}

fn rank2() -> Vec<JordanAlgebra> {
    vec![sym2(), JordanAlgebra::spin(3).unwrap(), JordanAlgebra::spin(4).unwrap(), JordanAlgebra::spin(6).unwrap()]
}

/// Signature of length `r` from a sorted draw.
fn signature(r: usize, raw: &[u32]) -> Signature {
    let mut p = raw[..r].to_vec();
    p.sort_unstable_by(|a, b| b.cmp(a));
    Signature::new(p).unwrap()
}

#[test]
fn gamma_r_examples() {
    let g1 = gamma_r(JordanAlgebra::rank1(), c64(3.0, 0.0), &sig(&[0])).unwrap();
    assert!((g1.re - 2.0).abs() < 1e-14);
    let g2 = gamma_r(sym2(), c64(2.0, 0.0), &sig(&[0, 0])).unwrap();
    let oracle = (2.0 * PI).sqrt() * PI.sqrt() / 2.0;
    assert!((g2.re - oracle).abs() < 1e-14);
    assert!((g2.re - 2.221_441_469_079_183).abs() < 1e-14);
    assert!(gamma_r(sym2(), c64(0.5, 0.0), &sig(&[0, 0])).is_err());
}

#[test]
fn pochhammer_examples() {
    let l = c64(0.8, -1.1);
    assert_eq!(pochhammer_r(sym2(), l, &[0, 0], &[0, 0]).unwrap(), c64(1.0, 0.0));
    let p = pochhammer_r(sym2(), l, &[0, 0], &[2, 1]).unwrap();
    assert!(rel(p, l * (l + 1.0) * (l - 0.5)) < 1e-15);
    assert!(pochhammer_r(sym2(), l, &[0], &[2, 1]).is_err());
}

#[test]
fn beta_examples() {
    let r1 = JordanAlgebra::rank1();
    let two = c64(2.0, 0.0);
    assert!(rel(beta_raw(r1, two, two, &sig(&[1])).unwrap(), c64(1.0 / 30.0, 0.0)) < 1e-14);
    assert!(rel(beta_raw(r1, two, two, &sig(&[0])).unwrap(), c64(1.0 / 6.0, 0.0)) < 1e-14);
    // Γ_2(2)² / Γ_2(4) with Γ_2(4) = √(2π) Γ(4) Γ(7/2) = √(2π) · 6 · 15√π/8.
    let g2 = (2.0 * PI).sqrt() * PI.sqrt() / 2.0;
    let g4 = (2.0 * PI).sqrt() * 6.0 * 15.0 * PI.sqrt() / 8.0;
    let b2 = beta_raw(sym2(), two, two, &sig(&[0, 0])).unwrap();
    assert!(rel(b2, c64(g2 * g2 / g4, 0.0)) < 1e-13);
    assert!(rel(b2, c64(2f64.sqrt() * PI / 45.0, 0.0)) < 1e-13);
}

#[test]
fn collapse_examples() {
    let r1 = JordanAlgebra::rank1();
    let (a, b) = collapse_check(r1, c64(2.0, 0.0), c64(2.0, 0.0), 1).unwrap();
    assert!(rel(a, c64(1.0 / 30.0, 0.0)) < 1e-14 && rel(b, c64(1.0 / 30.0, 0.0)) < 1e-14);
    let (a, b) = collapse_check(sym2(), c64(3.0, 0.0), c64(2.5, 0.0), 0).unwrap();
    assert_eq!(a, b);
    let (a, b) = collapse_check(sym2(), c64(3.0, 0.0), c64(2.5, 0.0), 2).unwrap();
    assert!(rel(a, b) < 1e-12);
}

#[test]
fn sym2_and_spin3_share_beta_values() {
    let spin3 = JordanAlgebra::spin(3).unwrap();
    for k in [[0, 0], [1, 1], [2, 1], [3, 1], [2, 2]] {
        for (l, m) in [(3.0, 3.0), (2.5, 4.0), (4.0, 3.5)] {
            let a = beta_raw(sym2(), c64(l, 0.0), c64(m, 0.0), &sig(&k)).unwrap();
            let b = beta_raw(spin3, c64(l, 0.0), c64(m, 0.0), &sig(&k)).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn delta_examples() {
    let x = sym2().real(&[2.0, 0.0, 3.0]).unwrap();
    assert!(rel(delta_k(&x, &sig(&[2, 1])).unwrap(), c64(12.0, 0.0)) < 1e-15);
    for alg in algebras() {
        let k = Signature::new((0..alg.rank() as u32).rev().map(|j| j + 1).collect()).unwrap();
        assert_eq!(delta_k(&alg.unit(), &k).unwrap(), c64(1.0, 0.0));
        assert_eq!(delta_check_k(&alg.unit(), &k).unwrap(), c64(1.0, 0.0));
    }
    // Spin: Δ₁ = x₁ + x₂, Δ₂ = det.
    let s = JordanAlgebra::spin(4).unwrap().real(&[2.0, 0.5, 1.0, 0.0]).unwrap();
    assert!(rel(delta_k(&s, &sig(&[1, 0])).unwrap(), c64(2.5, 0.0)) < 1e-15);
    assert!(rel(delta_k(&s, &sig(&[1, 1])).unwrap(), c64(4.0 - 0.25 - 1.0, 0.0)) < 1e-15);
}

#[test]
fn dual_power_examples() {
    for alg in algebras() {
        let k = Signature::constant(alg.rank(), 1);
        let (a, b) = check_dual_power(&alg.unit(), &k, 2).unwrap();
        assert!(rel(a, c64(1.0, 0.0)) < 1e-15 && rel(b, c64(1.0, 0.0)) < 1e-15);
    }
    let r1 = JordanAlgebra::rank1();
    let (a, b) = check_dual_power(&r1.real(&[3.0]).unwrap(), &sig(&[1]), 2).unwrap();
    assert!(rel(a, c64(3.0, 0.0)) < 1e-15 && rel(b, c64(3.0, 0.0)) < 1e-15);
    assert!(check_dual_power(&r1.real(&[3.0]).unwrap(), &sig(&[3]), 2).is_err());
}

#[test]
fn beta_is_exactly_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for alg in algebras() {
        for _ in 0..50 {
            let z = complex(&mut rng, JordanAlgebra::spin(3).unwrap());
            let (l, m) = (z.coords()[0] * 2.0 + 4.0, z.coords()[1] * 2.0 + 4.0);
            let k = Signature::constant(alg.rank(), (z.coords()[2].re.abs() * 4.0) as u32);
            assert_eq!(beta_raw(alg, l, m, &k).unwrap(), beta_raw(alg, m, l, &k).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sym2_gamma_matches_duplication_formula(re in 1.2f64..8.0, im in -3.0f64..3.0) {
        // Γ(λ)Γ(λ - 1/2) = 2^(2 - 2λ) √π Γ(2λ - 1).
        let l = c64(re, im);
        let oracle = (2.0 * PI).sqrt() * PI.sqrt() * (C64::new(2.0, 0.0).ln() * (2.0 - 2.0 * l)).exp()
            * gamma(2.0 * l - 1.0).unwrap();
        prop_assert!(rel(gamma_r(sym2(), l, &sig(&[0, 0])).unwrap(), oracle) < 1e-12);
    }

    #[test]
    fn gamma_ratio_is_pochhammer(idx in 0usize..6, re in 2.0f64..6.0, im in -2.0f64..2.0,
                                 kr in proptest::collection::vec(0u32..4, 3), mr in proptest::collection::vec(0u32..4, 3)) {
        let alg = algebras()[idx];
        let r = alg.rank();
        let (k, m) = (signature(r, &kr), signature(r, &mr));
        let km = Signature::new(k.parts().iter().zip(m.parts()).map(|(a, b)| a + b).collect()).unwrap();
        let l = c64(re, im);
        let ratio = gamma_r(alg, l, &km).unwrap() / gamma_r(alg, l, &k).unwrap();
        let kk: Vec<i64> = k.parts().iter().map(|&v| v as i64).collect();
        prop_assert!(rel(ratio, pochhammer_r(alg, l, &kk, m.parts()).unwrap()) < 1e-12);
    }

    #[test]
    fn pochhammer_reflection(idx in 0usize..6, re in -4.0f64..4.0, im in -2.0f64..2.0,
                             kr in proptest::collection::vec(0u32..4, 3), mr in proptest::collection::vec(0u32..4, 3)) {
        let alg = algebras()[idx];
        let r = alg.rank();
        let (k, m) = (signature(r, &kr), signature(r, &mr));
        let l = c64(re, im);
        let kk: Vec<i64> = k.parts().iter().map(|&v| v as i64).collect();
        let lhs = pochhammer_r(alg, l, &kk, m.parts()).unwrap();
        let m_rev: Vec<u32> = m.parts().iter().rev().copied().collect();
        let shift: Vec<i64> = k.parts().iter().rev().zip(&m_rev).map(|(&a, &b)| -(a as i64) - b as i64).collect();
        let sign = if m.total() % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = pochhammer_r(alg, -l + alg.n_over_r(), &shift, &m_rev).unwrap() * sign;
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0));
    }

    #[test]
    fn rank1_beta_is_euler_beta(re in 0.5f64..6.0, im in -2.0f64..2.0, mu in 0.5f64..6.0, k in 0u32..5) {
        let (l, m) = (c64(re, im), c64(mu, 0.0));
        let kf = k as f64;
        let oracle = gamma(l + kf).unwrap() * gamma(m + kf).unwrap() / gamma(l + m + 2.0 * kf).unwrap();
        let b = beta_raw(JordanAlgebra::rank1(), l, m, &sig(&[k])).unwrap();
        prop_assert!(rel(b, oracle) < 1e-12);
    }

    #[test]
    fn collapse_holds(idx in 0usize..6, re in 1.0f64..6.0, im in -2.0f64..2.0, mu in 1.0f64..6.0, l in 0u32..5) {
        let alg = algebras()[idx];
        let (a, b) = collapse_check(alg, c64(re, im), c64(mu, 0.0), l).unwrap();
        prop_assert!(rel(a, b) < 1e-12);
    }

    #[test]
    fn delta_is_multiplicative(idx in 0usize..6, seed in any::<u64>(),
                               kr in proptest::collection::vec(0u32..4, 3), jr in proptest::collection::vec(0u32..4, 3)) {
        let alg = algebras()[idx];
        let r = alg.rank();
        let (k, j) = (signature(r, &kr), signature(r, &jr));
        let kj = Signature::new(k.parts().iter().zip(j.parts()).map(|(a, b)| a + b).collect()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = complex(&mut rng, alg);
        let lhs = delta_k(&x, &kj).unwrap();
        let rhs = delta_k(&x, &k).unwrap() * delta_k(&x, &j).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
    }

    #[test]
    fn delta_is_equivariant_under_diagonal_dilations(idx in 0usize..4, seed in any::<u64>(),
                                                      a in proptest::collection::vec(0.2f64..3.0, 2),
                                                      kr in proptest::collection::vec(0u32..4, 2)) {
        let alg = rank2()[idx];
        let k = signature(2, &kr);
        let da = alg.frame_diag(&[c64(a[0], 0.0), c64(a[1], 0.0)]).unwrap();
        let root = alg.frame_diag(&[c64(a[0].sqrt(), 0.0), c64(a[1].sqrt(), 0.0)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = complex(&mut rng, alg);
        let lhs = delta_k(&quad_p(&root).apply(&z).unwrap(), &k).unwrap();
        let rhs = delta_k(&da, &k).unwrap() * delta_k(&z, &k).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
    }

    #[test]
    fn dual_power_identity(idx in 0usize..6, seed in any::<u64>(),
                           kr in proptest::collection::vec(0u32..4, 3), extra in 0u32..3) {
        let alg = algebras()[idx];
        let k = signature(alg.rank(), &kr);
        let k0 = k.parts()[0] + extra;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = cone(&mut rng, alg);
        let (a, b) = check_dual_power(&x, &k, k0).unwrap();
        prop_assert!(rel(a, b) < 1e-11);
    }
}

#[test]
fn pochhammer_matches_scalar_definition() {
    for a in [c64(0.5, 0.0), c64(-2.0, 0.0), c64(1.5, 2.0)] {
        for m in 0..6 {
            let direct: C64 = (0..m).map(|i| a + i as f64).product();
            assert_eq!(pochhammer(a, m), direct);
        }
    }
}
