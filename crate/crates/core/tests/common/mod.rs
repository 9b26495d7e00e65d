#![allow(dead_code)]

use holo_core::geometry::in_cone;
use holo_core::jordan::spectral_norm;
use holo_core::{c64, Element, JordanAlgebra, C64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn algebras() -> Vec<JordanAlgebra> {
    vec![
        JordanAlgebra::rank1(),
        JordanAlgebra::sym_real(2).unwrap(),
        JordanAlgebra::sym_real(3).unwrap(),
        JordanAlgebra::spin(3).unwrap(),
        JordanAlgebra::spin(4).unwrap(),
        JordanAlgebra::spin(5).unwrap(),
    ]
}

pub fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

pub fn real(rng: &mut ChaCha8Rng, alg: JordanAlgebra) -> Element {
    let c: Vec<f64> = (0..alg.dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
    alg.real(&c).unwrap()
}

pub fn complex(rng: &mut ChaCha8Rng, alg: JordanAlgebra) -> Element {
    let c: Vec<C64> =
        (0..alg.dim()).map(|_| c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    alg.element(c).unwrap()
}

/// Real element with `|det| ≥ 0.05` and bounded size.
pub fn invertible(rng: &mut ChaCha8Rng, alg: JordanAlgebra) -> Element {
    loop {
        let x = real(rng, alg);
        if x.det().norm() >= 0.05 {
            return x;
        }
    }
}

/// Cone element with spectrum in `[0.2, 2.2]` (roughly).
pub fn cone(rng: &mut ChaCha8Rng, alg: JordanAlgebra) -> Element {
    loop {
        let x = &real(rng, alg).scale_re(0.6) + &alg.unit().scale_re(1.2);
        if in_cone(&x, 0.2) {
            return x;
        }
    }
}

/// Complex element of the bounded domain with `|x|_∞ ≤ 0.9`.
pub fn disk(rng: &mut ChaCha8Rng, alg: JordanAlgebra) -> Element {
    let x = complex(rng, alg);
    let s = spectral_norm(&x);
    let target = rng.random_range(0.1..0.9);
    x.scale_re(target / s)
}

/// `i c` with `c` in the cone.
pub fn imaginary_cone(rng: &mut ChaCha8Rng, alg: JordanAlgebra) -> Element {
    cone(rng, alg).scale(c64(0.0, 1.0))
}

/// Tube point `a + i b`.
pub fn tube(rng: &mut ChaCha8Rng, alg: JordanAlgebra) -> Element {
    &real(rng, alg).scale_re(0.5) + &imaginary_cone(rng, alg)
}
