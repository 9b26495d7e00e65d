use super::{AlgebraKind, Element, JordanAlgebra};
use crate::error::{Error, Result};

/// The Jordan isomorphism `Sym(2, R) -> Spin(3)`,
/// `[[a, b], [b, c]] ↦ ((a + c)/2, (a - c)/2, b)`.
///
/// It maps the standard frame `E11, E22` onto `c1, c2`, so frame-adapted
/// minors correspond.
pub fn sym2_to_spin3(x: &Element) -> Result<Element> {
    if x.algebra().kind() != AlgebraKind::SymReal(2) {
        return Err(Error::AlgebraMismatch(x.algebra().kind(), AlgebraKind::SymReal(2)));
    }
    let c = x.coords();
    JordanAlgebra::spin(3)?.element(vec![(c[0] + c[2]) * 0.5, (c[0] - c[2]) * 0.5, c[1]])
}

/// Inverse of [`sym2_to_spin3`].
pub fn spin3_to_sym2(x: &Element) -> Result<Element> {
    if x.algebra().kind() != AlgebraKind::Spin(3) {
        return Err(Error::AlgebraMismatch(x.algebra().kind(), AlgebraKind::Spin(3)));
    }
    let c = x.coords();
    JordanAlgebra::sym_real(2)?.element(vec![c[0] + c[1], c[2], c[0] - c[1]])
}
