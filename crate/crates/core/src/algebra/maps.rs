//! Morphism checks and quotients by ideals.

use super::{sparse, AlgebraError, BinaryAlgebra, TernaryAlgebra};
use crate::linalg::{self, Matrix, QuotientSpace, Subspace, Vector};

fn check_shape(map: &Matrix, src: usize, dst: usize) {
    assert!(
        map.cols() == src && map.rows() == dst,
        "map is {}x{}, expected {dst}x{src}",
        map.rows(),
        map.cols()
    );
}

/// `map([x, y]) = [map x, map y]` on all basis pairs.
pub fn is_binary_morphism(map: &Matrix, src: &BinaryAlgebra, dst: &BinaryAlgebra) -> bool {
    check_shape(map, src.dim(), dst.dim());
    let images: Vec<Vector> = (0..src.dim()).map(|i| map.column(i)).collect();
    (0..src.dim()).all(|i| {
        (0..src.dim()).all(|j| map.apply(src.basis_bracket(i, j)) == dst.bracket(&images[i], &images[j]))
    })
}

/// `map({x, y, z}) = {map x, map y, map z}` on all basis triples.
pub fn is_ternary_morphism(map: &Matrix, src: &TernaryAlgebra, dst: &TernaryAlgebra) -> bool {
    check_shape(map, src.dim(), dst.dim());
    let n = src.dim();
    let f = dst.field();
    let one = f.one();
    let images: Vec<_> = (0..n).map(|i| sparse(&map.column(i))).collect();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut rhs = linalg::zeros(f, dst.dim());
                dst.acc_bracket(&mut rhs, &one, &images[i], &images[j], &images[k]);
                if map.apply(src.basis_bracket(i, j, k)) != rhs {
                    return false;
                }
            }
        }
    }
    true
}

fn in_subspace(s: &Subspace, v: &[crate::fields::Scalar]) -> bool {
    linalg::is_zero(&s.reduce(v))
}

/// The quotient algebra `a / ideal`, bracket computed through the
/// coordinate section. Fails unless `ideal` is a two-sided ideal.
pub fn binary_quotient(a: &BinaryAlgebra, ideal: &Subspace) -> Result<(QuotientSpace, BinaryAlgebra), AlgebraError> {
    let n = a.dim();
    let f = a.field();
    for k in ideal.basis_vectors() {
        for j in 0..n {
            let e = linalg::unit(f, n, j);
            if !in_subspace(ideal, &a.bracket(k, &e)) || !in_subspace(ideal, &a.bracket(&e, k)) {
                return Err(AlgebraError::AxiomPrecondition("subspace is not an ideal".into()));
            }
        }
    }
    let q = QuotientSpace::new(n, ideal.clone()).map_err(|e| AlgebraError::Invalid(e.to_string()))?;
    let d = q.dim();
    let lifts: Vec<Vector> = (0..d).map(|i| q.section(&linalg::unit(f, d, i))).collect();
    let quotient = BinaryAlgebra::from_fn(f, d, format!("{}/I", a.name()), |i, j| {
        q.project(&a.bracket(&lifts[i], &lifts[j]))
    })?;
    Ok((q, quotient))
}

/// Ternary analogue of [`binary_quotient`].
pub fn ternary_quotient(t: &TernaryAlgebra, ideal: &Subspace) -> Result<(QuotientSpace, TernaryAlgebra), AlgebraError> {
    let n = t.dim();
    let f = t.field();
    let e: Vec<Vector> = (0..n).map(|i| linalg::unit(f, n, i)).collect();
    for k in ideal.basis_vectors() {
        for i in 0..n {
            for j in 0..n {
                let slots = [
                    t.bracket(k, &e[i], &e[j]),
                    t.bracket(&e[i], k, &e[j]),
                    t.bracket(&e[i], &e[j], k),
                ];
                if slots.iter().any(|v| !in_subspace(ideal, v)) {
                    return Err(AlgebraError::AxiomPrecondition("subspace is not an ideal".into()));
                }
            }
        }
    }
    let q = QuotientSpace::new(n, ideal.clone()).map_err(|e| AlgebraError::Invalid(e.to_string()))?;
    let d = q.dim();
    let lifts: Vec<Vector> = (0..d).map(|i| q.section(&linalg::unit(f, d, i))).collect();
    let quotient = TernaryAlgebra::from_fn(f, d, format!("{}/I", t.name()), |i, j, k| {
        q.project(&t.bracket(&lifts[i], &lifts[j], &lifts[k]))
    })?;
    Ok((q, quotient))
}
