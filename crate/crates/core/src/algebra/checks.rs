//! Axiom checkers. Every identity involved is multilinear once the
//! alternating axioms are polarized, so evaluating on basis tuples decides it.

use serde::{Deserialize, Serialize};

use super::{sparse, BinaryAlgebra, TernaryAlgebra};
use crate::fields::Scalar;
use crate::linalg::{self, SpanAccumulator, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryReport {
    pub is_alternating: bool,
    pub is_lie: bool,
    pub is_leibniz: bool,
    pub satisfies_jacobi: bool,
    pub is_perfect: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryReport {
    pub is_lts: bool,
    pub is_perfect: bool,
    /// `{x,y,y} = 0`, checked in polarized form.
    pub alternating: bool,
    /// `{x,y,z} + {y,z,x} + {z,x,y} = 0`.
    pub cyclic: bool,
    /// Right multiplications act as derivations of the triple product.
    pub derivation: bool,
}

fn basis(i: usize, one: &Scalar) -> [(usize, Scalar); 1] {
    [(i, one.clone())]
}

fn clear(v: &mut [Scalar], zero: &Scalar) {
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x = zero.clone();
        }
    }
}

fn binary_alternating(a: &BinaryAlgebra) -> bool {
    let n = a.dim();
    (0..n).all(|i| linalg::is_zero(a.basis_bracket(i, i)))
        && (0..n).all(|i| {
            (i + 1..n).all(|j| {
                linalg::is_zero(&linalg::add(a.basis_bracket(i, j), a.basis_bracket(j, i)))
            })
        })
}

/// Checks `identity(i, j, k, out)` on every basis triple.
fn all_triples(n: usize, zero: &Scalar, mut identity: impl FnMut(usize, usize, usize, &mut Vector)) -> bool {
    let mut out = vec![zero.clone(); n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                identity(i, j, k, &mut out);
                if !linalg::is_zero(&out) {
                    return false;
                }
                clear(&mut out, zero);
            }
        }
    }
    true
}

fn binary_jacobi(a: &BinaryAlgebra) -> bool {
    let f = a.field();
    let one = f.one();
    all_triples(a.dim(), &f.zero(), |i, j, k, out| {
        a.acc_bracket(out, &one, &basis(i, &one), a.basis_bracket_sparse(j, k));
        a.acc_bracket(out, &one, &basis(j, &one), a.basis_bracket_sparse(k, i));
        a.acc_bracket(out, &one, &basis(k, &one), a.basis_bracket_sparse(i, j));
    })
}

fn binary_leibniz(a: &BinaryAlgebra) -> bool {
    let f = a.field();
    let one = f.one();
    let minus = one.neg();
    all_triples(a.dim(), &f.zero(), |i, j, k, out| {
        a.acc_bracket(out, &one, &basis(i, &one), a.basis_bracket_sparse(j, k));
        a.acc_bracket(out, &minus, a.basis_bracket_sparse(i, j), &basis(k, &one));
        a.acc_bracket(out, &one, a.basis_bracket_sparse(i, k), &basis(j, &one));
    })
}

fn spans_everything<'a>(n: usize, values: impl Iterator<Item = &'a [Scalar]>, field: crate::fields::FieldSpec) -> bool {
    let mut acc = SpanAccumulator::new(field, n);
    for v in values {
        acc.push(v).expect("bracket values have ambient length");
        if acc.dim() == n {
            return true;
        }
    }
    acc.dim() == n
}

pub fn check_binary(a: &BinaryAlgebra) -> BinaryReport {
    let n = a.dim();
    let is_alternating = binary_alternating(a);
    let satisfies_jacobi = binary_jacobi(a);
    let is_leibniz = binary_leibniz(a);
    let pairs = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    let is_perfect = spans_everything(n, pairs.map(|(i, j)| a.basis_bracket(i, j)), a.field());
    BinaryReport {
        is_alternating,
        is_lie: is_alternating && satisfies_jacobi,
        is_leibniz,
        satisfies_jacobi,
        is_perfect,
    }
}

fn ternary_alternating(t: &TernaryAlgebra) -> bool {
    let n = t.dim();
    for i in 0..n {
        for j in 0..n {
            if !linalg::is_zero(t.basis_bracket(i, j, j)) {
                return false;
            }
            for k in j + 1..n {
                if !linalg::is_zero(&linalg::add(t.basis_bracket(i, j, k), t.basis_bracket(i, k, j))) {
                    return false;
                }
            }
        }
    }
    true
}

fn ternary_cyclic(t: &TernaryAlgebra) -> bool {
    all_triples(t.dim(), &t.field().zero(), |i, j, k, out| {
        for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (l, c) in t.basis_bracket_sparse(x, y, z) {
                out[*l] += c;
            }
        }
    })
}

fn ternary_derivation(t: &TernaryAlgebra) -> bool {
    let n = t.dim();
    let f = t.field();
    let one = f.one();
    let minus = one.neg();
    let zero = f.zero();
    let mut out = vec![zero.clone(); n];
    for a in 0..n {
        for b in 0..n {
            let ab = |i: usize| t.basis_bracket_sparse(i, a, b);
            let ea = basis(a, &one);
            let eb = basis(b, &one);
            for x in 0..n {
                let ex = basis(x, &one);
                for y in 0..n {
                    let ey = basis(y, &one);
                    for z in 0..n {
                        let ez = basis(z, &one);
                        t.acc_bracket(&mut out, &one, t.basis_bracket_sparse(x, y, z), &ea, &eb);
                        t.acc_bracket(&mut out, &minus, ab(x), &ey, &ez);
                        t.acc_bracket(&mut out, &minus, &ex, ab(y), &ez);
                        t.acc_bracket(&mut out, &minus, &ex, &ey, ab(z));
                        if !linalg::is_zero(&out) {
                            return false;
                        }
                        clear(&mut out, &zero);
                    }
                }
            }
        }
    }
    true
}

pub fn check_ternary(t: &TernaryAlgebra) -> TernaryReport {
    let n = t.dim();
    let alternating = ternary_alternating(t);
    let cyclic = ternary_cyclic(t);
    let derivation = ternary_derivation(t);
    let triples = (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))));
    let is_perfect = spans_everything(n, triples.map(|(i, j, k)| t.basis_bracket(i, j, k)), t.field());
    TernaryReport {
        is_lts: alternating && cyclic && derivation,
        is_perfect,
        alternating,
        cyclic,
        derivation,
    }
}

/// `[x,[y,z]] - [[x,y],z] + [[x,z],y]`; zero for all arguments iff Leibniz.
pub fn leibniz_defect(a: &BinaryAlgebra, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
    let l = a.bracket(x, &a.bracket(y, z));
    let r1 = a.bracket(&a.bracket(x, y), z);
    let r2 = a.bracket(&a.bracket(x, z), y);
    linalg::add(&linalg::sub(&l, &r1), &r2)
}

/// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`.
pub fn jacobiator(a: &BinaryAlgebra, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
    let t1 = a.bracket(x, &a.bracket(y, z));
    let t2 = a.bracket(y, &a.bracket(z, x));
    let t3 = a.bracket(z, &a.bracket(x, y));
    linalg::add(&linalg::add(&t1, &t2), &t3)
}

/// `{x,y,y}`.
pub fn lts_alternating_defect(t: &TernaryAlgebra, x: &[Scalar], y: &[Scalar]) -> Vector {
    t.bracket(x, y, y)
}

/// `{x,y,z} + {y,z,x} + {z,x,y}`.
pub fn lts_cyclic_defect(t: &TernaryAlgebra, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
    let s = linalg::add(&t.bracket(x, y, z), &t.bracket(y, z, x));
    linalg::add(&s, &t.bracket(z, x, y))
}

/// `{{x,y,z},a,b} - {{x,a,b},y,z} - {x,{y,a,b},z} - {x,y,{z,a,b}}`.
pub fn lts_derivation_defect(
    t: &TernaryAlgebra,
    x: &[Scalar],
    y: &[Scalar],
    z: &[Scalar],
    a: &[Scalar],
    b: &[Scalar],
) -> Vector {
    let f = t.field();
    let n = t.dim();
    let one = f.one();
    let minus = one.neg();
    let (xs, ys, zs, as_, bs) = (sparse(x), sparse(y), sparse(z), sparse(a), sparse(b));
    let mut out = linalg::zeros(f, n);
    t.acc_bracket(&mut out, &one, &sparse(&t.bracket(x, y, z)), &as_, &bs);
    t.acc_bracket(&mut out, &minus, &sparse(&t.bracket(x, a, b)), &ys, &zs);
    t.acc_bracket(&mut out, &minus, &xs, &sparse(&t.bracket(y, a, b)), &zs);
    t.acc_bracket(&mut out, &minus, &xs, &ys, &sparse(&t.bracket(z, a, b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, derived_lts};
    use crate::fields::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn sl2_flags() {
        let r = check_binary(&catalog("sl2", Q).unwrap());
        assert!(r.is_lie && r.is_leibniz && r.is_perfect && r.is_alternating && r.satisfies_jacobi);
    }

    #[test]
    fn abelian_is_lie_not_perfect() {
        let r = check_binary(&BinaryAlgebra::zero(Q, 2, "ab"));
        assert!(r.is_lie);
        assert!(!r.is_perfect);
    }

    #[test]
    fn sl2_over_gf2_is_not_perfect() {
        let r = check_binary(&catalog("sl2", FieldSpec::Prime(2)).unwrap());
        assert!(r.is_lie);
        assert!(!r.is_perfect);
    }

    #[test]
    fn antisymmetry_alone_is_not_alternating_in_char_2() {
        // [e0, e0] = e1 is symmetric-sum safe in char 2 but not alternating.
        let f = FieldSpec::Prime(2);
        let a = BinaryAlgebra::from_fn(f, 2, "sq", |i, j| {
            if i == 0 && j == 0 {
                vec![f.zero(), f.one()]
            } else {
                vec![f.zero(), f.zero()]
            }
        })
        .unwrap();
        let r = check_binary(&a);
        assert!(!r.is_alternating);
        assert!(!r.is_lie);
    }

    #[test]
    fn ternary_examples() {
        let l = derived_lts(&catalog("sl2", Q).unwrap()).unwrap();
        let r = check_ternary(&l);
        assert!(r.is_lts && r.is_perfect);

        let r = check_ternary(&TernaryAlgebra::zero(Q, 2, "zero"));
        assert!(r.is_lts && !r.is_perfect);

        let bad = TernaryAlgebra::from_fn(Q, 3, "bad", |i, j, k| {
            if (i, j, k) == (0, 1, 2) {
                linalg::unit(Q, 3, 0)
            } else {
                linalg::zeros(Q, 3)
            }
        })
        .unwrap();
        let r = check_ternary(&bad);
        assert!(!r.cyclic);
        assert!(!r.is_lts);
    }

    #[test]
    fn vector_defects_vanish_on_sl2() {
        let g = catalog("sl2", Q).unwrap();
        let l = derived_lts(&g).unwrap();
        let v = |xs: [i64; 3]| xs.map(|x| Q.from_i64(x)).to_vec();
        let (x, y, z) = (v([1, 2, -1]), v([0, 3, 5]), v([7, -2, 1]));
        assert!(linalg::is_zero(&leibniz_defect(&g, &x, &y, &z)));
        assert!(linalg::is_zero(&jacobiator(&g, &x, &y, &z)));
        assert!(linalg::is_zero(&lts_alternating_defect(&l, &x, &y)));
        assert!(linalg::is_zero(&lts_cyclic_defect(&l, &x, &y, &z)));
        assert!(linalg::is_zero(&lts_derivation_defect(&l, &x, &y, &z, &y, &x)));
    }
}
