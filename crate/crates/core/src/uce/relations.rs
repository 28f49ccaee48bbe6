//! Ambient tensor spaces and the relation generators killed in them.

use super::{Category, UceError};
use crate::algebra::{wedge_index, Algebra};
use crate::fields::Scalar;
use crate::linalg::{self, Vector};

/// `(index, coefficient)` pairs; repeated indices add up.
pub type SparseGenerator = Vec<(usize, Scalar)>;

/// The space `A⊗A`, `A∧A` or `A⊗A⊗A` for an `n`-dimensional `A`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Ambient {
    pub(crate) category: Category,
    pub(crate) n: usize,
}

impl Ambient {
    pub(crate) fn dim(&self) -> usize {
        let n = self.n;
        match self.category {
            Category::Leibniz => n * n,
            Category::Lie => n * n.saturating_sub(1) / 2,
            Category::Lts => n * n * n,
        }
    }

    pub(crate) fn arity(&self) -> usize {
        match self.category {
            Category::Lts => 3,
            _ => 2,
        }
    }

    /// Basis indices of the pure tensor at ambient index `idx`.
    pub(crate) fn decode(&self, idx: usize) -> [usize; 3] {
        let n = self.n;
        match self.category {
            Category::Leibniz => [idx / n, idx % n, 0],
            Category::Lts => [idx / (n * n), idx / n % n, idx % n],
            Category::Lie => {
                let mut rest = idx;
                for i in 0..n {
                    let row = n - i - 1;
                    if rest < row {
                        return [i, i + 1 + rest, 0];
                    }
                    rest -= row;
                }
                unreachable!("wedge index out of range")
            }
        }
    }

    /// The product of argument vectors: `u⊗v`, `u∧v` or `u⊗v⊗w`.
    pub(crate) fn product(&self, args: &[&[Scalar]]) -> Vector {
        match self.category {
            Category::Leibniz => crate::algebra::tensor2(args[0], args[1]),
            Category::Lie => crate::algebra::wedge(args[0], args[1]),
            Category::Lts => crate::algebra::tensor3(args[0], args[1], args[2]),
        }
    }
}

/// Bracket of the base on the pure tensor at `idx`: `[e_i, e_j]` or
/// `{e_i, e_j, e_k}`.
pub(crate) fn contract_basis<'a>(base: &'a Algebra, amb: &Ambient, idx: usize) -> &'a [Scalar] {
    let [i, j, k] = amb.decode(idx);
    match base {
        Algebra::Binary(b) => b.basis_bracket(i, j),
        Algebra::Ternary(t) => t.basis_bracket(i, j, k),
    }
}

/// Applies the contraction map to a sparse ambient vector.
pub(crate) fn contract_sparse(base: &Algebra, amb: &Ambient, v: &[(usize, Scalar)], out: &mut [Scalar]) {
    for (idx, c) in v {
        linalg::axpy(out, c, contract_basis(base, amb, *idx));
    }
}

fn wedge_term(n: usize, i: usize, j: usize, c: &Scalar) -> Option<(usize, Scalar)> {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => Some((wedge_index(n, i, j), c.clone())),
        std::cmp::Ordering::Greater => Some((wedge_index(n, j, i), c.neg())),
        std::cmp::Ordering::Equal => None,
    }
}

/// Streams the relation generators of the given category over `base`.
///
/// * Leibniz: `[x,y]⊗z - [x,z]⊗y - x⊗[y,z]` over basis triples.
/// * Lie: `[x,y]∧z + [y,z]∧x + [z,x]∧y` over basis triples.
/// * Lie triple systems: `x⊗y⊗y` in polarized form (`e_i⊗e_j⊗e_j` and
///   `e_i⊗e_j⊗e_k + e_i⊗e_k⊗e_j`, `j < k`), the cyclic sums, and
///   `{x,a,b}⊗y⊗z + x⊗{y,a,b}⊗z + x⊗y⊗{z,a,b} - {x,y,z}⊗a⊗b` over basis
///   5-tuples.
pub fn relation_generators(
    base: &Algebra,
    category: Category,
) -> Result<Box<dyn Iterator<Item = SparseGenerator> + '_>, UceError> {
    let n = base.dim();
    let one = base.field().one();
    let minus = one.neg();
    match (category, base) {
        (Category::Leibniz, Algebra::Binary(g)) => Ok(Box::new((0..n * n * n).map(move |idx| {
            let (x, y, z) = (idx / (n * n), idx / n % n, idx % n);
            let mut out = Vec::new();
            out.extend(g.basis_bracket_sparse(x, y).iter().map(|(l, c)| (l * n + z, c.clone())));
            out.extend(g.basis_bracket_sparse(x, z).iter().map(|(l, c)| (l * n + y, c.neg())));
            out.extend(g.basis_bracket_sparse(y, z).iter().map(|(l, c)| (x * n + l, c.neg())));
            out
        }))),
        (Category::Lie, Algebra::Binary(g)) => Ok(Box::new((0..n * n * n).map(move |idx| {
            let (x, y, z) = (idx / (n * n), idx / n % n, idx % n);
            let mut out = Vec::new();
            for (p, q, r) in [(x, y, z), (y, z, x), (z, x, y)] {
                out.extend(
                    g.basis_bracket_sparse(p, q)
                        .iter()
                        .filter_map(|(l, c)| wedge_term(n, *l, r, c)),
                );
            }
            out
        }))),
        (Category::Lts, Algebra::Ternary(t)) => {
            let cube = move |i: usize, j: usize, k: usize| (i * n + j) * n + k;
            let one_a = one.clone();
            let alternating = (0..n * n * n).filter_map(move |idx| {
                let (i, j, k) = (idx / (n * n), idx / n % n, idx % n);
                match j.cmp(&k) {
                    std::cmp::Ordering::Equal => Some(vec![(cube(i, j, j), one_a.clone())]),
                    std::cmp::Ordering::Less => Some(vec![
                        (cube(i, j, k), one_a.clone()),
                        (cube(i, k, j), one_a.clone()),
                    ]),
                    std::cmp::Ordering::Greater => None,
                }
            });
            let one_b = one.clone();
            let cyclic = (0..n * n * n).map(move |idx| {
                let (i, j, k) = (idx / (n * n), idx / n % n, idx % n);
                vec![
                    (cube(i, j, k), one_b.clone()),
                    (cube(j, k, i), one_b.clone()),
                    (cube(k, i, j), one_b.clone()),
                ]
            });
            let fundamental = (0..n.pow(5)).map(move |idx| {
                let b = idx % n;
                let a = idx / n % n;
                let z = idx / (n * n) % n;
                let y = idx / (n * n * n) % n;
                let x = idx / (n * n * n * n);
                let mut out = Vec::new();
                out.extend(t.basis_bracket_sparse(x, a, b).iter().map(|(l, c)| (cube(*l, y, z), c.clone())));
                out.extend(t.basis_bracket_sparse(y, a, b).iter().map(|(l, c)| (cube(x, *l, z), c.clone())));
                out.extend(t.basis_bracket_sparse(z, a, b).iter().map(|(l, c)| (cube(x, y, *l), c.clone())));
                out.extend(
                    t.basis_bracket_sparse(x, y, z)
                        .iter()
                        .map(|(l, c)| (cube(*l, a, b), &minus * c)),
                );
                out
            });
            Ok(Box::new(alternating.chain(cyclic).chain(fundamental)))
        }
        (cat, _) => Err(UceError::CategoryMismatch(format!(
            "{cat} relations need a {} base algebra",
            if cat == Category::Lts { "ternary" } else { "binary" }
        ))),
    }
}
