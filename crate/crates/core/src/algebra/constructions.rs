//! Derived triple systems, Leibniz brackets on tensor and exterior squares,
//! module actions and the Leibniz bracket induced by an equivariant map.

use super::{
    check_binary, check_ternary, sparse, wedge_index, wedge_pairs, AlgebraError, BinaryAlgebra,
    SparseVec, TernaryAlgebra,
};
use crate::fields::Scalar;
use crate::linalg::{self, Matrix, Vector};

/// `{x,y,z} = [x,[y,z]]`. Requires the Jacobi identity.
pub fn derived_lts(g: &BinaryAlgebra) -> Result<TernaryAlgebra, AlgebraError> {
    if !check_binary(g).satisfies_jacobi {
        return Err(AlgebraError::JacobiFails);
    }
    Ok(derived_unchecked(g))
}

pub(crate) fn derived_unchecked(g: &BinaryAlgebra) -> TernaryAlgebra {
    let f = g.field();
    let one = f.one();
    TernaryAlgebra::from_fn(f, g.dim(), format!("lts({})", g.name()), |i, j, k| {
        let mut out = linalg::zeros(f, g.dim());
        g.acc_bracket(&mut out, &one, &[(i, one.clone())], g.basis_bracket_sparse(j, k));
        out
    })
    .expect("derived tensor has the right shape")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorVariant {
    /// `g ⊗ g`, basis `e_i ⊗ e_j` at index `i·n + j`.
    Tensor,
    /// `g ∧ g`, basis `e_i ∧ e_j` (`i < j`) in lexicographic order.
    Wedge,
}

/// Source of the triple operation used by [`tensor_leibniz`].
#[derive(Debug, Clone, Copy)]
pub enum TripleSource<'a> {
    Binary(&'a BinaryAlgebra),
    Ternary(&'a TernaryAlgebra),
}

impl<'a> From<&'a BinaryAlgebra> for TripleSource<'a> {
    fn from(a: &'a BinaryAlgebra) -> Self {
        TripleSource::Binary(a)
    }
}

impl<'a> From<&'a TernaryAlgebra> for TripleSource<'a> {
    fn from(a: &'a TernaryAlgebra) -> Self {
        TripleSource::Ternary(a)
    }
}

/// Leibniz bracket on the tensor or exterior square:
/// `[x⊗y, a⊗b] = {x,a,b}⊗y + x⊗{y,a,b}`, where `{x,a,b} = [x,[a,b]]` for
/// a binary input.
pub fn tensor_leibniz<'a>(input: impl Into<TripleSource<'a>>, variant: TensorVariant) -> Result<BinaryAlgebra, AlgebraError> {
    let input = input.into();
    let (field, n, name, triples): (_, _, _, Vec<SparseVec>) = match input {
        TripleSource::Binary(g) => {
            if !check_binary(g).is_leibniz {
                return Err(AlgebraError::AxiomPrecondition("input is not a Leibniz algebra".into()));
            }
            (g.field(), g.dim(), g.name().to_string(), sparse_triples(&derived_unchecked(g)))
        }
        TripleSource::Ternary(t) => {
            if !check_ternary(t).is_lts {
                return Err(AlgebraError::AxiomPrecondition("input is not a Lie triple system".into()));
            }
            (t.field(), t.dim(), t.name().to_string(), sparse_triples(t))
        }
    };
    let trip = |x: usize, a: usize, b: usize| &triples[(x * n + a) * n + b];
    match variant {
        TensorVariant::Tensor => {
            let dim = n * n;
            BinaryAlgebra::from_fn(field, dim, format!("{name}⊗{name}"), |p, q| {
                let (x, y) = (p / n, p % n);
                let (a, b) = (q / n, q % n);
                let mut out = linalg::zeros(field, dim);
                for (l, c) in trip(x, a, b) {
                    out[l * n + y] += c;
                }
                for (l, c) in trip(y, a, b) {
                    out[x * n + l] += c;
                }
                out
            })
        }
        TensorVariant::Wedge => {
            let pairs = wedge_pairs(n);
            let dim = pairs.len();
            BinaryAlgebra::from_fn(field, dim, format!("{name}∧{name}"), |p, q| {
                let (x, y) = pairs[p];
                let (a, b) = pairs[q];
                let mut out = linalg::zeros(field, dim);
                for (l, c) in trip(x, a, b) {
                    add_wedge(&mut out, n, *l, y, c);
                }
                for (l, c) in trip(y, a, b) {
                    add_wedge(&mut out, n, x, *l, c);
                }
                out
            })
        }
    }
}

/// `out += c · e_i ∧ e_j`.
fn add_wedge(out: &mut [Scalar], n: usize, i: usize, j: usize, c: &Scalar) {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => out[wedge_index(n, i, j)] += c,
        std::cmp::Ordering::Greater => out[wedge_index(n, j, i)] -= c,
        std::cmp::Ordering::Equal => {}
    }
}

fn sparse_triples(t: &TernaryAlgebra) -> Vec<SparseVec> {
    let n = t.dim();
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out.push(t.basis_bracket_sparse(i, j, k).to_vec());
            }
        }
    }
    out
}

/// A right action `x ∗ g` of a binary algebra on `F^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleAction {
    carrier_dim: usize,
    acting: BinaryAlgebra,
    a: Vec<Scalar>,
    table: Vec<SparseVec>,
}

impl ModuleAction {
    /// `a[(x·dim g + g)·m + k]` is the `k`-th coordinate of `e_x ∗ e_g`.
    pub fn new(carrier_dim: usize, acting: BinaryAlgebra, a: Vec<Scalar>) -> Result<Self, AlgebraError> {
        let expected = carrier_dim * acting.dim() * carrier_dim;
        if a.len() != expected {
            return Err(AlgebraError::DimensionMismatch {
                expected,
                found: a.len(),
            });
        }
        if a.iter().any(|x| x.field() != acting.field()) {
            return Err(AlgebraError::Invalid("action coefficients in the wrong field".into()));
        }
        let table = if carrier_dim == 0 {
            Vec::new()
        } else {
            a.chunks(carrier_dim).map(sparse).collect()
        };
        Ok(ModuleAction {
            carrier_dim,
            acting,
            a,
            table,
        })
    }

    pub fn from_fn(
        carrier_dim: usize,
        acting: BinaryAlgebra,
        mut f: impl FnMut(usize, usize) -> Vector,
    ) -> Result<Self, AlgebraError> {
        let mut a = Vec::new();
        for x in 0..carrier_dim {
            for g in 0..acting.dim() {
                let v = f(x, g);
                if v.len() != carrier_dim {
                    return Err(AlgebraError::DimensionMismatch {
                        expected: carrier_dim,
                        found: v.len(),
                    });
                }
                a.extend(v);
            }
        }
        ModuleAction::new(carrier_dim, acting, a)
    }

    /// The adjoint action `x ∗ g = [x, g]` of an algebra on itself.
    pub fn adjoint(g: &BinaryAlgebra) -> Self {
        ModuleAction::from_fn(g.dim(), g.clone(), |x, y| g.basis_bracket(x, y).to_vec())
            .expect("adjoint action has the right shape")
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier_dim
    }

    pub fn acting(&self) -> &BinaryAlgebra {
        &self.acting
    }

    pub fn tensor(&self) -> &[Scalar] {
        &self.a
    }

    /// `e_x ∗ e_g`.
    pub fn act_basis(&self, x: usize, g: usize) -> &[Scalar] {
        let m = self.carrier_dim;
        let at = (x * self.acting.dim() + g) * m;
        &self.a[at..at + m]
    }

    fn acc_act(&self, out: &mut [Scalar], coeff: &Scalar, x: &[(usize, Scalar)], g: &[(usize, Scalar)]) {
        for (i, a) in x {
            let ca = coeff * a;
            for (j, b) in g {
                let cab = &ca * b;
                for (k, c) in &self.table[i * self.acting.dim() + j] {
                    out[*k].add_mul(&cab, c);
                }
            }
        }
    }

    pub fn act(&self, x: &[Scalar], g: &[Scalar]) -> Vector {
        assert!(x.len() == self.carrier_dim && g.len() == self.acting.dim());
        let f = self.acting.field();
        let mut out = linalg::zeros(f, self.carrier_dim);
        self.acc_act(&mut out, &f.one(), &sparse(x), &sparse(g));
        out
    }
}

/// `x ∗ (y ∧ z) = {x, y, z}`, an action of the Leibniz algebra `L ∧ L`.
pub fn canonical_wedge_action(l: &TernaryAlgebra) -> Result<ModuleAction, AlgebraError> {
    let acting = tensor_leibniz(l, TensorVariant::Wedge)?;
    let pairs = wedge_pairs(l.dim());
    ModuleAction::from_fn(l.dim(), acting, |x, p| {
        let (y, z) = pairs[p];
        l.basis_bracket(x, y, z).to_vec()
    })
}

/// First action identity `(x∗g)∗h - (x∗h)∗g = x∗[g,h]` on basis tuples.
fn satisfies_module_law(act: &ModuleAction) -> bool {
    let f = act.acting.field();
    let (one, minus, zero) = (f.one(), f.one().neg(), f.zero());
    let m = act.carrier_dim;
    let gd = act.acting.dim();
    let mut out = vec![zero.clone(); m];
    for x in 0..m {
        for g in 0..gd {
            let xg = &act.table[x * gd + g];
            for h in 0..gd {
                let xh = &act.table[x * gd + h];
                act.acc_act(&mut out, &one, xg, &[(h, one.clone())]);
                act.acc_act(&mut out, &minus, xh, &[(g, one.clone())]);
                act.acc_act(&mut out, &minus, &[(x, one.clone())], act.acting.basis_bracket_sparse(g, h));
                if !linalg::is_zero(&out) {
                    return false;
                }
                out.iter_mut().for_each(|v| *v = zero.clone());
            }
        }
    }
    true
}

/// Second identity `{x,y,z}∗g = {x∗g,y,z} + {x,y∗g,z} + {x,y,z∗g}`.
fn acts_by_derivations(act: &ModuleAction, target: &TernaryAlgebra) -> bool {
    let f = target.field();
    let (one, minus, zero) = (f.one(), f.one().neg(), f.zero());
    let m = act.carrier_dim;
    let gd = act.acting.dim();
    let e = |i: usize| [(i, one.clone())];
    let mut out = vec![zero.clone(); m];
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                let xyz = target.basis_bracket_sparse(x, y, z);
                for g in 0..gd {
                    act.acc_act(&mut out, &one, xyz, &e(g));
                    target.acc_bracket(&mut out, &minus, &act.table[x * gd + g], &e(y), &e(z));
                    target.acc_bracket(&mut out, &minus, &e(x), &act.table[y * gd + g], &e(z));
                    target.acc_bracket(&mut out, &minus, &e(x), &e(y), &act.table[z * gd + g]);
                    if !linalg::is_zero(&out) {
                        return false;
                    }
                    out.iter_mut().for_each(|v| *v = zero.clone());
                }
            }
        }
    }
    true
}

/// Checks the action identities on basis tuples; the derivation identity
/// only when a target triple system is supplied.
pub fn verify_action(act: &ModuleAction, target: Option<&TernaryAlgebra>) -> Result<bool, AlgebraError> {
    if let Some(t) = target {
        if t.dim() != act.carrier_dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: act.carrier_dim,
                found: t.dim(),
            });
        }
    }
    Ok(satisfies_module_law(act) && target.is_none_or(|t| acts_by_derivations(act, t)))
}

/// The Leibniz bracket `[m, n] = m ∗ f(n)` for a `g`-equivariant map
/// `f : M → g`, `g` a Lie algebra acting on `M` on the right.
pub fn equivariant_leibniz(act: &ModuleAction, f: &Matrix) -> Result<BinaryAlgebra, AlgebraError> {
    let g = act.acting();
    let m = act.carrier_dim();
    if f.rows() != g.dim() || f.cols() != m {
        return Err(AlgebraError::DimensionMismatch {
            expected: g.dim() * m,
            found: f.rows() * f.cols(),
        });
    }
    if !check_binary(g).is_lie {
        return Err(AlgebraError::AxiomPrecondition("acting algebra is not a Lie algebra".into()));
    }
    if !satisfies_module_law(act) {
        return Err(AlgebraError::AxiomPrecondition(
            "action does not satisfy (x*g)*h - (x*h)*g = x*[g,h]".into(),
        ));
    }
    let images: Vec<Vector> = (0..m).map(|j| f.column(j)).collect();
    for (mi, fm) in images.iter().enumerate() {
        for x in 0..g.dim() {
            let lhs = f.apply(act.act_basis(mi, x));
            let rhs = g.bracket(fm, &linalg::unit(g.field(), g.dim(), x));
            if lhs != rhs {
                return Err(AlgebraError::NotEquivariant {
                    module_index: mi,
                    algebra_index: x,
                });
            }
        }
    }
    BinaryAlgebra::from_fn(g.field(), m, format!("leibniz({})", g.name()), |i, j| {
        act.act(&linalg::unit(g.field(), m, i), &images[j])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::fields::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn q(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Q.from_i64(x)).collect()
    }

    #[test]
    fn derived_lts_values_on_sl2() {
        // Basis (e, f, h).
        let l = derived_lts(&catalog("sl2", Q).unwrap()).unwrap();
        assert_eq!(l.basis_bracket(2, 0, 1), q(&[0, 0, 0]).as_slice());
        assert_eq!(l.basis_bracket(0, 2, 1), q(&[0, 0, -2]).as_slice());
    }

    #[test]
    fn derived_of_abelian_is_zero() {
        let l = derived_lts(&BinaryAlgebra::zero(Q, 2, "ab")).unwrap();
        assert!(linalg::is_zero(l.structure_tensor()));
    }

    #[test]
    fn derived_requires_jacobi() {
        // [e0, e1] = e2, [e2, e0] = e0 and nothing else breaks Jacobi.
        let g = BinaryAlgebra::from_fn(Q, 3, "bad", |i, j| match (i, j) {
            (0, 1) => q(&[0, 0, 1]),
            (1, 0) => q(&[0, 0, -1]),
            (2, 0) => q(&[1, 0, 0]),
            (0, 2) => q(&[-1, 0, 0]),
            _ => q(&[0, 0, 0]),
        })
        .unwrap();
        assert!(!check_binary(&g).satisfies_jacobi);
        assert_eq!(derived_lts(&g), Err(AlgebraError::JacobiFails));
    }

    #[test]
    fn wedge_bracket_of_ef_with_itself_vanishes() {
        let g = catalog("sl2", Q).unwrap();
        let w = tensor_leibniz(&g, TensorVariant::Wedge).unwrap();
        let ef = wedge_index(3, 0, 1);
        assert!(linalg::is_zero(w.basis_bracket(ef, ef)));
    }

    #[test]
    fn tensor_of_abelian_is_zero() {
        let g = BinaryAlgebra::zero(Q, 2, "ab");
        let t = tensor_leibniz(&g, TensorVariant::Tensor).unwrap();
        assert_eq!(t.dim(), 4);
        assert!(linalg::is_zero(t.structure_tensor()));
    }

    #[test]
    fn tensor_square_of_sl2_is_leibniz() {
        let g = catalog("sl2", Q).unwrap();
        let t = tensor_leibniz(&g, TensorVariant::Tensor).unwrap();
        assert_eq!(t.dim(), 9);
        assert!(check_binary(&t).is_leibniz);
    }

    #[test]
    fn tensor_rejects_non_lts() {
        let bad = TernaryAlgebra::from_fn(Q, 3, "bad", |i, j, k| {
            if (i, j, k) == (0, 1, 2) {
                linalg::unit(Q, 3, 0)
            } else {
                linalg::zeros(Q, 3)
            }
        })
        .unwrap();
        assert!(matches!(
            tensor_leibniz(&bad, TensorVariant::Tensor),
            Err(AlgebraError::AxiomPrecondition(_))
        ));
    }

    #[test]
    fn wedge_action_on_sl2() {
        let l = derived_lts(&catalog("sl2", Q).unwrap()).unwrap();
        let act = canonical_wedge_action(&l).unwrap();
        // e ∗ (h ∧ f) = {e, h, f} = -2h, and h ∧ f = -(f ∧ h).
        let fh = wedge_index(3, 1, 2);
        assert_eq!(act.act_basis(0, fh), q(&[0, 0, 2]).as_slice());
        assert!(verify_action(&act, Some(&l)).unwrap());

        let mut corrupted = act.tensor().to_vec();
        corrupted[0] = &corrupted[0] + &Q.one();
        let bad = ModuleAction::new(3, act.acting().clone(), corrupted).unwrap();
        assert!(!verify_action(&bad, Some(&l)).unwrap());
        assert!(verify_action(&act, Some(&TernaryAlgebra::zero(Q, 2, "z"))).is_err());
    }

    #[test]
    fn zero_action_is_an_action() {
        let g = catalog("sl2", Q).unwrap();
        let act = ModuleAction::new(2, g, vec![Q.zero(); 2 * 3 * 2]).unwrap();
        assert!(verify_action(&act, Some(&TernaryAlgebra::zero(Q, 2, "z"))).unwrap());
        let abelian = canonical_wedge_action(&TernaryAlgebra::zero(Q, 3, "z")).unwrap();
        assert!(linalg::is_zero(abelian.tensor()));
    }

    #[test]
    fn equivariant_examples() {
        let g = catalog("sl2", Q).unwrap();
        let adj = ModuleAction::adjoint(&g);
        let zero = equivariant_leibniz(&adj, &Matrix::zeros(Q, 3, 3)).unwrap();
        assert!(linalg::is_zero(zero.structure_tensor()));
        let same = equivariant_leibniz(&adj, &Matrix::identity(Q, 3)).unwrap();
        assert!(same.same_structure(&g));

        let swap = Matrix::from_i64(Q, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert!(matches!(
            equivariant_leibniz(&adj, &swap),
            Err(AlgebraError::NotEquivariant { .. })
        ));
    }

    #[test]
    fn equivariant_with_trivial_summand() {
        // M = sl2 ⊕ F with F acted on trivially, f the projection onto sl2.
        let g = catalog("sl2", Q).unwrap();
        let act = ModuleAction::from_fn(4, g.clone(), |x, y| {
            let mut v = linalg::zeros(Q, 4);
            if x < 3 {
                v[..3].clone_from_slice(g.basis_bracket(x, y));
            }
            v
        })
        .unwrap();
        let proj = Matrix::from_i64(Q, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        let b = equivariant_leibniz(&act, &proj).unwrap();
        assert!(check_binary(&b).is_leibniz);
        for i in 0..4 {
            assert!(linalg::is_zero(b.basis_bracket(i, 3)));
            assert!(linalg::is_zero(b.basis_bracket(3, i)));
        }
    }
}
