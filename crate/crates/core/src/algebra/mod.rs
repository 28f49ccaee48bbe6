//! Algebras presented by structure constants.
//!
//! A [`BinaryAlgebra`] stores `[e_i, e_j]` for every ordered pair of basis
//! vectors, a [`TernaryAlgebra`] stores `{e_i, e_j, e_k}`. Storage is dense;
//! a table of nonzero entries is kept alongside for evaluation.

mod catalog;
mod checks;
mod constructions;
mod maps;

use std::fmt;

use thiserror::Error;

use crate::fields::{FieldSpec, Scalar};
use crate::linalg::{self, Vector};

pub use catalog::{catalog, CATALOG_NAMES};
pub use checks::{
    check_binary, check_ternary, jacobiator, leibniz_defect, lts_alternating_defect,
    lts_cyclic_defect, lts_derivation_defect, BinaryReport, TernaryReport,
};
pub use constructions::{
    canonical_wedge_action, derived_lts, equivariant_leibniz, tensor_leibniz, verify_action,
    ModuleAction, TensorVariant, TripleSource,
};
pub(crate) use constructions::derived_unchecked;
pub use maps::{
    binary_quotient, is_binary_morphism, is_ternary_morphism, ternary_quotient,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("Jacobi identity fails; the derived ternary bracket is not a Lie triple system")]
    JacobiFails,
    #[error("axiom precondition failed: {0}")]
    AxiomPrecondition(String),
    #[error("map is not equivariant at module basis vector {module_index} and algebra basis vector {algebra_index}")]
    NotEquivariant {
        module_index: usize,
        algebra_index: usize,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown algebra {0:?}")]
    UnknownAlgebra(String),
    #[error("invalid structure data: {0}")]
    Invalid(String),
}

pub(crate) type SparseVec = Vec<(usize, Scalar)>;

pub(crate) fn sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

fn validate(field: FieldSpec, expected: usize, data: &[Scalar]) -> Result<(), AlgebraError> {
    if data.len() != expected {
        return Err(AlgebraError::DimensionMismatch {
            expected,
            found: data.len(),
        });
    }
    if let Some(x) = data.iter().find(|x| x.field() != field) {
        return Err(AlgebraError::Invalid(format!(
            "coefficient {x} does not lie in {field}"
        )));
    }
    Ok(())
}

/// A bilinear bracket on `F^n`.
#[derive(Debug, Clone)]
pub struct BinaryAlgebra {
    field: FieldSpec,
    dim: usize,
    name: String,
    c: Vec<Scalar>,
    table: Vec<SparseVec>,
}

impl PartialEq for BinaryAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.same_structure(other)
    }
}

impl Eq for BinaryAlgebra {}

impl BinaryAlgebra {
    /// `c[(i*n + j)*n + k]` is the `k`-th coordinate of `[e_i, e_j]`.
    pub fn new(field: FieldSpec, dim: usize, name: impl Into<String>, c: Vec<Scalar>) -> Result<Self, AlgebraError> {
        validate(field, dim * dim * dim, &c)?;
        let table = c.chunks(dim.max(1)).map(sparse).collect();
        Ok(BinaryAlgebra {
            field,
            dim,
            name: name.into(),
            c,
            table: if dim == 0 { Vec::new() } else { table },
        })
    }

    pub fn zero(field: FieldSpec, dim: usize, name: impl Into<String>) -> Self {
        BinaryAlgebra::new(field, dim, name, vec![field.zero(); dim * dim * dim]).expect("zero tensor")
    }

    /// Builds the tensor from `[e_i, e_j] = f(i, j)`.
    pub fn from_fn(
        field: FieldSpec,
        dim: usize,
        name: impl Into<String>,
        mut f: impl FnMut(usize, usize) -> Vector,
    ) -> Result<Self, AlgebraError> {
        let mut c = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                if v.len() != dim {
                    return Err(AlgebraError::DimensionMismatch {
                        expected: dim,
                        found: v.len(),
                    });
                }
                c.extend(v);
            }
        }
        BinaryAlgebra::new(field, dim, name, c)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn structure_tensor(&self) -> &[Scalar] {
        &self.c
    }

    /// Equality of field, dimension and structure constants.
    pub fn same_structure(&self, other: &BinaryAlgebra) -> bool {
        self.field == other.field && self.dim == other.dim && self.c == other.c
    }

    /// `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.dim;
        &self.c[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub(crate) fn basis_bracket_sparse(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    /// `out += coeff · [u, v]` for sparse `u`, `v`.
    pub(crate) fn acc_bracket(&self, out: &mut [Scalar], coeff: &Scalar, u: &[(usize, Scalar)], v: &[(usize, Scalar)]) {
        for (i, a) in u {
            let ca = coeff * a;
            for (j, b) in v {
                let cab = &ca * b;
                for (k, x) in self.basis_bracket_sparse(*i, *j) {
                    out[*k].add_mul(&cab, x);
                }
            }
        }
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        assert!(u.len() == self.dim && v.len() == self.dim, "bracket arguments have wrong length");
        let mut out = linalg::zeros(self.field, self.dim);
        self.acc_bracket(&mut out, &self.field.one(), &sparse(u), &sparse(v));
        out
    }

    /// The algebra in the basis `f_a = e_{perm[a]}`.
    pub fn permute_basis(&self, perm: &[usize]) -> Result<Self, AlgebraError> {
        invert_permutation(perm, self.dim)?;
        BinaryAlgebra::from_fn(self.field, self.dim, self.name.clone(), |a, b| {
            let w = self.basis_bracket(perm[a], perm[b]);
            (0..self.dim).map(|k| w[perm[k]].clone()).collect::<Vector>()
        })
    }
}

/// A trilinear bracket on `F^n`.
#[derive(Debug, Clone)]
pub struct TernaryAlgebra {
    field: FieldSpec,
    dim: usize,
    name: String,
    t: Vec<Scalar>,
    table: Vec<SparseVec>,
}

impl PartialEq for TernaryAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.same_structure(other)
    }
}

impl Eq for TernaryAlgebra {}

impl TernaryAlgebra {
    /// `t[((i*n + j)*n + k)*n + l]` is the `l`-th coordinate of `{e_i, e_j, e_k}`.
    pub fn new(field: FieldSpec, dim: usize, name: impl Into<String>, t: Vec<Scalar>) -> Result<Self, AlgebraError> {
        validate(field, dim.pow(4), &t)?;
        let table = if dim == 0 {
            Vec::new()
        } else {
            t.chunks(dim).map(sparse).collect()
        };
        Ok(TernaryAlgebra {
            field,
            dim,
            name: name.into(),
            t,
            table,
        })
    }

    pub fn zero(field: FieldSpec, dim: usize, name: impl Into<String>) -> Self {
        TernaryAlgebra::new(field, dim, name, vec![field.zero(); dim.pow(4)]).expect("zero tensor")
    }

    pub fn from_fn(
        field: FieldSpec,
        dim: usize,
        name: impl Into<String>,
        mut f: impl FnMut(usize, usize, usize) -> Vector,
    ) -> Result<Self, AlgebraError> {
        let mut t = Vec::with_capacity(dim.pow(4));
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let v = f(i, j, k);
                    if v.len() != dim {
                        return Err(AlgebraError::DimensionMismatch {
                            expected: dim,
                            found: v.len(),
                        });
                    }
                    t.extend(v);
                }
            }
        }
        TernaryAlgebra::new(field, dim, name, t)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn structure_tensor(&self) -> &[Scalar] {
        &self.t
    }

    pub fn same_structure(&self, other: &TernaryAlgebra) -> bool {
        self.field == other.field && self.dim == other.dim && self.t == other.t
    }

    /// `{e_i, e_j, e_k}`.
    pub fn basis_bracket(&self, i: usize, j: usize, k: usize) -> &[Scalar] {
        let n = self.dim;
        let at = ((i * n + j) * n + k) * n;
        &self.t[at..at + n]
    }

    pub(crate) fn basis_bracket_sparse(&self, i: usize, j: usize, k: usize) -> &[(usize, Scalar)] {
        let n = self.dim;
        &self.table[(i * n + j) * n + k]
    }

    /// `out += coeff · {u, v, w}` for sparse arguments.
    pub(crate) fn acc_bracket(
        &self,
        out: &mut [Scalar],
        coeff: &Scalar,
        u: &[(usize, Scalar)],
        v: &[(usize, Scalar)],
        w: &[(usize, Scalar)],
    ) {
        for (i, a) in u {
            let ca = coeff * a;
            for (j, b) in v {
                let cab = &ca * b;
                for (k, c) in w {
                    let cabc = &cab * c;
                    for (l, x) in self.basis_bracket_sparse(*i, *j, *k) {
                        out[*l].add_mul(&cabc, x);
                    }
                }
            }
        }
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Vector {
        assert!(
            u.len() == self.dim && v.len() == self.dim && w.len() == self.dim,
            "bracket arguments have wrong length"
        );
        let mut out = linalg::zeros(self.field, self.dim);
        self.acc_bracket(&mut out, &self.field.one(), &sparse(u), &sparse(v), &sparse(w));
        out
    }

    /// The algebra in the basis `f_a = e_{perm[a]}`.
    pub fn permute_basis(&self, perm: &[usize]) -> Result<Self, AlgebraError> {
        invert_permutation(perm, self.dim)?;
        TernaryAlgebra::from_fn(self.field, self.dim, self.name.clone(), |a, b, c| {
            let w = self.basis_bracket(perm[a], perm[b], perm[c]);
            (0..self.dim).map(|k| w[perm[k]].clone()).collect::<Vector>()
        })
    }
}

fn invert_permutation(perm: &[usize], n: usize) -> Result<Vec<usize>, AlgebraError> {
    if perm.len() != n {
        return Err(AlgebraError::DimensionMismatch {
            expected: n,
            found: perm.len(),
        });
    }
    let mut inv = vec![usize::MAX; n];
    for (a, &p) in perm.iter().enumerate() {
        if p >= n || inv[p] != usize::MAX {
            return Err(AlgebraError::Invalid("not a permutation".into()));
        }
        inv[p] = a;
    }
    Ok(inv)
}

/// Either kind of algebra; the unit of file input and output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algebra {
    Binary(BinaryAlgebra),
    Ternary(TernaryAlgebra),
}

impl Algebra {
    pub fn field(&self) -> FieldSpec {
        match self {
            Algebra::Binary(a) => a.field(),
            Algebra::Ternary(a) => a.field(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Algebra::Binary(a) => a.dim(),
            Algebra::Ternary(a) => a.dim(),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Algebra::Binary(a) => a.name(),
            Algebra::Ternary(a) => a.name(),
        }
    }

    pub fn same_structure(&self, other: &Algebra) -> bool {
        match (self, other) {
            (Algebra::Binary(a), Algebra::Binary(b)) => a.same_structure(b),
            (Algebra::Ternary(a), Algebra::Ternary(b)) => a.same_structure(b),
            _ => false,
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self {
            Algebra::Binary(_) => "binary",
            Algebra::Ternary(_) => "ternary",
        };
        write!(f, "{} ({kind}, dim {}, over {})", self.name(), self.dim(), self.field())
    }
}

/// Index of `e_i ∧ e_j` (`i < j`) in the lexicographic wedge basis.
pub fn wedge_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// The pairs `(i, j)`, `i < j`, in wedge-basis order.
pub fn wedge_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// `u ∧ v` in wedge coordinates.
pub fn wedge(u: &[Scalar], v: &[Scalar]) -> Vector {
    let n = u.len();
    let field = u.first().map_or(FieldSpec::Rationals, Scalar::field);
    let mut out = linalg::zeros(field, n * n.saturating_sub(1) / 2);
    for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
            match i.cmp(&j) {
                std::cmp::Ordering::Less => out[wedge_index(n, i, j)].add_mul(a, b),
                std::cmp::Ordering::Greater => out[wedge_index(n, j, i)].sub_mul(a, b),
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    out
}

/// `u ⊗ v` in lexicographic coordinates.
pub fn tensor2(u: &[Scalar], v: &[Scalar]) -> Vector {
    let field = u.first().map_or(FieldSpec::Rationals, Scalar::field);
    let mut out = linalg::zeros(field, u.len() * v.len());
    for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        for (j, b) in v.iter().enumerate() {
            out[i * v.len() + j] = a * b;
        }
    }
    out
}

/// `u ⊗ v ⊗ w` in lexicographic coordinates.
pub fn tensor3(u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Vector {
    tensor2(&tensor2(u, v), w)
}
