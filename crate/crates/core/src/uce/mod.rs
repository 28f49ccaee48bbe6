//! Universal central extensions in the Lie, Leibniz and Lie triple system
//! categories, built as quotients of `g∧g`, `g⊗g` and `L⊗L⊗L`.

mod extension;
mod relations;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    check_binary, check_ternary, is_binary_morphism, is_ternary_morphism, sparse, Algebra, BinaryAlgebra,
    SparseVec, TernaryAlgebra,
};
use crate::fields::Scalar;
use crate::format::AlgebraDoc;
use crate::linalg::{self, kernel, right_inverse, Matrix, QuotientSpace, SpanAccumulator, Subspace, Vector};

pub use extension::{universal_map, CentralExtension};
pub(crate) use relations::Ambient;
pub use relations::{relation_generators, SparseGenerator};

pub const DEFAULT_LTS_DIM_LIMIT: usize = 12;
pub const DEFAULT_BINARY_DIM_LIMIT: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Lie,
    Leibniz,
    Lts,
}

impl Category {
    pub const ALL: [Category; 3] = [Category::Lie, Category::Leibniz, Category::Lts];

    pub fn is_ternary(self) -> bool {
        self == Category::Lts
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Lie => "lie",
            Category::Leibniz => "leibniz",
            Category::Lts => "lts",
        })
    }
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lie" => Ok(Category::Lie),
            "leibniz" | "leib" => Ok(Category::Leibniz),
            "lts" => Ok(Category::Lts),
            other => Err(format!("unknown category {other:?} (expected lie, leibniz or lts)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UceError {
    #[error("algebra is not perfect")]
    NotPerfect,
    #[error("algebra is not a Lie algebra")]
    NotLie,
    #[error("algebra is not a Leibniz algebra")]
    NotLeibniz,
    #[error("algebra is not a Lie triple system")]
    NotLts,
    #[error("dimension {dim} exceeds the limit {limit} for {category} extensions (use force to override)")]
    DimensionGuard {
        category: Category,
        dim: usize,
        limit: usize,
    },
    #[error("internal assertion failed: {0}")]
    InternalAssertionFailed(String),
    #[error("not a central extension: {0}")]
    NotCentral(String),
    #[error("extensions are over different base algebras")]
    NotOverSameBase,
    #[error("category mismatch: {0}")]
    CategoryMismatch(String),
    #[error("universal map is not well defined: {0}")]
    WellDefinednessFailed(String),
    #[error("operation requires a Leibniz extension")]
    WrongCategory,
}

fn assertion(fact: &str) -> UceError {
    UceError::InternalAssertionFailed(fact.to_string())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct UceOptions {
    /// Skip the dimension guard.
    pub force: bool,
}

/// A universal central extension `b: U → A` presented as a quotient of the
/// tensor ambient by the relation span.
#[derive(Debug, Clone, PartialEq)]
pub struct UceResult {
    category: Category,
    base: Algebra,
    relations: Subspace,
    carrier: QuotientSpace,
    extension: Algebra,
    projection: Matrix,
    section: Matrix,
    h2: Subspace,
}

impl UceResult {
    pub fn category(&self) -> Category {
        self.category
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    pub fn carrier(&self) -> &QuotientSpace {
        &self.carrier
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn extension(&self) -> &Algebra {
        &self.extension
    }

    /// The extension as a binary algebra; `None` for Lie triple systems.
    pub fn binary(&self) -> Option<&BinaryAlgebra> {
        match &self.extension {
            Algebra::Binary(b) => Some(b),
            Algebra::Ternary(_) => None,
        }
    }

    pub fn ternary(&self) -> Option<&TernaryAlgebra> {
        match &self.extension {
            Algebra::Ternary(t) => Some(t),
            Algebra::Binary(_) => None,
        }
    }

    /// `b`, `dim A × dim U`.
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    /// A right inverse of `b`, `dim U × dim A`.
    pub fn section(&self) -> &Matrix {
        &self.section
    }

    /// `ker b` in carrier coordinates.
    pub fn h2(&self) -> &Subspace {
        &self.h2
    }
}

pub fn lts_tensor_cube(l: &TernaryAlgebra) -> Result<UceResult, UceError> {
    lts_tensor_cube_with(l, &UceOptions::default())
}

pub fn lts_tensor_cube_with(l: &TernaryAlgebra, options: &UceOptions) -> Result<UceResult, UceError> {
    build_uce(&Algebra::Ternary(l.clone()), Category::Lts, options)
}

pub fn lie_uce(g: &BinaryAlgebra) -> Result<UceResult, UceError> {
    lie_uce_with(g, &UceOptions::default())
}

pub fn lie_uce_with(g: &BinaryAlgebra, options: &UceOptions) -> Result<UceResult, UceError> {
    build_uce(&Algebra::Binary(g.clone()), Category::Lie, options)
}

pub fn leibniz_uce(g: &BinaryAlgebra) -> Result<UceResult, UceError> {
    leibniz_uce_with(g, &UceOptions::default())
}

pub fn leibniz_uce_with(g: &BinaryAlgebra, options: &UceOptions) -> Result<UceResult, UceError> {
    build_uce(&Algebra::Binary(g.clone()), Category::Leibniz, options)
}

/// Checks the dimension guard, the category axioms and perfection.
pub fn check_preconditions(base: &Algebra, category: Category, options: &UceOptions) -> Result<(), UceError> {
    let limit = if category.is_ternary() {
        DEFAULT_LTS_DIM_LIMIT
    } else {
        DEFAULT_BINARY_DIM_LIMIT
    };
    if !options.force && base.dim() > limit {
        return Err(UceError::DimensionGuard {
            category,
            dim: base.dim(),
            limit,
        });
    }
    let perfect = match (category, base) {
        (Category::Lts, Algebra::Ternary(t)) => {
            let r = check_ternary(t);
            if !r.is_lts {
                return Err(UceError::NotLts);
            }
            r.is_perfect
        }
        (Category::Lie, Algebra::Binary(g)) => {
            let r = check_binary(g);
            if !r.is_lie {
                return Err(UceError::NotLie);
            }
            r.is_perfect
        }
        (Category::Leibniz, Algebra::Binary(g)) => {
            let r = check_binary(g);
            if !r.is_leibniz {
                return Err(UceError::NotLeibniz);
            }
            r.is_perfect
        }
        (Category::Lts, Algebra::Binary(_)) => return Err(UceError::NotLts),
        (Category::Lie, Algebra::Ternary(_)) => return Err(UceError::NotLie),
        (Category::Leibniz, Algebra::Ternary(_)) => return Err(UceError::NotLeibniz),
    };
    if !perfect {
        return Err(UceError::NotPerfect);
    }
    Ok(())
}

/// Builds the universal central extension of `base` in `category`.
pub fn build_uce(base: &Algebra, category: Category, options: &UceOptions) -> Result<UceResult, UceError> {
    check_preconditions(base, category, options)?;
    let generators = relation_generators(base, category)?;
    assemble(base, category, generators)
}

/// As [`build_uce`], folding the given relation generators in the given
/// order. The result does not depend on the order.
pub fn build_uce_from_generators<I>(
    base: &Algebra,
    category: Category,
    generators: I,
    options: &UceOptions,
) -> Result<UceResult, UceError>
where
    I: IntoIterator<Item = SparseGenerator>,
{
    check_preconditions(base, category, options)?;
    assemble(base, category, generators)
}

/// Projection of every ambient basis vector, sparse in carrier coordinates.
fn projection_columns(q: &QuotientSpace) -> Vec<SparseVec> {
    let n = q.ambient_dim();
    let f = q.field();
    let mut coset_pos = vec![usize::MAX; n];
    for (k, &i) in q.coset_basis().iter().enumerate() {
        coset_pos[i] = k;
    }
    let mut cols: Vec<SparseVec> = (0..n)
        .map(|i| {
            if coset_pos[i] == usize::MAX {
                Vec::new()
            } else {
                vec![(coset_pos[i], f.one())]
            }
        })
        .collect();
    for (row, &p) in q.killed().basis().row_vectors().zip(q.killed().pivots()) {
        cols[p] = q
            .coset_basis()
            .iter()
            .enumerate()
            .filter(|(_, &i)| !row[i].is_zero())
            .map(|(k, &i)| (k, row[i].neg()))
            .collect();
    }
    cols
}

fn accumulate(out: &mut [Scalar], coeff: &Scalar, v: &[(usize, Scalar)]) {
    for (i, x) in v {
        out[*i].add_mul(coeff, x);
    }
}

/// Ambient index and sign of the pure product of basis vectors `args`.
fn ambient_index(amb: &Ambient, args: &[usize]) -> Option<(usize, bool)> {
    let n = amb.n;
    match amb.category {
        Category::Leibniz => Some((args[0] * n + args[1], false)),
        Category::Lts => Some(((args[0] * n + args[1]) * n + args[2], false)),
        Category::Lie => match args[0].cmp(&args[1]) {
            std::cmp::Ordering::Less => Some((crate::algebra::wedge_index(n, args[0], args[1]), false)),
            std::cmp::Ordering::Greater => Some((crate::algebra::wedge_index(n, args[1], args[0]), true)),
            std::cmp::Ordering::Equal => None,
        },
    }
}

/// `project(v_1 ⊗ ... ⊗ v_k)` for sparse base vectors.
fn project_product(amb: &Ambient, proj: &[SparseVec], args: &[&SparseVec], out: &mut [Scalar]) {
    fn walk(amb: &Ambient, proj: &[SparseVec], args: &[&SparseVec], idx: &mut Vec<usize>, coeff: Scalar, out: &mut [Scalar]) {
        if idx.len() == args.len() {
            if let Some((a, negate)) = ambient_index(amb, idx) {
                let c = if negate { coeff.neg() } else { coeff };
                accumulate(out, &c, &proj[a]);
            }
            return;
        }
        for (i, x) in args[idx.len()].iter() {
            idx.push(*i);
            walk(amb, proj, args, idx, &coeff * x, out);
            idx.pop();
        }
    }
    if let Some(one) = out.first().map(|x| x.field().one()) {
        walk(amb, proj, args, &mut Vec::new(), one, out);
    }
}

fn assemble<I>(base: &Algebra, category: Category, generators: I) -> Result<UceResult, UceError>
where
    I: IntoIterator<Item = SparseGenerator>,
{
    let f = base.field();
    let n = base.dim();
    let amb = Ambient { category, n };
    let big_n = amb.dim();

    let mut acc = SpanAccumulator::new(f, big_n);
    let mut image = linalg::zeros(f, n);
    for g in generators {
        relations::contract_sparse(base, &amb, &g, &mut image);
        if !linalg::is_zero(&image) {
            return Err(assertion("relation generators are killed by b"));
        }
        acc.push_sparse(&g)
            .map_err(|e| UceError::InternalAssertionFailed(e.to_string()))?;
    }
    let relations = acc.finish();
    check_relations_ideal(base, &amb, &relations)?;

    let carrier = QuotientSpace::new(big_n, relations.clone()).expect("relation span lives in the ambient");
    let d = carrier.dim();
    let proj = projection_columns(&carrier);

    let b_cols: Vec<Vector> = carrier
        .coset_basis()
        .iter()
        .map(|&idx| relations::contract_basis(base, &amb, idx).to_vec())
        .collect();
    let projection = Matrix::from_columns(f, n, &b_cols).expect("consistent widths");
    let images: Vec<SparseVec> = b_cols.iter().map(|c| sparse(c)).collect();

    let ext_name = format!(
        "U_{}({})",
        match category {
            Category::Lie => "Lie",
            Category::Leibniz => "Leib",
            Category::Lts => "LTS",
        },
        base.name()
    );
    let internal = |e: crate::algebra::AlgebraError| UceError::InternalAssertionFailed(e.to_string());
    let extension = if category.is_ternary() {
        Algebra::Ternary(
            TernaryAlgebra::from_fn(f, d, ext_name, |i, j, k| {
                let mut out = linalg::zeros(f, d);
                project_product(&amb, &proj, &[&images[i], &images[j], &images[k]], &mut out);
                out
            })
            .map_err(internal)?,
        )
    } else {
        Algebra::Binary(
            BinaryAlgebra::from_fn(f, d, ext_name, |i, j| {
                let mut out = linalg::zeros(f, d);
                project_product(&amb, &proj, &[&images[i], &images[j]], &mut out);
                out
            })
            .map_err(internal)?,
        )
    };

    let perfect = match (&extension, category) {
        (Algebra::Ternary(t), _) => {
            let r = check_ternary(t);
            if !r.is_lts {
                return Err(assertion("carrier satisfies the LTS axioms"));
            }
            r.is_perfect
        }
        (Algebra::Binary(b), Category::Lie) => {
            let r = check_binary(b);
            if !r.is_lie {
                return Err(assertion("carrier satisfies the Lie axioms"));
            }
            r.is_perfect
        }
        (Algebra::Binary(b), _) => {
            let r = check_binary(b);
            if !r.is_leibniz {
                return Err(assertion("carrier satisfies the Leibniz identity"));
            }
            r.is_perfect
        }
    };
    if !perfect {
        return Err(assertion("carrier is perfect"));
    }

    let h2 = kernel(&projection);
    if !kernel_is_central(&extension, &h2) {
        return Err(assertion("kernel of b is central"));
    }
    if !is_morphism(&projection, &extension, base) {
        return Err(assertion("b is a morphism"));
    }
    let section = right_inverse(&projection, None).ok_or_else(|| assertion("b is surjective"))?;
    if !projection.mul(&section).is_identity() {
        return Err(assertion("b∘s = id"));
    }

    Ok(UceResult {
        category,
        base: base.clone(),
        relations,
        carrier,
        extension,
        projection,
        section,
        h2,
    })
}

/// Brackets with one slot in the relation span land in the relation span.
/// The ambient bracket is the product of images, so this reduces to the
/// image of every basis vector of the span vanishing or every product with
/// it lying in the span.
fn check_relations_ideal(base: &Algebra, amb: &Ambient, relations: &Subspace) -> Result<(), UceError> {
    let f = base.field();
    let n = base.dim();
    let big_n = amb.dim();
    let ambient_images: Vec<Vector> = (0..big_n)
        .map(|idx| relations::contract_basis(base, amb, idx).to_vec())
        .collect();
    for r in relations.basis_vectors() {
        let mut image = linalg::zeros(f, n);
        relations::contract_sparse(base, amb, &sparse(r), &mut image);
        if linalg::is_zero(&image) {
            continue;
        }
        // Only reachable when b does not kill the relations.
        for slot in 0..amb.arity() {
            for others in 0..big_n.pow(amb.arity() as u32 - 1) {
                let mut args: Vec<&[Scalar]> = Vec::with_capacity(amb.arity());
                let mut rest = others;
                for s in 0..amb.arity() {
                    if s == slot {
                        args.push(&image);
                    } else {
                        args.push(&ambient_images[rest % big_n]);
                        rest /= big_n;
                    }
                }
                if !linalg::is_zero(&relations.reduce(&amb.product(&args))) {
                    return Err(assertion("relation span is an ideal"));
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn is_morphism(map: &Matrix, src: &Algebra, dst: &Algebra) -> bool {
    match (src, dst) {
        (Algebra::Binary(a), Algebra::Binary(b)) => is_binary_morphism(map, a, b),
        (Algebra::Ternary(a), Algebra::Ternary(b)) => is_ternary_morphism(map, a, b),
        _ => false,
    }
}

/// Every bracket with an argument in `kernel` vanishes.
pub(crate) fn kernel_is_central(algebra: &Algebra, kernel: &Subspace) -> bool {
    let f = algebra.field();
    let n = algebra.dim();
    let one = f.one();
    let units: Vec<SparseVec> = (0..n).map(|i| vec![(i, one.clone())]).collect();
    let mut out = linalg::zeros(f, n);
    for k in kernel.basis_vectors() {
        let k = sparse(k);
        match algebra {
            Algebra::Binary(b) => {
                for u in &units {
                    b.acc_bracket(&mut out, &one, &k, u);
                    b.acc_bracket(&mut out, &one, u, &k);
                    if !linalg::is_zero(&out) {
                        return false;
                    }
                }
            }
            Algebra::Ternary(t) => {
                for u in &units {
                    for v in &units {
                        for args in [[&k, u, v], [u, &k, v], [u, v, &k]] {
                            t.acc_bracket(&mut out, &one, args[0], args[1], args[2]);
                            if !linalg::is_zero(&out) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// `H₁ = coker b` and `H₂ = ker b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyReport {
    pub h1_dim: usize,
    pub h2_dim: usize,
    /// Coset representatives in the tensor ambient.
    pub h2_basis: Vec<Vector>,
}

pub fn homology(u: &UceResult) -> HomologyReport {
    HomologyReport {
        h1_dim: u.base.dim() - u.projection.rank(),
        h2_dim: u.h2.dim(),
        h2_basis: u.h2.basis_vectors().map(|h| u.carrier.section(h)).collect(),
    }
}

/// JSON summary of a [`UceResult`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UceReport {
    pub category: Category,
    pub base: String,
    pub field: String,
    pub ambient_dim: usize,
    pub relation_dim: usize,
    pub carrier_dim: usize,
    pub h1_dim: usize,
    pub h2_dim: usize,
    pub base_algebra: AlgebraDoc,
    pub extension: AlgebraDoc,
}

impl From<&UceResult> for UceReport {
    fn from(u: &UceResult) -> Self {
        let h = homology(u);
        UceReport {
            category: u.category,
            base: u.base.name().to_string(),
            field: u.base.field().to_string(),
            ambient_dim: u.carrier.ambient_dim(),
            relation_dim: u.relations.dim(),
            carrier_dim: u.carrier_dim(),
            h1_dim: h.h1_dim,
            h2_dim: h.h2_dim,
            base_algebra: AlgebraDoc::from(&u.base),
            extension: AlgebraDoc::from(&u.extension),
        }
    }
}
