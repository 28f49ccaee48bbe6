//! The Jacobiator and symmetric subspaces of a Leibniz extension.

use super::TheoremError;
use crate::algebra::{jacobiator, BinaryAlgebra};
use crate::linalg::{self, Subspace};
use crate::uce::{Category, UceResult};

fn leibniz_carrier(u: &UceResult) -> Result<&BinaryAlgebra, TheoremError> {
    match (u.category(), u.binary()) {
        (Category::Leibniz, Some(b)) => Ok(b),
        _ => Err(TheoremError::WrongCategory),
    }
}

/// Span of the Jacobiators `[x,[y,z]] + [z,[x,y]] + [y,[z,x]]` of the
/// extension, a subspace of its carrier.
pub fn jacobiator_subspace(u: &UceResult) -> Result<Subspace, TheoremError> {
    Ok(jacobiator_span(leibniz_carrier(u)?))
}

pub(crate) fn jacobiator_span(a: &BinaryAlgebra) -> Subspace {
    let f = a.field();
    let d = a.dim();
    let e: Vec<_> = (0..d).map(|i| linalg::unit(f, d, i)).collect();
    let gens = (0..d * d * d).map(|t| jacobiator(a, &e[t / (d * d)], &e[t / d % d], &e[t % d]));
    linalg::span_incremental(f, d, gens).expect("vectors live in the carrier")
}

/// Span of `[x,y] + [y,x]`.
pub fn symmetric_subspace(u: &UceResult) -> Result<Subspace, TheoremError> {
    let a = leibniz_carrier(u)?;
    Ok(symmetric_span(a))
}

pub(crate) fn symmetric_span(a: &BinaryAlgebra) -> Subspace {
    let d = a.dim();
    let gens = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).map(|(i, j)| {
        linalg::add(a.basis_bracket(i, j), a.basis_bracket(j, i))
    });
    linalg::span_incremental(a.field(), d, gens).expect("vectors live in the carrier")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lemma4Report {
    pub j: Subspace,
    pub i: Subspace,
    pub j_equals_2i: bool,
    pub j_subset_i: bool,
    /// Both subspaces lie in the kernel of the projection.
    pub inside_kernel: bool,
    /// `J = 0` in characteristic 2, `J = I` otherwise.
    pub corollary: bool,
}

impl Lemma4Report {
    pub fn holds(&self) -> bool {
        self.j_equals_2i && self.j_subset_i && self.inside_kernel && self.corollary
    }
}

pub fn verify_lemma4(u: &UceResult) -> Result<Lemma4Report, TheoremError> {
    let a = leibniz_carrier(u)?;
    let f = a.field();
    let j = jacobiator_span(a);
    let i = symmetric_span(a);
    let two_i = i.scale(&f.from_i64(2)).expect("same field");
    let corollary = if f.characteristic() == 2 { j.is_zero() } else { j == i };
    let inside_kernel = j.is_subspace_of(u.h2()).expect("same ambient") && i.is_subspace_of(u.h2()).expect("same ambient");
    Ok(Lemma4Report {
        j_equals_2i: j == two_i,
        j_subset_i: j.is_subspace_of(&i).expect("same ambient"),
        inside_kernel,
        corollary,
        j,
        i,
    })
}
