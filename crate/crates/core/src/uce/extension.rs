//! Central extensions given explicitly, and the maps out of a universal one.

use super::{is_morphism, kernel_is_central, Ambient, Category, UceError, UceResult};
use crate::algebra::{check_binary, check_ternary, derived_lts, sparse, Algebra, SparseVec};
use crate::linalg::{self, kernel, Matrix, Vector};

/// A surjection `π: E → A` with central kernel, plus a linear section.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralExtension {
    category: Category,
    base: Algebra,
    algebra: Algebra,
    projection: Matrix,
    section: Matrix,
}

fn not_central(msg: impl Into<String>) -> UceError {
    UceError::NotCentral(msg.into())
}

impl CentralExtension {
    /// Verifies the category axioms on `algebra`, that `projection` is a
    /// morphism onto `base` with `projection·section = id`, and that its
    /// kernel is central.
    pub fn new(
        category: Category,
        base: Algebra,
        algebra: Algebra,
        projection: Matrix,
        section: Matrix,
    ) -> Result<Self, UceError> {
        let fits = |a: &Algebra| match (category, a) {
            (Category::Lie, Algebra::Binary(b)) => check_binary(b).is_lie,
            (Category::Leibniz, Algebra::Binary(b)) => check_binary(b).is_leibniz,
            (Category::Lts, Algebra::Ternary(t)) => check_ternary(t).is_lts,
            _ => false,
        };
        if !fits(&algebra) || !fits(&base) {
            return Err(UceError::CategoryMismatch(format!("algebras are not {category} objects")));
        }
        let (n, m) = (base.dim(), algebra.dim());
        if (projection.rows(), projection.cols()) != (n, m) || (section.rows(), section.cols()) != (m, n) {
            return Err(not_central(format!(
                "projection is {}x{} and section {}x{}, expected {n}x{m} and {m}x{n}",
                projection.rows(),
                projection.cols(),
                section.rows(),
                section.cols()
            )));
        }
        let ext = CentralExtension {
            category,
            base,
            algebra,
            projection,
            section,
        };
        ext.verify()?;
        Ok(ext)
    }

    fn verify(&self) -> Result<(), UceError> {
        if !self.projection.mul(&self.section).is_identity() {
            return Err(not_central("projection∘section is not the identity"));
        }
        if !is_morphism(&self.projection, &self.algebra, &self.base) {
            return Err(not_central("projection is not a morphism"));
        }
        if !kernel_is_central(&self.algebra, &kernel(&self.projection)) {
            return Err(not_central("kernel is not central"));
        }
        Ok(())
    }

    /// The identity extension `A → A`.
    pub fn trivial(category: Category, base: Algebra) -> Result<Self, UceError> {
        let id = Matrix::identity(base.field(), base.dim());
        Self::new(category, base.clone(), base, id.clone(), id)
    }

    /// A universal extension viewed as an ordinary central extension.
    pub fn from_uce(u: &UceResult) -> Self {
        CentralExtension {
            category: u.category(),
            base: u.base().clone(),
            algebra: u.extension().clone(),
            projection: u.projection().clone(),
            section: u.section().clone(),
        }
    }

    /// A Lie extension regarded as a Leibniz extension.
    pub fn as_leibniz(self) -> Result<Self, UceError> {
        match self.category {
            Category::Lie | Category::Leibniz => Ok(CentralExtension {
                category: Category::Leibniz,
                ..self
            }),
            Category::Lts => Err(UceError::CategoryMismatch("a Lie triple system is not a Leibniz algebra".into())),
        }
    }

    /// The derived Lie triple system extension `{a,b,c} = [a,[b,c]]`.
    pub fn as_lts(self) -> Result<Self, UceError> {
        let derive = |a: &Algebra| match a {
            Algebra::Binary(b) => derived_lts(b)
                .map(Algebra::Ternary)
                .map_err(|e| UceError::CategoryMismatch(e.to_string())),
            Algebra::Ternary(_) => Err(UceError::CategoryMismatch("already ternary".into())),
        };
        let algebra = derive(&self.algebra)?;
        let base = derive(&self.base)?;
        Self::new(Category::Lts, base, algebra, self.projection, self.section)
    }

    /// Replaces the section after checking it is a right inverse.
    pub fn with_section(self, section: Matrix) -> Result<Self, UceError> {
        if (section.rows(), section.cols()) != (self.section.rows(), self.section.cols())
            || !self.projection.mul(&section).is_identity()
        {
            return Err(not_central("section is not a right inverse of the projection"));
        }
        Ok(CentralExtension { section, ..self })
    }

    pub fn category(&self) -> Category {
        self.category
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    pub fn section(&self) -> &Matrix {
        &self.section
    }
}

/// The unique morphism `U → E` over the base: the class of `x⊗y` (or
/// `x∧y`, `x⊗y⊗z`) goes to the bracket in `E` of section lifts. Checks that
/// relations map to zero, that the result is a morphism, and that it
/// commutes with the projections.
pub fn universal_map(u: &UceResult, e: &CentralExtension) -> Result<Matrix, UceError> {
    if u.category() != e.category() {
        return Err(UceError::CategoryMismatch(format!(
            "{} extension cannot receive a map from a {} extension",
            e.category(),
            u.category()
        )));
    }
    if !u.base().same_structure(e.base()) {
        return Err(UceError::NotOverSameBase);
    }
    e.verify()?;

    let f = u.base().field();
    let amb = Ambient {
        category: u.category(),
        n: u.base().dim(),
    };
    let m = e.algebra().dim();
    let one = f.one();
    let lifts: Vec<SparseVec> = (0..amb.n).map(|i| sparse(&e.section().column(i))).collect();
    let phi = |idx: usize| -> Vector {
        let [i, j, k] = amb.decode(idx);
        let mut out = linalg::zeros(f, m);
        match e.algebra() {
            Algebra::Binary(b) => b.acc_bracket(&mut out, &one, &lifts[i], &lifts[j]),
            Algebra::Ternary(t) => t.acc_bracket(&mut out, &one, &lifts[i], &lifts[j], &lifts[k]),
        }
        out
    };
    let ambient: Vec<Vector> = (0..amb.dim()).map(phi).collect();

    for r in u.relations().basis_vectors() {
        let mut image = linalg::zeros(f, m);
        for (idx, c) in r.iter().enumerate() {
            if !c.is_zero() {
                linalg::axpy(&mut image, c, &ambient[idx]);
            }
        }
        if !linalg::is_zero(&image) {
            return Err(UceError::WellDefinednessFailed("a relation does not map to zero".into()));
        }
    }

    let cols: Vec<Vector> = u.carrier().coset_basis().iter().map(|&idx| ambient[idx].clone()).collect();
    let map = Matrix::from_columns(f, m, &cols).expect("consistent widths");
    if !is_morphism(&map, u.extension(), e.algebra()) {
        return Err(UceError::WellDefinednessFailed("map is not a morphism".into()));
    }
    if e.projection().mul(&map) != *u.projection() {
        return Err(UceError::WellDefinednessFailed("map does not commute with the projections".into()));
    }
    Ok(map)
}
