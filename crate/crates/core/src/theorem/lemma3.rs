//! Leibniz structure on a central extension of the derived triple system of
//! a perfect Lie algebra.

use super::TheoremError;
use crate::algebra::{
    check_binary, derived_lts, derived_unchecked, sparse, wedge_pairs, Algebra, BinaryAlgebra, SparseVec,
    TernaryAlgebra,
};
use crate::linalg::{self, kernel, right_inverse, Matrix, Subspace, Vector};
use crate::uce::{Category, CentralExtension};

/// Everything computed while building the bracket, kept for inspection.
#[derive(Debug, Clone)]
pub struct LemmaThreeCertificate {
    pub extension: CentralExtension,
    /// Right inverse of `μ: g⊗g → g`, `n² × n`.
    pub sigma: Matrix,
    /// A second right inverse from the reversed pivot order.
    pub alt_sigma: Matrix,
    /// `Z = ker(L∧L → g)` in the lexicographic wedge basis of `L`.
    pub z_basis: Subspace,
    pub leibniz_bracket: BinaryAlgebra,
    pub z_action_trivial: bool,
    pub sigma_independent: bool,
    pub is_leibniz: bool,
    pub satisfies_jacobi: bool,
    pub reproduces_ternary: bool,
    /// Usually false: the bracket need not be alternating.
    pub is_lie: bool,
}

impl LemmaThreeCertificate {
    /// The constructed Leibniz algebra as a central extension of `g`.
    pub fn leibniz_extension(&self, g: &BinaryAlgebra) -> Result<CentralExtension, TheoremError> {
        CentralExtension::new(
            Category::Leibniz,
            Algebra::Binary(g.clone()),
            Algebra::Binary(self.leibniz_bracket.clone()),
            self.extension.projection().clone(),
            self.extension.section().clone(),
        )
        .map_err(|e| TheoremError::LeibnizCheckFailed(e.to_string()))
    }
}

/// `μ: g⊗g → g`, `n × n²`.
pub fn bracket_matrix(g: &BinaryAlgebra) -> Matrix {
    let n = g.dim();
    let cols: Vec<Vector> = (0..n * n).map(|ab| g.basis_bracket(ab / n, ab % n).to_vec()).collect();
    Matrix::from_columns(g.field(), n, &cols).expect("consistent widths")
}

/// Builds `[x, y] = x ∗ π(y)` with `x ∗ v = Σ σ(v)_ab {x, s(e_a), s(e_b)}`
/// and verifies it.
pub fn lemma3_leibniz_structure(
    ext: &CentralExtension,
    g: &BinaryAlgebra,
) -> Result<LemmaThreeCertificate, TheoremError> {
    let report = check_binary(g);
    if !report.is_lie {
        return Err(TheoremError::NotLie);
    }
    if !report.is_perfect {
        return Err(TheoremError::NotPerfect);
    }
    let Algebra::Ternary(l) = ext.algebra() else {
        return Err(TheoremError::NotCentral("extension is not a Lie triple system".into()));
    };
    let base = derived_lts(g).map_err(|_| TheoremError::NotLie)?;
    if ext.category() != Category::Lts || !ext.base().same_structure(&Algebra::Ternary(base)) {
        return Err(TheoremError::NotCentral(
            "extension is not over the derived triple system of g".into(),
        ));
    }

    let f = g.field();
    let n = g.dim();
    let m = l.dim();
    let mu = bracket_matrix(g);
    let sigma = right_inverse(&mu, None).ok_or(TheoremError::NotPerfect)?;
    let reversed: Vec<usize> = (0..n * n).rev().collect();
    let alt_sigma = right_inverse(&mu, Some(&reversed)).ok_or(TheoremError::NotPerfect)?;

    let one = f.one();
    let lifts: Vec<SparseVec> = (0..n).map(|a| sparse(&ext.section().column(a))).collect();
    let units: Vec<SparseVec> = (0..m).map(|x| vec![(x, one.clone())]).collect();
    // act[(x * n + a) * n + b] = {e_x, s(e_a), s(e_b)}
    let mut act: Vec<Vector> = Vec::with_capacity(m * n * n);
    for x in 0..m {
        for a in 0..n {
            for b in 0..n {
                let mut out = linalg::zeros(f, m);
                l.acc_bracket(&mut out, &one, &units[x], &lifts[a], &lifts[b]);
                act.push(out);
            }
        }
    }
    let projected: Vec<Vector> = (0..m).map(|y| ext.projection().column(y)).collect();
    let build = |s: &Matrix| -> Result<BinaryAlgebra, TheoremError> {
        let sv: Vec<SparseVec> = projected.iter().map(|v| sparse(&s.apply(v))).collect();
        BinaryAlgebra::from_fn(f, m, format!("leib({})", l.name()), |x, y| {
            let mut out = linalg::zeros(f, m);
            for (ab, c) in &sv[y] {
                linalg::axpy(&mut out, c, &act[x * n * n + ab]);
            }
            out
        })
        .map_err(|e| TheoremError::LeibnizCheckFailed(e.to_string()))
    };
    let bracket = build(&sigma)?;
    let alt = build(&alt_sigma)?;

    let z_basis = z_kernel(l, ext.projection(), g);
    let z_action_trivial = z_acts_trivially(l, &z_basis);
    if !z_action_trivial {
        return Err(TheoremError::ZActionNontrivial("L∧L kernel acts nontrivially".into()));
    }
    let sigma_independent = bracket.same_structure(&alt);
    if !sigma_independent {
        return Err(TheoremError::ZActionNontrivial("bracket depends on the choice of σ".into()));
    }

    let checks = check_binary(&bracket);
    if !checks.is_leibniz {
        return Err(TheoremError::LeibnizCheckFailed("Leibniz identity".into()));
    }
    if !checks.satisfies_jacobi {
        return Err(TheoremError::LeibnizCheckFailed("Jacobi identity".into()));
    }
    let reproduces_ternary = derived_unchecked(&bracket).same_structure(l);
    if !reproduces_ternary {
        return Err(TheoremError::LeibnizCheckFailed("{x,y,z} = [x,[y,z]]".into()));
    }

    Ok(LemmaThreeCertificate {
        extension: ext.clone(),
        sigma,
        alt_sigma,
        z_basis,
        leibniz_bracket: bracket,
        z_action_trivial,
        sigma_independent,
        is_leibniz: true,
        satisfies_jacobi: true,
        reproduces_ternary,
        is_lie: checks.is_lie,
    })
}

/// Kernel of `L∧L → g∧g → g`, `x∧y ↦ [π x, π y]`.
fn z_kernel(l: &TernaryAlgebra, projection: &Matrix, g: &BinaryAlgebra) -> Subspace {
    let m = l.dim();
    let images: Vec<Vector> = (0..m).map(|x| projection.column(x)).collect();
    let cols: Vec<Vector> = wedge_pairs(m)
        .into_iter()
        .map(|(a, b)| g.bracket(&images[a], &images[b]))
        .collect();
    kernel(&Matrix::from_columns(g.field(), g.dim(), &cols).expect("consistent widths"))
}

/// `Σ c_ab {e_x, e_a, e_b} = 0` for every `z = Σ c_ab e_a∧e_b` in the basis
/// and every basis vector `e_x`.
fn z_acts_trivially(l: &TernaryAlgebra, z_basis: &Subspace) -> bool {
    let m = l.dim();
    let pairs = wedge_pairs(m);
    let mut out = linalg::zeros(l.field(), m);
    for z in z_basis.basis_vectors() {
        for x in 0..m {
            for (c, &(a, b)) in z.iter().zip(&pairs) {
                if !c.is_zero() {
                    linalg::axpy(&mut out, c, l.basis_bracket(x, a, b));
                }
            }
            if !linalg::is_zero(&out) {
                return false;
            }
        }
    }
    true
}
