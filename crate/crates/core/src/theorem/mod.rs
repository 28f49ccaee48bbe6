//! Comparison of the three universal central extensions of a perfect Lie
//! algebra: `U_LTS ≅ U_Leib` in characteristic 2 and `U_LTS ≅ U_Lie`
//! otherwise, checked through explicit canonical maps.

mod lemma3;
mod subspaces;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{binary_quotient, check_binary, derived_lts, is_binary_morphism, Algebra, BinaryAlgebra};
use crate::format::AlgebraDoc;
use crate::linalg::{self, kernel, Matrix, Subspace};
use crate::uce::{
    homology, leibniz_uce_with, lie_uce_with, lts_tensor_cube_with, universal_map, Category, CentralExtension,
    UceError, UceOptions, UceResult,
};

pub use lemma3::{bracket_matrix, lemma3_leibniz_structure, LemmaThreeCertificate};
pub use subspaces::{jacobiator_subspace, symmetric_subspace, verify_lemma4, Lemma4Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("algebra is not perfect")]
    NotPerfect,
    #[error("algebra is not a Lie algebra")]
    NotLie,
    #[error("operation requires a Leibniz extension")]
    WrongCategory,
    #[error("not a central extension: {0}")]
    NotCentral(String),
    #[error("kernel acts nontrivially: {0}")]
    ZActionNontrivial(String),
    #[error("constructed bracket fails: {0}")]
    LeibnizCheckFailed(String),
    #[error(transparent)]
    Uce(#[from] UceError),
    #[error("{fact} failed: {detail}")]
    FactFailed { fact: String, detail: String },
}

impl TheoremError {
    /// Name of the failed fact, when the error carries one.
    pub fn fact(&self) -> Option<&str> {
        match self {
            TheoremError::FactFailed { fact, .. } => Some(fact),
            TheoremError::ZActionNontrivial(_) | TheoremError::LeibnizCheckFailed(_) => Some("Lemma3:Leibniz structure"),
            _ => None,
        }
    }
}

fn failed(fact: &str, detail: impl ToString) -> TheoremError {
    TheoremError::FactFailed {
        fact: fact.to_string(),
        detail: detail.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremDims {
    pub base: usize,
    pub u_lie: usize,
    pub u_leibniz: usize,
    pub u_lts: usize,
    pub h2_lie: usize,
    pub h2_leibniz: usize,
    pub h2_lts: usize,
    pub j: usize,
    pub i: usize,
    pub i_prime: Option<usize>,
}

/// All artifacts of the comparison.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub characteristic: u32,
    pub base: BinaryAlgebra,
    pub lie: UceResult,
    pub leibniz: UceResult,
    pub lts: UceResult,
    pub lemma4: Lemma4Report,
    pub lemma3: LemmaThreeCertificate,
    /// `U_Leib / J` with its projection from `U_Leib`.
    pub leibniz_mod_j: BinaryAlgebra,
    /// `φ: U_Leib → U_LTS`.
    pub phi: Matrix,
    /// `ψ: U_LTS → U_Leib / J`.
    pub psi: Matrix,
    /// `φ` through `U_Leib / J`.
    pub phi_bar: Matrix,
    /// `λ: U_Leib → U_Lie`, characteristic other than 2.
    pub lambda: Option<Matrix>,
    /// `ρ: U_LTS → U_Lie`, characteristic other than 2.
    pub rho: Option<Matrix>,
    pub i_prime: Option<Subspace>,
    pub lemma4_verdict: bool,
    pub j_subset_i: bool,
    pub iso_lts_leib_mod_j: bool,
    pub triangle_commutes: Option<bool>,
    pub char_branch_verdict: bool,
    pub facts: Vec<Fact>,
}

impl TheoremReport {
    pub fn dims(&self) -> TheoremDims {
        TheoremDims {
            base: self.base.dim(),
            u_lie: self.lie.carrier_dim(),
            u_leibniz: self.leibniz.carrier_dim(),
            u_lts: self.lts.carrier_dim(),
            h2_lie: self.lie.h2().dim(),
            h2_leibniz: self.leibniz.h2().dim(),
            h2_lts: self.lts.h2().dim(),
            j: self.lemma4.j.dim(),
            i: self.lemma4.i.dim(),
            i_prime: self.i_prime.as_ref().map(Subspace::dim),
        }
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.facts.iter().find(|f| !f.holds).map(|f| f.name.as_str())
    }

    pub fn all_hold(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn summary(&self) -> TheoremSummary {
        TheoremSummary {
            input: AlgebraDoc::from(&Algebra::Binary(self.base.clone())),
            field: self.base.field().to_string(),
            characteristic: self.characteristic,
            dims: self.dims(),
            h1_lts: homology(&self.lts).h1_dim,
            lemma4_verdict: self.lemma4_verdict,
            j_subset_i: self.j_subset_i,
            iso_lts_leib_mod_j: self.iso_lts_leib_mod_j,
            triangle_commutes: self.triangle_commutes,
            char_branch_verdict: self.char_branch_verdict,
            lemma3_bracket_is_lie: self.lemma3.is_lie,
            facts: self.facts.clone(),
            first_failure: self.first_failure().map(str::to_string),
        }
    }
}

/// JSON form of a [`TheoremReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremSummary {
    pub input: AlgebraDoc,
    pub field: String,
    pub characteristic: u32,
    pub dims: TheoremDims,
    pub h1_lts: usize,
    pub lemma4_verdict: bool,
    pub j_subset_i: bool,
    pub iso_lts_leib_mod_j: bool,
    pub triangle_commutes: Option<bool>,
    pub char_branch_verdict: bool,
    pub lemma3_bracket_is_lie: bool,
    pub facts: Vec<Fact>,
    pub first_failure: Option<String>,
}

pub fn verify_main_theorem(g: &BinaryAlgebra) -> Result<TheoremReport, TheoremError> {
    verify_main_theorem_with(g, &UceOptions::default())
}

/// Builds the three extensions on separate threads, then runs the
/// comparison sequentially.
pub fn build_all(g: &BinaryAlgebra, options: &UceOptions) -> Result<(UceResult, UceResult, UceResult), TheoremError> {
    let lts_base = derived_lts(g).map_err(|_| TheoremError::NotLie)?;
    let packing = linalg::gf2_packing_enabled();
    let (lie, leib, lts) = std::thread::scope(|s| {
        let lie = s.spawn(|| linalg::with_gf2_packing(packing, || lie_uce_with(g, options)));
        let leib = s.spawn(|| linalg::with_gf2_packing(packing, || leibniz_uce_with(g, options)));
        let lts = linalg::with_gf2_packing(packing, || lts_tensor_cube_with(&lts_base, options));
        (
            lie.join().expect("construction thread panicked"),
            leib.join().expect("construction thread panicked"),
            lts,
        )
    });
    Ok((lie?, leib?, lts?))
}

pub fn verify_main_theorem_with(g: &BinaryAlgebra, options: &UceOptions) -> Result<TheoremReport, TheoremError> {
    let checks = check_binary(g);
    if !checks.is_lie {
        return Err(TheoremError::NotLie);
    }
    if !checks.is_perfect {
        return Err(TheoremError::NotPerfect);
    }
    let f = g.field();
    let characteristic = f.characteristic();
    let char2 = characteristic == 2;
    let (lie, leib, lts) = build_all(g, options)?;
    let mut facts = Vec::new();
    let mut record = |name: &str, holds: bool| {
        facts.push(Fact {
            name: name.to_string(),
            holds,
        });
        holds
    };

    let lemma4 = verify_lemma4(&leib)?;
    let lemma4_verdict = record("Lemma4:J=2I", lemma4.j_equals_2i);
    record(if char2 { "Corollary:J=0" } else { "Corollary:J=I" }, lemma4.corollary);
    let j_subset_i = record("Lemma4:J⊆I", lemma4.j_subset_i);
    record("Lemma4:I,J⊆H2", lemma4.inside_kernel);

    let lemma3 = lemma3_leibniz_structure(&CentralExtension::from_uce(&lts), g)?;
    record("Lemma3:Leibniz structure", true);
    let upgraded = lemma3.leibniz_extension(g)?;
    let phi = universal_map(&leib, &upgraded).map_err(|e| failed("Proposition:φ", e))?;
    let d_lts = lts.carrier_dim();
    let phi_kernel = kernel(&phi);
    record("Proposition:ker φ=J", phi_kernel == lemma4.j);
    record("Proposition:φ surjective", phi.rank() == d_lts);

    let leib_algebra = leib.binary().expect("Leibniz extensions are binary");
    let (qj, leib_mod_j) = binary_quotient(leib_algebra, &lemma4.j).map_err(|e| failed("Proposition:J ideal", e))?;
    let to_g = leib.projection().mul(&qj.section_matrix());
    let from_g = qj.projection_matrix().mul(leib.section());
    let mod_j = CentralExtension::new(
        Category::Leibniz,
        Algebra::Binary(g.clone()),
        Algebra::Binary(leib_mod_j.clone()),
        to_g.clone(),
        from_g,
    )
    .map_err(|e| failed("Proposition:U_Leib/J central", e))?;
    let mod_j_lts = mod_j.as_lts().map_err(|e| failed("Proposition:U_Leib/J is an LTS", e))?;
    let psi = universal_map(&lts, &mod_j_lts).map_err(|e| failed("Proposition:ψ", e))?;
    let phi_bar = phi.mul(&qj.section_matrix());
    let d_mod_j = qj.dim();
    let psi_phi = psi.mul(&phi_bar).is_identity() && d_mod_j == psi.rows();
    let phi_psi = phi_bar.mul(&psi).is_identity() && d_lts == phi_bar.rows();
    record("Proposition:ψ∘φ̄=id", psi_phi);
    record("Proposition:φ̄∘ψ=id", phi_psi);
    let phi_bar_morphism = is_binary_morphism(&phi_bar, &leib_mod_j, &lemma3.leibniz_bracket)
        && lts.projection().mul(&phi_bar) == to_g;
    record("Proposition:φ̄ morphism over g", phi_bar_morphism);
    let iso_lts_leib_mod_j = psi_phi && phi_psi && phi_bar_morphism;

    let (mut lambda, mut rho, mut i_prime, mut triangle_commutes) = (None, None, None, None);
    let char_branch_verdict = if char2 {
        let dims = record("Theorem1:dim U_LTS=dim U_Leib", d_lts == leib.carrier_dim());
        let iso = record("Theorem1:U_LTS≅U_Leib", phi_kernel.is_zero() && phi.rank() == d_lts && iso_lts_leib_mod_j);
        dims && iso
    } else {
        let lie_ext = CentralExtension::from_uce(&lie);
        let l = universal_map(&leib, &lie_ext.clone().as_leibniz()?).map_err(|e| failed("Proposition:λ", e))?;
        let r = universal_map(&lts, &lie_ext.as_lts()?).map_err(|e| failed("Proposition:ρ", e))?;
        let d_lie = lie.carrier_dim();
        let ip = lemma4.i.image_under(&phi).expect("φ acts on the Leibniz carrier");
        record("Proposition:U_Lie≅U_Leib/I", kernel(&l) == lemma4.i && l.rank() == d_lie);
        record("Proposition:U_Lie≅U_LTS/I'", kernel(&r) == ip && r.rank() == d_lie);
        let triangle = record("Diagram:λ=ρ∘φ", l == r.mul(&phi));
        let dims = record("Theorem1:dim U_LTS=dim U_Lie", d_lts == d_lie);
        let iso = record(
            "Theorem1:U_LTS≅U_Lie",
            dims && kernel(&r).is_zero() && r.rank() == d_lie && lie.projection().mul(&r) == *lts.projection(),
        );
        lambda = Some(l);
        rho = Some(r);
        i_prime = Some(ip);
        triangle_commutes = Some(triangle);
        dims && iso
    };

    Ok(TheoremReport {
        characteristic,
        base: g.clone(),
        lie,
        leibniz: leib,
        lts,
        lemma4,
        lemma3,
        leibniz_mod_j: leib_mod_j,
        phi,
        psi,
        phi_bar,
        lambda,
        rho,
        i_prime,
        lemma4_verdict,
        j_subset_i,
        iso_lts_leib_mod_j,
        triangle_commutes,
        char_branch_verdict,
        facts,
    })
}
