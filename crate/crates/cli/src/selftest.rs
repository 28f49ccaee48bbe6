use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lts_uce::algebra::{catalog, derived_lts, Algebra};
use lts_uce::fields::FieldSpec;
use lts_uce::linalg::with_gf2_packing;
use lts_uce::theorem::verify_main_theorem;
use lts_uce::uce::{build_uce, build_uce_from_generators, relation_generators, Category, UceOptions};

use crate::Failure;

fn dims(a: &Algebra, category: Category) -> Result<(usize, usize, usize), Failure> {
    let u = build_uce(a, category, &UceOptions::default())?;
    Ok((u.carrier_dim(), u.h2().dim(), u.relations().dim()))
}

fn expect(ok: bool, what: &str) -> Result<(), Failure> {
    out!("{} {what}", if ok { "ok  " } else { "FAIL" });
    if ok {
        Ok(())
    } else {
        Err(Failure::new(1, format!("selftest failed: {what}")))
    }
}

/// Quick randomized consistency run: basis permutations, generator
/// shuffles, and packed versus generic GF(2) elimination.
pub fn run(seed: u64) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = UceOptions::default();

    for (name, f) in [("sl3", FieldSpec::Prime(3)), ("takiff", FieldSpec::Prime(5))] {
        let g = catalog(name, f)?;
        let mut perm: Vec<usize> = (0..g.dim()).collect();
        perm.shuffle(&mut rng);
        let h = g.permute_basis(&perm)?;
        for category in [Category::Lie, Category::Leibniz] {
            let same = dims(&Algebra::Binary(g.clone()), category)? == dims(&Algebra::Binary(h.clone()), category)?;
            expect(same, &format!("{name} over {f}, {category}: permuted basis keeps dimensions"))?;
        }
    }

    let l = Algebra::Ternary(derived_lts(&catalog("sl2", FieldSpec::Rationals)?)?);
    let reference = build_uce(&l, Category::Lts, &opts)?;
    let mut gens: Vec<_> = relation_generators(&l, Category::Lts)?.collect();
    gens.shuffle(&mut rng);
    let shuffled = build_uce_from_generators(&l, Category::Lts, gens, &opts)?;
    expect(
        shuffled.relations() == reference.relations(),
        "sl2 over Q, lts: shuffled generators give the same relation span",
    )?;

    let g = catalog("sl3", FieldSpec::Prime(2))?;
    let packed = with_gf2_packing(true, || verify_main_theorem(&g))?;
    let generic = with_gf2_packing(false, || verify_main_theorem(&g))?;
    expect(
        packed.summary() == generic.summary() && packed.all_hold(),
        "sl3 over GF(2): packed and generic pipelines agree",
    )?;
    out!("selftest passed (seed {seed})");
    Ok(())
}
