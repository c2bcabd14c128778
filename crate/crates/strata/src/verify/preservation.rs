//! The two directions of the preservation condition for filtered products:
//! satisfaction in the factors on a filter-large set versus satisfaction in
//! the filtered product, checked by exhaustive search over the filter
//! members and the product states above each state.

use crate::error::{Error, Result};
use crate::eval::satisfies_unchecked;
use crate::filter::FilterRep;
use crate::logic::LogicId;
use crate::model::{stratification, Model, State};
use crate::product::{filtered_product, ProductResult};
use crate::sentence::{check_sentence, Sentence};
use crate::signature::SignatureDesc;
use std::collections::BTreeMap;

/// Both preservation directions for one sentence over one prebuilt
/// filtered product: `(by_products, by_factors)`.
///
/// For each state `w` of the filtered product `M_F`, the witness condition
/// is: there exist a member `J` of the filter and a state `k` of the
/// product `M_J` with colimit image `w` such that every factor `M_j`
/// (`j ∈ J`) satisfies the sentence at the `j`-th component of `k`.
/// Preservation by products requires witness ⇒ `M_F ⊨^w ρ`; preservation
/// by factors requires the converse.
pub fn check_preservation(
    logic: LogicId,
    sig: &SignatureDesc,
    pr: &ProductResult,
    family: &[Model],
    rho: &Sentence,
) -> Result<(bool, bool)> {
    let idx: Vec<usize> = pr.filter.index.iter().copied().collect();
    if idx.len() != family.len() {
        return Err(Error::Filter(
            "family length does not match the filter's index set".into(),
        ));
    }
    let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(p, j)| (*j, p)).collect();
    let mut fsat: Vec<BTreeMap<State, bool>> = Vec::with_capacity(family.len());
    for m in family {
        let mut table = BTreeMap::new();
        for w in stratification(logic, sig, m)? {
            let v = satisfies_unchecked(logic, sig, m, &w, rho)?;
            table.insert(w, v);
        }
        fsat.push(table);
    }
    let mf_states = stratification(logic, sig, &pr.model)?;
    let mut products_ok = true;
    let mut factors_ok = true;
    for w in &mf_states {
        let sat = satisfies_unchecked(logic, sig, &pr.model, w, rho)?;
        let mut witness = false;
        'members: for (jvec, decode) in &pr.state_decodes {
            let cmap = pr
                .colimit_maps
                .get(jvec)
                .ok_or_else(|| Error::Filter("product is missing a colimit map".into()))?;
            for (k, parts) in decode {
                if cmap.get(k) != Some(w) {
                    continue;
                }
                let all = jvec.iter().zip(parts).try_fold(true, |acc, (j, kj)| {
                    let p = pos
                        .get(j)
                        .ok_or_else(|| Error::Filter(format!("unknown index element {j}")))?;
                    fsat[*p]
                        .get(kj)
                        .copied()
                        .map(|b| acc && b)
                        .ok_or_else(|| Error::State(format!("factor state `{kj}` not tabulated")))
                })?;
                if all {
                    witness = true;
                    break 'members;
                }
            }
        }
        if witness && !sat {
            products_ok = false;
        }
        if sat && !witness {
            factors_ok = false;
        }
        if !products_ok && !factors_ok {
            break;
        }
    }
    Ok((products_ok, factors_ok))
}

fn build_and_check(
    logic: LogicId,
    sig: &SignatureDesc,
    rho: &Sentence,
    filter: &FilterRep,
    family: &[Model],
) -> Result<(bool, bool)> {
    check_sentence(logic, sig, rho)?;
    let pr = filtered_product(logic, sig, filter, family)?;
    check_preservation(logic, sig, &pr, family, rho)
}

/// True iff the sentence is preserved by products of this filter and
/// family: every witnessed state of the filtered product satisfies it.
pub fn preserved_by_products(
    logic: LogicId,
    sig: &SignatureDesc,
    rho: &Sentence,
    filter: &FilterRep,
    family: &[Model],
) -> Result<bool> {
    Ok(build_and_check(logic, sig, rho, filter, family)?.0)
}

/// True iff the sentence is preserved by factors of this filter and
/// family: every satisfying state of the filtered product is witnessed.
pub fn preserved_by_factors(
    logic: LogicId,
    sig: &SignatureDesc,
    rho: &Sentence,
    filter: &FilterRep,
    family: &[Model],
) -> Result<bool> {
    Ok(build_and_check(logic, sig, rho, filter, family)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::make_filter;
    use crate::model::fixtures::{k1, mpl_sig_pq};
    use crate::parse::parse_sentence;
    use std::collections::BTreeSet;

    fn full_filter(n: usize) -> FilterRep {
        let index: BTreeSet<usize> = (1..=n).collect();
        make_filter(&index, &[index.clone()]).unwrap()
    }

    #[test]
    fn diamond_preserved_over_direct_product_of_k1_pair() {
        let sig = mpl_sig_pq();
        let rho = parse_sentence(LogicId::Mpl, &sig, "<> p").unwrap();
        let f = full_filter(2);
        let fam = [k1(), k1()];
        assert!(preserved_by_products(LogicId::Mpl, &sig, &rho, &f, &fam).unwrap());
        assert!(preserved_by_factors(LogicId::Mpl, &sig, &rho, &f, &fam).unwrap());
    }

    #[test]
    fn unary_family_always_preserves() {
        let sig = mpl_sig_pq();
        let f = full_filter(1);
        let fam = [k1()];
        for text in ["p", "! p", "<> p", "[] q", "p -> q"] {
            let rho = parse_sentence(LogicId::Mpl, &sig, text).unwrap();
            assert!(preserved_by_products(LogicId::Mpl, &sig, &rho, &f, &fam).unwrap());
            assert!(preserved_by_factors(LogicId::Mpl, &sig, &rho, &f, &fam).unwrap());
        }
    }

    #[test]
    fn conjunction_over_disagreeing_factors() {
        let sig = mpl_sig_pq();
        // Same frame as K1 but with q everywhere in the second factor only.
        let mut with_q = match k1() {
            Model::Kripke(k) => k,
            _ => unreachable!(),
        };
        for base in with_q.assignment.values_mut() {
            if let crate::model::WorldBase::Props(p) = base {
                p.insert("q".into());
            }
        }
        let fam = [k1(), Model::Kripke(with_q)];
        let f = full_filter(2);
        let rho = parse_sentence(LogicId::Mpl, &sig, "p & q").unwrap();
        assert!(preserved_by_products(LogicId::Mpl, &sig, &rho, &f, &fam).unwrap());
    }

    #[test]
    fn negation_fails_factors_on_a_non_ultrafilter_as_expected() {
        // p fails at world 0 of K1 in one factor and holds everywhere in a
        // constant factor: over the improper-direction filter {I} the
        // product state (0,w) falsifies p, so ! p holds there, but no
        // member-wide witness exists. This pins down that the checker
        // really distinguishes the two directions.
        let sig = mpl_sig_pq();
        let mut all_p = match k1() {
            Model::Kripke(k) => k,
            _ => unreachable!(),
        };
        for base in all_p.assignment.values_mut() {
            if let crate::model::WorldBase::Props(p) = base {
                p.insert("p".into());
            }
        }
        let fam = [k1(), Model::Kripke(all_p)];
        let f = full_filter(2);
        let rho = parse_sentence(LogicId::Mpl, &sig, "! p").unwrap();
        assert!(!preserved_by_factors(LogicId::Mpl, &sig, &rho, &f, &fam).unwrap());
        // But over the ultrafilter generated by {1} the product collapses
        // to the first factor and both directions hold.
        let index: BTreeSet<usize> = [1, 2].into();
        let uf = make_filter(&index, &[[1usize].into()]).unwrap();
        assert!(preserved_by_products(LogicId::Mpl, &sig, &rho, &uf, &fam).unwrap());
        assert!(preserved_by_factors(LogicId::Mpl, &sig, &rho, &uf, &fam).unwrap());
    }
}
