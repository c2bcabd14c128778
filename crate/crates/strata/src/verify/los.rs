//! The preservation suite over filtered products: every sentence against
//! every ultrafilter within bounds, and the positive fragment against all
//! filters, on seeded families of small models.

use super::preservation::check_preservation;
use super::{repro_cmd, SuiteConfig, SuiteReport};
use crate::enumerate::{enumerate_sentences, SizeBounds};
use crate::error::Result;
use crate::filter::{enumerate_filters, enumerate_ultrafilters, is_ultrafilter};
use crate::gen::{case_rng, minimal_signature, random_model};
use crate::hom::validate_hom;
use crate::logic::LogicId;
use crate::model::{stratification, Model, State};
use crate::parse::render_sentence;
use crate::product::{filtered_product, ProductResult};
use crate::sentence::Sentence;
use crate::signature::SignatureDesc;
use std::collections::BTreeSet;
use std::time::Instant;

/// True when every node of the sentence is one of the constructors whose
/// preservation under arbitrary filters follows in both directions:
/// atoms, conjunction, possibility modalities, nominal sentences, and
/// existential quantifiers.
fn is_positive(s: &Sentence) -> bool {
    match s {
        Sentence::Prop(_) | Sentence::FolAtom(_, _) | Sentence::Nom(_, _) => true,
        Sentence::And(a, b) => is_positive(a) && is_positive(b),
        Sentence::Dia(_, a) => is_positive(a),
        Sentence::PolyDia(_, args) => args.iter().all(is_positive),
        Sentence::ExistsVar(_, a) | Sentence::ExistsNom(_, _, a) => is_positive(a),
        _ => false,
    }
}

/// What the preservation theory guarantees for this sentence under an
/// arbitrary (not necessarily ultra) filter: `(by_products, by_factors)`,
/// or `None` when neither direction is covered.
fn general_filter_expectation(s: &Sentence) -> Option<(bool, bool)> {
    if is_positive(s) {
        return Some((true, true));
    }
    match s {
        // Satisfaction-at-a-named-state: products direction only.
        Sentence::At(_, _, a) if is_positive(a) => Some((true, false)),
        // Negation of a factors-preserved sentence: products direction only.
        // (The factors direction for a negation needs an ultrafilter: with a
        // coarser filter the factors may disagree on the minimal member.)
        Sentence::Not(a) if is_positive(a) => Some((true, false)),
        _ => None,
    }
}

/// Structural sanity of a constructed filtered product: projections are
/// homomorphisms, state decodings are bijective tuplings, and the colimit
/// maps commute with restriction to the minimal member.
pub fn check_product_invariants(
    logic: LogicId,
    sig: &SignatureDesc,
    pr: &ProductResult,
    family: &[Model],
) -> Vec<String> {
    let mut out = Vec::new();
    let idx: Vec<usize> = pr.filter.index.iter().copied().collect();
    let factor_states: Vec<Vec<State>> = match family
        .iter()
        .map(|m| stratification(logic, sig, m))
        .collect::<Result<Vec<_>>>()
    {
        Ok(s) => s,
        Err(e) => {
            out.push(format!("family model invalid: {e}"));
            return out;
        }
    };
    let mf_states: BTreeSet<State> = match stratification(logic, sig, &pr.model) {
        Ok(s) => s.into_iter().collect(),
        Err(e) => {
            out.push(format!("product model invalid: {e}"));
            return out;
        }
    };
    let jmin_decode = match pr.state_decodes.get(&pr.j_min) {
        Some(d) => d,
        None => {
            out.push("missing state decode for the minimal member".into());
            return out;
        }
    };
    for (jvec, prod) in &pr.products {
        // Projections are homomorphisms into the factors.
        if let Some(projs) = pr.projections.get(jvec) {
            for (j, h) in projs {
                let p = match idx.iter().position(|i| i == j) {
                    Some(p) => p,
                    None => {
                        out.push(format!("projection for unknown index element {j}"));
                        continue;
                    }
                };
                for v in validate_hom(logic, sig, h, prod, &family[p]) {
                    out.push(format!("projection {jvec:?}->{j}: {v}"));
                }
            }
        } else {
            out.push(format!("missing projections for member {jvec:?}"));
        }
        // The state decode is a bijection onto the tuples of factor states.
        let decode = match pr.state_decodes.get(jvec) {
            Some(d) => d,
            None => {
                out.push(format!("missing state decode for member {jvec:?}"));
                continue;
            }
        };
        let prod_states: BTreeSet<State> = match stratification(logic, sig, prod) {
            Ok(s) => s.into_iter().collect(),
            Err(e) => {
                out.push(format!("member product {jvec:?} invalid: {e}"));
                continue;
            }
        };
        let keys: BTreeSet<&State> = decode.keys().collect();
        if keys != prod_states.iter().collect() {
            out.push(format!("state decode domain for {jvec:?} is not states(M_J)"));
        }
        let expected: usize = jvec
            .iter()
            .map(|j| idx.iter().position(|i| i == j).map_or(0, |p| factor_states[p].len()))
            .product();
        let images: BTreeSet<&Vec<State>> = decode.values().collect();
        if images.len() != decode.len() || decode.len() != expected {
            out.push(format!(
                "state decode for {jvec:?} is not a bijection onto factor-state tuples"
            ));
        }
        // Colimit maps land in states(M_F) and agree with restriction of
        // the decoded tuple to the minimal member's coordinates.
        let cmap = match pr.colimit_maps.get(jvec) {
            Some(c) => c,
            None => {
                out.push(format!("missing colimit map for member {jvec:?}"));
                continue;
            }
        };
        for (k, parts) in decode {
            let w = match cmap.get(k) {
                Some(w) => w,
                None => {
                    out.push(format!("colimit map for {jvec:?} undefined at `{k}`"));
                    continue;
                }
            };
            if !mf_states.contains(w) {
                out.push(format!("colimit image `{w}` is not a state of the product"));
                continue;
            }
            let restricted: Vec<&State> = pr
                .j_min
                .iter()
                .filter_map(|j| jvec.iter().position(|i| i == j).map(|p| &parts[p]))
                .collect();
            match jmin_decode.get(w) {
                Some(wparts) => {
                    if wparts.iter().collect::<Vec<_>>() != restricted {
                        out.push(format!(
                            "colimit map for {jvec:?} at `{k}` is not the coordinate restriction"
                        ));
                    }
                }
                None => out.push(format!("colimit image `{w}` has no decode")),
            }
        }
    }
    out
}

/// Runs both preservation sub-suites: (a) every enumerated sentence against
/// every ultrafilter within bounds, both directions; (b) the positive
/// fragment (and its `@`/negation borderline cases) against all filters
/// over the largest index set, in the guaranteed directions only.
pub fn run_los_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let started = Instant::now();
    let mut report = SuiteReport::new("los", config);
    report.notes.push(
        "finite-satisfiability compactness of the global logic is not testable at this scale \
         (it quantifies over infinite sentence sets); a clean run of this suite certifies its \
         premise instead: preservation by ultraproducts and ultrafactors of every enumerated \
         sentence"
            .to_string(),
    );
    report.notes.push(
        "filters over a finite index set are principal, so each filtered product is computed \
         as the product over the intersection of the filter's members"
            .to_string(),
    );
    let logic = config.logic;
    let sig = minimal_signature(logic);
    let sentences = enumerate_sentences(logic, &sig, config.depth);
    let bounds = SizeBounds::new(config.max_worlds, config.max_carrier)?;

    // Sub-suite (a): ultrafilters over every index size, all sentences,
    // both directions.
    let families_per_size = 7u64;
    let mut case = 0u64;
    for size in 1..=config.max_index {
        let index: BTreeSet<usize> = (1..=size).collect();
        let ultrafilters = enumerate_ultrafilters(&index)?;
        for fam_i in 0..families_per_size {
            let case_id = case;
            case += 1;
            if !config.runs(case_id) || report.checks >= config.budget {
                continue;
            }
            let mut rng = case_rng(config.seed, case_id);
            let family: Vec<Model> = (0..size)
                .map(|_| random_model(logic, &sig, bounds, &mut rng))
                .collect::<Result<_>>()?;
            report.cases += 1;
            for uf in &ultrafilters {
                let pr = filtered_product(logic, &sig, uf, &family)?;
                for v in check_product_invariants(logic, &sig, &pr, &family) {
                    report.violate(
                        format!("ultrafilter case {case_id} size {size} family {fam_i}"),
                        format!("product invariant: {v}"),
                        repro_cmd("los", config, case_id),
                    );
                }
                for rho in &sentences {
                    let (prod, fact) = check_preservation(logic, &sig, &pr, &family, rho)?;
                    report.checks += 1;
                    if !(prod && fact) {
                        report.violate(
                            format!(
                                "ultrafilter case {case_id} size {size} family {fam_i} \
                                 generators {:?}",
                                uf.j_min()
                            ),
                            format!(
                                "sentence {} : preserved_by_products={prod} \
                                 preserved_by_factors={fact}, both expected true",
                                render_sentence(rho)
                            ),
                            repro_cmd("los", config, case_id),
                        );
                    }
                }
            }
        }
    }

    // Sub-suite (b): all filters over the largest index set, positive
    // fragment and its borderline wrappers, guaranteed directions only.
    let index: BTreeSet<usize> = (1..=config.max_index).collect();
    let filters = enumerate_filters(&index)?;
    let covered: Vec<(&Sentence, (bool, bool))> = sentences
        .iter()
        .filter_map(|s| general_filter_expectation(s).map(|e| (s, e)))
        .collect();
    for fam_i in 0..families_per_size {
        let case_id = case;
        case += 1;
        if !config.runs(case_id) || report.checks >= config.budget {
            continue;
        }
        let mut rng = case_rng(config.seed, case_id);
        let family: Vec<Model> = (0..config.max_index)
            .map(|_| random_model(logic, &sig, bounds, &mut rng))
            .collect::<Result<_>>()?;
        report.cases += 1;
        for f in &filters {
            let pr = filtered_product(logic, &sig, f, &family)?;
            let ultra = is_ultrafilter(f)?;
            for (rho, (want_prod, want_fact)) in &covered {
                let (prod, fact) = check_preservation(logic, &sig, &pr, &family, rho)?;
                report.checks += 1;
                if (*want_prod && !prod) || (*want_fact && !fact) {
                    report.violate(
                        format!(
                            "filter case {case_id} family {fam_i} generators {:?}",
                            f.j_min()
                        ),
                        format!(
                            "sentence {} : got products={prod} factors={fact}, \
                             expected products>={want_prod} factors>={want_fact}",
                            render_sentence(rho)
                        ),
                        repro_cmd("los", config, case_id),
                    );
                }
                // Factors-preservation of a sentence forces
                // products-preservation of its negation on any proper
                // filter; the converse needs an ultrafilter.
                let neg = Sentence::not((*rho).clone());
                let (nprod, nfact) = check_preservation(logic, &sig, &pr, &family, &neg)?;
                report.checks += 1;
                if fact && !nprod {
                    report.violate(
                        format!(
                            "filter case {case_id} family {fam_i} generators {:?}",
                            f.j_min()
                        ),
                        format!(
                            "sentence {} : preserved by factors, but its negation is \
                             not preserved by products",
                            render_sentence(rho)
                        ),
                        repro_cmd("los", config, case_id),
                    );
                }
                if ultra && prod && !nfact {
                    report.violate(
                        format!(
                            "filter case {case_id} family {fam_i} generators {:?}",
                            f.j_min()
                        ),
                        format!(
                            "sentence {} : preserved by products, but its negation is \
                             not preserved by factors of an ultrafilter",
                            render_sentence(rho)
                        ),
                        repro_cmd("los", config, case_id),
                    );
                }
            }
        }
    }
    report.elapsed_ms = started.elapsed().as_millis();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_fragment_recognizer() {
        use crate::model::fixtures::mpl_sig_pq;
        use crate::parse::parse_sentence;
        let sig = mpl_sig_pq();
        let pos = parse_sentence(LogicId::Mpl, &sig, "<> (p & q)").unwrap();
        assert!(is_positive(&pos));
        let neg = parse_sentence(LogicId::Mpl, &sig, "<> (p | q)").unwrap();
        assert!(!is_positive(&neg));
        assert_eq!(general_filter_expectation(&Sentence::not(pos)), Some((true, false)));
    }

    #[test]
    fn mpl_suite_is_clean_at_small_bounds() {
        let mut config = SuiteConfig::new(LogicId::Mpl, 11, 400);
        config.depth = 1;
        config.max_index = 2;
        let report = run_los_suite(&config).unwrap();
        assert!(report.passed(), "{}", report.render_text());
        assert!(report.checks > 0);
    }
}
