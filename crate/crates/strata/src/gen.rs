//! Seeded random generation of signatures, models, sentences, signature
//! morphisms and renamings. All generators are deterministic functions of
//! the supplied RNG, so runs are reproducible from a seed.

use crate::enumerate::{model_space, sentence_is_inner_only, SizeBounds};
use crate::error::{Error, Result};
use crate::logic::{capabilities, LogicId};
use crate::model::{validate_model, Model, Renaming};
use crate::sentence::{Layer, Sentence, Term};
use crate::signature::{SignatureDesc, SignatureMorphism};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

/// A deterministic RNG for case `index` of a run with the given seed.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// The smallest signature that exercises every construct of the logic.
pub fn minimal_signature(logic: LogicId) -> SignatureDesc {
    let mut sig = SignatureDesc::default();
    if logic.has_props() {
        sig.props = ["p".into(), "q".into()].into();
    }
    if logic.has_signature_modalities() {
        sig.modalities = [("l".into(), 2usize)].into();
    }
    if logic.has_frame_nominals() {
        if logic.is_double_layered() {
            sig.nominals = ["i".into()].into();
            sig.outer_nominals = ["j".into()].into();
        } else {
            sig.nominals = ["i".into()].into();
        }
    }
    if logic.has_fol() {
        sig.funcs = [("c".into(), 0usize)].into();
        sig.preds = [("r".into(), 1usize)].into();
        if logic.has_predicate_modalities() {
            sig.preds.insert("s".into(), 2);
        }
    }
    if logic.is_valuation_stratified() {
        sig.vars = ["x".into()].into();
    }
    sig
}

/// A random signature: the minimal one, sometimes enlarged with extra
/// symbols so generated instances are not all alike.
pub fn random_signature(logic: LogicId, rng: &mut ChaCha8Rng) -> SignatureDesc {
    let mut sig = minimal_signature(logic);
    if logic.has_props() && rng.gen_bool(0.5) {
        sig.props.insert("t".into());
    }
    if logic.has_signature_modalities() && rng.gen_bool(0.5) {
        sig.modalities.insert("m".into(), 1);
    }
    if logic.has_frame_nominals() && !logic.is_double_layered() && rng.gen_bool(0.5) {
        sig.nominals.insert("k".into());
    }
    if logic.has_fol() {
        if rng.gen_bool(0.5) {
            sig.funcs.insert("f".into(), 1);
        }
        if rng.gen_bool(0.3) {
            sig.funcs.insert("d".into(), 0);
        }
    }
    if logic.is_valuation_stratified() && rng.gen_bool(0.4) {
        sig.vars.insert("y".into());
    }
    sig
}

/// A uniformly random valid model within bounds.
pub fn random_model(
    logic: LogicId,
    sig: &SignatureDesc,
    bounds: SizeBounds,
    rng: &mut ChaCha8Rng,
) -> Result<Model> {
    let space = model_space(logic, sig, bounds)?;
    let total = space.total();
    if total == 0 {
        return Err(Error::Bounds("empty model space".into()));
    }
    // Rejection-sample the frame class; small frames are dense enough that
    // this converges fast for every logic in the roster.
    for _ in 0..100_000 {
        let k = rng.gen_range(0..total);
        let m = space.decode(k)?;
        if validate_model(logic, sig, &m, None).is_empty() {
            return Ok(m);
        }
    }
    Err(Error::Bounds("could not sample a valid model".into()))
}

fn pick<'a, T>(items: &'a [T], rng: &mut ChaCha8Rng) -> Option<&'a T> {
    items.choose(rng)
}

fn random_atom(
    logic: LogicId,
    sig: &SignatureDesc,
    bound_vars: &[String],
    bound_noms: &[(Layer, String)],
    rng: &mut ChaCha8Rng,
) -> Sentence {
    let mut choices: Vec<Sentence> = Vec::new();
    for p in &sig.props {
        choices.push(Sentence::Prop(p.clone()));
    }
    if logic.has_fol() {
        let mut terms: Vec<Term> = sig
            .vars
            .iter()
            .chain(bound_vars.iter())
            .map(|x| Term::Var(x.clone()))
            .collect();
        for c in sig.constants() {
            terms.push(Term::App(c.clone(), Vec::new()));
        }
        let unary: Vec<&String> = sig
            .funcs
            .iter()
            .filter(|(_, a)| **a == 1)
            .map(|(f, _)| f)
            .collect();
        for (p, arity) in &sig.preds {
            let mut args = Vec::new();
            for _ in 0..*arity {
                let mut t = pick(&terms, rng).cloned().unwrap_or(Term::App(
                    sig.constants().next().cloned().unwrap_or_default(),
                    Vec::new(),
                ));
                if !unary.is_empty() && rng.gen_bool(0.3) {
                    t = Term::App((*pick(&unary, rng).unwrap()).clone(), vec![t]);
                }
                args.push(t);
            }
            choices.push(Sentence::FolAtom(p.clone(), args));
        }
    }
    if logic.has_frame_nominals() {
        let inner_layer = if logic.is_double_layered() { 0 } else { 1 };
        for i in &sig.nominals {
            choices.push(Sentence::Nom(inner_layer, i.clone()));
        }
        for j in &sig.outer_nominals {
            choices.push(Sentence::Nom(1, j.clone()));
        }
    }
    if logic.has_constant_nominals() {
        for c in sig.constants() {
            choices.push(Sentence::Nom(1, c.clone()));
        }
    }
    for (layer, i) in bound_noms {
        choices.push(Sentence::Nom(*layer, i.clone()));
    }
    choices
        .choose(rng)
        .cloned()
        .unwrap_or_else(|| Sentence::Prop("p".into()))
}

/// A random well-formed sentence of at most the given connective depth.
pub fn random_sentence(
    logic: LogicId,
    sig: &SignatureDesc,
    depth: usize,
    rng: &mut ChaCha8Rng,
) -> Sentence {
    let mut bound_vars = Vec::new();
    let mut bound_noms = Vec::new();
    rand_rec(logic, sig, depth, false, &mut bound_vars, &mut bound_noms, rng)
}

#[allow(clippy::too_many_arguments)]
fn rand_rec(
    logic: LogicId,
    sig: &SignatureDesc,
    depth: usize,
    inner_only: bool,
    bound_vars: &mut Vec<String>,
    bound_noms: &mut Vec<(Layer, String)>,
    rng: &mut ChaCha8Rng,
) -> Sentence {
    let atom_now = depth == 0 || rng.gen_bool(0.25);
    if atom_now {
        loop {
            let a = random_atom(logic, sig, bound_vars, bound_noms, rng);
            if !inner_only || sentence_is_inner_only(&a) {
                return a;
            }
        }
    }
    let caps = capabilities(logic);
    #[derive(Clone, Copy)]
    enum Kind {
        Not,
        And,
        Or,
        Implies,
        Dia(Layer),
        BoxM(Layer),
        Poly,
        At,
        ExVar,
        AllVar,
        ExNom(Layer),
        AllNom(Layer),
    }
    let mut kinds = vec![Kind::Not, Kind::And, Kind::Or, Kind::Implies];
    if caps.diamond && logic.has_unary_modality() {
        if !inner_only && !logic.is_double_layered() {
            kinds.push(Kind::Dia(1));
            kinds.push(Kind::BoxM(1));
        }
        if logic.is_double_layered() {
            if !inner_only {
                kinds.push(Kind::Dia(1));
                kinds.push(Kind::BoxM(1));
            }
            kinds.push(Kind::Dia(0));
            kinds.push(Kind::BoxM(0));
        }
    }
    if logic.has_signature_modalities() || logic.has_predicate_modalities() {
        kinds.push(Kind::Poly);
    }
    if caps.at {
        kinds.push(Kind::At);
    }
    if caps.exists_var && !inner_only {
        kinds.push(Kind::ExVar);
        kinds.push(Kind::AllVar);
    }
    if caps.exists_nom {
        if logic.is_double_layered() {
            kinds.push(Kind::ExNom(0));
            kinds.push(Kind::AllNom(0));
            if !inner_only {
                kinds.push(Kind::ExNom(1));
                kinds.push(Kind::AllNom(1));
            }
        } else {
            kinds.push(Kind::ExNom(1));
            kinds.push(Kind::AllNom(1));
        }
    }
    let kind = *kinds.choose(rng).unwrap();
    let d = depth - 1;
    match kind {
        Kind::Not => Sentence::not(rand_rec(logic, sig, d, inner_only, bound_vars, bound_noms, rng)),
        Kind::And => Sentence::and(
            rand_rec(logic, sig, d, inner_only, bound_vars, bound_noms, rng),
            rand_rec(logic, sig, d, inner_only, bound_vars, bound_noms, rng),
        ),
        Kind::Or => Sentence::or(
            rand_rec(logic, sig, d, inner_only, bound_vars, bound_noms, rng),
            rand_rec(logic, sig, d, inner_only, bound_vars, bound_noms, rng),
        ),
        Kind::Implies => Sentence::implies(
            rand_rec(logic, sig, d, inner_only, bound_vars, bound_noms, rng),
            rand_rec(logic, sig, d, inner_only, bound_vars, bound_noms, rng),
        ),
        Kind::Dia(layer) => {
            let strict = inner_only || layer == 0 && logic.is_double_layered();
            Sentence::Dia(
                layer,
                Box::new(rand_rec(logic, sig, d, strict, bound_vars, bound_noms, rng)),
            )
        }
        Kind::BoxM(layer) => {
            let strict = inner_only || layer == 0 && logic.is_double_layered();
            Sentence::BoxM(
                layer,
                Box::new(rand_rec(logic, sig, d, strict, bound_vars, bound_noms, rng)),
            )
        }
        Kind::Poly => {
            let fams: Vec<(String, usize)> = if logic.has_signature_modalities() {
                sig.modalities.iter().map(|(l, n)| (l.clone(), *n)).collect()
            } else {
                sig.preds
                    .iter()
                    .filter(|(_, n)| **n >= 2)
                    .map(|(p, n)| (p.clone(), n - 1))
                    .collect()
            };
            match fams.choose(rng) {
                Some((l, n)) => {
                    let args = (0..*n)
                        .map(|_| rand_rec(logic, sig, d, inner_only, bound_vars, bound_noms, rng))
                        .collect();
                    if rng.gen_bool(0.5) {
                        Sentence::PolyDia(l.clone(), args)
                    } else {
                        Sentence::PolyBox(l.clone(), args)
                    }
                }
                None => rand_rec(logic, sig, d, inner_only, bound_vars, bound_noms, rng),
            }
        }
        Kind::At => {
            let mut names: Vec<(Layer, String)> = Vec::new();
            if logic.has_constant_nominals() {
                names.extend(sig.constants().map(|c| (1, c.clone())));
            } else if logic.is_double_layered() {
                names.extend(sig.nominals.iter().map(|i| (0, i.clone())));
                if !inner_only {
                    names.extend(sig.outer_nominals.iter().map(|j| (1, j.clone())));
                }
            } else {
                names.extend(sig.nominals.iter().map(|i| (1, i.clone())));
            }
            names.extend(bound_noms.iter().filter(|(l, _)| !inner_only || *l == 0).cloned());
            match names.choose(rng) {
                Some((layer, i)) => {
                    let strict = inner_only || *layer == 0 && logic.is_double_layered();
                    Sentence::At(
                        *layer,
                        i.clone(),
                        Box::new(rand_rec(logic, sig, d, strict, bound_vars, bound_noms, rng)),
                    )
                }
                None => rand_rec(logic, sig, d, inner_only, bound_vars, bound_noms, rng),
            }
        }
        Kind::ExVar | Kind::AllVar => {
            let x = format!("q{}", bound_vars.len() + bound_noms.len());
            bound_vars.push(x.clone());
            let body = rand_rec(logic, sig, d, inner_only, bound_vars, bound_noms, rng);
            bound_vars.pop();
            if matches!(kind, Kind::ExVar) {
                Sentence::ExistsVar(x, Box::new(body))
            } else {
                Sentence::ForallVar(x, Box::new(body))
            }
        }
        Kind::ExNom(layer) | Kind::AllNom(layer) => {
            let i = format!("q{}", bound_vars.len() + bound_noms.len());
            bound_noms.push((layer, i.clone()));
            let body = rand_rec(logic, sig, d, inner_only, bound_vars, bound_noms, rng);
            bound_noms.pop();
            if matches!(kind, Kind::ExNom(_)) {
                Sentence::ExistsNom(layer, i, Box::new(body))
            } else {
                Sentence::ForallNom(layer, i, Box::new(body))
            }
        }
    }
}

fn primed_map(names: &BTreeSet<String>, rename: bool) -> BTreeMap<String, String> {
    names
        .iter()
        .map(|n| {
            let t = if rename { format!("{n}_t") } else { n.clone() };
            (n.clone(), t)
        })
        .collect()
}

/// A random signature morphism out of `source`: each symbol is mapped to
/// itself or a primed copy, and the target may carry extra symbols so the
/// morphism is not surjective.
pub fn random_morphism(
    logic: LogicId,
    source: &SignatureDesc,
    rng: &mut ChaCha8Rng,
) -> SignatureMorphism {
    let rename = rng.gen_bool(0.5);
    let extra = rng.gen_bool(0.5);
    let prop_map = primed_map(&source.props, rename);
    let nominal_map = primed_map(&source.nominals, rename);
    let outer_nominal_map = primed_map(&source.outer_nominals, rename);
    let modality_map: BTreeMap<String, String> = source
        .modalities
        .keys()
        .map(|l| (l.clone(), if rename { format!("{l}_t") } else { l.clone() }))
        .collect();
    let func_map: BTreeMap<String, String> = source
        .funcs
        .keys()
        .map(|f| (f.clone(), if rename { format!("{f}_t") } else { f.clone() }))
        .collect();
    let pred_map: BTreeMap<String, String> = source
        .preds
        .keys()
        .map(|p| (p.clone(), if rename { format!("{p}_t") } else { p.clone() }))
        .collect();
    let mut target = SignatureDesc {
        props: prop_map.values().cloned().collect(),
        nominals: nominal_map.values().cloned().collect(),
        outer_nominals: outer_nominal_map.values().cloned().collect(),
        modalities: source
            .modalities
            .iter()
            .map(|(l, n)| (modality_map[l].clone(), *n))
            .collect(),
        funcs: source
            .funcs
            .iter()
            .map(|(f, n)| (func_map[f].clone(), *n))
            .collect(),
        preds: source
            .preds
            .iter()
            .map(|(p, n)| (pred_map[p].clone(), *n))
            .collect(),
        vars: source.vars.clone(),
    };
    if extra {
        if logic.has_props() {
            target.props.insert("zz".into());
        }
        if logic.has_frame_nominals() && !logic.is_double_layered() {
            target.nominals.insert("zz".into());
        }
        if logic.has_fol() {
            target.funcs.insert("zz".into(), 0);
        }
        if logic == LogicId::Ofol && rng.gen_bool(0.5) {
            // A proper variable extension: reducts restrict valuations, so
            // the state map is surjective but not injective. Only the plain
            // open first-order logic supports these — the clauses that
            // evaluate through the variable-block power (constant nominals,
            // predicate modalities) are not invariant under extending the
            // block, so for those logics morphisms keep the block fixed.
            target.vars.insert("zv".into());
        }
    }
    SignatureMorphism {
        source: source.clone(),
        target,
        prop_map,
        nominal_map,
        outer_nominal_map,
        modality_map,
        func_map,
        pred_map,
    }
}

fn random_perm(items: &BTreeSet<String>, fresh: bool, rng: &mut ChaCha8Rng) -> BTreeMap<String, String> {
    let from: Vec<&String> = items.iter().collect();
    let mut to: Vec<String> = if fresh {
        (0..from.len()).map(|i| format!("e{i}")).collect()
    } else {
        items.iter().cloned().collect()
    };
    to.shuffle(rng);
    from.into_iter().cloned().zip(to).collect()
}

/// A random isomorphism out of the model: a bijective renaming of its
/// worlds, carrier elements and inner worlds, sometimes onto fresh names.
pub fn random_renaming(model: &Model, rng: &mut ChaCha8Rng) -> Renaming {
    let fresh = rng.gen_bool(0.5);
    match model {
        Model::Fol(m) => Renaming {
            carrier: random_perm(&m.carrier, fresh, rng),
            ..Default::default()
        },
        Model::Kripke(k) => {
            let worlds = random_perm(&k.frame.worlds, fresh, rng);
            let carrier = k
                .assignment
                .values()
                .find_map(|b| b.as_fol_ref())
                .map(|m| random_perm(&m.carrier, fresh, rng))
                .unwrap_or_default();
            let inner_worlds = k
                .assignment
                .values()
                .find_map(|b| b.as_inner_ref())
                .map(|inner| random_perm(&inner.frame.worlds, fresh, rng))
                .unwrap_or_default();
            Renaming { worlds, carrier, inner_worlds }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::apply_iso;
    use crate::sentence::check_sentence;
    use crate::signature::{validate_morphism, validate_signature};
    use rand::SeedableRng;

    #[test]
    fn minimal_signatures_validate() {
        for logic in crate::logic::ALL_LOGICS {
            validate_signature(logic, &minimal_signature(logic)).unwrap();
        }
    }

    #[test]
    fn random_artifacts_are_well_formed() {
        for logic in crate::logic::ALL_LOGICS {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..20 {
                let sig = random_signature(logic, &mut rng);
                validate_signature(logic, &sig).unwrap();
                let m = random_model(logic, &sig, SizeBounds::new(2, 2).unwrap(), &mut rng).unwrap();
                let s = random_sentence(logic, &sig, 3, &mut rng);
                check_sentence(logic, &sig, &s).unwrap_or_else(|e| {
                    panic!("{logic}: {} -> {e}", crate::parse::render_sentence(&s))
                });
                let phi = random_morphism(logic, &sig, &mut rng);
                validate_morphism(logic, &phi).unwrap();
                let r = random_renaming(&m, &mut rng);
                let m2 = apply_iso(logic, &sig, &m, &r).unwrap();
                let back = apply_iso(logic, &sig, &m2, &r.inverse()).unwrap();
                assert_eq!(m, back);
            }
        }
    }
}
