//! Canonical enumeration of models and sentences within size bounds.
//!
//! The model space for a logic and signature is indexed: every model within
//! bounds has a unique index, so exhaustive sweeps and uniform seeded
//! sampling share one decoder.

use crate::error::{Error, Result};
use crate::logic::LogicId;
use crate::model::{
    expected_relations, validate_model, FolModel, Frame, KripkeModel, Model, WorldBase,
};
use crate::sentence::{Layer, Sentence, Term};
use crate::signature::{SignatureDesc, DIST_MOD};
use std::collections::{BTreeMap, BTreeSet};

/// Size bounds for model enumeration.
#[derive(Debug, Clone, Copy)]
pub struct SizeBounds {
    pub max_worlds: usize,
    pub max_carrier: usize,
}

impl SizeBounds {
    pub fn new(max_worlds: usize, max_carrier: usize) -> Result<Self> {
        if max_worlds == 0 || max_carrier == 0 {
            return Err(Error::Bounds("bounds must be at least 1".into()));
        }
        Ok(SizeBounds { max_worlds, max_carrier })
    }
}

fn ids(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn all_tuples(items: &[String], len: usize) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * items.len());
        for t in &out {
            for item in items {
                let mut t2 = t.clone();
                t2.push(item.clone());
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

fn mask_subset(tuples: &[Vec<String>], mask: u128) -> BTreeSet<Vec<String>> {
    tuples
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1u128 << i) != 0)
        .map(|(_, t)| t.clone())
        .collect()
}

fn pow(base: u128, exp: usize) -> Result<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc
            .checked_mul(base)
            .ok_or_else(|| Error::Bounds("model space too large to index".into()))?;
    }
    Ok(acc)
}

/// A function table decoded from a single index: the k-th assignment of
/// carrier values to argument tuples.
fn table_from_index(
    carrier: &[String],
    arity: usize,
    mut k: u128,
) -> BTreeMap<Vec<String>, String> {
    let args = all_tuples(carrier, arity);
    let c = carrier.len() as u128;
    let mut table = BTreeMap::new();
    for a in args {
        table.insert(a, carrier[(k % c) as usize].clone());
        k /= c;
    }
    table
}

struct Digits<'a> {
    radices: &'a [u128],
    pos: usize,
    k: u128,
}

impl<'a> Digits<'a> {
    fn next(&mut self) -> u128 {
        let r = self.radices[self.pos];
        self.pos += 1;
        let d = self.k % r;
        self.k /= r;
        d
    }
}

struct Variant {
    n_worlds: usize,
    n_inner: usize,
    carrier: usize,
    radices: Vec<u128>,
    count: u128,
}

/// The indexed space of models for a logic and signature within bounds.
pub struct ModelSpace {
    logic: LogicId,
    sig: SignatureDesc,
    variants: Vec<Variant>,
}

fn kripke_radices(
    logic: LogicId,
    sig: &SignatureDesc,
    n: usize,
) -> Result<Vec<u128>> {
    let mut r = Vec::new();
    for (_, arity) in expected_relations(logic, sig) {
        r.push(pow(2, pow(n as u128, arity + 1)? as usize)?);
    }
    let noms = if logic.is_double_layered() { &sig.outer_nominals } else { &sig.nominals };
    if logic.has_frame_nominals() {
        for _ in noms {
            r.push(n as u128);
        }
    }
    Ok(r)
}

/// Builds the indexed model space.
pub fn model_space(logic: LogicId, sig: &SignatureDesc, bounds: SizeBounds) -> Result<ModelSpace> {
    crate::signature::validate_signature(logic, sig)?;
    let mut variants = Vec::new();
    let push = |variants: &mut Vec<Variant>, n_worlds, n_inner, carrier, radices: Vec<u128>| -> Result<()> {
        let mut count: u128 = 1;
        for r in &radices {
            count = count
                .checked_mul(*r)
                .ok_or_else(|| Error::Bounds("model space too large to index".into()))?;
        }
        variants.push(Variant { n_worlds, n_inner, carrier, radices, count });
        Ok(())
    };
    if logic.is_valuation_stratified() {
        for c in 1..=bounds.max_carrier {
            let mut r = Vec::new();
            for (_, arity) in &sig.funcs {
                r.push(pow(c as u128, pow(c as u128, *arity)? as usize)?);
            }
            for (_, arity) in &sig.preds {
                r.push(pow(2, pow(c as u128, *arity)? as usize)?);
            }
            push(&mut variants, 0, 0, c, r)?;
        }
    } else if logic == LogicId::Mfol {
        for n in 1..=bounds.max_worlds {
            for c in 1..=bounds.max_carrier {
                let mut r = kripke_radices(logic, sig, n)?;
                // Constants are shared across worlds; other interpretations
                // are per world.
                for (_, arity) in &sig.funcs {
                    if *arity == 0 {
                        r.push(c as u128);
                    }
                }
                for _ in 0..n {
                    for (_, arity) in &sig.funcs {
                        if *arity > 0 {
                            r.push(pow(c as u128, pow(c as u128, *arity)? as usize)?);
                        }
                    }
                    for (_, arity) in &sig.preds {
                        r.push(pow(2, pow(c as u128, *arity)? as usize)?);
                    }
                }
                push(&mut variants, n, 0, c, r)?;
            }
        }
    } else if logic.is_double_layered() {
        for n in 1..=bounds.max_worlds {
            for m in 1..=bounds.max_worlds {
                let mut r = kripke_radices(logic, sig, n)?;
                // Shared inner nominal interpretations.
                for _ in &sig.nominals {
                    r.push(m as u128);
                }
                for _ in 0..n {
                    // Inner accessibility is per outer world.
                    r.push(pow(2, pow(m as u128, 2)? as usize)?);
                    for _ in 0..m {
                        r.push(pow(2, sig.props.len())?);
                    }
                }
                push(&mut variants, n, m, 0, r)?;
            }
        }
    } else {
        for n in 1..=bounds.max_worlds {
            let mut r = kripke_radices(logic, sig, n)?;
            for _ in 0..n {
                r.push(pow(2, sig.props.len())?);
            }
            push(&mut variants, n, 0, 0, r)?;
        }
    }
    Ok(ModelSpace {
        logic,
        sig: sig.clone(),
        variants,
    })
}

impl ModelSpace {
    /// Number of raw indices (some may decode to models outside the logic's
    /// frame class; see `for_each_model`).
    pub fn total(&self) -> u128 {
        self.variants.iter().map(|v| v.count).sum()
    }

    fn decode_fol(&self, carrier: &[String], d: &mut Digits) -> FolModel {
        let mut funcs = BTreeMap::new();
        for (f, arity) in &self.sig.funcs {
            funcs.insert(f.clone(), table_from_index(carrier, *arity, d.next()));
        }
        let mut preds = BTreeMap::new();
        for (p, arity) in &self.sig.preds {
            let tuples = all_tuples(carrier, *arity);
            preds.insert(p.clone(), mask_subset(&tuples, d.next()));
        }
        FolModel {
            carrier: carrier.iter().cloned().collect(),
            funcs,
            preds,
        }
    }

    fn decode_frame(&self, worlds: &[String], d: &mut Digits) -> Frame {
        let mut relations = BTreeMap::new();
        for (l, arity) in expected_relations(self.logic, &self.sig) {
            let tuples = all_tuples(worlds, arity + 1);
            relations.insert(l, mask_subset(&tuples, d.next()));
        }
        let noms = if self.logic.is_double_layered() {
            &self.sig.outer_nominals
        } else {
            &self.sig.nominals
        };
        let mut nominal_interp = BTreeMap::new();
        if self.logic.has_frame_nominals() {
            for i in noms {
                nominal_interp.insert(i.clone(), worlds[d.next() as usize].clone());
            }
        }
        Frame {
            worlds: worlds.iter().cloned().collect(),
            relations,
            nominal_interp,
        }
    }

    /// Decodes the model at a raw index (`0 <= k < total()`).
    pub fn decode(&self, mut k: u128) -> Result<Model> {
        let v = self
            .variants
            .iter()
            .find(|v| {
                if k < v.count {
                    true
                } else {
                    k -= v.count;
                    false
                }
            })
            .ok_or_else(|| Error::Bounds("model index out of range".into()))?;
        let mut d = Digits { radices: &v.radices, pos: 0, k };
        if self.logic.is_valuation_stratified() {
            let carrier = ids(v.carrier);
            return Ok(Model::Fol(self.decode_fol(&carrier, &mut d)));
        }
        if self.logic == LogicId::Mfol {
            let worlds = ids(v.n_worlds);
            let carrier = ids(v.carrier);
            let frame = self.decode_frame(&worlds, &mut d);
            let constants: BTreeMap<&String, String> = self
                .sig
                .funcs
                .iter()
                .filter(|(_, a)| **a == 0)
                .map(|(f, _)| (f, carrier[d.next() as usize].clone()))
                .collect();
            let mut assignment = BTreeMap::new();
            for w in &worlds {
                let mut funcs = BTreeMap::new();
                for (f, arity) in &self.sig.funcs {
                    if *arity == 0 {
                        funcs.insert(f.clone(), [(vec![], constants[f].clone())].into());
                    } else {
                        funcs.insert(f.clone(), table_from_index(&carrier, *arity, d.next()));
                    }
                }
                let mut preds = BTreeMap::new();
                for (p, arity) in &self.sig.preds {
                    let tuples = all_tuples(&carrier, *arity);
                    preds.insert(p.clone(), mask_subset(&tuples, d.next()));
                }
                assignment.insert(
                    w.clone(),
                    WorldBase::Fol(FolModel {
                        carrier: carrier.iter().cloned().collect(),
                        funcs,
                        preds,
                    }),
                );
            }
            return Ok(Model::Kripke(KripkeModel { frame, assignment }));
        }
        if self.logic.is_double_layered() {
            let worlds = ids(v.n_worlds);
            let inner_worlds = ids(v.n_inner);
            let frame = self.decode_frame(&worlds, &mut d);
            let shared_noms: BTreeMap<String, String> = self
                .sig
                .nominals
                .iter()
                .map(|i| (i.clone(), inner_worlds[d.next() as usize].clone()))
                .collect();
            let mut assignment = BTreeMap::new();
            for w in &worlds {
                let tuples = all_tuples(&inner_worlds, 2);
                let inner_rel = mask_subset(&tuples, d.next());
                let mut inner_assignment = BTreeMap::new();
                for iw in &inner_worlds {
                    let props: Vec<String> = self.sig.props.iter().cloned().collect();
                    let mask = d.next();
                    inner_assignment.insert(
                        iw.clone(),
                        WorldBase::Props(
                            props
                                .iter()
                                .enumerate()
                                .filter(|(i, _)| mask & (1 << i) != 0)
                                .map(|(_, p)| p.clone())
                                .collect(),
                        ),
                    );
                }
                assignment.insert(
                    w.clone(),
                    WorldBase::Inner(KripkeModel {
                        frame: Frame {
                            worlds: inner_worlds.iter().cloned().collect(),
                            relations: [(DIST_MOD.to_string(), inner_rel)].into(),
                            nominal_interp: shared_noms.clone(),
                        },
                        assignment: inner_assignment,
                    }),
                );
            }
            return Ok(Model::Kripke(KripkeModel { frame, assignment }));
        }
        // Propositional Kripke logics.
        let worlds = ids(v.n_worlds);
        let frame = self.decode_frame(&worlds, &mut d);
        let props: Vec<String> = self.sig.props.iter().cloned().collect();
        let mut assignment = BTreeMap::new();
        for w in &worlds {
            let mask = d.next();
            assignment.insert(
                w.clone(),
                WorldBase::Props(
                    props
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, p)| p.clone())
                        .collect(),
                ),
            );
        }
        Ok(Model::Kripke(KripkeModel { frame, assignment }))
    }
}

/// Calls `f` on every valid model within bounds, in canonical order, up to
/// `budget` models; `f` returns `false` to stop early. Models outside the
/// logic's frame class are skipped. Returns the number of models visited.
pub fn for_each_model(
    logic: LogicId,
    sig: &SignatureDesc,
    bounds: SizeBounds,
    budget: u64,
    f: &mut dyn FnMut(&Model) -> bool,
) -> Result<u64> {
    let space = model_space(logic, sig, bounds)?;
    let mut visited = 0u64;
    let mut k: u128 = 0;
    let total = space.total();
    while k < total && visited < budget {
        let m = space.decode(k)?;
        k += 1;
        if !validate_model(logic, sig, &m, None).is_empty() {
            continue;
        }
        visited += 1;
        if !f(&m) {
            break;
        }
    }
    Ok(visited)
}

/// Canonical depth-bounded sentence enumeration. Binary connectives pair a
/// deeper sentence with an atom to keep the set small; quantifiers bind the
/// reserved names `q0`, `q1`, ... which signature generators never use.
pub fn enumerate_sentences(logic: LogicId, sig: &SignatureDesc, depth: usize) -> Vec<Sentence> {
    let mut bound_vars = Vec::new();
    let mut bound_noms = Vec::new();
    let set = enum_rec(logic, sig, depth, &mut bound_vars, &mut bound_noms);
    set.into_iter().collect()
}

/// Canonical enumeration of sentences that may mention the given bound
/// symbols, for building quantified sentences with occupied binders.
pub fn enumerate_open_sentences(
    logic: LogicId,
    sig: &SignatureDesc,
    depth: usize,
    bound_vars: &[String],
    bound_noms: &[(Layer, String)],
) -> Vec<Sentence> {
    let mut vars = bound_vars.to_vec();
    let mut noms = bound_noms.to_vec();
    enum_rec(logic, sig, depth, &mut vars, &mut noms)
        .into_iter()
        .collect()
}

fn atoms(
    logic: LogicId,
    sig: &SignatureDesc,
    bound_vars: &[String],
    bound_noms: &[(Layer, String)],
) -> BTreeSet<Sentence> {
    let mut out = BTreeSet::new();
    for p in &sig.props {
        out.insert(Sentence::Prop(p.clone()));
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
        for (p, arity) in &sig.preds {
            // One atom per uniform argument choice.
            for t in &terms {
                out.insert(Sentence::FolAtom(p.clone(), vec![t.clone(); *arity]));
            }
            if *arity == 0 {
                out.insert(Sentence::FolAtom(p.clone(), Vec::new()));
            }
        }
    }
    if logic.has_frame_nominals() {
        for i in &sig.nominals {
            let layer = if logic.is_double_layered() { 0 } else { 1 };
            out.insert(Sentence::Nom(layer, i.clone()));
        }
        for j in &sig.outer_nominals {
            out.insert(Sentence::Nom(1, j.clone()));
        }
    }
    if logic.has_constant_nominals() {
        for c in sig.constants() {
            out.insert(Sentence::Nom(1, c.clone()));
        }
    }
    for (layer, i) in bound_noms {
        out.insert(Sentence::Nom(*layer, i.clone()));
    }
    out
}

fn enum_rec(
    logic: LogicId,
    sig: &SignatureDesc,
    depth: usize,
    bound_vars: &mut Vec<String>,
    bound_noms: &mut Vec<(Layer, String)>,
) -> BTreeSet<Sentence> {
    let base = atoms(logic, sig, bound_vars, bound_noms);
    if depth == 0 {
        return base;
    }
    let prev = enum_rec(logic, sig, depth - 1, bound_vars, bound_noms);
    let caps = crate::logic::capabilities(logic);
    let mut out = prev.clone();
    for s in &prev {
        out.insert(Sentence::not(s.clone()));
        if logic.has_unary_modality() {
            out.insert(Sentence::Dia(1, Box::new(s.clone())));
            out.insert(Sentence::BoxM(1, Box::new(s.clone())));
            if logic.is_double_layered() {
                // Inner modalities take inner-only bodies.
                if sentence_is_inner_only(s) {
                    out.insert(Sentence::Dia(0, Box::new(s.clone())));
                    out.insert(Sentence::BoxM(0, Box::new(s.clone())));
                }
            }
        }
        for a in &base {
            out.insert(Sentence::and(s.clone(), a.clone()));
            out.insert(Sentence::or(s.clone(), a.clone()));
            out.insert(Sentence::implies(s.clone(), a.clone()));
        }
        if logic.has_signature_modalities() {
            for (l, arity) in &sig.modalities {
                let mut args = vec![s.clone()];
                if let Some(first) = base.iter().next() {
                    args.extend(std::iter::repeat(first.clone()).take(arity.saturating_sub(1)));
                }
                if args.len() == *arity {
                    out.insert(Sentence::PolyDia(l.clone(), args.clone()));
                    out.insert(Sentence::PolyBox(l.clone(), args));
                }
            }
        }
        if logic.has_predicate_modalities() {
            for (pi, arity) in &sig.preds {
                if *arity < 2 {
                    continue;
                }
                let want = arity - 1;
                let mut args = vec![s.clone()];
                if let Some(first) = base.iter().next() {
                    args.extend(std::iter::repeat(first.clone()).take(want.saturating_sub(1)));
                }
                if args.len() == want {
                    out.insert(Sentence::PolyDia(pi.clone(), args.clone()));
                    out.insert(Sentence::PolyBox(pi.clone(), args));
                }
            }
        }
        if caps.at {
            let mut names: Vec<(Layer, String)> = Vec::new();
            if logic.has_constant_nominals() {
                names.extend(sig.constants().map(|c| (1, c.clone())));
            } else if logic.is_double_layered() {
                names.extend(sig.outer_nominals.iter().map(|j| (1, j.clone())));
                if sentence_is_inner_only(s) {
                    names.extend(sig.nominals.iter().map(|i| (0, i.clone())));
                }
            } else {
                names.extend(sig.nominals.iter().map(|i| (1, i.clone())));
            }
            for (layer, i) in names {
                out.insert(Sentence::At(layer, i, Box::new(s.clone())));
            }
        }
    }
    if caps.exists_var {
        let x = format!("q{}", bound_vars.len() + bound_noms.len());
        bound_vars.push(x.clone());
        for body in enum_rec(logic, sig, depth - 1, bound_vars, bound_noms) {
            out.insert(Sentence::ExistsVar(x.clone(), Box::new(body.clone())));
            out.insert(Sentence::ForallVar(x.clone(), Box::new(body)));
        }
        bound_vars.pop();
    }
    if caps.exists_nom {
        let layers: &[Layer] = if logic.is_double_layered() { &[0, 1] } else { &[1] };
        for layer in layers {
            let i = format!("q{}", bound_vars.len() + bound_noms.len());
            bound_noms.push((*layer, i.clone()));
            for body in enum_rec(logic, sig, depth - 1, bound_vars, bound_noms) {
                out.insert(Sentence::ExistsNom(*layer, i.clone(), Box::new(body.clone())));
                out.insert(Sentence::ForallNom(*layer, i.clone(), Box::new(body)));
            }
            bound_noms.pop();
        }
    }
    out
}

/// True when every construct in the sentence is admissible under an inner
/// modality of the double-layered logic (no outer-layer nodes).
pub fn sentence_is_inner_only(s: &Sentence) -> bool {
    match s {
        Sentence::Prop(_) => true,
        Sentence::Nom(l, _) => *l == 0,
        Sentence::Dia(l, a) | Sentence::BoxM(l, a) | Sentence::At(l, _, a) => {
            *l == 0 && sentence_is_inner_only(a)
        }
        Sentence::Not(a) => sentence_is_inner_only(a),
        Sentence::And(a, b) | Sentence::Or(a, b) | Sentence::Implies(a, b) => {
            sentence_is_inner_only(a) && sentence_is_inner_only(b)
        }
        Sentence::ExistsNom(l, _, a) | Sentence::ForallNom(l, _, a) => {
            *l == 0 && sentence_is_inner_only(a)
        }
        Sentence::FolAtom(_, _)
        | Sentence::PolyDia(_, _)
        | Sentence::PolyBox(_, _)
        | Sentence::ExistsVar(_, _)
        | Sentence::ForallVar(_, _) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sentence::check_sentence;

    #[test]
    fn mpl_space_counts() {
        let sig = SignatureDesc {
            props: ["p".into()].into(),
            ..Default::default()
        };
        let space = model_space(LogicId::Mpl, &sig, SizeBounds::new(2, 1).unwrap()).unwrap();
        // 1 world: 2 relations x 2 valuations; 2 worlds: 2^4 x 2^2.
        assert_eq!(space.total(), 4 + 64);
        let mut n = 0u64;
        for_each_model(LogicId::Mpl, &sig, SizeBounds::new(2, 1).unwrap(), 10_000, &mut |_| {
            n += 1;
            true
        })
        .unwrap();
        assert_eq!(n, 68);
    }

    #[test]
    fn frame_class_filters_enumeration() {
        let sig = SignatureDesc {
            props: ["p".into()].into(),
            ..Default::default()
        };
        let mut reflexive = 0u64;
        for_each_model(LogicId::MplT, &sig, SizeBounds::new(2, 1).unwrap(), 10_000, &mut |m| {
            assert!(validate_model(LogicId::MplT, &sig, m, None).is_empty());
            reflexive += 1;
            true
        })
        .unwrap();
        // 1 world: 1 reflexive relation x 2 valuations; 2 worlds: 4 x 4.
        assert_eq!(reflexive, 2 + 16);
    }

    #[test]
    fn enumerated_sentences_are_well_formed() {
        for logic in crate::logic::ALL_LOGICS {
            let sig = crate::gen::minimal_signature(logic);
            let sentences = enumerate_sentences(logic, &sig, 2);
            assert!(!sentences.is_empty(), "no sentences for {logic}");
            for s in &sentences {
                check_sentence(logic, &sig, s)
                    .unwrap_or_else(|e| panic!("{logic}: {} -> {e}", crate::parse::render_sentence(s)));
            }
        }
    }

    #[test]
    fn ofol_space_decodes_valid_models() {
        let sig = SignatureDesc {
            funcs: [("c".into(), 0usize)].into(),
            preds: [("q".into(), 1usize)].into(),
            vars: ["x".into()].into(),
            ..Default::default()
        };
        let mut n = 0u64;
        for_each_model(LogicId::Ofol, &sig, SizeBounds::new(1, 2).unwrap(), 10_000, &mut |m| {
            assert!(validate_model(LogicId::Ofol, &sig, m, None).is_empty());
            n += 1;
            true
        })
        .unwrap();
        // carrier 1: 1 constant x 2 pred choices; carrier 2: 2 x 4.
        assert_eq!(n, 2 + 8);
    }
}
