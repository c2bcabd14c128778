//! Signature-change actions: sentence translation, model reducts, the state
//! map between their stratifications, and the satisfaction-condition check.

use crate::error::Result;
use crate::eval::satisfies;
use crate::logic::LogicId;
use crate::model::{
    ensure_valid, stratification, FolModel, Frame, KripkeModel, Model, State, WorldBase,
};
use crate::sentence::{Sentence, Term};
use crate::signature::{SignatureMorphism, DIST_MOD};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

fn translate_term(phi: &SignatureMorphism, t: &Term) -> Term {
    match t {
        Term::Var(x) => Term::Var(x.clone()),
        Term::App(f, args) => Term::App(
            phi.map_symbol(&phi.func_map, f).to_string(),
            args.iter().map(|a| translate_term(phi, a)).collect(),
        ),
    }
}

/// Structure-preserving symbol replacement. Bound symbols (absent from the
/// morphism's maps) are left unchanged; freshness at parse time keeps the
/// replacement capture-free.
pub fn translate_sentence(logic: LogicId, phi: &SignatureMorphism, s: &Sentence) -> Sentence {
    let nom = |layer: u8, i: &str| -> String {
        let map = if logic.has_constant_nominals() {
            &phi.func_map
        } else if logic.is_double_layered() && layer == 1 {
            &phi.outer_nominal_map
        } else {
            &phi.nominal_map
        };
        phi.map_symbol(map, i).to_string()
    };
    let modality = |l: &str| -> String {
        let map = if logic.has_predicate_modalities() {
            &phi.pred_map
        } else {
            &phi.modality_map
        };
        phi.map_symbol(map, l).to_string()
    };
    let go = |a: &Sentence| Box::new(translate_sentence(logic, phi, a));
    match s {
        Sentence::Prop(p) => Sentence::Prop(phi.map_symbol(&phi.prop_map, p).to_string()),
        Sentence::FolAtom(p, args) => Sentence::FolAtom(
            phi.map_symbol(&phi.pred_map, p).to_string(),
            args.iter().map(|a| translate_term(phi, a)).collect(),
        ),
        Sentence::Not(a) => Sentence::Not(go(a)),
        Sentence::And(a, b) => Sentence::And(go(a), go(b)),
        Sentence::Or(a, b) => Sentence::Or(go(a), go(b)),
        Sentence::Implies(a, b) => Sentence::Implies(go(a), go(b)),
        Sentence::Dia(l, a) => Sentence::Dia(*l, go(a)),
        Sentence::BoxM(l, a) => Sentence::BoxM(*l, go(a)),
        Sentence::PolyDia(l, args) => Sentence::PolyDia(
            modality(l),
            args.iter().map(|a| translate_sentence(logic, phi, a)).collect(),
        ),
        Sentence::PolyBox(l, args) => Sentence::PolyBox(
            modality(l),
            args.iter().map(|a| translate_sentence(logic, phi, a)).collect(),
        ),
        Sentence::Nom(l, i) => Sentence::Nom(*l, nom(*l, i)),
        Sentence::At(l, i, a) => Sentence::At(*l, nom(*l, i), go(a)),
        Sentence::ExistsVar(x, a) => Sentence::ExistsVar(x.clone(), go(a)),
        Sentence::ForallVar(x, a) => Sentence::ForallVar(x.clone(), go(a)),
        Sentence::ExistsNom(l, i, a) => Sentence::ExistsNom(*l, i.clone(), go(a)),
        Sentence::ForallNom(l, i, a) => Sentence::ForallNom(*l, i.clone(), go(a)),
    }
}

fn reduct_fol(phi: &SignatureMorphism, m: &FolModel) -> FolModel {
    FolModel {
        carrier: m.carrier.clone(),
        funcs: phi
            .source
            .funcs
            .keys()
            .filter_map(|f| {
                let tf = phi.map_symbol(&phi.func_map, f);
                m.funcs.get(tf).map(|t| (f.clone(), t.clone()))
            })
            .collect(),
        preds: phi
            .source
            .preds
            .keys()
            .filter_map(|p| {
                let tp = phi.map_symbol(&phi.pred_map, p);
                m.preds.get(tp).map(|t| (p.clone(), t.clone()))
            })
            .collect(),
    }
}

fn reduct_frame(
    logic: LogicId,
    phi: &SignatureMorphism,
    frame: &Frame,
    outer: bool,
) -> Frame {
    let mut relations = BTreeMap::new();
    if let Some(r) = frame.relations.get(DIST_MOD) {
        relations.insert(DIST_MOD.to_string(), r.clone());
    }
    if logic.has_signature_modalities() {
        for l in phi.source.modalities.keys() {
            let tl = phi.map_symbol(&phi.modality_map, l);
            if let Some(r) = frame.relations.get(tl) {
                relations.insert(l.clone(), r.clone());
            }
        }
    }
    let (noms, map) = if logic.is_double_layered() && outer {
        (&phi.source.outer_nominals, &phi.outer_nominal_map)
    } else {
        (&phi.source.nominals, &phi.nominal_map)
    };
    let nominal_interp = noms
        .iter()
        .filter_map(|i| {
            let ti = phi.map_symbol(map, i);
            frame.nominal_interp.get(ti).map(|w| (i.clone(), w.clone()))
        })
        .collect();
    Frame {
        worlds: frame.worlds.clone(),
        relations,
        nominal_interp,
    }
}

/// The reduct of a target-signature model along `phi`: same worlds/carrier,
/// each source symbol interpreted as the target's interpretation of its
/// image; the valuation-stratified logics additionally forget variables at
/// the stratification level (handled in `state_map`).
pub fn reduct_model(logic: LogicId, phi: &SignatureMorphism, model: &Model) -> Result<Model> {
    ensure_valid(logic, &phi.target, model)?;
    let reduced = match model {
        Model::Fol(m) => Model::Fol(reduct_fol(phi, m)),
        Model::Kripke(k) => {
            let assignment = k
                .assignment
                .iter()
                .map(|(w, base)| {
                    let nb = match base {
                        WorldBase::Props(p) => WorldBase::Props(
                            phi.source
                                .props
                                .iter()
                                .filter(|q| p.contains(phi.map_symbol(&phi.prop_map, q)))
                                .cloned()
                                .collect(),
                        ),
                        WorldBase::Fol(m) => WorldBase::Fol(reduct_fol(phi, m)),
                        WorldBase::Inner(inner) => WorldBase::Inner(KripkeModel {
                            frame: reduct_frame(logic, phi, &inner.frame, false),
                            assignment: inner
                                .assignment
                                .iter()
                                .map(|(v, b)| {
                                    let nb = match b {
                                        WorldBase::Props(p) => WorldBase::Props(
                                            phi.source
                                                .props
                                                .iter()
                                                .filter(|q| {
                                                    p.contains(phi.map_symbol(&phi.prop_map, q))
                                                })
                                                .cloned()
                                                .collect(),
                                        ),
                                        other => other.clone(),
                                    };
                                    (v.clone(), nb)
                                })
                                .collect(),
                        }),
                    };
                    (w.clone(), nb)
                })
                .collect();
            Model::Kripke(KripkeModel {
                frame: reduct_frame(logic, phi, &k.frame, true),
                assignment,
            })
        }
    };
    ensure_valid(logic, &phi.source, &reduced)?;
    Ok(reduced)
}

/// The stratification map of `phi` at `model`: identity for world-stratified
/// logics, restriction of the valuation to the source variable block for the
/// valuation-stratified ones.
pub fn state_map(
    _logic: LogicId,
    phi: &SignatureMorphism,
    _model: &Model,
    state: &State,
) -> State {
    match state {
        State::World(w) => State::World(w.clone()),
        State::Valuation(v) => State::Valuation(
            v.iter()
                .filter(|(x, _)| phi.source.vars.contains(*x))
                .map(|(x, a)| (x.clone(), a.clone()))
                .collect(),
        ),
    }
}

/// One entry per state where the two sides of the satisfaction condition
/// disagree (expected: none).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SatCondMismatch {
    pub state: String,
    pub reduct_side: bool,
    pub translated_side: bool,
}

/// Evaluates, at every state of `model`, both sides of the satisfaction
/// condition for `sentence` (a source-signature sentence) and reports the
/// states where they differ.
pub fn check_satisfaction_condition(
    logic: LogicId,
    phi: &SignatureMorphism,
    model: &Model,
    sentence: &Sentence,
) -> Result<Vec<SatCondMismatch>> {
    let reduct = reduct_model(logic, phi, model)?;
    let translated = translate_sentence(logic, phi, sentence);
    let mut out = Vec::new();
    for state in stratification(logic, &phi.target, model)? {
        let mapped = state_map(logic, phi, model, &state);
        let lhs = satisfies(logic, &phi.source, &reduct, &mapped, sentence)?;
        let rhs = satisfies(logic, &phi.target, model, &state, &translated)?;
        if lhs != rhs {
            out.push(SatCondMismatch {
                state: state.to_string(),
                reduct_side: lhs,
                translated_side: rhs,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::{k1, mpl_sig_pq};
    use crate::signature::SignatureDesc;

    #[test]
    fn reduct_reinterprets_along_the_map() {
        let src = SignatureDesc {
            props: ["p".into()].into(),
            ..Default::default()
        };
        let phi = SignatureMorphism {
            source: src,
            target: mpl_sig_pq(),
            prop_map: [("p".into(), "q".into())].into(),
            ..Default::default()
        };
        // In k1, q holds nowhere, so the reduct has p holding nowhere.
        let r = reduct_model(LogicId::Mpl, &phi, &k1()).unwrap();
        let k = r.as_kripke().unwrap();
        assert!(k.props_at("0").unwrap().is_empty());
        assert!(k.props_at("1").unwrap().is_empty());
    }

    #[test]
    fn satisfaction_condition_on_k1() {
        let src = SignatureDesc {
            props: ["p".into()].into(),
            ..Default::default()
        };
        let phi = SignatureMorphism {
            source: src.clone(),
            target: mpl_sig_pq(),
            prop_map: [("p".into(), "q".into())].into(),
            ..Default::default()
        };
        let rho = Sentence::dia(Sentence::Prop("p".into()));
        let mismatches = check_satisfaction_condition(LogicId::Mpl, &phi, &k1(), &rho).unwrap();
        assert!(mismatches.is_empty());
    }

    #[test]
    fn ofol_state_map_restricts() {
        let src = SignatureDesc {
            preds: [("q".into(), 1usize)].into(),
            vars: ["x".into()].into(),
            ..Default::default()
        };
        let tgt = SignatureDesc {
            preds: [("q".into(), 1usize)].into(),
            vars: ["x".into(), "y".into()].into(),
            ..Default::default()
        };
        let phi = SignatureMorphism {
            source: src,
            target: tgt,
            pred_map: [("q".into(), "q".into())].into(),
            ..Default::default()
        };
        let m = Model::Fol(FolModel {
            carrier: ["0".into(), "1".into()].into(),
            preds: [("q".into(), [vec!["1".to_string()]].into())].into(),
            ..Default::default()
        });
        let st = State::Valuation(
            [("x".to_string(), "0".to_string()), ("y".to_string(), "1".to_string())].into(),
        );
        let mapped = state_map(LogicId::Ofol, &phi, &m, &st);
        assert_eq!(
            mapped,
            State::Valuation([("x".to_string(), "0".to_string())].into())
        );
        // Proper lax case: the satisfaction condition still holds.
        let rho = Sentence::FolAtom("q".into(), vec![Term::Var("x".into())]);
        let mismatches = check_satisfaction_condition(LogicId::Ofol, &phi, &m, &rho).unwrap();
        assert!(mismatches.is_empty());
    }
}
