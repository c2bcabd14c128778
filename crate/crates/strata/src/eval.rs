//! State-parameterized satisfaction for every logic instance.
//!
//! Quantifiers and bound nominals are evaluated through an environment of
//! bindings rather than by materializing expanded models; `expand` provides
//! the model-level route, and the two are cross-checked by the verification
//! suites.

use crate::error::{Error, Result};
use crate::logic::LogicId;
use crate::model::{ensure_valid, stratification, FolModel, KripkeModel, Model, State};
use crate::sentence::{check_sentence, Sentence, Term};
use crate::signature::{SignatureDesc, DIST_MOD};
use std::collections::{BTreeMap, BTreeSet};

/// Bindings introduced by quantifiers during evaluation.
#[derive(Debug, Clone, Default)]
struct Env {
    /// Bound first-order variables (world-sharing logics only; the
    /// valuation-stratified logics extend the state itself instead).
    vars: BTreeMap<String, String>,
    /// Bound nominals: world ids, inner world ids, or carrier elements.
    noms: BTreeMap<String, String>,
}

/// `model ⊨^state sentence`, by the recursive satisfaction clauses of the
/// logic instance.
pub fn satisfies(
    logic: LogicId,
    sig: &SignatureDesc,
    model: &Model,
    state: &State,
    sentence: &Sentence,
) -> Result<bool> {
    ensure_valid(logic, sig, model)?;
    check_sentence(logic, sig, sentence)?;
    let states = stratification(logic, sig, model)?;
    if !states.contains(state) {
        return Err(Error::State(format!(
            "state `{state}` is not in the model's stratification"
        )));
    }
    let mut env = Env::default();
    match model {
        Model::Kripke(k) => eval_kripke(logic, sig, k, state.as_world()?, None, &mut env, sentence),
        Model::Fol(m) => eval_valuation(logic, sig, m, state.as_valuation()?, &mut env, sentence),
    }
}

/// Like `satisfies`, but assumes the model, sentence, and state are already
/// validated. The verification suites validate their inputs once and then
/// evaluate many (state, sentence) pairs through this entry point.
pub fn satisfies_unchecked(
    logic: LogicId,
    sig: &SignatureDesc,
    model: &Model,
    state: &State,
    sentence: &Sentence,
) -> Result<bool> {
    let mut env = Env::default();
    match model {
        Model::Kripke(k) => eval_kripke(logic, sig, k, state.as_world()?, None, &mut env, sentence),
        Model::Fol(m) => eval_valuation(logic, sig, m, state.as_valuation()?, &mut env, sentence),
    }
}

/// `model ⊨* sentence`: satisfaction at every state.
pub fn satisfies_global(
    logic: LogicId,
    sig: &SignatureDesc,
    model: &Model,
    sentence: &Sentence,
) -> Result<bool> {
    crate::model::ensure_valid(logic, sig, model)?;
    check_sentence(logic, sig, sentence)?;
    for state in stratification(logic, sig, model)? {
        if !satisfies_unchecked(logic, sig, model, &state, sentence)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn missing(what: &str) -> Error {
    Error::Model(format!("model is missing {what}"))
}

fn eval_term(m: &FolModel, valuation: &BTreeMap<String, String>, t: &Term) -> Result<String> {
    match t {
        Term::Var(x) => valuation
            .get(x)
            .cloned()
            .ok_or_else(|| Error::Sentence(format!("unbound variable `{x}`"))),
        Term::App(f, args) => {
            let vals: Vec<String> = args
                .iter()
                .map(|a| eval_term(m, valuation, a))
                .collect::<Result<_>>()?;
            m.funcs
                .get(f)
                .and_then(|t| t.get(&vals))
                .cloned()
                .ok_or_else(|| missing(&format!("function table entry for `{f}`")))
        }
    }
}

/// Evaluation over Kripke models. `u` is the (outer) world; `inner` is the
/// current inner world once an inner-layer modality or `@` has been entered
/// (double-layered logic only).
fn eval_kripke(
    logic: LogicId,
    sig: &SignatureDesc,
    k: &KripkeModel,
    u: &str,
    inner: Option<&str>,
    env: &mut Env,
    s: &Sentence,
) -> Result<bool> {
    // In the double-layered logic an inner-layer construct reached in outer
    // position is evaluated globally over the shared inner worlds.
    if logic.is_double_layered() && inner.is_none() && needs_inner_world(s) {
        let inner_model = k.inner_at(u).ok_or_else(|| missing("an inner model"))?;
        for v in inner_model.frame.worlds.clone() {
            if !eval_kripke(logic, sig, k, u, Some(&v), env, s)? {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    match s {
        Sentence::Prop(p) => {
            if let Some(v) = inner {
                let im = k.inner_at(u).ok_or_else(|| missing("an inner model"))?;
                Ok(im.props_at(v).ok_or_else(|| missing("an inner valuation"))?.contains(p))
            } else {
                Ok(k.props_at(u).ok_or_else(|| missing("a valuation"))?.contains(p))
            }
        }
        Sentence::FolAtom(pr, args) => {
            let m = k.fol_at(u).ok_or_else(|| missing("a first-order base"))?;
            let vals: Vec<String> = args
                .iter()
                .map(|a| eval_term(m, &env.vars, a))
                .collect::<Result<_>>()?;
            Ok(m.preds.get(pr).ok_or_else(|| missing("a predicate"))?.contains(&vals))
        }
        Sentence::Not(a) => Ok(!eval_kripke(logic, sig, k, u, inner, env, a)?),
        Sentence::And(a, b) => Ok(eval_kripke(logic, sig, k, u, inner, env, a)?
            && eval_kripke(logic, sig, k, u, inner, env, b)?),
        Sentence::Or(a, b) => Ok(eval_kripke(logic, sig, k, u, inner, env, a)?
            || eval_kripke(logic, sig, k, u, inner, env, b)?),
        Sentence::Implies(a, b) => Ok(!eval_kripke(logic, sig, k, u, inner, env, a)?
            || eval_kripke(logic, sig, k, u, inner, env, b)?),
        Sentence::Dia(layer, a) | Sentence::BoxM(layer, a) => {
            let universal = matches!(s, Sentence::BoxM(_, _));
            let (frame, here): (&crate::model::Frame, &str) = if *layer == 0 {
                let im = k.inner_at(u).ok_or_else(|| missing("an inner model"))?;
                (&im.frame, inner.expect("inner context established above"))
            } else {
                (&k.frame, u)
            };
            let rel = frame.relations.get(DIST_MOD).ok_or_else(|| missing("the accessibility relation"))?;
            let successors: Vec<&String> = rel
                .iter()
                .filter(|t| t.len() == 2 && t[0] == here)
                .map(|t| &t[1])
                .collect();
            for w2 in successors {
                let value = if *layer == 0 {
                    eval_kripke(logic, sig, k, u, Some(w2), env, a)?
                } else {
                    eval_kripke(logic, sig, k, w2, None, env, a)?
                };
                if universal && !value {
                    return Ok(false);
                }
                if !universal && value {
                    return Ok(true);
                }
            }
            Ok(universal)
        }
        Sentence::PolyDia(l, args) | Sentence::PolyBox(l, args) => {
            let universal = matches!(s, Sentence::PolyBox(_, _));
            let rel = k.frame.relations.get(l).ok_or_else(|| missing(&format!("relation `{l}`")))?;
            for t in rel {
                if t.len() != args.len() + 1 || t[0] != u {
                    continue;
                }
                let mut all = true;
                let mut any = false;
                for (arg, w2) in args.iter().zip(t.iter().skip(1)) {
                    let value = eval_kripke(logic, sig, k, w2, None, env, arg)?;
                    all &= value;
                    any |= value;
                }
                if universal && !any {
                    return Ok(false);
                }
                if !universal && all {
                    return Ok(true);
                }
            }
            Ok(universal)
        }
        Sentence::Nom(layer, i) => {
            let named = resolve_nominal(logic, k, u, env, *layer, i)?;
            let here = if *layer == 0 { inner.expect("inner context") } else { u };
            Ok(named == here)
        }
        Sentence::At(layer, i, a) => {
            let named = resolve_nominal(logic, k, u, env, *layer, i)?;
            if *layer == 0 {
                eval_kripke(logic, sig, k, u, Some(&named), env, a)
            } else {
                eval_kripke(logic, sig, k, &named, None, env, a)
            }
        }
        Sentence::ExistsVar(x, a) | Sentence::ForallVar(x, a) => {
            let universal = matches!(s, Sentence::ForallVar(_, _));
            // Shared carriers: any world's base gives the element pool.
            let carrier = k
                .assignment
                .values()
                .find_map(|b| match b {
                    crate::model::WorldBase::Fol(m) => Some(m.carrier.clone()),
                    _ => None,
                })
                .ok_or_else(|| missing("a first-order base"))?;
            for c in carrier {
                env.vars.insert(x.clone(), c);
                let value = eval_kripke(logic, sig, k, u, inner, env, a)?;
                env.vars.remove(x);
                if universal && !value {
                    return Ok(false);
                }
                if !universal && value {
                    return Ok(true);
                }
            }
            Ok(universal)
        }
        Sentence::ExistsNom(layer, i, a) | Sentence::ForallNom(layer, i, a) => {
            let universal = matches!(s, Sentence::ForallNom(_, _, _));
            let pool: BTreeSet<String> = if logic.is_double_layered() && *layer == 0 {
                // Shared inner world sets: any outer world's inner model works.
                k.assignment
                    .values()
                    .find_map(|b| match b {
                        crate::model::WorldBase::Inner(m) => Some(m.frame.worlds.clone()),
                        _ => None,
                    })
                    .ok_or_else(|| missing("an inner model"))?
            } else {
                k.frame.worlds.clone()
            };
            for w2 in pool {
                env.noms.insert(i.clone(), w2);
                let value = eval_kripke(logic, sig, k, u, inner, env, a)?;
                env.noms.remove(i);
                if universal && !value {
                    return Ok(false);
                }
                if !universal && value {
                    return Ok(true);
                }
            }
            Ok(universal)
        }
    }
}

/// True for nodes that cannot be decided at an outer world alone and force a
/// sweep over inner worlds (double-layered logic, outer position).
fn needs_inner_world(s: &Sentence) -> bool {
    matches!(
        s,
        Sentence::Prop(_)
            | Sentence::Dia(0, _)
            | Sentence::BoxM(0, _)
            | Sentence::Nom(0, _)
            | Sentence::At(0, _, _)
    )
}

fn resolve_nominal(
    logic: LogicId,
    k: &KripkeModel,
    u: &str,
    env: &Env,
    layer: u8,
    i: &str,
) -> Result<String> {
    if let Some(w) = env.noms.get(i) {
        return Ok(w.clone());
    }
    let interp = if logic.is_double_layered() && layer == 0 {
        let im = k.inner_at(u).ok_or_else(|| missing("an inner model"))?;
        im.frame.nominal_interp.get(i)
    } else {
        k.frame.nominal_interp.get(i)
    };
    interp
        .cloned()
        .ok_or_else(|| missing(&format!("an interpretation for nominal `{i}`")))
}

/// Evaluation over valuation-stratified (plain first-order) models. The
/// state `w` is a valuation whose domain is the signature's variable block
/// extended with any quantifier-bound variables in scope.
fn eval_valuation(
    logic: LogicId,
    sig: &SignatureDesc,
    m: &FolModel,
    w: &BTreeMap<String, String>,
    env: &mut Env,
    s: &Sentence,
) -> Result<bool> {
    match s {
        Sentence::FolAtom(pr, args) => {
            let vals: Vec<String> = args.iter().map(|a| eval_term(m, w, a)).collect::<Result<_>>()?;
            Ok(m.preds.get(pr).ok_or_else(|| missing("a predicate"))?.contains(&vals))
        }
        Sentence::Not(a) => Ok(!eval_valuation(logic, sig, m, w, env, a)?),
        Sentence::And(a, b) => {
            Ok(eval_valuation(logic, sig, m, w, env, a)? && eval_valuation(logic, sig, m, w, env, b)?)
        }
        Sentence::Or(a, b) => {
            Ok(eval_valuation(logic, sig, m, w, env, a)? || eval_valuation(logic, sig, m, w, env, b)?)
        }
        Sentence::Implies(a, b) => {
            Ok(!eval_valuation(logic, sig, m, w, env, a)? || eval_valuation(logic, sig, m, w, env, b)?)
        }
        Sentence::ExistsVar(x, a) | Sentence::ForallVar(x, a) => {
            let universal = matches!(s, Sentence::ForallVar(_, _));
            for c in m.carrier.clone() {
                let mut w2 = w.clone();
                w2.insert(x.clone(), c);
                let value = eval_valuation(logic, sig, m, &w2, env, a)?;
                if universal && !value {
                    return Ok(false);
                }
                if !universal && value {
                    return Ok(true);
                }
            }
            Ok(universal)
        }
        Sentence::PolyDia(pi, args) | Sentence::PolyBox(pi, args) => {
            let universal = matches!(s, Sentence::PolyBox(_, _));
            let rel = m.preds.get(pi).ok_or_else(|| missing(&format!("predicate `{pi}`")))?;
            let n = args.len();
            // Successor tuples in the power model: valuations w1..wn of the
            // current domain with (w(x),w1(x),..,wn(x)) in the base relation
            // for every variable x.
            let domain: Vec<&String> = w.keys().collect();
            let mut tuples: Vec<Vec<BTreeMap<String, String>>> = vec![Vec::new()];
            for _ in 0..n {
                let mut next = Vec::new();
                for partial in &tuples {
                    for val in crate::model::all_valuations(
                        &domain.iter().map(|x| (*x).clone()).collect(),
                        &m.carrier,
                    ) {
                        let mut t = partial.clone();
                        t.push(val);
                        next.push(t);
                    }
                }
                tuples = next;
            }
            for succ in tuples {
                let in_relation = domain.iter().all(|x| {
                    let mut tuple = vec![w[*x].clone()];
                    tuple.extend(succ.iter().map(|wi| wi[*x].clone()));
                    rel.contains(&tuple)
                });
                if !in_relation {
                    continue;
                }
                let mut all = true;
                let mut any = false;
                for (arg, wi) in args.iter().zip(&succ) {
                    let value = eval_valuation(logic, sig, m, wi, env, arg)?;
                    all &= value;
                    any |= value;
                }
                if universal && !any {
                    return Ok(false);
                }
                if !universal && all {
                    return Ok(true);
                }
            }
            Ok(universal)
        }
        Sentence::Nom(_, c) => {
            let e = resolve_constant(m, env, c)?;
            Ok(w.values().all(|v| *v == e))
        }
        Sentence::At(_, c, a) => {
            let e = resolve_constant(m, env, c)?;
            let named: BTreeMap<String, String> = w.keys().map(|x| (x.clone(), e.clone())).collect();
            eval_valuation(logic, sig, m, &named, env, a)
        }
        Sentence::ExistsNom(_, c, a) | Sentence::ForallNom(_, c, a) => {
            let universal = matches!(s, Sentence::ForallNom(_, _, _));
            for e in m.carrier.clone() {
                env.noms.insert(c.clone(), e);
                let value = eval_valuation(logic, sig, m, w, env, a)?;
                env.noms.remove(c);
                if universal && !value {
                    return Ok(false);
                }
                if !universal && value {
                    return Ok(true);
                }
            }
            Ok(universal)
        }
        Sentence::Prop(_) | Sentence::Dia(_, _) | Sentence::BoxM(_, _) => Err(Error::Capability(
            format!("construct not available in logic {logic}"),
        )),
    }
}

fn resolve_constant(m: &FolModel, env: &Env, c: &str) -> Result<String> {
    if let Some(e) = env.noms.get(c) {
        return Ok(e.clone());
    }
    m.constant(c)
        .cloned()
        .ok_or_else(|| missing(&format!("constant `{c}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::{k1, mpl_sig_pq};
    use crate::model::{Frame, WorldBase};

    fn w(s: &str) -> State {
        State::World(s.into())
    }

    #[test]
    fn diamond_on_k1() {
        let sig = mpl_sig_pq();
        let m = k1();
        let dia_p = Sentence::dia(Sentence::Prop("p".into()));
        assert!(satisfies(LogicId::Mpl, &sig, &m, &w("0"), &dia_p).unwrap());
        assert!(!satisfies(LogicId::Mpl, &sig, &m, &w("1"), &dia_p).unwrap());
        let contra = Sentence::and(Sentence::Prop("p".into()), Sentence::not(Sentence::Prop("p".into())));
        for st in ["0", "1"] {
            assert!(!satisfies(LogicId::Mpl, &sig, &m, &w(st), &contra).unwrap());
        }
    }

    #[test]
    fn global_on_k1() {
        let sig = mpl_sig_pq();
        let m = k1();
        assert!(satisfies_global(LogicId::Mpl, &sig, &m, &Sentence::not(Sentence::Prop("q".into()))).unwrap());
        assert!(!satisfies_global(LogicId::Mpl, &sig, &m, &Sentence::Prop("p".into())).unwrap());
        let taut = Sentence::or(Sentence::Prop("p".into()), Sentence::not(Sentence::Prop("p".into())));
        assert!(satisfies_global(LogicId::Mpl, &sig, &m, &taut).unwrap());
    }

    /// Worlds a,b; edge a->b; nominal i names b; p holds only at b.
    fn k2() -> (SignatureDesc, Model) {
        let sig = SignatureDesc {
            props: ["p".into()].into(),
            nominals: ["i".into()].into(),
            ..Default::default()
        };
        let m = Model::Kripke(KripkeModel {
            frame: Frame {
                worlds: ["a".into(), "b".into()].into(),
                relations: [(DIST_MOD.to_string(), [vec!["a".to_string(), "b".to_string()]].into())].into(),
                nominal_interp: [("i".to_string(), "b".to_string())].into(),
            },
            assignment: [
                ("a".to_string(), WorldBase::Props([].into())),
                ("b".to_string(), WorldBase::Props(["p".to_string()].into())),
            ]
            .into(),
        });
        (sig, m)
    }

    #[test]
    fn at_operator_jumps() {
        let (sig, m) = k2();
        let at_i_p = Sentence::At(1, "i".into(), Box::new(Sentence::Prop("p".into())));
        assert!(satisfies(LogicId::Hpl, &sig, &m, &w("a"), &at_i_p).unwrap());
        let nom_i = Sentence::Nom(1, "i".into());
        assert!(!satisfies(LogicId::Hpl, &sig, &m, &w("a"), &nom_i).unwrap());
        assert!(satisfies(LogicId::Hpl, &sig, &m, &w("b"), &nom_i).unwrap());
    }

    #[test]
    fn nominal_quantifier_binds_worlds() {
        let (sig, m) = k2();
        // Some world satisfies p: bind j to it and jump there.
        let s = Sentence::ExistsNom(
            1,
            "j".into(),
            Box::new(Sentence::At(1, "j".into(), Box::new(Sentence::Prop("p".into())))),
        );
        assert!(satisfies(LogicId::Hpl, &sig, &m, &w("a"), &s).unwrap());
        let all = Sentence::ForallNom(
            1,
            "j".into(),
            Box::new(Sentence::At(1, "j".into(), Box::new(Sentence::Prop("p".into())))),
        );
        assert!(!satisfies(LogicId::Hpl, &sig, &m, &w("a"), &all).unwrap());
    }

    fn ofol_model() -> (SignatureDesc, Model) {
        let sig = SignatureDesc {
            funcs: [("c".into(), 0usize)].into(),
            preds: [("q".into(), 1usize)].into(),
            vars: ["x".into()].into(),
            ..Default::default()
        };
        let m = Model::Fol(FolModel {
            carrier: ["0".into(), "1".into()].into(),
            funcs: [("c".into(), [(vec![], "0".to_string())].into())].into(),
            preds: [("q".into(), [vec!["1".to_string()]].into())].into(),
        });
        (sig, m)
    }

    #[test]
    fn open_atoms_follow_the_valuation() {
        let (sig, m) = ofol_model();
        let qx = Sentence::FolAtom("q".into(), vec![Term::Var("x".into())]);
        let s1 = State::Valuation([("x".to_string(), "1".to_string())].into());
        let s0 = State::Valuation([("x".to_string(), "0".to_string())].into());
        assert!(satisfies(LogicId::Ofol, &sig, &m, &s1, &qx).unwrap());
        assert!(!satisfies(LogicId::Ofol, &sig, &m, &s0, &qx).unwrap());
        let ex = Sentence::ExistsVar("y".into(), Box::new(Sentence::FolAtom("q".into(), vec![Term::Var("y".into())])));
        assert!(satisfies(LogicId::Ofol, &sig, &m, &s0, &ex).unwrap());
    }

    #[test]
    fn predicate_modality_follows_base_relation() {
        let sig = SignatureDesc {
            preds: [("r".into(), 2usize), ("q".into(), 1usize)].into(),
            vars: ["x".into()].into(),
            ..Default::default()
        };
        let m = Model::Fol(FolModel {
            carrier: ["0".into(), "1".into()].into(),
            funcs: BTreeMap::new(),
            preds: [
                ("r".into(), [vec!["0".to_string(), "1".to_string()]].into()),
                ("q".into(), [vec!["1".to_string()]].into()),
            ]
            .into(),
        });
        let s = Sentence::PolyDia("r".into(), vec![Sentence::FolAtom("q".into(), vec![Term::Var("x".into())])]);
        let w0 = State::Valuation([("x".to_string(), "0".to_string())].into());
        let w1 = State::Valuation([("x".to_string(), "1".to_string())].into());
        assert!(satisfies(LogicId::Mofol, &sig, &m, &w0, &s).unwrap());
        assert!(!satisfies(LogicId::Mofol, &sig, &m, &w1, &s).unwrap());
    }

    #[test]
    fn constant_nominal_names_the_constant_valuation() {
        let (sig, m) = ofol_model();
        let nom_c = Sentence::Nom(1, "c".into());
        let s0 = State::Valuation([("x".to_string(), "0".to_string())].into());
        let s1 = State::Valuation([("x".to_string(), "1".to_string())].into());
        assert!(satisfies(LogicId::Hofol, &sig, &m, &s0, &nom_c).unwrap());
        assert!(!satisfies(LogicId::Hofol, &sig, &m, &s1, &nom_c).unwrap());
        // Jumping with @ lands at the constant valuation.
        let at = Sentence::At(1, "c".into(), Box::new(Sentence::FolAtom("q".into(), vec![Term::Var("x".into())])));
        assert!(!satisfies(LogicId::Hofol, &sig, &m, &s1, &at).unwrap());
    }
}
