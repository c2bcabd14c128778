//! Model-level quantifier semantics: enumerating the expansions of a model
//! along a signature extension by one fresh variable or nominal.
//!
//! The evaluator binds quantified symbols in an environment instead; the
//! verification suites cross-check the two routes.

use crate::error::{Error, Result};
use crate::logic::LogicId;
use crate::model::{ensure_valid, KripkeModel, Model, WorldBase};
use crate::sentence::Layer;
use crate::signature::SignatureDesc;
use std::collections::BTreeSet;

/// A signature extension by one fresh symbol, applied to a base model.
#[derive(Debug, Clone)]
pub struct ExpansionSpec {
    pub sig: SignatureDesc,
    pub base: Model,
    pub kind: ExpansionKind,
}

#[derive(Debug, Clone)]
pub enum ExpansionKind {
    /// A fresh first-order variable: a world-shared constant for the Kripke
    /// first-order logic, an extension of the variable block for the
    /// valuation-stratified ones.
    Var(String),
    /// A fresh nominal variable at the given layer; a fresh constant for the
    /// constant-nominal logics.
    Nom(Layer, String),
}

impl ExpansionSpec {
    fn symbol(&self) -> &str {
        match &self.kind {
            ExpansionKind::Var(x) => x,
            ExpansionKind::Nom(_, i) => i,
        }
    }
}

/// The extended signature and every expansion of the base model: one model
/// per interpretation choice of the fresh symbol (exactly one model — the
/// base itself — for a variable-block extension, whose choices live in the
/// stratification instead).
pub fn enumerate_expansions(
    logic: LogicId,
    spec: &ExpansionSpec,
) -> Result<(SignatureDesc, Vec<Model>)> {
    ensure_valid(logic, &spec.sig, &spec.base)?;
    if spec.sig.declares(spec.symbol()) {
        return Err(Error::Signature(format!(
            "expansion symbol `{}` is not fresh",
            spec.symbol()
        )));
    }
    let mut sig = spec.sig.clone();
    match (&spec.kind, &spec.base) {
        (ExpansionKind::Var(x), Model::Fol(_)) => {
            if !logic.is_valuation_stratified() {
                return Err(Error::Capability(format!(
                    "logic {logic} has no variable quantifiers"
                )));
            }
            sig.vars.insert(x.clone());
            Ok((sig, vec![spec.base.clone()]))
        }
        (ExpansionKind::Var(x), Model::Kripke(k)) => {
            if logic != LogicId::Mfol {
                return Err(Error::Capability(format!(
                    "logic {logic} has no variable quantifiers"
                )));
            }
            sig.funcs.insert(x.clone(), 0);
            let carrier: BTreeSet<String> = k
                .assignment
                .values()
                .find_map(|b| match b {
                    WorldBase::Fol(m) => Some(m.carrier.clone()),
                    _ => None,
                })
                .ok_or_else(|| Error::Model("model has no first-order bases".into()))?;
            let mut out = Vec::new();
            for c in carrier {
                let mut m = k.clone();
                // The sharing condition forces the same value at every world.
                for base in m.assignment.values_mut() {
                    if let WorldBase::Fol(f) = base {
                        f.funcs.insert(x.clone(), [(vec![], c.clone())].into());
                    }
                }
                out.push(Model::Kripke(m));
            }
            Ok((sig, out))
        }
        (ExpansionKind::Nom(_, c), Model::Fol(m)) => {
            if !logic.has_constant_nominals() {
                return Err(Error::Capability(format!(
                    "logic {logic} has no nominal quantifiers"
                )));
            }
            sig.funcs.insert(c.clone(), 0);
            let mut out = Vec::new();
            for e in &m.carrier {
                let mut m2 = m.clone();
                m2.funcs.insert(c.clone(), [(vec![], e.clone())].into());
                out.push(Model::Fol(m2));
            }
            Ok((sig, out))
        }
        (ExpansionKind::Nom(layer, i), Model::Kripke(k)) => {
            if !logic.has_frame_nominals() {
                return Err(Error::Capability(format!(
                    "logic {logic} has no nominal quantifiers"
                )));
            }
            if logic.is_double_layered() && *layer == 0 {
                sig.nominals.insert(i.clone());
                let inner_worlds: BTreeSet<String> = k
                    .assignment
                    .values()
                    .find_map(|b| match b {
                        WorldBase::Inner(m) => Some(m.frame.worlds.clone()),
                        _ => None,
                    })
                    .ok_or_else(|| Error::Model("model has no inner models".into()))?;
                let mut out = Vec::new();
                for v in inner_worlds {
                    let mut m = k.clone();
                    // Shared inner nominal interpretations: the same inner
                    // world at every outer world.
                    for base in m.assignment.values_mut() {
                        if let WorldBase::Inner(inner) = base {
                            inner.frame.nominal_interp.insert(i.clone(), v.clone());
                        }
                    }
                    out.push(Model::Kripke(m));
                }
                Ok((sig, out))
            } else {
                if logic.is_double_layered() {
                    sig.outer_nominals.insert(i.clone());
                } else {
                    sig.nominals.insert(i.clone());
                }
                let mut out = Vec::new();
                for w in &k.frame.worlds {
                    let mut m: KripkeModel = k.clone();
                    m.frame.nominal_interp.insert(i.clone(), w.clone());
                    out.push(Model::Kripke(m));
                }
                Ok((sig, out))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{stratification, FolModel, Frame, State};
    use crate::signature::DIST_MOD;
    use std::collections::BTreeMap;

    #[test]
    fn hybrid_nominal_expansions_one_per_world() {
        let sig = SignatureDesc {
            props: ["p".into()].into(),
            nominals: ["i".into()].into(),
            ..Default::default()
        };
        let base = Model::Kripke(KripkeModel {
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
        let spec = ExpansionSpec {
            sig,
            base,
            kind: ExpansionKind::Nom(1, "j".into()),
        };
        let (sig2, models) = enumerate_expansions(LogicId::Hpl, &spec).unwrap();
        assert_eq!(models.len(), 2);
        assert!(sig2.nominals.contains("j"));
        for m in &models {
            assert!(crate::model::validate_model(LogicId::Hpl, &sig2, m, None).is_empty());
        }
    }

    #[test]
    fn variable_block_extension_is_a_single_model() {
        let sig = SignatureDesc {
            preds: [("q".into(), 1usize)].into(),
            vars: ["x".into()].into(),
            ..Default::default()
        };
        let base = Model::Fol(FolModel {
            carrier: ["0".into(), "1".into()].into(),
            funcs: BTreeMap::new(),
            preds: [("q".into(), [vec!["1".to_string()]].into())].into(),
        });
        let spec = ExpansionSpec {
            sig,
            base,
            kind: ExpansionKind::Var("y".into()),
        };
        let (sig2, models) = enumerate_expansions(LogicId::Ofol, &spec).unwrap();
        assert_eq!(models.len(), 1);
        // The new choices appear as extra states, not extra models.
        let states = stratification(LogicId::Ofol, &sig2, &models[0]).unwrap();
        assert_eq!(states.len(), 4);
        assert!(states.iter().all(|s| matches!(s, State::Valuation(v) if v.len() == 2)));
    }
}
