//! Frame and nominal extraction: relational and pointed-set views of a
//! model whose underlying set is exactly the model's stratification. These
//! power the modality and nominal semantics and serve as oracles for the
//! law-checking suites.

use crate::error::{Error, Result};
use crate::logic::LogicId;
use crate::model::{ensure_valid, stratification, Model, State};
use crate::power::power_model;
use crate::signature::{SignatureDesc, DIST_MOD};
use std::collections::{BTreeMap, BTreeSet};

/// A relational structure over the stratification: the frame extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelModel {
    pub states: BTreeSet<String>,
    pub relations: BTreeMap<String, BTreeSet<Vec<String>>>,
}

/// States with named constants: the nominals extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetcModel {
    pub states: BTreeSet<String>,
    pub constants: BTreeMap<String, String>,
}

fn state_strings(logic: LogicId, sig: &SignatureDesc, model: &Model) -> Result<BTreeSet<String>> {
    Ok(stratification(logic, sig, model)?
        .iter()
        .map(State::to_string)
        .collect())
}

/// The accessibility structure underlying the stratification, for logics
/// with modalities.
pub fn extract_frame(logic: LogicId, sig: &SignatureDesc, model: &Model) -> Result<RelModel> {
    ensure_valid(logic, sig, model)?;
    let states = state_strings(logic, sig, model)?;
    if logic.has_unary_modality() {
        // Single-relation logics (the double-layered one extracts its outer
        // layer, whose worlds form the stratification).
        let k = model.as_kripke()?;
        let rel = k
            .frame
            .relations
            .get(DIST_MOD)
            .cloned()
            .ok_or_else(|| Error::Model("missing accessibility relation".into()))?;
        Ok(RelModel {
            states,
            relations: [(DIST_MOD.to_string(), rel)].into(),
        })
    } else if logic.has_signature_modalities() {
        let k = model.as_kripke()?;
        let relations = sig
            .modalities
            .keys()
            .filter_map(|l| k.frame.relations.get(l).map(|r| (l.clone(), r.clone())))
            .collect();
        Ok(RelModel { states, relations })
    } else if logic.has_predicate_modalities() {
        let m = model.as_fol()?;
        if sig.vars.is_empty() {
            return Err(Error::Bounds(
                "frame extraction needs a nonempty variable block".into(),
            ));
        }
        let p = power_model(m, &sig.vars)?;
        let relations = sig
            .preds
            .iter()
            .filter(|(_, n)| **n >= 2)
            .filter_map(|(pi, _)| p.model.preds.get(pi).map(|r| (pi.clone(), r.clone())))
            .collect();
        Ok(RelModel { states, relations })
    } else {
        Err(Error::Capability(format!(
            "logic {logic} has no frame extraction"
        )))
    }
}

/// The named states underlying the stratification, for logics with
/// nominals.
pub fn extract_nominals(logic: LogicId, sig: &SignatureDesc, model: &Model) -> Result<SetcModel> {
    ensure_valid(logic, sig, model)?;
    let states = state_strings(logic, sig, model)?;
    if logic.has_frame_nominals() {
        // The double-layered logic extracts its outer nominals only: the
        // inner ones do not name states of the stratification.
        let k = model.as_kripke()?;
        let noms = if logic.is_double_layered() {
            &sig.outer_nominals
        } else {
            &sig.nominals
        };
        let constants = noms
            .iter()
            .filter_map(|i| k.frame.nominal_interp.get(i).map(|w| (i.clone(), w.clone())))
            .collect();
        Ok(SetcModel { states, constants })
    } else if logic.has_constant_nominals() {
        let m = model.as_fol()?;
        let constants = sig
            .constants()
            .filter_map(|c| {
                m.constant(c).map(|e| {
                    let valuation: BTreeMap<String, String> =
                        sig.vars.iter().map(|x| (x.clone(), e.clone())).collect();
                    (c.clone(), State::Valuation(valuation).to_string())
                })
            })
            .collect();
        Ok(SetcModel { states, constants })
    } else {
        Err(Error::Capability(format!(
            "logic {logic} has no nominals extraction"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::{k1, mpl_sig_pq};
    use crate::model::{FolModel, Frame, KripkeModel, WorldBase};

    #[test]
    fn mpl_frame_extraction() {
        let e = extract_frame(LogicId::Mpl, &mpl_sig_pq(), &k1()).unwrap();
        assert_eq!(e.states, BTreeSet::from(["0".to_string(), "1".to_string()]));
        assert_eq!(
            e.relations[DIST_MOD],
            BTreeSet::from([vec!["0".to_string(), "1".to_string()]])
        );
    }

    #[test]
    fn hpl_nominal_extraction() {
        let sig = SignatureDesc {
            props: ["p".into()].into(),
            nominals: ["i".into()].into(),
            ..Default::default()
        };
        let m = Model::Kripke(KripkeModel {
            frame: Frame {
                worlds: ["a".into(), "b".into()].into(),
                relations: [(DIST_MOD.to_string(), BTreeSet::new())].into(),
                nominal_interp: [("i".to_string(), "b".to_string())].into(),
            },
            assignment: [
                ("a".to_string(), WorldBase::Props([].into())),
                ("b".to_string(), WorldBase::Props(["p".to_string()].into())),
            ]
            .into(),
        });
        let e = extract_nominals(LogicId::Hpl, &sig, &m).unwrap();
        assert_eq!(e.constants["i"], "b");
        assert_eq!(e.states, BTreeSet::from(["a".to_string(), "b".to_string()]));
    }

    #[test]
    fn predicate_modality_extraction_uses_the_power() {
        let sig = SignatureDesc {
            preds: [("r".into(), 2usize), ("q".into(), 1usize)].into(),
            vars: ["x".into()].into(),
            ..Default::default()
        };
        let m = Model::Fol(FolModel {
            carrier: ["0".into(), "1".into()].into(),
            preds: [
                ("r".into(), [vec!["0".to_string(), "1".to_string()]].into()),
                ("q".into(), [vec!["1".to_string()]].into()),
            ]
            .into(),
            ..Default::default()
        });
        let e = extract_frame(LogicId::Mofol, &sig, &m).unwrap();
        assert_eq!(e.states, BTreeSet::from(["x=0".to_string(), "x=1".to_string()]));
        assert!(e.relations.contains_key("r"));
        assert!(!e.relations.contains_key("q"));
        assert!(e.relations["r"].contains(&vec!["x=0".to_string(), "x=1".to_string()]));
    }
}
