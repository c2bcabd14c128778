//! Signatures and signature morphisms.

use crate::error::{Error, Result};
use crate::logic::LogicId;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Key under which frames store the accessibility relation of the
/// distinguished unary modality (`<>` / `[]`).
pub const DIST_MOD: &str = "lambda";

/// A signature for any of the logic instances. Components not used by a
/// given instance must be empty; `validate_signature` enforces this.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureDesc {
    /// Propositional symbols.
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub props: BTreeSet<String>,
    /// Nominal symbols (the inner, layer-0 set for the double-layered logic).
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub nominals: BTreeSet<String>,
    /// Outer (layer-1) nominal symbols; double-layered logic only.
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub outer_nominals: BTreeSet<String>,
    /// Polyadic modality symbols with their arities (number of sentence
    /// arguments; the relation stores tuples one longer).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modalities: BTreeMap<String, usize>,
    /// Function symbols with arities; arity-0 functions are constants.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub funcs: BTreeMap<String, usize>,
    /// Predicate symbols with arities.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub preds: BTreeMap<String, usize>,
    /// The open variable block; valuation-stratified logics only.
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub vars: BTreeSet<String>,
}

impl SignatureDesc {
    /// Constant symbols (arity-0 functions).
    pub fn constants(&self) -> impl Iterator<Item = &String> {
        self.funcs.iter().filter(|(_, a)| **a == 0).map(|(f, _)| f)
    }

    /// All declared symbol names, across every component.
    pub fn all_symbols(&self) -> BTreeSet<&str> {
        self.props
            .iter()
            .chain(&self.nominals)
            .chain(&self.outer_nominals)
            .chain(&self.vars)
            .map(String::as_str)
            .chain(self.modalities.keys().map(String::as_str))
            .chain(self.funcs.keys().map(String::as_str))
            .chain(self.preds.keys().map(String::as_str))
            .collect()
    }

    /// True if `name` is declared anywhere in the signature.
    pub fn declares(&self, name: &str) -> bool {
        self.props.contains(name)
            || self.nominals.contains(name)
            || self.outer_nominals.contains(name)
            || self.vars.contains(name)
            || self.modalities.contains_key(name)
            || self.funcs.contains_key(name)
            || self.preds.contains_key(name)
    }
}

/// Checks that `sig` only uses the components its logic instance supports
/// and that symbol names do not collide across components.
pub fn validate_signature(logic: LogicId, sig: &SignatureDesc) -> Result<()> {
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    let mut count = 0usize;
    for s in sig.all_symbols() {
        seen.insert(s);
        count += 1;
    }
    if seen.len() != count {
        return Err(Error::Signature(
            "symbol names must be unique across signature components".into(),
        ));
    }
    let reject = |what: &str| -> Result<()> {
        Err(Error::Capability(format!(
            "logic {logic} does not admit {what} in signatures"
        )))
    };
    if !sig.props.is_empty() && !logic.has_props() {
        return reject("propositional symbols");
    }
    if !sig.nominals.is_empty() && !logic.has_frame_nominals() {
        return reject("nominal symbols");
    }
    if !sig.outer_nominals.is_empty() && !logic.is_double_layered() {
        return reject("outer-layer nominal symbols");
    }
    if !sig.modalities.is_empty() && !logic.has_signature_modalities() {
        return reject("modality symbol families");
    }
    if (!sig.funcs.is_empty() || !sig.preds.is_empty()) && !logic.has_fol() {
        return reject("function/predicate symbols");
    }
    if !sig.vars.is_empty() && !logic.is_valuation_stratified() {
        return reject("an open variable block");
    }
    if sig.modalities.keys().any(|m| m == DIST_MOD) {
        return Err(Error::Signature(format!(
            "modality name `{DIST_MOD}` is reserved for the distinguished unary modality"
        )));
    }
    Ok(())
}

/// A componentwise symbol map between two signatures of the same logic.
/// Variable blocks are related by inclusion (`source.vars` ⊆ `target.vars`)
/// rather than by an explicit map.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureMorphism {
    pub source: SignatureDesc,
    pub target: SignatureDesc,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub prop_map: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub nominal_map: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub outer_nominal_map: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modality_map: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub func_map: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub pred_map: BTreeMap<String, String>,
}

impl SignatureMorphism {
    /// The identity morphism on `sig`.
    pub fn identity(sig: &SignatureDesc) -> Self {
        let id = |names: &BTreeSet<String>| {
            names.iter().map(|n| (n.clone(), n.clone())).collect::<BTreeMap<_, _>>()
        };
        let id_keys = |names: &BTreeMap<String, usize>| {
            names.keys().map(|n| (n.clone(), n.clone())).collect::<BTreeMap<_, _>>()
        };
        SignatureMorphism {
            source: sig.clone(),
            target: sig.clone(),
            prop_map: id(&sig.props),
            nominal_map: id(&sig.nominals),
            outer_nominal_map: id(&sig.outer_nominals),
            modality_map: id_keys(&sig.modalities),
            func_map: id_keys(&sig.funcs),
            pred_map: id_keys(&sig.preds),
        }
    }

    /// `self` then `other`. Fails unless `other.source == self.target`.
    pub fn compose(&self, other: &SignatureMorphism) -> Result<SignatureMorphism> {
        if other.source != self.target {
            return Err(Error::Signature(
                "composition requires the first morphism's target to equal the second's source"
                    .into(),
            ));
        }
        let comp = |f: &BTreeMap<String, String>, g: &BTreeMap<String, String>| -> Result<BTreeMap<String, String>> {
            f.iter()
                .map(|(k, v)| {
                    g.get(v)
                        .map(|w| (k.clone(), w.clone()))
                        .ok_or_else(|| Error::Signature(format!("`{v}` missing from second map")))
                })
                .collect()
        };
        Ok(SignatureMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            prop_map: comp(&self.prop_map, &other.prop_map)?,
            nominal_map: comp(&self.nominal_map, &other.nominal_map)?,
            outer_nominal_map: comp(&self.outer_nominal_map, &other.outer_nominal_map)?,
            modality_map: comp(&self.modality_map, &other.modality_map)?,
            func_map: comp(&self.func_map, &other.func_map)?,
            pred_map: comp(&self.pred_map, &other.pred_map)?,
        })
    }

    /// Image of a symbol under whichever component map declares it; symbols
    /// outside every map (e.g. quantifier-bound ones) are left unchanged.
    pub fn map_symbol<'a>(&'a self, map: &'a BTreeMap<String, String>, name: &'a str) -> &'a str {
        map.get(name).map(String::as_str).unwrap_or(name)
    }
}

/// Checks totality, componentwise well-typedness, arity preservation and the
/// variable-block inclusion.
pub fn validate_morphism(logic: LogicId, phi: &SignatureMorphism) -> Result<()> {
    validate_signature(logic, &phi.source)?;
    validate_signature(logic, &phi.target)?;
    let check_set = |name: &str,
                     src: &BTreeSet<String>,
                     tgt: &BTreeSet<String>,
                     map: &BTreeMap<String, String>|
     -> Result<()> {
        for s in src {
            let t = map.get(s).ok_or_else(|| {
                Error::Signature(format!("{name} map is not total: `{s}` unmapped"))
            })?;
            if !tgt.contains(t) {
                return Err(Error::Signature(format!(
                    "{name} map sends `{s}` to undeclared `{t}`"
                )));
            }
        }
        for s in map.keys() {
            if !src.contains(s) {
                return Err(Error::Signature(format!(
                    "{name} map mentions undeclared source symbol `{s}`"
                )));
            }
        }
        Ok(())
    };
    let check_arity = |name: &str,
                       src: &BTreeMap<String, usize>,
                       tgt: &BTreeMap<String, usize>,
                       map: &BTreeMap<String, String>|
     -> Result<()> {
        for (s, n) in src {
            let t = map.get(s).ok_or_else(|| {
                Error::Signature(format!("{name} map is not total: `{s}` unmapped"))
            })?;
            match tgt.get(t) {
                Some(m) if m == n => {}
                Some(m) => {
                    return Err(Error::Signature(format!(
                        "{name} map breaks arity: `{s}`/{n} -> `{t}`/{m}"
                    )))
                }
                None => {
                    return Err(Error::Signature(format!(
                        "{name} map sends `{s}` to undeclared `{t}`"
                    )))
                }
            }
        }
        for s in map.keys() {
            if !src.contains_key(s) {
                return Err(Error::Signature(format!(
                    "{name} map mentions undeclared source symbol `{s}`"
                )));
            }
        }
        Ok(())
    };
    check_set("prop", &phi.source.props, &phi.target.props, &phi.prop_map)?;
    check_set("nominal", &phi.source.nominals, &phi.target.nominals, &phi.nominal_map)?;
    check_set(
        "outer nominal",
        &phi.source.outer_nominals,
        &phi.target.outer_nominals,
        &phi.outer_nominal_map,
    )?;
    check_arity("modality", &phi.source.modalities, &phi.target.modalities, &phi.modality_map)?;
    check_arity("function", &phi.source.funcs, &phi.target.funcs, &phi.func_map)?;
    check_arity("predicate", &phi.source.preds, &phi.target.preds, &phi.pred_map)?;
    if !phi.source.vars.is_subset(&phi.target.vars) {
        return Err(Error::Signature(
            "variable block of the source must be included in the target's".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mpl_sig(props: &[&str]) -> SignatureDesc {
        SignatureDesc {
            props: props.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    #[test]
    fn identity_is_valid() {
        let sig = mpl_sig(&["p", "q"]);
        let phi = SignatureMorphism::identity(&sig);
        validate_morphism(LogicId::Mpl, &phi).unwrap();
    }

    #[test]
    fn mpl_rejects_vars() {
        let sig = SignatureDesc {
            props: ["p".into()].into(),
            vars: ["x".into()].into(),
            ..Default::default()
        };
        assert!(validate_signature(LogicId::Mpl, &sig).is_err());
    }

    #[test]
    fn composition_chains_maps() {
        let a = mpl_sig(&["p"]);
        let b = mpl_sig(&["p", "q"]);
        let c = mpl_sig(&["q", "r"]);
        let f = SignatureMorphism {
            source: a.clone(),
            target: b.clone(),
            prop_map: [("p".into(), "q".into())].into(),
            ..Default::default()
        };
        let g = SignatureMorphism {
            source: b,
            target: c,
            prop_map: [("p".into(), "q".into()), ("q".into(), "r".into())].into(),
            ..Default::default()
        };
        let fg = f.compose(&g).unwrap();
        assert_eq!(fg.prop_map.get("p").unwrap(), "r");
        validate_morphism(LogicId::Mpl, &fg).unwrap();
    }

    #[test]
    fn arity_breaking_map_rejected() {
        let src = SignatureDesc {
            props: ["p".into()].into(),
            modalities: [("l".into(), 2usize)].into(),
            ..Default::default()
        };
        let tgt = SignatureDesc {
            props: ["p".into()].into(),
            modalities: [("m".into(), 1usize)].into(),
            ..Default::default()
        };
        let phi = SignatureMorphism {
            source: src,
            target: tgt,
            prop_map: [("p".into(), "p".into())].into(),
            modality_map: [("l".into(), "m".into())].into(),
            ..Default::default()
        };
        assert!(validate_morphism(LogicId::Mmpl, &phi).is_err());
    }
}
