//! Sentence trees and their well-formedness rules.

use crate::error::{Error, Result};
use crate::logic::{capabilities, LogicId};
use crate::signature::SignatureDesc;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Layer tag for modal/hybrid nodes. `1` is the (outer) layer whose worlds
/// form the stratification; `0` is the inner layer of the double-layered
/// logic. Every logic except the double-layered one uses layer `1` only.
pub type Layer = u8;

/// The layer used by all single-layered logics.
pub const DEFAULT_LAYER: Layer = 1;

/// First-order terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

/// Sentence tree covering every logic instance; well-formedness per logic is
/// checked by [`check_sentence`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sentence {
    /// Propositional atom.
    Prop(String),
    /// Predicate applied to terms.
    FolAtom(String, Vec<Term>),
    Not(Box<Sentence>),
    And(Box<Sentence>, Box<Sentence>),
    Or(Box<Sentence>, Box<Sentence>),
    Implies(Box<Sentence>, Box<Sentence>),
    /// Possibility over the distinguished unary modality.
    Dia(Layer, Box<Sentence>),
    /// Necessity over the distinguished unary modality.
    BoxM(Layer, Box<Sentence>),
    /// Polyadic possibility `<l>(s1,...,sn)`.
    PolyDia(String, Vec<Sentence>),
    /// Polyadic necessity `[l](s1,...,sn)`.
    PolyBox(String, Vec<Sentence>),
    /// Nominal sentence: holds exactly at the named state.
    Nom(Layer, String),
    /// Satisfaction operator `@ i s`: evaluate `s` at the state named `i`.
    At(Layer, String, Box<Sentence>),
    ExistsVar(String, Box<Sentence>),
    ForallVar(String, Box<Sentence>),
    ExistsNom(Layer, String, Box<Sentence>),
    ForallNom(Layer, String, Box<Sentence>),
}

impl Sentence {
    pub fn not(s: Sentence) -> Sentence {
        Sentence::Not(Box::new(s))
    }
    pub fn and(a: Sentence, b: Sentence) -> Sentence {
        Sentence::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Sentence, b: Sentence) -> Sentence {
        Sentence::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Sentence, b: Sentence) -> Sentence {
        Sentence::Implies(Box::new(a), Box::new(b))
    }
    pub fn dia(s: Sentence) -> Sentence {
        Sentence::Dia(DEFAULT_LAYER, Box::new(s))
    }
    pub fn boxm(s: Sentence) -> Sentence {
        Sentence::BoxM(DEFAULT_LAYER, Box::new(s))
    }

    /// Maximum nesting depth (atoms have depth 0).
    pub fn depth(&self) -> usize {
        match self {
            Sentence::Prop(_) | Sentence::FolAtom(_, _) | Sentence::Nom(_, _) => 0,
            Sentence::Not(s)
            | Sentence::Dia(_, s)
            | Sentence::BoxM(_, s)
            | Sentence::At(_, _, s)
            | Sentence::ExistsVar(_, s)
            | Sentence::ForallVar(_, s)
            | Sentence::ExistsNom(_, _, s)
            | Sentence::ForallNom(_, _, s) => 1 + s.depth(),
            Sentence::And(a, b) | Sentence::Or(a, b) | Sentence::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Sentence::PolyDia(_, args) | Sentence::PolyBox(_, args) => {
                1 + args.iter().map(Sentence::depth).max().unwrap_or(0)
            }
        }
    }
}

struct Checker<'a> {
    logic: LogicId,
    sig: &'a SignatureDesc,
    bound_vars: BTreeSet<String>,
    /// Bound nominal name -> layer it was bound at.
    bound_noms: std::collections::BTreeMap<String, Layer>,
}

impl<'a> Checker<'a> {
    fn fresh(&self, name: &str) -> Result<()> {
        if self.sig.declares(name) {
            return Err(Error::Sentence(format!(
                "bound symbol `{name}` collides with a signature symbol"
            )));
        }
        if self.bound_vars.contains(name) || self.bound_noms.contains_key(name) {
            return Err(Error::Sentence(format!("bound symbol `{name}` is rebound")));
        }
        Ok(())
    }

    fn check_layer(&self, layer: Layer, inner: bool) -> Result<()> {
        if !self.logic.is_double_layered() {
            if layer != DEFAULT_LAYER {
                return Err(Error::Sentence(format!(
                    "layer tags are only meaningful in the double-layered logic (got layer {layer})"
                )));
            }
            return Ok(());
        }
        if layer > 1 {
            return Err(Error::Sentence(format!("layer must be 0 or 1, got {layer}")));
        }
        if inner && layer == 1 {
            return Err(Error::Sentence(
                "outer-layer construct may not occur under an inner-layer modality or @".into(),
            ));
        }
        Ok(())
    }

    fn check_term(&self, t: &Term) -> Result<()> {
        match t {
            Term::Var(x) => {
                if self.sig.vars.contains(x) || self.bound_vars.contains(x) {
                    Ok(())
                } else {
                    Err(Error::Sentence(format!("variable `{x}` is not in scope")))
                }
            }
            Term::App(f, args) => {
                match self.sig.funcs.get(f) {
                    Some(n) if *n == args.len() => {}
                    Some(n) => {
                        return Err(Error::Sentence(format!(
                            "function `{f}` has arity {n}, applied to {} arguments",
                            args.len()
                        )))
                    }
                    None => {
                        return Err(Error::Sentence(format!("unknown function symbol `{f}`")))
                    }
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }

    fn nominal_declared(&self, layer: Layer, i: &str) -> Result<()> {
        if let Some(bound_layer) = self.bound_noms.get(i) {
            if *bound_layer != layer {
                return Err(Error::Sentence(format!(
                    "nominal `{i}` is bound at layer {bound_layer} but used at layer {layer}"
                )));
            }
            return Ok(());
        }
        let declared = if self.logic.has_constant_nominals() {
            self.sig.funcs.get(i) == Some(&0)
        } else if layer == 1 && self.logic.is_double_layered() {
            self.sig.outer_nominals.contains(i)
        } else {
            self.sig.nominals.contains(i)
        };
        if declared {
            Ok(())
        } else {
            Err(Error::Sentence(format!(
                "`{i}` is not a declared nominal for layer {layer}"
            )))
        }
    }

    /// `inner` is true inside the scope of an inner-layer modality or `@`
    /// (double-layered logic only).
    fn check(&mut self, s: &Sentence, inner: bool) -> Result<()> {
        let caps = capabilities(self.logic);
        match s {
            Sentence::Prop(p) => {
                if !self.logic.has_props() {
                    return Err(Error::Capability(format!(
                        "logic {} has no propositional atoms",
                        self.logic
                    )));
                }
                if !self.sig.props.contains(p) {
                    return Err(Error::Sentence(format!("unknown proposition `{p}`")));
                }
                Ok(())
            }
            Sentence::FolAtom(pr, args) => {
                if !self.logic.has_fol() {
                    return Err(Error::Capability(format!(
                        "logic {} has no first-order atoms",
                        self.logic
                    )));
                }
                match self.sig.preds.get(pr) {
                    Some(n) if *n == args.len() => {}
                    Some(n) => {
                        return Err(Error::Sentence(format!(
                            "predicate `{pr}` has arity {n}, applied to {} arguments",
                            args.len()
                        )))
                    }
                    None => {
                        return Err(Error::Sentence(format!("unknown predicate symbol `{pr}`")))
                    }
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
            Sentence::Not(a) => self.check(a, inner),
            Sentence::And(a, b) | Sentence::Or(a, b) | Sentence::Implies(a, b) => {
                self.check(a, inner)?;
                self.check(b, inner)
            }
            Sentence::Dia(layer, a) | Sentence::BoxM(layer, a) => {
                if !self.logic.has_unary_modality() {
                    return Err(Error::Capability(format!(
                        "logic {} has no unary modality",
                        self.logic
                    )));
                }
                self.check_layer(*layer, inner)?;
                self.check(a, inner || *layer == 0)
            }
            Sentence::PolyDia(l, args) | Sentence::PolyBox(l, args) => {
                let arity = if self.logic.has_signature_modalities() {
                    self.sig.modalities.get(l).copied()
                } else if self.logic.has_predicate_modalities() {
                    self.sig.preds.get(l).and_then(|n| n.checked_sub(1)).filter(|n| *n >= 1)
                } else {
                    return Err(Error::Capability(format!(
                        "logic {} has no polyadic modalities",
                        self.logic
                    )));
                };
                match arity {
                    Some(n) if n == args.len() => {}
                    Some(n) => {
                        return Err(Error::Sentence(format!(
                            "modality `{l}` takes {n} arguments, got {}",
                            args.len()
                        )))
                    }
                    None => {
                        return Err(Error::Sentence(format!("unknown modality symbol `{l}`")))
                    }
                }
                args.iter().try_for_each(|a| self.check(a, inner))
            }
            Sentence::Nom(layer, i) => {
                if !caps.nominal {
                    return Err(Error::Capability(format!(
                        "logic {} has no nominal sentences",
                        self.logic
                    )));
                }
                self.check_layer(*layer, inner)?;
                self.nominal_declared(*layer, i)
            }
            Sentence::At(layer, i, a) => {
                if !caps.at {
                    return Err(Error::Capability(format!(
                        "logic {} has no satisfaction operator",
                        self.logic
                    )));
                }
                self.check_layer(*layer, inner)?;
                self.nominal_declared(*layer, i)?;
                self.check(a, inner || *layer == 0)
            }
            Sentence::ExistsVar(x, a) | Sentence::ForallVar(x, a) => {
                if !caps.exists_var {
                    return Err(Error::Capability(format!(
                        "logic {} has no variable quantifiers",
                        self.logic
                    )));
                }
                self.fresh(x)?;
                self.bound_vars.insert(x.clone());
                let r = self.check(a, inner);
                self.bound_vars.remove(x);
                r
            }
            Sentence::ExistsNom(layer, i, a) | Sentence::ForallNom(layer, i, a) => {
                if !caps.exists_nom {
                    return Err(Error::Capability(format!(
                        "logic {} has no nominal quantifiers",
                        self.logic
                    )));
                }
                self.check_layer(*layer, inner)?;
                self.fresh(i)?;
                self.bound_noms.insert(i.clone(), *layer);
                let r = self.check(a, inner);
                self.bound_noms.remove(i);
                r
            }
        }
    }
}

/// Well-formedness of a sentence for a logic instance over a signature:
/// capability admissibility, symbol/arity resolution, layer discipline, and
/// freshness of bound symbols.
pub fn check_sentence(logic: LogicId, sig: &SignatureDesc, s: &Sentence) -> Result<()> {
    let mut c = Checker {
        logic,
        sig,
        bound_vars: BTreeSet::new(),
        bound_noms: std::collections::BTreeMap::new(),
    };
    c.check(s, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hpl_sig() -> SignatureDesc {
        SignatureDesc {
            props: ["p".into()].into(),
            nominals: ["i".into()].into(),
            ..Default::default()
        }
    }

    #[test]
    fn mpl_rejects_quantifiers() {
        let sig = SignatureDesc {
            props: ["p".into()].into(),
            ..Default::default()
        };
        let s = Sentence::ExistsNom(1, "j".into(), Box::new(Sentence::Prop("p".into())));
        assert!(matches!(
            check_sentence(LogicId::Mpl, &sig, &s),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn bound_nominal_must_be_fresh() {
        let sig = hpl_sig();
        let s = Sentence::ExistsNom(1, "i".into(), Box::new(Sentence::Nom(1, "i".into())));
        assert!(check_sentence(LogicId::Hpl, &sig, &s).is_err());
        let ok = Sentence::ExistsNom(1, "j".into(), Box::new(Sentence::Nom(1, "j".into())));
        check_sentence(LogicId::Hpl, &sig, &ok).unwrap();
    }

    #[test]
    fn double_layer_rejects_outer_inside_inner() {
        let sig = SignatureDesc {
            props: ["p".into()].into(),
            nominals: ["i".into()].into(),
            outer_nominals: ["j".into()].into(),
            ..Default::default()
        };
        let bad = Sentence::Dia(0, Box::new(Sentence::Nom(1, "j".into())));
        assert!(check_sentence(LogicId::Hhpl, &sig, &bad).is_err());
        let good = Sentence::Dia(1, Box::new(Sentence::Nom(1, "j".into())));
        check_sentence(LogicId::Hhpl, &sig, &good).unwrap();
        let good0 = Sentence::Dia(0, Box::new(Sentence::Nom(0, "i".into())));
        check_sentence(LogicId::Hhpl, &sig, &good0).unwrap();
    }

    #[test]
    fn predicate_modality_arity_uses_one_extra_slot() {
        let sig = SignatureDesc {
            preds: [("r".into(), 2usize), ("q".into(), 1usize)].into(),
            vars: ["x".into()].into(),
            ..Default::default()
        };
        let s = Sentence::PolyDia(
            "r".into(),
            vec![Sentence::FolAtom("q".into(), vec![Term::Var("x".into())])],
        );
        check_sentence(LogicId::Mofol, &sig, &s).unwrap();
        // A unary predicate is not a modality: it has no argument slots left.
        let bad = Sentence::PolyDia("q".into(), vec![Sentence::FolAtom("q".into(), vec![Term::Var("x".into())])]);
        assert!(check_sentence(LogicId::Mofol, &sig, &bad).is_err());
    }
}
