//! Model homomorphisms and their validation.

use crate::error::Result;
use crate::logic::LogicId;
use crate::model::{FolModel, KripkeModel, Model, State, WorldBase};
use crate::signature::SignatureDesc;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A homomorphism between two models of the same logic: a world map, a
/// carrier map where first-order data exists, and (double-layered logic) a
/// family of inner world maps indexed by source outer world.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelHom {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub world_map: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub carrier_map: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub inner_world_maps: BTreeMap<String, BTreeMap<String, String>>,
}

impl ModelHom {
    /// The identity homomorphism on a model.
    pub fn identity(model: &Model) -> ModelHom {
        let id = |s: &std::collections::BTreeSet<String>| {
            s.iter().map(|x| (x.clone(), x.clone())).collect::<BTreeMap<_, _>>()
        };
        match model {
            Model::Fol(m) => ModelHom {
                carrier_map: id(&m.carrier),
                ..Default::default()
            },
            Model::Kripke(k) => {
                let mut h = ModelHom {
                    world_map: id(&k.frame.worlds),
                    ..Default::default()
                };
                for (w, base) in &k.assignment {
                    match base {
                        WorldBase::Fol(m) => {
                            h.carrier_map = id(&m.carrier);
                        }
                        WorldBase::Inner(inner) => {
                            h.inner_world_maps.insert(w.clone(), id(&inner.frame.worlds));
                        }
                        WorldBase::Props(_) => {}
                    }
                }
                h
            }
        }
    }

    /// The action of the homomorphism on states.
    pub fn apply_state(&self, state: &State) -> Result<State> {
        match state {
            State::World(w) => self
                .world_map
                .get(w)
                .cloned()
                .map(State::World)
                .ok_or_else(|| crate::error::Error::State(format!("world `{w}` unmapped"))),
            State::Valuation(v) => {
                let mapped: Result<BTreeMap<String, String>> = v
                    .iter()
                    .map(|(x, a)| {
                        self.carrier_map
                            .get(a)
                            .cloned()
                            .map(|b| (x.clone(), b))
                            .ok_or_else(|| {
                                crate::error::Error::State(format!("element `{a}` unmapped"))
                            })
                    })
                    .collect();
                Ok(State::Valuation(mapped?))
            }
        }
    }
}

fn check_fol_hom(
    sig: &SignatureDesc,
    h: &BTreeMap<String, String>,
    src: &FolModel,
    tgt: &FolModel,
    ctx: &str,
    out: &mut Vec<String>,
) {
    for a in &src.carrier {
        match h.get(a) {
            None => out.push(format!("{ctx}: carrier element `{a}` unmapped")),
            Some(b) if !tgt.carrier.contains(b) => {
                out.push(format!("{ctx}: `{a}` maps outside the target carrier"))
            }
            _ => {}
        }
    }
    let map = |a: &String| h.get(a).cloned().unwrap_or_default();
    for (f, n) in &sig.funcs {
        let (Some(st), Some(tt)) = (src.funcs.get(f), tgt.funcs.get(f)) else {
            continue;
        };
        for (args, v) in st {
            if args.len() != *n {
                continue;
            }
            let margs: Vec<String> = args.iter().map(&map).collect();
            if tt.get(&margs) != Some(&map(v)) {
                out.push(format!(
                    "{ctx}: function `{f}` does not commute at {args:?}"
                ));
            }
        }
    }
    for (p, _) in &sig.preds {
        let (Some(st), Some(tt)) = (src.preds.get(p), tgt.preds.get(p)) else {
            continue;
        };
        for t in st {
            let mt: Vec<String> = t.iter().map(&map).collect();
            if !tt.contains(&mt) {
                out.push(format!("{ctx}: predicate `{p}` tuple {t:?} not preserved"));
            }
        }
    }
}

fn check_frame_hom(
    h: &BTreeMap<String, String>,
    src: &KripkeModel,
    tgt: &KripkeModel,
    nominal_strict: bool,
    ctx: &str,
    out: &mut Vec<String>,
) {
    for w in &src.frame.worlds {
        match h.get(w) {
            None => out.push(format!("{ctx}: world `{w}` unmapped")),
            Some(v) if !tgt.frame.worlds.contains(v) => {
                out.push(format!("{ctx}: world `{w}` maps outside the target"))
            }
            _ => {}
        }
    }
    let map = |w: &String| h.get(w).cloned().unwrap_or_default();
    for (l, tuples) in &src.frame.relations {
        let Some(tt) = tgt.frame.relations.get(l) else {
            out.push(format!("{ctx}: target lacks relation `{l}`"));
            continue;
        };
        for t in tuples {
            let mt: Vec<String> = t.iter().map(&map).collect();
            if !tt.contains(&mt) {
                out.push(format!("{ctx}: relation `{l}` tuple {t:?} not preserved"));
            }
        }
    }
    if nominal_strict {
        for (i, w) in &src.frame.nominal_interp {
            match tgt.frame.nominal_interp.get(i) {
                Some(v) if *v == map(w) => {}
                _ => out.push(format!("{ctx}: nominal `{i}` not preserved")),
            }
        }
    }
}

/// Checks the homomorphism conditions of `h` from `source` to `target`:
/// relation preservation, nominal preservation, per-world valuation
/// inclusion or first-order homomorphism conditions. Violations are data.
pub fn validate_hom(
    logic: LogicId,
    sig: &SignatureDesc,
    h: &ModelHom,
    source: &Model,
    target: &Model,
) -> Vec<String> {
    let mut out = Vec::new();
    match (source, target) {
        (Model::Fol(s), Model::Fol(t)) => {
            check_fol_hom(sig, &h.carrier_map, s, t, "carrier", &mut out);
        }
        (Model::Kripke(s), Model::Kripke(t)) => {
            check_frame_hom(&h.world_map, s, t, true, "frame", &mut out);
            for (w, base) in &s.assignment {
                let Some(hw) = h.world_map.get(w) else {
                    continue;
                };
                match (base, t.assignment.get(hw)) {
                    (WorldBase::Props(p), Some(WorldBase::Props(q))) => {
                        if !p.is_subset(q) {
                            out.push(format!(
                                "world `{w}`: valuation not included in target's at `{hw}`"
                            ));
                        }
                    }
                    (WorldBase::Fol(sm), Some(WorldBase::Fol(tm))) => {
                        check_fol_hom(sig, &h.carrier_map, sm, tm, &format!("world `{w}`"), &mut out);
                    }
                    (WorldBase::Inner(si), Some(WorldBase::Inner(ti))) => {
                        let Some(ih) = h.inner_world_maps.get(w) else {
                            out.push(format!("world `{w}`: inner world map missing"));
                            continue;
                        };
                        check_frame_hom(ih, si, ti, true, &format!("inner at `{w}`"), &mut out);
                        for (v, b) in &si.assignment {
                            let Some(hv) = ih.get(v) else { continue };
                            if let (WorldBase::Props(p), Some(WorldBase::Props(q))) =
                                (b, ti.assignment.get(hv))
                            {
                                if !p.is_subset(q) {
                                    out.push(format!(
                                        "inner at `{w}`, world `{v}`: valuation not included"
                                    ));
                                }
                            }
                        }
                    }
                    _ => out.push(format!("world `{w}`: base kinds do not match")),
                }
            }
        }
        _ => out.push(format!("model kinds do not match for logic {logic}")),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::{k1, mpl_sig_pq};

    #[test]
    fn identity_is_a_hom() {
        let m = k1();
        let h = ModelHom::identity(&m);
        assert!(validate_hom(LogicId::Mpl, &mpl_sig_pq(), &h, &m, &m).is_empty());
    }

    #[test]
    fn collapsing_map_violates_relation_preservation() {
        let m = k1();
        // Collapse both worlds to world 0, which has no reflexive edge.
        let h = ModelHom {
            world_map: [("0".to_string(), "0".to_string()), ("1".to_string(), "0".to_string())].into(),
            ..Default::default()
        };
        let v = validate_hom(LogicId::Mpl, &mpl_sig_pq(), &h, &m, &m);
        assert!(v.iter().any(|s| s.contains("not preserved")));
    }
}
