//! Concrete model data: frames, finite first-order models, per-world base
//! assignments, states, validation and isomorphism application.

use crate::error::{Error, Result};
use crate::logic::{FrameClass, LogicId};
use crate::signature::{SignatureDesc, DIST_MOD};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A frame: worlds, relation tuple sets keyed by modality symbol, and a
/// nominal interpretation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    pub worlds: BTreeSet<String>,
    /// Tuples of length arity+1; the distinguished unary modality is stored
    /// under [`DIST_MOD`] as binary tuples.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub relations: BTreeMap<String, BTreeSet<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub nominal_interp: BTreeMap<String, String>,
}

/// A finite first-order model with total function tables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FolModel {
    pub carrier: BTreeSet<String>,
    /// Function tables, serialized as `{func: [{args, value}, ...]}`.
    #[serde(
        default,
        skip_serializing_if = "BTreeMap::is_empty",
        with = "func_tables"
    )]
    pub funcs: BTreeMap<String, BTreeMap<Vec<String>, String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub preds: BTreeMap<String, BTreeSet<Vec<String>>>,
}

/// JSON form of function tables: entry lists instead of tuple-keyed maps.
mod func_tables {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        args: Vec<String>,
        value: String,
    }

    pub fn serialize<S: Serializer>(
        tables: &BTreeMap<String, BTreeMap<Vec<String>, String>>,
        ser: S,
    ) -> Result<S::Ok, S::Error> {
        let out: BTreeMap<&String, Vec<Entry>> = tables
            .iter()
            .map(|(f, t)| {
                (
                    f,
                    t.iter()
                        .map(|(args, value)| Entry {
                            args: args.clone(),
                            value: value.clone(),
                        })
                        .collect(),
                )
            })
            .collect();
        out.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> Result<BTreeMap<String, BTreeMap<Vec<String>, String>>, D::Error> {
        let raw: BTreeMap<String, Vec<Entry>> = BTreeMap::deserialize(de)?;
        Ok(raw
            .into_iter()
            .map(|(f, entries)| {
                (
                    f,
                    entries.into_iter().map(|e| (e.args, e.value)).collect(),
                )
            })
            .collect())
    }
}

impl FolModel {
    /// The value of an arity-0 function symbol.
    pub fn constant(&self, c: &str) -> Option<&String> {
        self.funcs.get(c).and_then(|t| t.get(&Vec::new()))
    }
}

/// What a world carries: a propositional valuation, a first-order model, or
/// an inner Kripke model (double-layered logic).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum WorldBase {
    Props(BTreeSet<String>),
    Fol(FolModel),
    Inner(KripkeModel),
}

impl WorldBase {
    pub fn as_fol_ref(&self) -> Option<&FolModel> {
        match self {
            WorldBase::Fol(m) => Some(m),
            _ => None,
        }
    }
    pub fn as_inner_ref(&self) -> Option<&KripkeModel> {
        match self {
            WorldBase::Inner(m) => Some(m),
            _ => None,
        }
    }
}

/// A Kripke model: a frame plus a base value for each world.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KripkeModel {
    pub frame: Frame,
    pub assignment: BTreeMap<String, WorldBase>,
}

impl KripkeModel {
    pub fn props_at(&self, w: &str) -> Option<&BTreeSet<String>> {
        match self.assignment.get(w) {
            Some(WorldBase::Props(p)) => Some(p),
            _ => None,
        }
    }
    pub fn fol_at(&self, w: &str) -> Option<&FolModel> {
        match self.assignment.get(w) {
            Some(WorldBase::Fol(m)) => Some(m),
            _ => None,
        }
    }
    pub fn inner_at(&self, w: &str) -> Option<&KripkeModel> {
        match self.assignment.get(w) {
            Some(WorldBase::Inner(m)) => Some(m),
            _ => None,
        }
    }
}

/// A model of any logic instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Model {
    Kripke(KripkeModel),
    Fol(FolModel),
}

impl Model {
    pub fn as_kripke(&self) -> Result<&KripkeModel> {
        match self {
            Model::Kripke(k) => Ok(k),
            Model::Fol(_) => Err(Error::Model("expected a Kripke model".into())),
        }
    }
    pub fn as_fol(&self) -> Result<&FolModel> {
        match self {
            Model::Fol(m) => Ok(m),
            Model::Kripke(_) => Err(Error::Model("expected a first-order model".into())),
        }
    }
}

/// A state of a model's stratification: a world id, or a valuation of the
/// signature's variable block.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum State {
    World(String),
    Valuation(BTreeMap<String, String>),
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            State::World(w) => f.write_str(w),
            State::Valuation(v) => {
                let parts: Vec<String> = v.iter().map(|(x, a)| format!("{x}={a}")).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl State {
    /// Parses the serialized form used on the command line: a world id
    /// verbatim, or `x=0,y=1` for a valuation.
    pub fn parse(logic: LogicId, text: &str) -> Result<State> {
        if logic.is_valuation_stratified() {
            let mut v = BTreeMap::new();
            if !text.is_empty() {
                for part in text.split(',') {
                    let (x, a) = part
                        .split_once('=')
                        .ok_or_else(|| Error::State(format!("expected `var=value`, got `{part}`")))?;
                    v.insert(x.trim().to_string(), a.trim().to_string());
                }
            }
            Ok(State::Valuation(v))
        } else {
            Ok(State::World(text.to_string()))
        }
    }

    pub fn as_world(&self) -> Result<&str> {
        match self {
            State::World(w) => Ok(w),
            State::Valuation(_) => Err(Error::State("expected a world state".into())),
        }
    }

    pub fn as_valuation(&self) -> Result<&BTreeMap<String, String>> {
        match self {
            State::Valuation(v) => Ok(v),
            State::World(_) => Err(Error::State("expected a valuation state".into())),
        }
    }
}

/// A model paired with a state of its stratification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedModel {
    pub model: Model,
    pub state: State,
}

impl PointedModel {
    pub fn new(logic: LogicId, sig: &SignatureDesc, model: Model, state: State) -> Result<Self> {
        let states = stratification(logic, sig, &model)?;
        if !states.contains(&state) {
            return Err(Error::State(format!(
                "state `{state}` is not in the model's stratification"
            )));
        }
        Ok(PointedModel { model, state })
    }
}

/// All valuations of `vars` into `carrier`, in lexicographic order.
pub fn all_valuations(
    vars: &BTreeSet<String>,
    carrier: &BTreeSet<String>,
) -> Vec<BTreeMap<String, String>> {
    let mut out = vec![BTreeMap::new()];
    for x in vars {
        let mut next = Vec::with_capacity(out.len() * carrier.len());
        for val in &out {
            for a in carrier {
                let mut v = val.clone();
                v.insert(x.clone(), a.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// The state set of a model: its (outer) worlds, or the valuations of the
/// signature's variable block into its carrier.
pub fn stratification(logic: LogicId, sig: &SignatureDesc, model: &Model) -> Result<Vec<State>> {
    ensure_valid(logic, sig, model)?;
    match model {
        Model::Kripke(k) => Ok(k.frame.worlds.iter().cloned().map(State::World).collect()),
        Model::Fol(m) => Ok(all_valuations(&sig.vars, &m.carrier)
            .into_iter()
            .map(State::Valuation)
            .collect()),
    }
}

/// Renames worlds, carrier elements, and (for the double-layered logic)
/// shared inner worlds. Every present map must be a bijection on the
/// corresponding set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Renaming {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub worlds: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub carrier: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub inner_worlds: BTreeMap<String, String>,
}

impl Renaming {
    pub fn inverse(&self) -> Renaming {
        let inv = |m: &BTreeMap<String, String>| m.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        Renaming {
            worlds: inv(&self.worlds),
            carrier: inv(&self.carrier),
            inner_worlds: inv(&self.inner_worlds),
        }
    }

    /// Image of a state under the renaming.
    pub fn apply_state(&self, state: &State) -> State {
        match state {
            State::World(w) => State::World(rename(&self.worlds, w)),
            State::Valuation(v) => State::Valuation(
                v.iter()
                    .map(|(x, a)| (x.clone(), rename(&self.carrier, a)))
                    .collect(),
            ),
        }
    }
}

fn rename(map: &BTreeMap<String, String>, x: &str) -> String {
    map.get(x).cloned().unwrap_or_else(|| x.to_string())
}

fn check_bijection(map: &BTreeMap<String, String>, domain: &BTreeSet<String>, what: &str) -> Result<()> {
    if map.is_empty() {
        return Ok(());
    }
    let keys: BTreeSet<&String> = map.keys().collect();
    let vals: BTreeSet<&String> = map.values().collect();
    let dom: BTreeSet<&String> = domain.iter().collect();
    if keys != dom || vals.len() != map.len() {
        return Err(Error::Model(format!("{what} map is not injective and total on the {what} set")));
    }
    Ok(())
}

fn rename_fol(m: &FolModel, carrier_map: &BTreeMap<String, String>) -> FolModel {
    FolModel {
        carrier: m.carrier.iter().map(|a| rename(carrier_map, a)).collect(),
        funcs: m
            .funcs
            .iter()
            .map(|(f, table)| {
                let t = table
                    .iter()
                    .map(|(args, v)| {
                        (
                            args.iter().map(|a| rename(carrier_map, a)).collect(),
                            rename(carrier_map, v),
                        )
                    })
                    .collect();
                (f.clone(), t)
            })
            .collect(),
        preds: m
            .preds
            .iter()
            .map(|(p, tuples)| {
                let t = tuples
                    .iter()
                    .map(|tp| tp.iter().map(|a| rename(carrier_map, a)).collect())
                    .collect();
                (p.clone(), t)
            })
            .collect(),
    }
}

fn rename_frame(f: &Frame, world_map: &BTreeMap<String, String>) -> Frame {
    Frame {
        worlds: f.worlds.iter().map(|w| rename(world_map, w)).collect(),
        relations: f
            .relations
            .iter()
            .map(|(l, tuples)| {
                let t = tuples
                    .iter()
                    .map(|tp| tp.iter().map(|w| rename(world_map, w)).collect())
                    .collect();
                (l.clone(), t)
            })
            .collect(),
        nominal_interp: f
            .nominal_interp
            .iter()
            .map(|(i, w)| (i.clone(), rename(world_map, w)))
            .collect(),
    }
}

/// Systematically renames a model along bijections of its worlds, carrier,
/// and (double-layered) inner worlds. `apply_iso` then the inverse renaming
/// yields the original model.
pub fn apply_iso(logic: LogicId, sig: &SignatureDesc, model: &Model, r: &Renaming) -> Result<Model> {
    ensure_valid(logic, sig, model)?;
    match model {
        Model::Fol(m) => {
            check_bijection(&r.carrier, &m.carrier, "carrier")?;
            Ok(Model::Fol(rename_fol(m, &r.carrier)))
        }
        Model::Kripke(k) => {
            check_bijection(&r.worlds, &k.frame.worlds, "world")?;
            if let Some(WorldBase::Fol(m)) = k.assignment.values().next() {
                check_bijection(&r.carrier, &m.carrier, "carrier")?;
            }
            if let Some(WorldBase::Inner(inner)) = k.assignment.values().next() {
                check_bijection(&r.inner_worlds, &inner.frame.worlds, "inner world")?;
            }
            let assignment = k
                .assignment
                .iter()
                .map(|(w, base)| {
                    let nb = match base {
                        WorldBase::Props(p) => WorldBase::Props(p.clone()),
                        WorldBase::Fol(m) => WorldBase::Fol(rename_fol(m, &r.carrier)),
                        WorldBase::Inner(inner) => WorldBase::Inner(KripkeModel {
                            frame: rename_frame(&inner.frame, &r.inner_worlds),
                            assignment: inner
                                .assignment
                                .iter()
                                .map(|(v, b)| (rename(&r.inner_worlds, v), b.clone()))
                                .collect(),
                        }),
                    };
                    (rename(&r.worlds, w), nb)
                })
                .collect();
            Ok(Model::Kripke(KripkeModel {
                frame: rename_frame(&k.frame, &r.worlds),
                assignment,
            }))
        }
    }
}

fn validate_fol(sig: &SignatureDesc, m: &FolModel, ctx: &str, out: &mut Vec<String>) {
    if m.carrier.is_empty() {
        out.push(format!("{ctx}: carrier must be nonempty"));
        return;
    }
    for (f, n) in &sig.funcs {
        match m.funcs.get(f) {
            None => out.push(format!("{ctx}: function `{f}` has no table")),
            Some(table) => {
                let mut expected = 1usize;
                for _ in 0..*n {
                    expected *= m.carrier.len();
                }
                if table.len() != expected {
                    out.push(format!(
                        "{ctx}: function `{f}` table has {} entries, expected {expected}",
                        table.len()
                    ));
                }
                for (args, v) in table {
                    if args.len() != *n {
                        out.push(format!("{ctx}: function `{f}` entry has wrong arity"));
                    }
                    if args.iter().any(|a| !m.carrier.contains(a)) || !m.carrier.contains(v) {
                        out.push(format!("{ctx}: function `{f}` entry uses non-carrier elements"));
                    }
                }
            }
        }
    }
    for f in m.funcs.keys() {
        if !sig.funcs.contains_key(f) {
            out.push(format!("{ctx}: undeclared function `{f}` interpreted"));
        }
    }
    for (p, n) in &sig.preds {
        match m.preds.get(p) {
            None => out.push(format!("{ctx}: predicate `{p}` has no tuple set")),
            Some(tuples) => {
                for t in tuples {
                    if t.len() != *n {
                        out.push(format!("{ctx}: predicate `{p}` tuple has wrong arity"));
                    }
                    if t.iter().any(|a| !m.carrier.contains(a)) {
                        out.push(format!("{ctx}: predicate `{p}` tuple uses non-carrier elements"));
                    }
                }
            }
        }
    }
    for p in m.preds.keys() {
        if !sig.preds.contains_key(p) {
            out.push(format!("{ctx}: undeclared predicate `{p}` interpreted"));
        }
    }
}

fn validate_frame(
    frame: &Frame,
    expected_rels: &BTreeMap<String, usize>,
    nominals: &BTreeSet<String>,
    ctx: &str,
    out: &mut Vec<String>,
) {
    if frame.worlds.is_empty() {
        out.push(format!("{ctx}: world set must be nonempty"));
    }
    for (l, arity) in expected_rels {
        match frame.relations.get(l) {
            None => out.push(format!("{ctx}: relation `{l}` missing")),
            Some(tuples) => {
                for t in tuples {
                    if t.len() != arity + 1 {
                        out.push(format!(
                            "{ctx}: relation `{l}` tuple {t:?} has length {}, expected {}",
                            t.len(),
                            arity + 1
                        ));
                    }
                    for w in t {
                        if !frame.worlds.contains(w) {
                            out.push(format!("{ctx}: relation `{l}` tuple {t:?} mentions unknown world `{w}`"));
                        }
                    }
                }
            }
        }
    }
    for l in frame.relations.keys() {
        if !expected_rels.contains_key(l) {
            out.push(format!("{ctx}: undeclared relation `{l}` present"));
        }
    }
    for i in nominals {
        match frame.nominal_interp.get(i) {
            None => out.push(format!("{ctx}: nominal `{i}` uninterpreted")),
            Some(w) => {
                if !frame.worlds.contains(w) {
                    out.push(format!("{ctx}: nominal `{i}` names unknown world `{w}`"));
                }
            }
        }
    }
    for i in frame.nominal_interp.keys() {
        if !nominals.contains(i) {
            out.push(format!("{ctx}: undeclared nominal `{i}` interpreted"));
        }
    }
}

fn check_frame_class(frame: &Frame, class: FrameClass, out: &mut Vec<String>) {
    let empty = BTreeSet::new();
    let rel = frame.relations.get(DIST_MOD).unwrap_or(&empty);
    let has = |a: &str, b: &str| rel.contains(&vec![a.to_string(), b.to_string()]);
    for w in &frame.worlds {
        if !has(w, w) {
            out.push(format!("frame class: reflexive pair ({w},{w}) missing"));
        }
    }
    if matches!(class, FrameClass::Preorder | FrameClass::Equivalence) {
        for t1 in rel {
            for t2 in rel {
                if t1.len() == 2 && t2.len() == 2 && t1[1] == t2[0] && !has(&t1[0], &t2[1]) {
                    out.push(format!(
                        "frame class: transitive pair ({},{}) missing",
                        t1[0], t2[1]
                    ));
                }
            }
        }
    }
    if matches!(class, FrameClass::Equivalence) {
        for t in rel {
            if t.len() == 2 && !has(&t[1], &t[0]) {
                out.push(format!("frame class: symmetric pair ({},{}) missing", t[1], t[0]));
            }
        }
    }
}

/// Expected relation arities for a logic's frames: the distinguished unary
/// modality and/or the signature's modality family.
pub fn expected_relations(logic: LogicId, sig: &SignatureDesc) -> BTreeMap<String, usize> {
    let mut rels = BTreeMap::new();
    if logic.has_unary_modality() {
        rels.insert(DIST_MOD.to_string(), 1);
    }
    if logic.has_signature_modalities() {
        for (l, n) in &sig.modalities {
            rels.insert(l.clone(), *n);
        }
    }
    rels
}

/// Structural validation. Returns the (possibly empty) list of violations;
/// violations are data, not errors. The frame-class check defaults to the
/// logic's own class and can be overridden.
pub fn validate_model(
    logic: LogicId,
    sig: &SignatureDesc,
    model: &Model,
    frame_class: Option<FrameClass>,
) -> Vec<String> {
    let mut out = Vec::new();
    if crate::signature::validate_signature(logic, sig).is_err() {
        out.push("signature is not well-formed for the logic".into());
        return out;
    }
    if logic.is_valuation_stratified() {
        match model {
            Model::Fol(m) => validate_fol(sig, m, "model", &mut out),
            Model::Kripke(_) => out.push("expected a first-order model".into()),
        }
        return out;
    }
    let k = match model {
        Model::Kripke(k) => k,
        Model::Fol(_) => {
            out.push("expected a Kripke model".into());
            return out;
        }
    };
    let outer_noms = if logic.is_double_layered() { &sig.outer_nominals } else { &sig.nominals };
    let no_noms = BTreeSet::new();
    let frame_noms = if logic.has_frame_nominals() && !logic.is_double_layered() {
        &sig.nominals
    } else if logic.is_double_layered() {
        outer_noms
    } else {
        &no_noms
    };
    validate_frame(&k.frame, &expected_relations(logic, sig), frame_noms, "frame", &mut out);
    if let Some(class) = frame_class.or_else(|| logic.frame_class()) {
        check_frame_class(&k.frame, class, &mut out);
    }
    for w in &k.frame.worlds {
        if !k.assignment.contains_key(w) {
            out.push(format!("world `{w}` has no base assignment"));
        }
    }
    for w in k.assignment.keys() {
        if !k.frame.worlds.contains(w) {
            out.push(format!("assignment mentions unknown world `{w}`"));
        }
    }
    let mut shared_fol: Option<(&BTreeSet<String>, BTreeMap<&String, &String>)> = None;
    let mut shared_inner: Option<(&BTreeSet<String>, &BTreeMap<String, String>)> = None;
    for (w, base) in &k.assignment {
        match base {
            WorldBase::Props(p) => {
                if !logic.has_props() || logic.is_double_layered() {
                    out.push(format!("world `{w}`: unexpected propositional base"));
                }
                for x in p {
                    if !sig.props.contains(x) {
                        out.push(format!("world `{w}`: undeclared proposition `{x}` holds"));
                    }
                }
            }
            WorldBase::Fol(m) => {
                if logic != LogicId::Mfol {
                    out.push(format!("world `{w}`: unexpected first-order base"));
                    continue;
                }
                validate_fol(sig, m, &format!("world `{w}`"), &mut out);
                let consts: BTreeMap<&String, &String> = sig
                    .constants()
                    .filter_map(|c| m.constant(c).map(|v| (c, v)))
                    .collect();
                match &shared_fol {
                    None => shared_fol = Some((&m.carrier, consts)),
                    Some((carrier, shared)) => {
                        if *carrier != &m.carrier {
                            out.push(format!("world `{w}`: carrier differs from other worlds (sharing violated)"));
                        }
                        if *shared != consts {
                            out.push(format!("world `{w}`: constant interpretation differs from other worlds (sharing violated)"));
                        }
                    }
                }
            }
            WorldBase::Inner(inner) => {
                if !logic.is_double_layered() {
                    out.push(format!("world `{w}`: unexpected inner Kripke base"));
                    continue;
                }
                let inner_rels: BTreeMap<String, usize> = [(DIST_MOD.to_string(), 1usize)].into();
                validate_frame(
                    &inner.frame,
                    &inner_rels,
                    &sig.nominals,
                    &format!("inner model at `{w}`"),
                    &mut out,
                );
                for (v, b) in &inner.assignment {
                    match b {
                        WorldBase::Props(p) => {
                            for x in p {
                                if !sig.props.contains(x) {
                                    out.push(format!(
                                        "inner model at `{w}`, world `{v}`: undeclared proposition `{x}`"
                                    ));
                                }
                            }
                        }
                        _ => out.push(format!(
                            "inner model at `{w}`, world `{v}`: inner bases must be propositional"
                        )),
                    }
                }
                for v in &inner.frame.worlds {
                    if !inner.assignment.contains_key(v) {
                        out.push(format!("inner model at `{w}`: world `{v}` has no valuation"));
                    }
                }
                match &shared_inner {
                    None => shared_inner = Some((&inner.frame.worlds, &inner.frame.nominal_interp)),
                    Some((worlds, noms)) => {
                        if *worlds != &inner.frame.worlds {
                            out.push(format!("inner model at `{w}`: inner world set differs (sharing violated)"));
                        }
                        if *noms != &inner.frame.nominal_interp {
                            out.push(format!(
                                "inner model at `{w}`: inner nominal interpretation differs (sharing violated)"
                            ));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Like `validate_model` but turns violations into a single error.
pub fn ensure_valid(logic: LogicId, sig: &SignatureDesc, model: &Model) -> Result<()> {
    let v = validate_model(logic, sig, model, None);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Model(v.join("; ")))
    }
}

/// Canonical product-world / product-element id.
pub fn tuple_id(parts: &[&str]) -> String {
    format!("({})", parts.join(","))
}

#[cfg(test)]
pub mod fixtures {
    use super::*;

    /// Two worlds 0,1; edge 0->1; p holds only at 1.
    pub fn k1() -> Model {
        let mut relations = BTreeMap::new();
        relations.insert(
            DIST_MOD.to_string(),
            [vec!["0".to_string(), "1".to_string()]].into(),
        );
        Model::Kripke(KripkeModel {
            frame: Frame {
                worlds: ["0".into(), "1".into()].into(),
                relations,
                nominal_interp: BTreeMap::new(),
            },
            assignment: [
                ("0".to_string(), WorldBase::Props(BTreeSet::new())),
                ("1".to_string(), WorldBase::Props(["p".to_string()].into())),
            ]
            .into(),
        })
    }

    pub fn mpl_sig_pq() -> SignatureDesc {
        SignatureDesc {
            props: ["p".into(), "q".into()].into(),
            ..Default::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn k1_is_valid_and_stratified_by_worlds() {
        let sig = mpl_sig_pq();
        let m = k1();
        assert!(validate_model(LogicId::Mpl, &sig, &m, None).is_empty());
        let states = stratification(LogicId::Mpl, &sig, &m).unwrap();
        assert_eq!(
            states,
            vec![State::World("0".into()), State::World("1".into())]
        );
    }

    #[test]
    fn k1_fails_reflexivity() {
        let sig = mpl_sig_pq();
        let v = validate_model(LogicId::Mpl, &sig, &k1(), Some(FrameClass::Reflexive));
        assert!(v.iter().any(|s| s.contains("(0,0)")));
    }

    #[test]
    fn ofol_stratification_counts_valuations() {
        let sig = SignatureDesc {
            preds: [("q".into(), 1usize)].into(),
            vars: ["x".into(), "y".into()].into(),
            ..Default::default()
        };
        let m = Model::Fol(FolModel {
            carrier: ["0".into(), "1".into()].into(),
            preds: [("q".into(), [vec!["1".to_string()]].into())].into(),
            ..Default::default()
        });
        let states = stratification(LogicId::Ofol, &sig, &m).unwrap();
        assert_eq!(states.len(), 4);
    }

    #[test]
    fn iso_round_trip() {
        let sig = mpl_sig_pq();
        let m = k1();
        let r = Renaming {
            worlds: [("0".to_string(), "1".to_string()), ("1".to_string(), "0".to_string())].into(),
            ..Default::default()
        };
        let renamed = apply_iso(LogicId::Mpl, &sig, &m, &r).unwrap();
        let k = renamed.as_kripke().unwrap();
        assert!(k.frame.relations[DIST_MOD].contains(&vec!["1".to_string(), "0".to_string()]));
        assert_eq!(k.props_at("0").unwrap(), &BTreeSet::from(["p".to_string()]));
        let back = apply_iso(LogicId::Mpl, &sig, &renamed, &r.inverse()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn mfol_constant_sharing_enforced() {
        let sig = SignatureDesc {
            funcs: [("c".into(), 0usize)].into(),
            preds: BTreeMap::new(),
            ..Default::default()
        };
        let fol = |cval: &str| FolModel {
            carrier: ["0".into(), "1".into()].into(),
            funcs: [("c".into(), [(vec![], cval.to_string())].into())].into(),
            preds: BTreeMap::new(),
        };
        let m = Model::Kripke(KripkeModel {
            frame: Frame {
                worlds: ["a".into(), "b".into()].into(),
                relations: [(DIST_MOD.to_string(), BTreeSet::new())].into(),
                nominal_interp: BTreeMap::new(),
            },
            assignment: [
                ("a".to_string(), WorldBase::Fol(fol("0"))),
                ("b".to_string(), WorldBase::Fol(fol("1"))),
            ]
            .into(),
        });
        let v = validate_model(LogicId::Mfol, &sig, &m, None);
        assert!(v.iter().any(|s| s.contains("sharing")));
    }
}
