//! Direct and filtered products of models over finite index sets.
//!
//! Over a finite index set every filter is principal, so the directed
//! colimit defining the filtered product collapses: `M_F` is the direct
//! product over the minimal member `J_min`, and the colimit maps are state
//! projections onto the `J_min` coordinates.

use crate::error::{Error, Result};
use crate::filter::FilterRep;
use crate::hom::ModelHom;
use crate::logic::LogicId;
use crate::model::{
    all_valuations, ensure_valid, tuple_id, FolModel, Frame, KripkeModel, Model, State, WorldBase,
};
use crate::signature::SignatureDesc;
use itertools::Itertools;
use std::collections::{BTreeMap, BTreeSet};

/// A filtered product with its per-member products, projections, state
/// decodings and colimit maps.
#[derive(Debug, Clone)]
pub struct ProductResult {
    pub filter: FilterRep,
    /// The minimal member of the filter, ascending.
    pub j_min: Vec<usize>,
    /// `M_F`: the product over the minimal member.
    pub model: Model,
    /// `M_J` for every member `J` (keys ascending).
    pub products: BTreeMap<Vec<usize>, Model>,
    /// Factor projections `p_{J,i} : M_J -> M_i`.
    pub projections: BTreeMap<Vec<usize>, BTreeMap<usize, ModelHom>>,
    /// For each member, the bijection from states of `M_J` to tuples of
    /// factor states (in the order of `J`).
    pub state_decodes: BTreeMap<Vec<usize>, BTreeMap<State, Vec<State>>>,
    /// The state-level colimit maps `states(M_J) -> states(M_F)`.
    pub colimit_maps: BTreeMap<Vec<usize>, BTreeMap<State, State>>,
}

fn cartesian<T: Clone>(factors: &[Vec<T>]) -> Vec<Vec<T>> {
    // The empty product has exactly one (empty) tuple; multi_cartesian_product
    // yields none for an empty factor list.
    if factors.is_empty() {
        return vec![Vec::new()];
    }
    factors
        .iter()
        .map(|f| f.iter().cloned())
        .multi_cartesian_product()
        .collect()
}

/// Product of first-order models: tuple carrier, componentwise functions,
/// predicates holding exactly when they hold in every component. Also
/// returns the decode map from product elements to their components.
fn product_fol(factors: &[&FolModel]) -> (FolModel, BTreeMap<String, Vec<String>>) {
    let carriers: Vec<Vec<String>> = factors
        .iter()
        .map(|m| m.carrier.iter().cloned().collect())
        .collect();
    let elements = cartesian(&carriers);
    let decode: BTreeMap<String, Vec<String>> = elements
        .iter()
        .map(|e| (tuple_id(&e.iter().map(String::as_str).collect::<Vec<_>>()), e.clone()))
        .collect();
    let ids: Vec<String> = decode.keys().cloned().collect();
    let id_of = |comps: &[String]| tuple_id(&comps.iter().map(String::as_str).collect::<Vec<_>>());

    let mut funcs = BTreeMap::new();
    for f in factors[0].funcs.keys() {
        let arity = factors[0].funcs[f].keys().next().map(|k| k.len()).unwrap_or(0);
        let mut table = BTreeMap::new();
        for args in cartesian(&vec![ids.clone(); arity]) {
            let value: Vec<String> = factors
                .iter()
                .enumerate()
                .map(|(j, m)| {
                    let comp_args: Vec<String> = args.iter().map(|a| decode[a][j].clone()).collect();
                    m.funcs[f][&comp_args].clone()
                })
                .collect();
            table.insert(args, id_of(&value));
        }
        funcs.insert(f.clone(), table);
    }

    let mut preds = BTreeMap::new();
    for (p, tuples0) in &factors[0].preds {
        let arity = tuples0
            .iter()
            .next()
            .map(|t| t.len())
            .or_else(|| factors.iter().find_map(|m| m.preds[p].iter().next().map(|t| t.len())));
        let mut out: BTreeSet<Vec<String>> = BTreeSet::new();
        if let Some(arity) = arity {
            for args in cartesian(&vec![ids.clone(); arity]) {
                let holds = factors.iter().enumerate().all(|(j, m)| {
                    let comp: Vec<String> = args.iter().map(|a| decode[a][j].clone()).collect();
                    m.preds[p].contains(&comp)
                });
                if holds {
                    out.insert(args);
                }
            }
        }
        preds.insert(p.clone(), out);
    }

    (
        FolModel {
            carrier: ids.into_iter().collect(),
            funcs,
            preds,
        },
        decode,
    )
}

/// Product of Kripke models: tuple worlds, componentwise relations and
/// nominal interpretations, per-world base products.
fn product_kripke(
    factors: &[&KripkeModel],
) -> Result<(KripkeModel, BTreeMap<String, Vec<String>>, Vec<ModelHom>)> {
    let world_lists: Vec<Vec<String>> = factors
        .iter()
        .map(|k| k.frame.worlds.iter().cloned().collect())
        .collect();
    let tuples = cartesian(&world_lists);
    let decode: BTreeMap<String, Vec<String>> = tuples
        .iter()
        .map(|t| (tuple_id(&t.iter().map(String::as_str).collect::<Vec<_>>()), t.clone()))
        .collect();
    let id_of = |comps: &[&str]| tuple_id(comps);

    let mut relations: BTreeMap<String, BTreeSet<Vec<String>>> = BTreeMap::new();
    for l in factors[0].frame.relations.keys() {
        let factor_tuples: Vec<Vec<Vec<String>>> = factors
            .iter()
            .map(|k| k.frame.relations[l].iter().cloned().collect())
            .collect();
        let mut out = BTreeSet::new();
        for combo in cartesian(&factor_tuples) {
            let len = combo[0].len();
            if combo.iter().any(|t| t.len() != len) {
                continue;
            }
            let tuple: Vec<String> = (0..len)
                .map(|pos| id_of(&combo.iter().map(|t| t[pos].as_str()).collect::<Vec<_>>()))
                .collect();
            out.insert(tuple);
        }
        relations.insert(l.clone(), out);
    }

    let nominal_interp: BTreeMap<String, String> = factors[0]
        .frame
        .nominal_interp
        .keys()
        .map(|i| {
            let comps: Vec<&str> = factors
                .iter()
                .map(|k| k.frame.nominal_interp[i].as_str())
                .collect();
            (i.clone(), id_of(&comps))
        })
        .collect();

    let mut projections: Vec<ModelHom> = (0..factors.len())
        .map(|j| ModelHom {
            world_map: decode.iter().map(|(id, comps)| (id.clone(), comps[j].clone())).collect(),
            ..Default::default()
        })
        .collect();

    let mut assignment = BTreeMap::new();
    for (id, comps) in &decode {
        let bases: Vec<&WorldBase> = factors
            .iter()
            .zip(comps)
            .map(|(k, w)| {
                k.assignment
                    .get(w)
                    .ok_or_else(|| Error::Model(format!("world `{w}` has no base")))
            })
            .collect::<Result<_>>()?;
        let base = match bases[0] {
            WorldBase::Props(_) => {
                // p holds in the product world iff it holds in every
                // component world.
                let mut inter: Option<BTreeSet<String>> = None;
                for b in &bases {
                    let WorldBase::Props(p) = b else {
                        return Err(Error::Model("mixed base kinds in product factors".into()));
                    };
                    inter = Some(match inter {
                        None => p.clone(),
                        Some(acc) => acc.intersection(p).cloned().collect(),
                    });
                }
                WorldBase::Props(inter.unwrap_or_default())
            }
            WorldBase::Fol(_) => {
                let fols: Vec<&FolModel> = bases
                    .iter()
                    .map(|b| match b {
                        WorldBase::Fol(m) => Ok(m),
                        _ => Err(Error::Model("mixed base kinds in product factors".into())),
                    })
                    .collect::<Result<_>>()?;
                let (pm, pdecode) = product_fol(&fols);
                for (j, proj) in projections.iter_mut().enumerate() {
                    proj.carrier_map = pdecode
                        .iter()
                        .map(|(e, comps)| (e.clone(), comps[j].clone()))
                        .collect();
                }
                WorldBase::Fol(pm)
            }
            WorldBase::Inner(_) => {
                let inners: Vec<&KripkeModel> = bases
                    .iter()
                    .map(|b| match b {
                        WorldBase::Inner(m) => Ok(m),
                        _ => Err(Error::Model("mixed base kinds in product factors".into())),
                    })
                    .collect::<Result<_>>()?;
                let (im, idecode, _) = product_kripke(&inners)?;
                for (j, proj) in projections.iter_mut().enumerate() {
                    proj.inner_world_maps.insert(
                        id.clone(),
                        idecode.iter().map(|(e, comps)| (e.clone(), comps[j].clone())).collect(),
                    );
                }
                WorldBase::Inner(im)
            }
        };
        assignment.insert(id.clone(), base);
    }

    Ok((
        KripkeModel {
            frame: Frame {
                worlds: decode.keys().cloned().collect(),
                relations,
                nominal_interp,
            },
            assignment,
        },
        decode,
        projections,
    ))
}

/// Product of a family plus projections and the state decode map.
fn build_product(
    logic: LogicId,
    sig: &SignatureDesc,
    family: &[&Model],
) -> Result<(Model, Vec<ModelHom>, BTreeMap<State, Vec<State>>)> {
    for m in family {
        ensure_valid(logic, sig, m)?;
    }
    if family.is_empty() {
        return Err(Error::Model("product of an empty family".into()));
    }
    if logic.is_valuation_stratified() {
        let fols: Vec<&FolModel> = family.iter().map(|m| m.as_fol()).collect::<Result<_>>()?;
        let (pm, decode) = product_fol(&fols);
        let projections: Vec<ModelHom> = (0..family.len())
            .map(|j| ModelHom {
                carrier_map: decode.iter().map(|(e, c)| (e.clone(), c[j].clone())).collect(),
                ..Default::default()
            })
            .collect();
        // A product state (valuation into the tuple carrier) decodes to the
        // tuple of componentwise valuations.
        let mut state_decode = BTreeMap::new();
        for v in all_valuations(&sig.vars, &pm.carrier) {
            let comps: Vec<State> = (0..family.len())
                .map(|j| {
                    State::Valuation(
                        v.iter().map(|(x, e)| (x.clone(), decode[e][j].clone())).collect(),
                    )
                })
                .collect();
            state_decode.insert(State::Valuation(v), comps);
        }
        Ok((Model::Fol(pm), projections, state_decode))
    } else {
        let kripkes: Vec<&KripkeModel> =
            family.iter().map(|m| m.as_kripke()).collect::<Result<_>>()?;
        let (pk, decode, projections) = product_kripke(&kripkes)?;
        let state_decode = decode
            .iter()
            .map(|(id, comps)| {
                (
                    State::World(id.clone()),
                    comps.iter().cloned().map(State::World).collect(),
                )
            })
            .collect();
        let model = Model::Kripke(pk);
        ensure_valid(logic, sig, &model)?;
        Ok((model, projections, state_decode))
    }
}

/// The filtered product of a family indexed by the filter's index set (the
/// family slice is ordered by ascending index).
pub fn filtered_product(
    logic: LogicId,
    sig: &SignatureDesc,
    filter: &FilterRep,
    family: &[Model],
) -> Result<ProductResult> {
    filter.validate().map_err(|e| Error::Filter(format!("invalid filter: {e}")))?;
    if filter.index.len() != family.len() {
        return Err(Error::Filter(format!(
            "family has {} members but the index set has {}",
            family.len(),
            filter.index.len()
        )));
    }
    let index: Vec<usize> = filter.index.iter().copied().collect();
    let by_index: BTreeMap<usize, &Model> =
        index.iter().copied().zip(family.iter()).collect();

    let mut products = BTreeMap::new();
    let mut projections = BTreeMap::new();
    let mut state_decodes = BTreeMap::new();
    for j_set in &filter.members {
        let j: Vec<usize> = j_set.iter().copied().collect();
        let slice: Vec<&Model> = j.iter().map(|i| by_index[i]).collect();
        let (model, projs, decode) = build_product(logic, sig, &slice)?;
        projections.insert(j.clone(), j.iter().copied().zip(projs).collect::<BTreeMap<_, _>>());
        state_decodes.insert(j.clone(), decode);
        products.insert(j, model);
    }

    let j_min: Vec<usize> = filter
        .members
        .iter()
        .fold(filter.index.clone(), |acc, m| acc.intersection(m).copied().collect())
        .into_iter()
        .collect();
    let model = products[&j_min].clone();

    // Reverse index of M_F states by their component tuples.
    let encode_min: BTreeMap<Vec<State>, State> = state_decodes[&j_min]
        .iter()
        .map(|(s, comps)| (comps.clone(), s.clone()))
        .collect();
    let mut colimit_maps = BTreeMap::new();
    for (j, decode) in &state_decodes {
        let positions: Vec<usize> = j_min
            .iter()
            .map(|i| j.iter().position(|x| x == i).expect("j_min is a subset of every member"))
            .collect();
        let map: BTreeMap<State, State> = decode
            .iter()
            .map(|(s, comps)| {
                let restricted: Vec<State> =
                    positions.iter().map(|p| comps[*p].clone()).collect();
                (s.clone(), encode_min[&restricted].clone())
            })
            .collect();
        colimit_maps.insert(j.clone(), map);
    }

    Ok(ProductResult {
        filter: filter.clone(),
        j_min,
        model,
        products,
        projections,
        state_decodes,
        colimit_maps,
    })
}

/// The direct product: the `{I}`-filtered product over indices `1..=n`.
pub fn direct_product(
    logic: LogicId,
    sig: &SignatureDesc,
    family: &[Model],
) -> Result<ProductResult> {
    let index: BTreeSet<usize> = (1..=family.len()).collect();
    let filter = FilterRep {
        index: index.clone(),
        members: [index].into(),
    };
    filtered_product(logic, sig, &filter, family)
}

/// The filtered product of a pointed family: the product model pointed at
/// the image of the tuple state under the colimit map.
pub fn pointed_filtered_product(
    logic: LogicId,
    sig: &SignatureDesc,
    filter: &FilterRep,
    family: &[Model],
    states: &[State],
) -> Result<(crate::model::PointedModel, ProductResult)> {
    if states.len() != family.len() {
        return Err(Error::State("one state per family member is required".into()));
    }
    let result = filtered_product(logic, sig, filter, family)?;
    let full: Vec<usize> = filter.index.iter().copied().collect();
    let comps: Vec<State> = states.to_vec();
    let w_full = result.state_decodes[&full]
        .iter()
        .find(|(_, c)| **c == comps)
        .map(|(s, _)| s.clone())
        .ok_or_else(|| Error::State("no product state matches the given factor states".into()))?;
    let state = result.colimit_maps[&full][&w_full].clone();
    let pointed = crate::model::PointedModel::new(logic, sig, result.model.clone(), state)?;
    Ok((pointed, result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::make_filter;
    use crate::hom::validate_hom;
    use crate::model::fixtures::{k1, mpl_sig_pq};
    use crate::signature::DIST_MOD;

    /// Single reflexive world x where p and q hold.
    fn k3() -> Model {
        Model::Kripke(KripkeModel {
            frame: Frame {
                worlds: ["x".into()].into(),
                relations: [(DIST_MOD.to_string(), [vec!["x".to_string(), "x".to_string()]].into())].into(),
                nominal_interp: BTreeMap::new(),
            },
            assignment: [(
                "x".to_string(),
                WorldBase::Props(["p".to_string(), "q".to_string()].into()),
            )]
            .into(),
        })
    }

    #[test]
    fn direct_product_of_k1_and_k3() {
        let sig = mpl_sig_pq();
        let r = direct_product(LogicId::Mpl, &sig, &[k1(), k3()]).unwrap();
        let k = r.model.as_kripke().unwrap();
        assert_eq!(
            k.frame.worlds,
            BTreeSet::from(["(0,x)".to_string(), "(1,x)".to_string()])
        );
        assert_eq!(
            k.frame.relations[DIST_MOD],
            BTreeSet::from([vec!["(0,x)".to_string(), "(1,x)".to_string()]])
        );
        assert!(k.props_at("(0,x)").unwrap().is_empty());
        assert_eq!(k.props_at("(1,x)").unwrap(), &BTreeSet::from(["p".to_string()]));
        // Projections are homomorphisms.
        let full: Vec<usize> = vec![1, 2];
        let factors = [k1(), k3()];
        for (i, f) in full.iter().zip(factors.iter()) {
            let h = &r.projections[&full][i];
            assert!(validate_hom(LogicId::Mpl, &sig, h, &r.model, f).is_empty());
        }
    }

    #[test]
    fn principal_filter_collapses_to_j_min() {
        let sig = mpl_sig_pq();
        let idx: BTreeSet<usize> = [1, 2, 3].into();
        let f = make_filter(&idx, &[[1, 2].into()]).unwrap();
        let r = filtered_product(LogicId::Mpl, &sig, &f, &[k1(), k3(), k1()]).unwrap();
        assert_eq!(r.j_min, vec![1, 2]);
        // M_F is the product of the first two factors only.
        let k = r.model.as_kripke().unwrap();
        assert_eq!(k.frame.worlds.len(), 2);
        // The colimit map from the full product drops the third coordinate.
        let full = vec![1, 2, 3];
        let m = &r.colimit_maps[&full];
        assert_eq!(
            m[&State::World("(0,x,1)".to_string())],
            State::World("(0,x)".to_string())
        );
    }

    #[test]
    fn colimit_compatibility() {
        let sig = mpl_sig_pq();
        let idx: BTreeSet<usize> = [1, 2, 3].into();
        let f = make_filter(&idx, &[[2].into()]).unwrap();
        let r = filtered_product(LogicId::Mpl, &sig, &f, &[k1(), k3(), k1()]).unwrap();
        // For every pair J' ⊆ J, restricting J-states to J' then applying
        // the colimit map agrees with the direct colimit map.
        for (j, decode) in &r.state_decodes {
            for jp in r.state_decodes.keys() {
                if !jp.iter().all(|i| j.contains(i)) {
                    continue;
                }
                let positions: Vec<usize> =
                    jp.iter().map(|i| j.iter().position(|x| x == i).unwrap()).collect();
                let encode_jp: BTreeMap<Vec<State>, State> = r.state_decodes[jp]
                    .iter()
                    .map(|(s, c)| (c.clone(), s.clone()))
                    .collect();
                for (s, comps) in decode {
                    let restricted: Vec<State> =
                        positions.iter().map(|p| comps[*p].clone()).collect();
                    let via = &r.colimit_maps[jp][&encode_jp[&restricted]];
                    assert_eq!(via, &r.colimit_maps[j][s]);
                }
            }
        }
    }

    #[test]
    fn pointed_product_state_is_the_tuple() {
        let sig = mpl_sig_pq();
        let idx: BTreeSet<usize> = [1, 2].into();
        let f = make_filter(&idx, &[idx.clone()]).unwrap();
        let (pointed, _) = pointed_filtered_product(
            LogicId::Mpl,
            &sig,
            &f,
            &[k1(), k1()],
            &[State::World("0".into()), State::World("1".into())],
        )
        .unwrap();
        assert_eq!(pointed.state, State::World("(0,1)".to_string()));
    }
}
