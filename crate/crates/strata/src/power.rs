//! The X-power of a first-order model: the semantic backbone of the
//! valuation-stratified logics.

use crate::error::{Error, Result};
use crate::model::{all_valuations, FolModel, State};
use std::collections::{BTreeMap, BTreeSet};

/// The power of a base model by a variable block: carrier = valuations of
/// the block into the base carrier, functions pointwise, predicates holding
/// exactly when they hold at every block position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerModel {
    pub model: FolModel,
    /// Decodes a power-carrier element id back to the valuation it names.
    pub points: BTreeMap<String, BTreeMap<String, String>>,
}

fn point_id(v: &BTreeMap<String, String>) -> String {
    State::Valuation(v.clone()).to_string()
}

/// Builds the X-power of `base`.
pub fn power_model(base: &FolModel, exponent: &BTreeSet<String>) -> Result<PowerModel> {
    if exponent.is_empty() {
        return Err(Error::Bounds("power exponent must be nonempty".into()));
    }
    let valuations = all_valuations(exponent, &base.carrier);
    let points: BTreeMap<String, BTreeMap<String, String>> =
        valuations.iter().map(|v| (point_id(v), v.clone())).collect();
    let carrier: BTreeSet<String> = points.keys().cloned().collect();

    let mut funcs = BTreeMap::new();
    for (f, table) in &base.funcs {
        let arity = table.keys().next().map(|k| k.len()).unwrap_or(0);
        let mut ptable: BTreeMap<Vec<String>, String> = BTreeMap::new();
        let mut args_tuples: Vec<Vec<&BTreeMap<String, String>>> = vec![Vec::new()];
        for _ in 0..arity {
            let mut next = Vec::new();
            for t in &args_tuples {
                for v in &valuations {
                    let mut t2 = t.clone();
                    t2.push(v);
                    next.push(t2);
                }
            }
            args_tuples = next;
        }
        for args in args_tuples {
            // Pointwise application: the result at x is f of the arguments
            // at x.
            let result: BTreeMap<String, String> = exponent
                .iter()
                .map(|x| {
                    let base_args: Vec<String> = args.iter().map(|v| v[x].clone()).collect();
                    (x.clone(), table[&base_args].clone())
                })
                .collect();
            ptable.insert(args.iter().map(|v| point_id(v)).collect(), point_id(&result));
        }
        funcs.insert(f.clone(), ptable);
    }

    let mut preds = BTreeMap::new();
    for (p, tuples) in &base.preds {
        let arity = tuples.iter().next().map(|t| t.len());
        let mut ptuples: BTreeSet<Vec<String>> = BTreeSet::new();
        if let Some(arity) = arity {
            let mut args_tuples: Vec<Vec<&BTreeMap<String, String>>> = vec![Vec::new()];
            for _ in 0..arity {
                let mut next = Vec::new();
                for t in &args_tuples {
                    for v in &valuations {
                        let mut t2 = t.clone();
                        t2.push(v);
                        next.push(t2);
                    }
                }
                args_tuples = next;
            }
            for args in args_tuples {
                let holds = exponent.iter().all(|x| {
                    let base_args: Vec<String> = args.iter().map(|v| v[x].clone()).collect();
                    tuples.contains(&base_args)
                });
                if holds {
                    ptuples.insert(args.iter().map(|v| point_id(v)).collect());
                }
            }
        }
        preds.insert(p.clone(), ptuples);
    }

    Ok(PowerModel {
        model: FolModel { carrier, funcs, preds },
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> FolModel {
        FolModel {
            carrier: ["0".into(), "1".into()].into(),
            funcs: [("c".into(), [(vec![], "0".to_string())].into())].into(),
            preds: [("r".into(), [vec!["0".to_string(), "1".to_string()]].into())].into(),
        }
    }

    #[test]
    fn singleton_power_matches_base_shape() {
        let p = power_model(&base(), &["x".to_string()].into()).unwrap();
        assert_eq!(p.model.carrier.len(), 2);
        assert_eq!(p.model.preds["r"].len(), 1);
        assert!(p.model.preds["r"].contains(&vec!["x=0".to_string(), "x=1".to_string()]));
    }

    #[test]
    fn pair_power_relation_is_componentwise() {
        let x: BTreeSet<String> = ["x".to_string(), "y".to_string()].into();
        let p = power_model(&base(), &x).unwrap();
        assert_eq!(p.model.carrier.len(), 4);
        let r = &p.model.preds["r"];
        // Membership is componentwise: it must hold at x and at y.
        assert!(r.contains(&vec!["x=0,y=0".to_string(), "x=1,y=1".to_string()]));
        assert!(!r.contains(&vec!["x=0,y=1".to_string(), "x=1,y=0".to_string()]));
        assert!(!r.contains(&vec!["x=0,y=0".to_string(), "x=0,y=0".to_string()]));
        // The constant becomes the constant valuation.
        assert_eq!(p.model.funcs["c"][&Vec::new()], "x=0,y=0");
    }
}
