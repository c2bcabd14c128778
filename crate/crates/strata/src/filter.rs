//! Proper filters over finite index sets, stored fully enumerated.
//!
//! Over a finite index set every filter is principal: it is the family of
//! all supersets of its minimal member, the intersection of all members.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Largest index-set size accepted by the enumeration operations.
pub const MAX_INDEX_SIZE: usize = 4;

/// A proper filter over a finite index set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterRep {
    pub index: BTreeSet<usize>,
    pub members: BTreeSet<BTreeSet<usize>>,
}

fn subsets(base: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let items: Vec<usize> = base.iter().copied().collect();
    let mut out = Vec::with_capacity(1 << items.len());
    for mask in 0u32..(1 << items.len()) {
        out.push(
            items
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, i)| *i)
                .collect(),
        );
    }
    out
}

fn upward_closure(index: &BTreeSet<usize>, min: &BTreeSet<usize>) -> BTreeSet<BTreeSet<usize>> {
    subsets(index).into_iter().filter(|s| min.is_subset(s)).collect()
}

impl FilterRep {
    /// The minimal member: the intersection of all members.
    pub fn j_min(&self) -> BTreeSet<usize> {
        let mut it = self.members.iter();
        let mut acc = it.next().cloned().unwrap_or_default();
        for m in it {
            acc = acc.intersection(m).copied().collect();
        }
        acc
    }

    /// Checks the filter invariants: the index set is a member, the empty
    /// set is not, and the family is closed under intersections and
    /// supersets.
    pub fn validate(&self) -> Result<()> {
        if self.index.is_empty() {
            return Err(Error::Filter("index set must be nonempty".into()));
        }
        if !self.members.contains(&self.index) {
            return Err(Error::Filter("the full index set must be a member".into()));
        }
        if self.members.iter().any(|m| m.is_empty()) {
            return Err(Error::Filter("the empty set may not be a member (properness)".into()));
        }
        for m in &self.members {
            if !m.is_subset(&self.index) {
                return Err(Error::Filter("members must be subsets of the index set".into()));
            }
            for n in &self.members {
                let inter: BTreeSet<usize> = m.intersection(n).copied().collect();
                if !self.members.contains(&inter) {
                    return Err(Error::Filter(format!(
                        "not intersection-closed: {m:?} ∩ {n:?} missing"
                    )));
                }
            }
            for s in subsets(&self.index) {
                if m.is_subset(&s) && !self.members.contains(&s) {
                    return Err(Error::Filter(format!("not superset-closed: {s:?} missing")));
                }
            }
        }
        Ok(())
    }
}

/// The least filter over `index` containing `generators`: the upward closure
/// of their intersection. Improper closures (empty intersection) are
/// rejected.
pub fn make_filter(
    index: &BTreeSet<usize>,
    generators: &[BTreeSet<usize>],
) -> Result<FilterRep> {
    if index.is_empty() {
        return Err(Error::Filter("index set must be nonempty".into()));
    }
    if generators.is_empty() {
        return Err(Error::Filter("at least one generator is required".into()));
    }
    for g in generators {
        if !g.is_subset(index) {
            return Err(Error::Filter(format!("generator {g:?} is not a subset of the index set")));
        }
    }
    let mut min = generators[0].clone();
    for g in &generators[1..] {
        min = min.intersection(g).copied().collect();
    }
    if min.is_empty() {
        return Err(Error::Filter(
            "generators have empty intersection; the generated filter would be improper".into(),
        ));
    }
    Ok(FilterRep {
        index: index.clone(),
        members: upward_closure(index, &min),
    })
}

/// Parses a filter literal: semicolon-separated member sets such as
/// `"{1,2};{1,2,3}"`. The index set is the union of the listed sets and the
/// family is closed upward automatically.
pub fn parse_filter_literal(text: &str) -> Result<FilterRep> {
    let mut generators: Vec<BTreeSet<usize>> = Vec::new();
    for part in text.split(';') {
        let part = part.trim();
        let inner = part
            .strip_prefix('{')
            .and_then(|p| p.strip_suffix('}'))
            .ok_or_else(|| Error::Filter(format!("expected a set like {{1,2}}, got `{part}`")))?;
        let mut set = BTreeSet::new();
        for item in inner.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let n: usize = item
                .parse()
                .map_err(|_| Error::Filter(format!("`{item}` is not an index element")))?;
            set.insert(n);
        }
        generators.push(set);
    }
    let index: BTreeSet<usize> = generators.iter().flatten().copied().collect();
    make_filter(&index, &generators)
}

/// The reduction `{I' ∩ X : X ∈ F}` of a filter to a nonempty subset of its
/// index set; fails if the reduction is improper.
pub fn reduce_filter(f: &FilterRep, sub_index: &BTreeSet<usize>) -> Result<FilterRep> {
    if sub_index.is_empty() || !sub_index.is_subset(&f.index) {
        return Err(Error::Filter("reduction requires a nonempty subset of the index set".into()));
    }
    let members: BTreeSet<BTreeSet<usize>> = f
        .members
        .iter()
        .map(|m| m.intersection(sub_index).copied().collect::<BTreeSet<usize>>())
        .collect();
    if members.iter().any(|m: &BTreeSet<usize>| m.is_empty()) {
        return Err(Error::Filter("reduction is improper (contains the empty set)".into()));
    }
    let reduced = FilterRep {
        index: sub_index.clone(),
        members,
    };
    // The reduction of a filter is again a filter; assert rather than trust.
    reduced.validate()?;
    Ok(reduced)
}

fn check_budget(index: &BTreeSet<usize>) -> Result<()> {
    if index.len() > MAX_INDEX_SIZE {
        return Err(Error::Filter(format!(
            "index sets larger than {MAX_INDEX_SIZE} exceed the enumeration budget"
        )));
    }
    Ok(())
}

/// Ultrafilter test straight from the definition: exactly one of `X`,
/// `I ∖ X` is a member, for every subset `X`.
pub fn is_ultrafilter(f: &FilterRep) -> Result<bool> {
    check_budget(&f.index)?;
    f.validate()?;
    for x in subsets(&f.index) {
        let co: BTreeSet<usize> = f.index.difference(&x).copied().collect();
        if f.members.contains(&x) == f.members.contains(&co) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All filters over `index`: one upward closure per nonempty minimal member.
pub fn enumerate_filters(index: &BTreeSet<usize>) -> Result<Vec<FilterRep>> {
    check_budget(index)?;
    Ok(subsets(index)
        .into_iter()
        .filter(|s| !s.is_empty())
        .map(|min| FilterRep {
            index: index.clone(),
            members: upward_closure(index, &min),
        })
        .collect())
}

/// The ultrafilters over `index`: exactly the principal filters at a point.
pub fn enumerate_ultrafilters(index: &BTreeSet<usize>) -> Result<Vec<FilterRep>> {
    check_budget(index)?;
    Ok(index
        .iter()
        .map(|i| FilterRep {
            index: index.clone(),
            members: upward_closure(index, &[*i].into()),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx() -> BTreeSet<usize> {
        [1, 2, 3].into()
    }

    #[test]
    fn generated_filter_is_the_upward_closure() {
        let f = make_filter(&idx(), &[[1, 2].into()]).unwrap();
        assert_eq!(
            f.members,
            BTreeSet::from([[1, 2].into(), [1, 2, 3].into()])
        );
        f.validate().unwrap();
        assert_eq!(f.j_min(), BTreeSet::from([1, 2]));
    }

    #[test]
    fn trivial_filter() {
        let f = make_filter(&idx(), &[idx()]).unwrap();
        assert_eq!(f.members, BTreeSet::from([idx()]));
    }

    #[test]
    fn improper_generators_rejected() {
        assert!(make_filter(&idx(), &[[1].into(), [2].into()]).is_err());
    }

    #[test]
    fn ultrafilter_detection() {
        let point = make_filter(&idx(), &[[2].into()]).unwrap();
        assert!(is_ultrafilter(&point).unwrap());
        let coarse = make_filter(&idx(), &[[1, 2].into()]).unwrap();
        assert!(!is_ultrafilter(&coarse).unwrap());
    }

    #[test]
    fn reduction() {
        let f = make_filter(&idx(), &[[1, 2].into()]).unwrap();
        let r = reduce_filter(&f, &[1, 2].into()).unwrap();
        assert_eq!(r.members, BTreeSet::from([[1, 2].into()]));
        let full = reduce_filter(&f, &idx()).unwrap();
        assert_eq!(full, f);
        let ultra = make_filter(&idx(), &[[2].into()]).unwrap();
        let r2 = reduce_filter(&ultra, &[2, 3].into()).unwrap();
        assert!(is_ultrafilter(&r2).unwrap());
        assert_eq!(r2.j_min(), BTreeSet::from([2]));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_filters(&idx()).unwrap().len(), 7);
        let ultras = enumerate_ultrafilters(&idx()).unwrap();
        assert_eq!(ultras.len(), 3);
        for u in &ultras {
            assert!(is_ultrafilter(u).unwrap());
        }
    }
}
