use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{closure, members, FamilyDesc};
use crate::error::{PtkError, Result};
use crate::setcore::FinSet;

/// Three-valued verdict. `UnknownAtHorizon` means no counterexample was
/// found inside the inspected range but one could exist beyond it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tri {
    Yes,
    No,
    UnknownAtHorizon,
}

impl Tri {
    pub fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::No, _) | (_, Tri::No) => Tri::No,
            (Tri::Yes, Tri::Yes) => Tri::Yes,
            _ => Tri::UnknownAtHorizon,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::UnknownAtHorizon => "unknown_at_horizon",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredicateReport {
    pub thin: Tri,
    pub hereditary: Tri,
    pub spreading: Tri,
    pub regular_thin: Tri,
    /// First counterexample per failed property.
    pub witnesses: BTreeMap<String, Vec<FinSet>>,
}

/// Thinness of `F` and heredity and spreading of `F̂`, checked inside `[1..N]`.
pub fn predicates(f: &FamilyDesc, n: u64) -> Result<PredicateReport> {
    match check(f, n) {
        Err(PtkError::HorizonRequired(_)) => Ok(PredicateReport {
            thin: Tri::UnknownAtHorizon,
            hereditary: Tri::UnknownAtHorizon,
            spreading: Tri::UnknownAtHorizon,
            regular_thin: Tri::UnknownAtHorizon,
            witnesses: BTreeMap::new(),
        }),
        r => r,
    }
}

fn check(f: &FamilyDesc, n: u64) -> Result<PredicateReport> {
    let mut witnesses = BTreeMap::new();
    let complete = f.element_bound().is_some_and(|b| b <= n);
    let complete_strict = f.element_bound().is_some_and(|b| b < n);

    let mem = members(f, n)?;
    let thin_violation = first_prefix_pair(&mem);
    let thin = match thin_violation {
        Some((a, b)) => {
            witnesses.insert("thin".to_string(), vec![a, b]);
            Tri::No
        }
        None if f.structurally_thin() || complete => Tri::Yes,
        None => Tri::UnknownAtHorizon,
    };

    let cl = closure(f, n)?;
    let set: BTreeSet<&FinSet> = cl.iter().collect();

    let mut hereditary = None;
    'h: for t in &cl {
        for i in 0..t.len() {
            let mut v = t.elems().to_vec();
            v.remove(i);
            let sub = FinSet::from_sorted(v);
            if !set.contains(&sub) {
                hereditary = Some(vec![t.clone(), sub]);
                break 'h;
            }
        }
    }
    let hereditary = match hereditary {
        Some(w) => {
            witnesses.insert("hereditary".to_string(), w);
            Tri::No
        }
        None if f.is_barrier() || complete => Tri::Yes,
        None => Tri::UnknownAtHorizon,
    };

    let mut spreading = None;
    's: for t in &cl {
        let e = t.elems();
        for i in 0..e.len() {
            let next = if i + 1 < e.len() { e[i + 1] } else { n + 1 };
            if e[i] + 1 < next {
                let mut v = e.to_vec();
                v[i] += 1;
                let sp = FinSet::from_sorted(v);
                if !set.contains(&sp) {
                    spreading = Some(vec![t.clone(), sp]);
                    break 's;
                }
            }
        }
    }
    let spreading = match spreading {
        Some(w) => {
            witnesses.insert("spreading".to_string(), w);
            Tri::No
        }
        None if f.closure_spreading() || complete_strict => Tri::Yes,
        None => Tri::UnknownAtHorizon,
    };

    Ok(PredicateReport {
        thin,
        hereditary,
        spreading,
        regular_thin: thin.and(hereditary).and(spreading),
        witnesses,
    })
}

/// First pair `(s, t)` of distinct members with `s ⊑ t`. Members come in
/// lexicographic order, so a prefix is immediately followed by its
/// extensions.
fn first_prefix_pair(mem: &[FinSet]) -> Option<(FinSet, FinSet)> {
    mem.windows(2)
        .find(|w| w[0].is_prefix_of(&w[1]))
        .map(|w| (w[0].clone(), w[1].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fs;

    #[test]
    fn schreier_is_regular_thin() {
        let r = predicates(&FamilyDesc::f_omega(), 8).unwrap();
        assert_eq!(r.thin, Tri::Yes);
        assert_eq!(r.regular_thin, Tri::Yes);
    }

    #[test]
    fn explicit_chain_not_thin() {
        let e = FamilyDesc::explicit(vec![fs![1], fs![1, 2]]).unwrap();
        let r = predicates(&e, 3).unwrap();
        assert_eq!(r.thin, Tri::No);
        assert_eq!(r.witnesses["thin"], vec![fs![1], fs![1, 2]]);
        assert_eq!(r.regular_thin, Tri::No);
    }

    #[test]
    fn k_subsets_spreading() {
        let r = predicates(&FamilyDesc::k_subsets(2), 6).unwrap();
        assert_eq!(r.thin, Tri::Yes);
        assert_eq!(r.spreading, Tri::Yes);
        assert_eq!(r.hereditary, Tri::Yes);
    }

    #[test]
    fn explicit_not_spreading_or_hereditary() {
        let e = FamilyDesc::explicit(vec![fs![2, 3]]).unwrap();
        let r = predicates(&e, 5).unwrap();
        assert_eq!(r.thin, Tri::Yes);
        assert_eq!(r.hereditary, Tri::No);
        assert_eq!(r.spreading, Tri::No);
    }

    #[test]
    fn unbounded_restriction_unknown() {
        let r = predicates(&FamilyDesc::explicit(vec![fs![1]]).unwrap().section(fs![1]), 4).unwrap();
        assert_eq!(r.thin, Tri::Yes);
        let e = FamilyDesc::f_omega().restrict(crate::setcore::Window::evens(3));
        let r = predicates(&e, 20).unwrap();
        assert_eq!(r.thin, Tri::UnknownAtHorizon);
    }
}
