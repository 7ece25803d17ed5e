use serde::Serialize;

use super::{for_each_plm, plegma_or_false};
use crate::error::Result;
use crate::families::{members, FamilyDesc};
use crate::setcore::FinSet;

/// Strongest class a map falls in, from weakest to strongest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapVerdict {
    None,
    Preserving,
    Monotone,
    Canonical,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapReport {
    pub verdict: MapVerdict,
    /// The first pair (or single member) breaking the next stronger class.
    pub witness: Option<Vec<FinSet>>,
    pub pairs_checked: u64,
}

/// Classifies `phi` on the plegma pairs of members of `F` inside `[1..N]`.
pub fn check_plegma_map(
    f: &FamilyDesc,
    n: u64,
    phi: &dyn Fn(&FinSet) -> Result<FinSet>,
) -> Result<MapReport> {
    let mut not_preserving = None;
    let mut not_monotone = None;
    let mut not_canonical = None;
    let mut checked = 0u64;
    let mut err = None;

    for s in members(f, n)? {
        if s.is_empty() {
            continue;
        }
        let im = phi(&s)?;
        if im.len() > s.len() && not_canonical.is_none() {
            not_canonical = Some(vec![s.clone()]);
        }
    }

    let cand: Vec<u64> = (1..=n).collect();
    for_each_plm(f, 2, &cand, &mut |t| {
        checked += 1;
        let (a, b) = match (phi(&t[0]), phi(&t[1])) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                err = Some(e);
                return false;
            }
        };
        let fwd = plegma_or_false(&[a.clone(), b.clone()]);
        let back = plegma_or_false(&[b.clone(), a.clone()]);
        if !fwd && !back && not_preserving.is_none() {
            not_preserving = Some(t.to_vec());
        }
        if !fwd && not_monotone.is_none() {
            not_monotone = Some(t.to_vec());
        }
        if a.len() > b.len() && not_canonical.is_none() {
            not_canonical = Some(t.to_vec());
        }
        not_preserving.is_none()
    })?;
    if let Some(e) = err {
        return Err(e);
    }

    let (verdict, witness) = if not_preserving.is_some() {
        (MapVerdict::None, not_preserving)
    } else if not_monotone.is_some() {
        (MapVerdict::Preserving, not_monotone)
    } else if not_canonical.is_some() {
        (MapVerdict::Monotone, not_canonical)
    } else {
        (MapVerdict::Canonical, None)
    };
    Ok(MapReport { verdict, witness, pairs_checked: checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fs;

    #[test]
    fn identity_is_canonical() {
        let r = check_plegma_map(&FamilyDesc::k_subsets(2), 8, &|s| Ok(s.clone())).unwrap();
        assert_eq!(r.verdict, MapVerdict::Canonical);
        assert!(r.witness.is_none());
    }

    #[test]
    fn constant_is_nothing() {
        let r = check_plegma_map(&FamilyDesc::k_subsets(2), 8, &|_| Ok(fs![1, 2])).unwrap();
        assert_eq!(r.verdict, MapVerdict::None);
        assert_eq!(r.witness, Some(vec![fs![1, 3], fs![2, 4]]));
    }

    #[test]
    fn doubling_map_breaks_plegma() {
        // ({2a,2a+1},{2b,2b+1}) fails 2b < 2a+1, and the reverse fails 2b < 2a
        let phi = |s: &FinSet| {
            let n = s.at(1).unwrap();
            FinSet::new(vec![2 * n, 2 * n + 1])
        };
        let r = check_plegma_map(&FamilyDesc::k_subsets(1), 10, &phi).unwrap();
        assert_eq!(r.verdict, MapVerdict::None);
        assert_eq!(r.witness, Some(vec![fs![1], fs![2]]));
    }

    #[test]
    fn reversal_is_preserving_only() {
        // s ↦ {N+1-s}: reverses plegma pairs of singletons
        let phi = |s: &FinSet| FinSet::new(vec![11 - s.at(1).unwrap()]);
        let r = check_plegma_map(&FamilyDesc::k_subsets(1), 10, &phi).unwrap();
        assert_eq!(r.verdict, MapVerdict::Preserving);
    }

    #[test]
    fn growing_map_is_monotone() {
        let phi = |s: &FinSet| {
            let n = s.at(1).unwrap();
            FinSet::new(vec![n * 10, n * 10 + 100])
        };
        let r = check_plegma_map(&FamilyDesc::k_subsets(1), 5, &phi).unwrap();
        assert_eq!(r.verdict, MapVerdict::Monotone);
    }
}
