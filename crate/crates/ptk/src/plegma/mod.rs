//! Plegma tuples: the predicate, enumeration inside a family and the
//! inverse of the union map.
//!
//! The elements of a plegma tuple interleave round by round:
//! `s_1(1) < ... < s_l(1) < s_1(2) < ... < s_l(2) < ...`, with components
//! dropping out once exhausted. Enumeration builds tuples in that order.

mod maps;
mod path;

use crate::error::{PtkError, Result};
use crate::families::FamilyDesc;
use crate::setcore::{FinSet, Window};

pub use maps::{check_plegma_map, MapVerdict, MapReport};
pub use path::{bfs_distance, plegma_path, three_plegma_path};

/// A tuple of nonempty sets, plegma when built by this module.
pub type PlegmaTuple = Vec<FinSet>;

fn pair_ok(a: &FinSet, b: &FinSet, ordered: bool) -> bool {
    let (x, y) = (a.elems(), b.elems());
    if ordered {
        for k in 0..x.len().min(y.len()) {
            if x[k] >= y[k] {
                return false;
            }
        }
    }
    // a(k) < b(k+1) for k ≤ min(|a|, |b|-1)
    for k in 0..x.len().min(y.len().saturating_sub(1)) {
        if x[k] >= y[k + 1] {
            return false;
        }
    }
    true
}

/// Both plegma clauses for the ordered pair `(a, b)`.
pub(crate) fn pair_plegma(a: &FinSet, b: &FinSet) -> bool {
    pair_ok(a, b, true) && pair_ok(b, a, false)
}

/// `s_i(k) < s_j(k)` for `i < j` and `s_i(k) < s_j(k+1)` for all `i, j`.
pub fn is_plegma(sets: &[FinSet]) -> Result<bool> {
    if sets.iter().any(|s| s.is_empty()) {
        return Err(PtkError::EmptyMember);
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if !pair_plegma(&sets[i], &sets[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Same as [`is_plegma`] but empty members simply fail.
pub fn plegma_or_false(sets: &[FinSet]) -> bool {
    is_plegma(sets).unwrap_or(false)
}

/// Union of a tuple.
pub fn union_of(tuple: &[FinSet]) -> FinSet {
    let mut v: Vec<u64> = tuple.iter().flat_map(|s| s.iter()).collect();
    v.sort_unstable();
    v.dedup();
    FinSet::from_sorted(v)
}

/// Calls `visit` on every plegma `l`-tuple of members of `F` drawn from
/// `candidates` (sorted). Visiting stops when `visit` returns false.
/// The order is by union, round-robin.
pub fn for_each_plm(
    f: &FamilyDesc,
    l: usize,
    candidates: &[u64],
    visit: &mut dyn FnMut(&[FinSet]) -> bool,
) -> Result<()> {
    if l == 0 {
        return Ok(());
    }
    let mut st = Enum {
        f,
        cand: candidates,
        comps: vec![Vec::new(); l],
        done: vec![false; l],
        visit,
    };
    st.round(0, 0)?;
    Ok(())
}

struct Enum<'a> {
    f: &'a FamilyDesc,
    cand: &'a [u64],
    comps: Vec<Vec<u64>>,
    done: Vec<bool>,
    visit: &'a mut dyn FnMut(&[FinSet]) -> bool,
}

impl Enum<'_> {
    /// Assigns the next element to component `i` of the current round.
    /// `from` indexes the first unused candidate. Returns false to stop.
    fn round(&mut self, i: usize, from: usize) -> Result<bool> {
        let l = self.comps.len();
        if i == l {
            if self.done.iter().all(|&d| d) {
                let t: Vec<FinSet> =
                    self.comps.iter().map(|c| FinSet::from_sorted(c.clone())).collect();
                return Ok((self.visit)(&t));
            }
            return self.round(0, from);
        }
        if self.done[i] {
            return self.round(i + 1, from);
        }
        // room for the remaining active components of this round
        let later = (i + 1..l).filter(|&j| !self.done[j]).count();
        let upper = self.cand.len().saturating_sub(later);
        for c in from..upper {
            let x = self.cand[c];
            self.comps[i].push(x);
            let cur = FinSet::from_sorted(self.comps[i].clone());
            if self.f.in_closure(&cur)? {
                if self.f.contains(&cur)? {
                    self.done[i] = true;
                    let go = self.round(i + 1, c + 1)?;
                    self.done[i] = false;
                    if !go {
                        self.comps[i].pop();
                        return Ok(false);
                    }
                }
                let go = self.round(i + 1, c + 1)?;
                if !go {
                    self.comps[i].pop();
                    return Ok(false);
                }
            }
            self.comps[i].pop();
        }
        Ok(true)
    }
}

/// Every plegma `l`-tuple of members of `F` inside `[1..N]`, sorted by the
/// concatenation of its members.
pub fn enumerate_plm(f: &FamilyDesc, l: usize, n: u64) -> Result<Vec<PlegmaTuple>> {
    let cand: Vec<u64> = (1..=n).collect();
    let mut out = Vec::new();
    for_each_plm(f, l, &cand, &mut |t| {
        out.push(t.to_vec());
        true
    })?;
    out.sort_by(|a, b| {
        let ca = a.iter().flat_map(|s| s.iter());
        let cb = b.iter().flat_map(|s| s.iter());
        ca.cmp(cb)
    });
    Ok(out)
}

/// Recovers the plegma `l`-tuple of members of thin `F` whose union is `u`.
pub fn tuple_from_union(f: &FamilyDesc, u: &FinSet, l: usize) -> Result<PlegmaTuple> {
    let fail = || PtkError::NotAPlegmaUnion(format!("{{{}}}", u));
    if l == 0 {
        return Err(fail());
    }
    let mut comps: Vec<Vec<u64>> = vec![Vec::new(); l];
    let mut done = vec![false; l];
    let mut it = u.iter();
    'outer: loop {
        let mut any = false;
        for i in 0..l {
            if done[i] {
                continue;
            }
            any = true;
            let Some(x) = it.next() else {
                break 'outer;
            };
            comps[i].push(x);
            if f.contains(&FinSet::from_sorted(comps[i].clone()))? {
                done[i] = true;
            }
        }
        if !any {
            break;
        }
    }
    if it.next().is_some() || done.iter().any(|d| !d) {
        return Err(fail());
    }
    let t: Vec<FinSet> = comps.into_iter().map(FinSet::from_sorted).collect();
    if !plegma_or_false(&t) {
        return Err(fail());
    }
    Ok(t)
}

/// `F↾↾L` inside `[1..N]`: members of `F` contained in `L` with an element
/// of `L` strictly between any two consecutive elements.
pub fn skipped_restriction(f: &FamilyDesc, l: &Window, n: u64) -> Result<Vec<FinSet>> {
    let cand: Vec<u64> = l.elems().iter().copied().filter(|&x| x <= n).collect();
    let mut out = Vec::new();
    f.walk(&cand, &mut |t, member| {
        if !is_skipped(t, l) {
            return Ok(crate::families::Walk::Prune);
        }
        if member && !t.is_empty() {
            out.push(t.clone());
        }
        Ok(crate::families::Walk::Descend)
    })?;
    Ok(out)
}

/// Positions of `t` in `L` are pairwise at distance at least two.
pub fn is_skipped(t: &FinSet, l: &Window) -> bool {
    let mut last: Option<usize> = None;
    for x in t.iter() {
        let Some(p) = l.position(x) else {
            return false;
        };
        if let Some(q) = last {
            if p < q + 2 {
                return false;
            }
        }
        last = Some(p);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::members;
    use crate::fs;

    #[test]
    fn predicate_examples() {
        assert!(is_plegma(&[fs![1], fs![2]]).unwrap());
        assert!(is_plegma(&[fs![1, 3], fs![2, 4]]).unwrap());
        assert!(!is_plegma(&[fs![2, 4], fs![1, 3]]).unwrap());
        assert!(!is_plegma(&[fs![1, 2], fs![3, 4]]).unwrap());
        assert!(is_plegma(&[fs![1], fs![2, 3]]).unwrap());
        assert!(is_plegma(&[fs![1, 3], fs![2]]).unwrap());
        assert!(!is_plegma(&[fs![1, 2], fs![3]]).unwrap());
        assert_eq!(is_plegma(&[fs![], fs![1]]), Err(PtkError::EmptyMember));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_plm(&FamilyDesc::k_subsets(1), 2, 3).unwrap().len(), 3);
        assert_eq!(
            enumerate_plm(&FamilyDesc::k_subsets(2), 2, 4).unwrap(),
            vec![vec![fs![1, 3], fs![2, 4]]]
        );
    }

    fn brute_pairs(f: &FamilyDesc, n: u64) -> Vec<PlegmaTuple> {
        let m = members(f, n).unwrap();
        let mut out = Vec::new();
        for a in &m {
            for b in &m {
                if !a.is_empty() && !b.is_empty() && is_plegma(&[a.clone(), b.clone()]).unwrap() {
                    out.push(vec![a.clone(), b.clone()]);
                }
            }
        }
        out.sort_by(|a, b| a.iter().flat_map(|s| s.iter()).cmp(b.iter().flat_map(|s| s.iter())));
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for f in [FamilyDesc::f_omega(), FamilyDesc::k_subsets(2), FamilyDesc::schreier(2)] {
            assert_eq!(enumerate_plm(&f, 2, 8).unwrap(), brute_pairs(&f, 8));
        }
        let e = FamilyDesc::explicit(vec![fs![1, 3], fs![2], fs![2, 4], fs![4]]).unwrap();
        assert_eq!(enumerate_plm(&e, 2, 6).unwrap(), brute_pairs(&e, 6));
    }

    #[test]
    fn union_round_trip() {
        assert_eq!(
            tuple_from_union(&FamilyDesc::k_subsets(2), &fs![1, 2, 3, 4], 2).unwrap(),
            vec![fs![1, 3], fs![2, 4]]
        );
        assert_eq!(
            tuple_from_union(&FamilyDesc::k_subsets(1), &fs![3, 5], 2).unwrap(),
            vec![fs![3], fs![5]]
        );
        let f = FamilyDesc::f_omega();
        for l in 1..=3 {
            for t in enumerate_plm(&f, l, 8).unwrap() {
                assert_eq!(tuple_from_union(&f, &union_of(&t), l).unwrap(), t);
            }
        }
        assert!(tuple_from_union(&FamilyDesc::k_subsets(2), &fs![1, 2, 3], 2).is_err());
    }

    #[test]
    fn skipped_examples() {
        let l = Window::identity(10);
        assert_eq!(
            skipped_restriction(&FamilyDesc::f_omega(), &l, 4).unwrap(),
            vec![fs![1], fs![2, 4]]
        );
        assert_eq!(
            skipped_restriction(&FamilyDesc::k_subsets(1), &Window::evens(5), 10).unwrap(),
            vec![fs![2], fs![4], fs![6], fs![8], fs![10]]
        );
        let got = skipped_restriction(&FamilyDesc::k_subsets(2), &Window::evens(4), 8).unwrap();
        assert_eq!(got, vec![fs![2, 6], fs![2, 8], fs![4, 8]]);
    }
}
