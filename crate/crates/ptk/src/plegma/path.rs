use std::collections::VecDeque;

use super::{is_skipped, pair_plegma, plegma_or_false};
use crate::error::{PtkError, Result};
use crate::families::{members, FamilyDesc};
use crate::setcore::{FinSet, Window};

fn check_skipped(f: &FamilyDesc, l: &Window, s: &FinSet) -> Result<()> {
    if s.is_empty() || !is_skipped(s, l) || !f.contains(s)? {
        return Err(PtkError::NotInSkippedRestriction(format!("{{{}}}", s)));
    }
    Ok(())
}

/// `{L(n-1) : L(n) ∈ t}`.
fn shift_back(l: &Window, t: &[u64]) -> Result<Vec<u64>> {
    let mut v = Vec::with_capacity(t.len());
    for &x in t {
        let p = l
            .position(x)
            .ok_or_else(|| PtkError::NotInSkippedRestriction(format!("{}", x)))?;
        v.push(l.at(p - 1)?);
    }
    Ok(v)
}

/// The member of `F` that is an initial segment of `u` and strictly longer
/// than `min_len`.
fn initial_member(f: &FamilyDesc, u: &FinSet, min_len: usize) -> Result<FinSet> {
    for k in min_len + 1..=u.len() {
        let p = u.initial_segment(k)?;
        if f.contains(&p)? {
            return Ok(p);
        }
    }
    Err(PtkError::HorizonRequired(format!(
        "no initial segment of {{{}}} lies in the family inside the window",
        u
    )))
}

/// Path of length `|t|` from `t` (in the closure) to `s`, shifting one
/// position back along `L` at each step.
fn path_from(f: &FamilyDesc, l: &Window, t: &FinSet, s: &FinSet) -> Result<Vec<FinSet>> {
    if t.len() == 1 {
        return Ok(vec![t.clone(), s.clone()]);
    }
    let k = t.len() - 1;
    let t0 = FinSet::from_sorted(shift_back(l, &t.elems()[1..])?);
    let mut rest = path_from(f, l, &t0, s)?;
    let s1 = rest[1].clone();
    if s1.len() < k + 1 {
        return Err(PtkError::InvalidArgument(format!(
            "the family is not regular thin in the window: {{{}}} follows {{{}}}",
            s1, t0
        )));
    }
    let tail = shift_back(l, &s1.elems()[k..])?;
    let mut u = t0.elems().to_vec();
    u.extend(tail);
    let s0 = initial_member(f, &FinSet::new(u)?, k)?;
    rest[0] = s0;
    rest.insert(0, t.clone());
    Ok(rest)
}

/// A plegma path `(s0, s_1, ..., s_{k-1}, s)` with `k = |s0|` inside `F↾↾L`.
pub fn plegma_path(f: &FamilyDesc, l: &Window, s0: &FinSet, s: &FinSet) -> Result<Vec<FinSet>> {
    check_skipped(f, l, s0)?;
    check_skipped(f, l, s)?;
    if !s0.precedes(s) {
        return Err(PtkError::InvalidArgument(format!("{{{}}} < {{{}}} fails", s0, s)));
    }
    let path = path_from(f, l, s0, s)?;
    for w in path.windows(2) {
        if !plegma_or_false(w) {
            return Err(PtkError::InvalidArgument(format!(
                "the family is not regular thin in the window: ({{{}}}, {{{}}}) is not plegma",
                w[0], w[1]
            )));
        }
    }
    for p in &path {
        check_skipped(f, l, p)?;
    }
    Ok(path)
}

/// A path of length `2|s0|` in `F↾↾L` with every consecutive triple plegma;
/// `s0` and `s` must lie in `F↾↾L(2ℕ)`.
pub fn three_plegma_path(
    f: &FamilyDesc,
    l: &Window,
    s0: &FinSet,
    s: &FinSet,
) -> Result<Vec<FinSet>> {
    let even = l.even_positions()?;
    let base = plegma_path(f, &even, s0, s)?;
    let mut out = vec![base[0].clone()];
    for sj in &base[1..] {
        let back = FinSet::from_sorted(shift_back(l, sj.elems())?);
        out.push(initial_member(f, &back, 0)?);
        out.push(sj.clone());
    }
    for w in out.windows(3) {
        if !plegma_or_false(w) {
            return Err(PtkError::InvalidArgument(format!(
                "the family is not regular thin in the window: ({{{}}}, {{{}}}, {{{}}}) is not plegma",
                w[0], w[1], w[2]
            )));
        }
    }
    Ok(out)
}

/// Shortest plegma path length from `s0` to `s` in the digraph on the
/// members of `F` inside `[1..N]`, or `None` when unreachable.
pub fn bfs_distance(f: &FamilyDesc, n: u64, s0: &FinSet, s: &FinSet) -> Result<Option<usize>> {
    let verts: Vec<FinSet> = members(f, n)?.into_iter().filter(|t| !t.is_empty()).collect();
    let idx = |t: &FinSet| {
        verts
            .binary_search(t)
            .map_err(|_| PtkError::NotMember(format!("{{{}}}", t)))
    };
    let (a, b) = (idx(s0)?, idx(s)?);
    let mut dist = vec![usize::MAX; verts.len()];
    dist[a] = 0;
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        if v == b {
            return Ok(Some(dist[v]));
        }
        for w in 0..verts.len() {
            if dist[w] == usize::MAX && pair_plegma(&verts[v], &verts[w]) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fs;
    use crate::plegma::skipped_restriction;

    #[test]
    fn k_subsets_path() {
        let f = FamilyDesc::k_subsets(2);
        let l = Window::identity(20);
        let p = plegma_path(&f, &l, &fs![1, 3], &fs![5, 7]).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p[0], fs![1, 3]);
        assert_eq!(p[2], fs![5, 7]);
        assert_eq!(bfs_distance(&f, 8, &fs![1, 3], &fs![5, 7]).unwrap(), Some(2));
    }

    #[test]
    fn singleton_path() {
        let f = FamilyDesc::k_subsets(1);
        let p = plegma_path(&f, &Window::identity(10), &fs![2], &fs![9]).unwrap();
        assert_eq!(p, vec![fs![2], fs![9]]);
        assert_eq!(bfs_distance(&f, 9, &fs![2], &fs![9]).unwrap(), Some(1));
    }

    #[test]
    fn unreachable_backwards() {
        let f = FamilyDesc::k_subsets(2);
        assert_eq!(bfs_distance(&f, 4, &fs![2, 4], &fs![1, 3]).unwrap(), None);
        assert!(matches!(bfs_distance(&f, 4, &fs![1], &fs![1, 3]), Err(PtkError::NotMember(_))));
    }

    #[test]
    fn schreier_path() {
        let f = FamilyDesc::f_omega();
        let l = Window::identity(30);
        let p = plegma_path(&f, &l, &fs![2, 5], &fs![8, 11, 13, 15, 17, 19, 21, 23]).unwrap();
        assert_eq!(p.len(), 3);
        assert!(plegma_path(&f, &l, &fs![2, 3], &fs![8, 10]).is_err());
    }

    #[test]
    fn distances_equal_length_on_all_pairs() {
        let l = Window::identity(12);
        for f in [FamilyDesc::k_subsets(2), FamilyDesc::k_subsets(3), FamilyDesc::f_omega()] {
            let sk = skipped_restriction(&f, &l, 12).unwrap();
            for a in &sk {
                for b in &sk {
                    if !a.precedes(b) {
                        continue;
                    }
                    let p = plegma_path(&f, &l, a, b).unwrap();
                    assert_eq!(p.len(), a.len() + 1);
                }
            }
        }
    }

    #[test]
    fn triple_paths() {
        let l = Window::identity(40);
        let f = FamilyDesc::k_subsets(1);
        let p = three_plegma_path(&f, &l, &fs![2], &fs![6]).unwrap();
        assert_eq!(p.len(), 3);
        let f = FamilyDesc::k_subsets(2);
        let p = three_plegma_path(&f, &l, &fs![2, 6], &fs![10, 14]).unwrap();
        assert_eq!(p.len(), 5);
        let f = FamilyDesc::f_omega();
        let s = FinSet::new((0..10).map(|i| 10 + 4 * i).collect()).unwrap();
        let p = three_plegma_path(&f, &Window::identity(60), &fs![2, 6], &s).unwrap();
        assert_eq!(p.len(), 5);
    }
}
