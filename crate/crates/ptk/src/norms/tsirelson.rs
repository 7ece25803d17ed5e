//! `‖x‖ = max(‖x‖_∞, ½ sup Σ_{i≤d} ‖x|E_i‖)` over `E_1 < ... < E_d` with
//! `d ≤ min E_1`.
//!
//! Blocks may be taken as intervals of the support, except that the first
//! block starts exactly at a support point (a smaller start only tightens
//! `d ≤ min E_1`). This gives an exact interval DP.

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::numeric::{q_frac, Q};
use crate::error::{PtkError, Result};
use crate::setcore::FinSet;

/// A functional of the norming set: `±e*_s` or `½ Σ f_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeNode {
    Leaf(FinSet),
    Half(Vec<TreeNode>),
}

#[derive(Clone, Debug)]
enum Choice {
    Leaf(usize),
    Parts(Vec<(usize, usize)>),
}

/// Norm of the vector with absolute values `vals` at increasing basis
/// positions `pos`, with the tree of an optimal functional over item
/// indices.
pub(crate) fn tsirelson_dp(pos: &[u64], vals: &[Q]) -> (Q, Option<TreeNode>, Vec<usize>) {
    let n = vals.len();
    if n == 0 {
        return (Q::zero(), None, Vec::new());
    }
    let half = q_frac(1, 2);
    let mut norm: Vec<Vec<Q>> = vec![vec![Q::zero(); n]; n];
    let mut choice: Vec<Vec<Choice>> = vec![vec![Choice::Leaf(0); n]; n];
    for b in 0..n {
        // best[d][s]: best sum over partitions of [s..b] into at most d parts,
        // with the end of the first part when there are several
        let mut best: Vec<Vec<(Q, Option<usize>)>> = vec![vec![(Q::zero(), None); b + 1]; b + 2];
        for a in (0..=b).rev() {
            let len = b - a + 1;
            // norm of [a..b]
            let (mut inf, mut arg) = (Q::zero(), a);
            for (t, v) in vals.iter().enumerate().take(b + 1).skip(a) {
                if *v > inf {
                    inf = v.clone();
                    arg = t;
                }
            }
            let mut top = inf;
            let mut ch = Choice::Leaf(arg);
            if len > 1 {
                let mut cand: Option<(Q, usize, usize, Option<usize>)> = None;
                for s in a..=b {
                    let dcap = (pos[s] as usize).min(b - s + 1);
                    let val_cut = if s > a {
                        let (v, c) = &best[dcap][s];
                        Some((v.clone(), *c))
                    } else if dcap >= 2 {
                        // several parts, the first one proper
                        let mut bc: Option<(Q, usize)> = None;
                        for c in a..b {
                            let v = &norm[a][c] + &best[dcap - 1][c + 1].0;
                            if bc.as_ref().is_none_or(|(w, _)| v > *w) {
                                bc = Some((v, c));
                            }
                        }
                        bc.map(|(v, c)| (v, Some(c)))
                    } else {
                        None
                    };
                    if let Some((v, c)) = val_cut {
                        if cand.as_ref().is_none_or(|(w, ..)| v > *w) {
                            cand = Some((v, s, dcap, c));
                        }
                    }
                }
                if let Some((v, s, dcap, c)) = cand {
                    let v = v * &half;
                    if v > top {
                        top = v;
                        let parts = match (s > a, c) {
                            (true, _) => unwind(&best, s, dcap, b),
                            (false, Some(c)) => {
                                let mut p = vec![(a, c)];
                                p.extend(unwind(&best, c + 1, dcap - 1, b));
                                p
                            }
                            (false, None) => unreachable!("first part is proper"),
                        };
                        ch = Choice::Parts(parts);
                    }
                }
            }
            norm[a][b] = top;
            choice[a][b] = ch;

            best[1][a] = (norm[a][b].clone(), None);
            for d in 2..=len {
                let mut cur = best[d - 1][a].clone();
                for c in a..b {
                    let v = &norm[a][c] + &best[d - 1][c + 1].0;
                    if v > cur.0 {
                        cur = (v, Some(c));
                    }
                }
                best[d][a] = cur;
            }
            for d in len + 1..=b + 1 {
                best[d][a] = best[len][a].clone();
            }
        }
    }
    let top = norm[0][n - 1].clone();
    if top.is_zero() {
        return (top, None, Vec::new());
    }
    let tree = build(&choice, 0, n - 1);
    (top, Some(tree.0), tree.1)
}

fn unwind(best: &[Vec<(Q, Option<usize>)>], mut s: usize, mut d: usize, b: usize) -> Vec<(usize, usize)> {
    let mut parts = Vec::new();
    loop {
        match best[d][s].1 {
            None => {
                parts.push((s, b));
                return parts;
            }
            Some(c) => {
                parts.push((s, c));
                s = c + 1;
                d -= 1;
            }
        }
    }
}

/// Tree over item indices, encoded with `FinSet::singleton(index + 1)`
/// placeholders, plus the list of referenced indices.
fn build(choice: &[Vec<Choice>], a: usize, b: usize) -> (TreeNode, Vec<usize>) {
    match &choice[a][b] {
        Choice::Leaf(t) => (TreeNode::Leaf(FinSet::singleton(*t as u64 + 1)), vec![*t]),
        Choice::Parts(parts) => {
            let mut used = Vec::new();
            let kids = parts
                .iter()
                .map(|&(s, e)| {
                    let (k, u) = build(choice, s, e);
                    used.extend(u);
                    k
                })
                .collect();
            (TreeNode::Half(kids), used)
        }
    }
}

/// Replaces index placeholders by real coordinates.
pub(crate) fn relabel(node: &TreeNode, coords: &[FinSet]) -> TreeNode {
    match node {
        TreeNode::Leaf(s) => TreeNode::Leaf(coords[s.elems()[0] as usize - 1].clone()),
        TreeNode::Half(k) => TreeNode::Half(k.iter().map(|c| relabel(c, coords)).collect()),
    }
}

/// Value of a tree on `x`, checking membership in the norming set with
/// basis positions given by `pos`. Returns the value and the range of
/// positions used.
pub(crate) fn eval_tree(
    node: &TreeNode,
    x: &dyn Fn(&FinSet) -> Q,
    pos: &dyn Fn(&FinSet) -> Result<u64>,
) -> Result<(Q, u64, u64)> {
    let bad = |m: &str| PtkError::InvalidArgument(format!("witness is not a norming functional: {}", m));
    match node {
        TreeNode::Leaf(s) => {
            let p = pos(s)?;
            Ok((x(s).abs(), p, p))
        }
        TreeNode::Half(kids) => {
            if kids.is_empty() {
                return Err(bad("empty combination"));
            }
            let mut sum = Q::zero();
            let (mut first, mut prev, mut hi) = (0u64, 0u64, 0u64);
            for (i, k) in kids.iter().enumerate() {
                let (v, lo, h) = eval_tree(k, x, pos)?;
                if i == 0 {
                    first = lo;
                } else if lo <= prev {
                    return Err(bad("blocks are not successive"));
                }
                prev = h;
                hi = h;
                sum += v;
            }
            if kids.len() as u64 > first {
                return Err(bad("too many blocks for the first minimum"));
            }
            Ok((sum * q_frac(1, 2), first, hi))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::numeric::q;

    fn norm_of(pos: &[u64], vals: &[i64]) -> Q {
        let v: Vec<Q> = vals.iter().map(|&x| q(x)).collect();
        tsirelson_dp(pos, &v).0
    }

    #[test]
    fn admissible_sets() {
        assert_eq!(norm_of(&[3, 4, 5], &[1, 1, 1]), q_frac(3, 2));
        assert_eq!(norm_of(&[1, 2], &[1, 1]), q(1));
        assert_eq!(norm_of(&[2, 3], &[1, 1]), q(1));
        assert_eq!(norm_of(&[4, 5, 6, 7], &[1, 1, 1, 1]), q(2));
        assert_eq!(norm_of(&[7], &[5]), q(5));
    }

    #[test]
    fn tree_reevaluates() {
        let pos = [3u64, 4, 5, 9, 10];
        let v: Vec<Q> = [2, 1, 3, 1, 1].iter().map(|&x| q(x)).collect();
        let (val, tree, _) = tsirelson_dp(&pos, &v);
        let coords: Vec<FinSet> = pos.iter().map(|&p| FinSet::singleton(p)).collect();
        let tree = relabel(&tree.unwrap(), &coords);
        let x = |s: &FinSet| v[pos.iter().position(|&p| p == s.elems()[0]).unwrap()].clone();
        let (w, _, _) = eval_tree(&tree, &x, &|s: &FinSet| Ok(s.elems()[0])).unwrap();
        assert_eq!(w, val);
    }
}
