//! Exhaustive norms for supports of at most eight coordinates.
//!
//! Each kind enumerates its norming set directly from the definitions and
//! shares nothing with the search in `eval` beyond the vector type.

use std::cmp::Ordering;
use std::collections::HashMap;

use num::{Signed, ToPrimitive, Zero};

use super::eval::{BaseWitness, NormResult, ProjectionLevel, Witness};
use super::mixed::{MixedNode, MixedRules};
use super::numeric::{q_frac, q_to_f64, Surd, Q};
use super::space::{basis_cmp, QpBase, QpParams, SpaceDesc, SpaceVec};
use super::tsirelson::TreeNode;
use crate::error::{PtkError, Result};
use crate::families::{members, FamilyDesc};
use crate::setcore::FinSet;

pub const BRUTE_MAX_SUPPORT: usize = 8;

pub fn brute_force_norm(x: &SpaceVec) -> Result<NormResult> {
    x.space().validate()?;
    let n = x.support_len();
    if n > BRUTE_MAX_SUPPORT {
        return Err(PtkError::SupportTooLarge(n));
    }
    if n == 0 {
        return Ok(NormResult::exact(Surd::zero(), Witness::Zero));
    }
    let coords = x.support();
    let vals: Vec<Q> = x.entries().values().map(|c| c.abs()).collect();
    Ok(match x.space() {
        SpaceDesc::Tsirelson => {
            let pos: Vec<u64> = coords.iter().map(|s| s.elems()[0]).collect();
            let (v, tree) = tsirelson_brute(&pos, &vals, &coords);
            NormResult::exact(Surd::from_rational(&v), Witness::Tree { tree })
        }
        SpaceDesc::MixedW(rules) => mixed_brute(rules, &vals, &coords),
        SpaceDesc::Qp(p) => qp_brute(p, &vals, &coords)?,
        space => blocks_brute(space, &vals, &coords),
    })
}

/// Plegma straight from the definition, ordering the sets by first element.
fn plegma_direct(sets: &[&FinSet]) -> bool {
    let mut v: Vec<&FinSet> = sets.to_vec();
    v.sort_by_key(|s| s.elems()[0]);
    let l = v.len();
    for i in 0..l {
        for j in 0..l {
            let (a, b) = (v[i].elems(), v[j].elems());
            for k in 0..a.len() {
                if i < j && k < b.len() && a[k] >= b[k] {
                    return false;
                }
                if k + 1 < a.len() && k < b.len() && b[k] >= a[k + 1] {
                    return false;
                }
            }
        }
    }
    true
}

fn subset(coords: &[FinSet], mask: u32) -> Vec<&FinSet> {
    (0..coords.len()).filter(|i| mask >> i & 1 == 1).map(|i| &coords[i]).collect()
}

/// Some `F_0 < ... < F_k`, all of size `m ≤ min F_0`, with `E ⊆ F_0 × ... × F_k`.
fn allowable_brute(block: &[&FinSet], k: usize) -> bool {
    let proj: Vec<Vec<u64>> = (0..=k)
        .map(|i| {
            let mut p: Vec<u64> = block.iter().map(|s| s.elems()[i]).collect();
            p.sort_unstable();
            p.dedup();
            p
        })
        .collect();
    let lo = proj.iter().map(|p| p.len()).max().unwrap_or(0);
    let hi = proj[0][0] as usize;
    (lo..=hi).any(|m| level(&proj, 0, 0, m))
}

fn level(proj: &[Vec<u64>], i: usize, above: u64, m: usize) -> bool {
    if i == proj.len() {
        return true;
    }
    let p = &proj[i];
    if p[0] <= above {
        return false;
    }
    let top = match proj.get(i + 1) {
        Some(next) => next[0] - 1,
        None => p[p.len() - 1] + m as u64,
    };
    if p[p.len() - 1] > top {
        return false;
    }
    let pool: Vec<u64> = (above + 1..=top).filter(|v| !p.contains(v)).collect();
    let need = m - p.len();
    let mut pick = Vec::new();
    choose(&pool, need, 0, &mut pick, &mut |extra| {
        let mut f: Vec<u64> = p.iter().chain(extra.iter()).copied().collect();
        f.sort_unstable();
        if i == 0 && (f[0] as usize) < m {
            return false;
        }
        level(proj, i + 1, f[f.len() - 1], m)
    })
}

fn choose(pool: &[u64], need: usize, from: usize, pick: &mut Vec<u64>, f: &mut dyn FnMut(&[u64]) -> bool) -> bool {
    if need == 0 {
        return f(pick);
    }
    for t in from..pool.len() {
        if pool.len() - t < need {
            break;
        }
        pick.push(pool[t]);
        let hit = choose(pool, need - 1, t + 1, pick, f);
        pick.pop();
        if hit {
            return true;
        }
    }
    false
}

fn block_valid(space: &SpaceDesc, block: &[&FinSet]) -> bool {
    match space {
        SpaceDesc::XiPlegmaL1(_) => {
            let first = block.iter().map(|s| s.elems()[0]).min().unwrap_or(0);
            block.len() as u64 <= first && plegma_direct(block)
        }
        SpaceDesc::XiPlegmaL2L1(_) | SpaceDesc::Qp(_) => plegma_direct(block),
        SpaceDesc::FrakX(k) => allowable_brute(block, *k),
        SpaceDesc::SchreierHash => {
            block.len() == 1
                || (block.iter().all(|s| s.len() == block[0].len())
                    && block.len() <= block[0].len() + 1
                    && plegma_direct(block))
        }
        SpaceDesc::MixedW(_) | SpaceDesc::Tsirelson => block.len() == 1,
    }
}

/// Best partition of every mask into valid blocks, by the score of a block.
fn partitions<W: Clone + PartialOrd + std::ops::Add<Output = W>>(
    n: usize,
    valid: &[bool],
    score: &dyn Fn(u32) -> W,
    zero: W,
) -> Vec<(W, Vec<u32>)> {
    let full = 1u32 << n;
    let mut part: Vec<(W, Vec<u32>)> = vec![(zero.clone(), Vec::new()); full as usize];
    for mask in 1..full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut best: Option<(W, Vec<u32>)> = None;
        // blocks containing the lowest item
        let mut sub = rest;
        loop {
            let b = sub | low;
            if valid[b as usize] {
                let (pv, pb) = &part[(mask ^ b) as usize];
                let v = score(b) + pv.clone();
                if best.as_ref().is_none_or(|(w, _)| v > *w) {
                    let mut blocks = pb.clone();
                    blocks.push(b);
                    best = Some((v, blocks));
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        part[mask as usize] = best.unwrap_or((zero.clone(), Vec::new()));
    }
    part
}

fn blocks_witness(coords: &[FinSet], masks: &[u32]) -> Witness {
    let mut blocks: Vec<Vec<FinSet>> = masks
        .iter()
        .map(|&m| {
            let mut b: Vec<FinSet> = subset(coords, m).into_iter().cloned().collect();
            b.sort();
            b
        })
        .collect();
    blocks.sort();
    Witness::Blocks { blocks }
}

fn blocks_brute(space: &SpaceDesc, vals: &[Q], coords: &[FinSet]) -> NormResult {
    let n = coords.len();
    let full = 1u32 << n;
    let valid: Vec<bool> = (0..full).map(|m| m != 0 && block_valid(space, &subset(coords, m))).collect();
    let sum = |m: u32| -> Q { (0..n).filter(|i| m >> i & 1 == 1).map(|i| vals[i].clone()).sum() };
    if let SpaceDesc::XiPlegmaL1(_) = space {
        let mut best = (Q::zero(), 0u32);
        for m in 1..full {
            if valid[m as usize] && sum(m) > best.0 {
                best = (sum(m), m);
            }
        }
        return NormResult::exact(Surd::from_rational(&best.0), blocks_witness(coords, &[best.1]));
    }
    let score = |m: u32| {
        let s = sum(m);
        &s * &s
    };
    let part = partitions(n, &valid, &score, Q::zero());
    let allowed = |m: u32| match space {
        SpaceDesc::SchreierHash => {
            let s = subset(coords, m);
            (0..s.len()).all(|i| (i + 1..s.len()).all(|j| !s[i].is_prefix_of(s[j]) && !s[j].is_prefix_of(s[i])))
        }
        _ => true,
    };
    let mut best: (Q, Vec<u32>) = (Q::zero(), Vec::new());
    for m in 1..full {
        if allowed(m) && part[m as usize].0 > best.0 {
            best = part[m as usize].clone();
        }
    }
    NormResult::exact(Surd::sqrt_of(best.0), blocks_witness(coords, &best.1))
}

/// Every sequence of nonempty successive blocks drawn from the items of
/// `mask` in index order.
fn sequences(mask: u32, n: usize, f: &mut dyn FnMut(&[u32])) {
    let items: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
    fn go(items: &[usize], t: usize, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if t == items.len() {
            if !cur.is_empty() {
                f(cur);
            }
            return;
        }
        let bit = 1u32 << items[t];
        go(items, t + 1, cur, f);
        if let Some(last) = cur.last_mut() {
            *last |= bit;
            go(items, t + 1, cur, f);
            *cur.last_mut().expect("nonempty") ^= bit;
        }
        cur.push(bit);
        go(items, t + 1, cur, f);
        cur.pop();
    }
    go(&items, 0, &mut Vec::new(), f);
}

fn lowest(mask: u32) -> usize {
    mask.trailing_zeros() as usize
}

fn argmax(vals: &[Q], mask: u32) -> usize {
    let mut best = lowest(mask);
    for i in 0..vals.len() {
        if mask >> i & 1 == 1 && vals[i] > vals[best] {
            best = i;
        }
    }
    best
}

/// Tsirelson norm of items at increasing positions `pos`.
fn tsirelson_brute(pos: &[u64], vals: &[Q], coords: &[FinSet]) -> (Q, TreeNode) {
    let n = vals.len();
    let mut memo: HashMap<u32, (Q, Option<Vec<u32>>)> = HashMap::new();
    let full = (1u32 << n) - 1;
    let v = tsi(full, pos, vals, &mut memo);
    (v, tsi_tree(full, vals, coords, &memo))
}

fn tsi(mask: u32, pos: &[u64], vals: &[Q], memo: &mut HashMap<u32, (Q, Option<Vec<u32>>)>) -> Q {
    if let Some((v, _)) = memo.get(&mask) {
        return v.clone();
    }
    let n = vals.len();
    let mut best = vals[argmax(vals, mask)].clone();
    let mut arg = None;
    let mut seqs: Vec<Vec<u32>> = Vec::new();
    sequences(mask, n, &mut |s| {
        if !(s.len() == 1 && s[0] == mask) && s.len() as u64 <= pos[lowest(s[0])] {
            seqs.push(s.to_vec());
        }
    });
    for s in seqs {
        let total: Q = s.iter().map(|&b| tsi(b, pos, vals, memo)).sum::<Q>() * q_frac(1, 2);
        if total > best {
            best = total;
            arg = Some(s);
        }
    }
    memo.insert(mask, (best.clone(), arg));
    best
}

fn tsi_tree(mask: u32, vals: &[Q], coords: &[FinSet], memo: &HashMap<u32, (Q, Option<Vec<u32>>)>) -> TreeNode {
    match &memo[&mask].1 {
        None => TreeNode::Leaf(coords[argmax(vals, mask)].clone()),
        Some(s) => TreeNode::Half(s.iter().map(|&b| tsi_tree(b, vals, coords, memo)).collect()),
    }
}

/// `a + b√T`.
#[derive(Clone, Debug, PartialEq)]
struct QuadT {
    a: Q,
    b: Q,
}

impl QuadT {
    fn rational(a: Q) -> QuadT {
        QuadT { a, b: Q::zero() }
    }

    fn add(&self, o: &QuadT) -> QuadT {
        QuadT { a: &self.a + &o.a, b: &self.b + &o.b }
    }

    /// Multiplication by `√T`.
    fn times_root(&self, t: &Q) -> QuadT {
        QuadT { a: &self.b * t, b: self.a.clone() }
    }

    fn sign(&self, t: &Q) -> Ordering {
        let sa = self.a.cmp(&Q::zero());
        let sb = self.b.cmp(&Q::zero());
        if sa != Ordering::Less && sb != Ordering::Less {
            return if sa == Ordering::Equal && sb == Ordering::Equal { Ordering::Equal } else { Ordering::Greater };
        }
        if sa != Ordering::Greater && sb != Ordering::Greater {
            return Ordering::Less;
        }
        // opposite signs: compare a² with b²T
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * t;
        let c = lhs.cmp(&rhs);
        if sa == Ordering::Greater {
            c
        } else {
            c.reverse()
        }
    }

    fn gt(&self, o: &QuadT, t: &Q) -> bool {
        QuadT { a: &self.a - &o.a, b: &self.b - &o.b }.sign(t) == Ordering::Greater
    }

    fn to_f64(&self, t: &Q) -> f64 {
        q_to_f64(&self.a) + q_to_f64(&self.b) * q_to_f64(t).sqrt()
    }
}

struct MixedBrute<'a> {
    rules: &'a MixedRules,
    vals: &'a [Q],
    coords: &'a [FinSet],
    t: Q,
    exact: HashMap<u32, (QuadT, Option<Vec<u32>>)>,
    float: HashMap<u32, (f64, Option<MixedChoice>)>,
}

#[derive(Clone)]
struct MixedChoice {
    levels: Vec<(u32, Vec<u32>)>,
    tail_from: u32,
    tail: Vec<u32>,
}

impl MixedBrute<'_> {
    fn n_items(&self) -> usize {
        self.vals.len()
    }

    /// Exact value when every `n_j` covers the support, so all levels share
    /// the same block sums.
    fn exact_value(&mut self, mask: u32) -> QuadT {
        if let Some((v, _)) = self.exact.get(&mask) {
            return v.clone();
        }
        let mut best = QuadT::rational(self.vals[argmax(self.vals, mask)].clone());
        let mut arg = None;
        let mut seqs = Vec::new();
        sequences(mask, self.n_items(), &mut |s| {
            if !(s.len() == 1 && s[0] == mask) {
                seqs.push(s.to_vec());
            }
        });
        for s in seqs {
            let mut sum = QuadT::rational(Q::zero());
            for &b in &s {
                sum = sum.add(&self.exact_value(b));
            }
            let v = sum.times_root(&self.t);
            if v.gt(&best, &self.t) {
                best = v;
                arg = Some(s);
            }
        }
        self.exact.insert(mask, (best.clone(), arg));
        best
    }

    fn exact_tree(&self, mask: u32) -> MixedNode {
        match &self.exact[&mask].1 {
            None => MixedNode::Leaf(self.coords[argmax(self.vals, mask)].clone()),
            Some(s) => MixedNode::Sum {
                levels: Vec::new(),
                tail_from: 1,
                tail: s.iter().map(|&b| self.exact_tree(b)).collect(),
            },
        }
    }

    fn float_value(&mut self, mask: u32) -> f64 {
        if let Some((v, _)) = self.float.get(&mask) {
            return *v;
        }
        let size = mask.count_ones() as usize;
        let inf = q_to_f64(&self.vals[argmax(self.vals, mask)]);
        if size == 1 {
            self.float.insert(mask, (inf, None));
            return inf;
        }
        // best block sum for each number of blocks
        let mut by_count: Vec<(f64, Vec<u32>)> = vec![(f64::NEG_INFINITY, Vec::new()); size + 1];
        let mut seqs = Vec::new();
        sequences(mask, self.n_items(), &mut |s| {
            if !(s.len() == 1 && s[0] == mask) {
                seqs.push(s.to_vec());
            }
        });
        for s in seqs {
            let v: f64 = s.iter().map(|&b| self.float_value(b)).sum();
            if v > by_count[s.len()].0 {
                let d = s.len();
                by_count[d] = (v, s);
            }
        }
        let upto = |d: usize| -> (f64, Vec<u32>) {
            let mut b = (f64::NEG_INFINITY, Vec::new());
            for c in by_count.iter().take(d.min(size) + 1) {
                if c.0 > b.0 {
                    b = c.clone();
                }
            }
            b
        };
        let mut total = 0.0;
        let mut levels = Vec::new();
        let mut j = 1u32;
        while self.rules.n_capped(j) < size {
            let (v, s) = upto(self.rules.n_capped(j));
            total += (v / self.rules.m(j).to_f64().unwrap_or(f64::INFINITY)).powi(2);
            levels.push((j, s));
            j += 1;
        }
        let (v, s) = upto(size);
        total += v * v * q_to_f64(&self.rules.tail(j));
        let val = total.sqrt();
        let r = if val > inf {
            (val, Some(MixedChoice { levels, tail_from: j, tail: s }))
        } else {
            (inf, None)
        };
        self.float.insert(mask, r);
        self.float[&mask].0
    }

    fn float_tree(&self, mask: u32) -> MixedNode {
        match &self.float[&mask].1 {
            None => MixedNode::Leaf(self.coords[argmax(self.vals, mask)].clone()),
            Some(c) => MixedNode::Sum {
                levels: c
                    .levels
                    .iter()
                    .map(|(j, s)| (*j, s.iter().map(|&b| self.float_tree(b)).collect()))
                    .collect(),
                tail_from: c.tail_from,
                tail: c.tail.iter().map(|&b| self.float_tree(b)).collect(),
            },
        }
    }
}

fn mixed_brute(rules: &MixedRules, vals: &[Q], coords: &[FinSet]) -> NormResult {
    let n = vals.len();
    let full = (1u32 << n) - 1;
    let mut mb = MixedBrute { rules, vals, coords, t: rules.tail(1), exact: HashMap::new(), float: HashMap::new() };
    if rules.n_capped(1) >= n {
        let v = mb.exact_value(full);
        let tree = mb.exact_tree(full);
        let w = Witness::Mixed { tree };
        if v.b.is_zero() {
            return NormResult::exact(Surd::from_rational(&v.a), w);
        }
        if v.a.is_zero() && !v.b.is_negative() {
            return NormResult::exact(Surd::sqrt_of(&v.b * &v.b * &mb.t), w);
        }
        return NormResult::approx(v.to_f64(&mb.t), w);
    }
    let v = mb.float_value(full);
    let tree = mb.float_tree(full);
    NormResult::approx(v, Witness::Mixed { tree })
}

/// Position of each member of `C_l` inside `[1..h]`, listed by maximum
/// then lexicographically.
fn level_positions(k: usize, l: u64, h: u64) -> Result<Vec<FinSet>> {
    let mut c: Vec<FinSet> = members(&FamilyDesc::k_subsets(k), h)?
        .into_iter()
        .filter(|s| s.elems()[0] == l)
        .collect();
    c.sort_by(basis_cmp);
    Ok(c)
}

fn qp_brute(p: &QpParams, vals: &[Q], coords: &[FinSet]) -> Result<NormResult> {
    let n = coords.len();
    let (qf, pf) = (p.q_f64(), p.p_f64());
    let h = coords.iter().filter_map(|s| s.max_elem()).max().unwrap_or(1);

    // projections onto each C_l
    let mut ls: Vec<u64> = coords.iter().map(|s| s.elems()[0]).collect();
    ls.sort_unstable();
    ls.dedup();
    let mut s1 = 0.0;
    let mut levels = Vec::new();
    for &l in &ls {
        let idx: Vec<usize> = (0..n).filter(|&i| coords[i].elems()[0] == l).collect();
        let (v, base) = match p.base {
            QpBase::L1 => {
                let v: Q = idx.iter().map(|&i| vals[i].clone()).sum();
                (v, BaseWitness::L1(idx.iter().map(|&i| coords[i].clone()).collect()))
            }
            QpBase::Tsirelson => {
                let order = level_positions(p.k, l, h)?;
                let mut items: Vec<(u64, usize)> = idx
                    .iter()
                    .map(|&i| (order.iter().position(|s| *s == coords[i]).expect("listed") as u64 + 1, i))
                    .collect();
                items.sort_unstable();
                let pos: Vec<u64> = items.iter().map(|t| t.0).collect();
                let vs: Vec<Q> = items.iter().map(|t| vals[t.1].clone()).collect();
                let cs: Vec<FinSet> = items.iter().map(|t| coords[t.1].clone()).collect();
                let (v, tree) = tsirelson_brute(&pos, &vs, &cs);
                (v, BaseWitness::Tsirelson(tree))
            }
        };
        s1 += q_to_f64(&v).powf(pf);
        levels.push(ProjectionLevel { l, base });
    }
    let s1 = s1.powf(1.0 / pf);

    // plegma blocks with distinct first elements
    let full = 1u32 << n;
    let valid: Vec<bool> = (0..full).map(|m| m != 0 && block_valid(&SpaceDesc::Qp(p.clone()), &subset(coords, m))).collect();
    let score = |m: u32| -> f64 {
        (0..n).filter(|i| m >> i & 1 == 1).map(|i| q_to_f64(&vals[i]).powf(qf)).sum::<f64>().powf(pf / qf)
    };
    let part = partitions(n, &valid, &score, 0.0f64);
    let mut best: (f64, Vec<u32>) = (0.0, Vec::new());
    for m in 1..full {
        let s = subset(coords, m);
        let distinct = (0..s.len()).all(|i| (i + 1..s.len()).all(|j| s[i].elems()[0] != s[j].elems()[0]));
        if distinct && part[m as usize].0 > best.0 {
            best = part[m as usize].clone();
        }
    }
    let s2 = best.0.powf(1.0 / pf);
    Ok(if s1 >= s2 {
        NormResult::approx(s1, Witness::Projections { levels })
    } else {
        NormResult::approx(s2, blocks_witness(coords, &best.1))
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::fs;
    use crate::norms::numeric::{q, Real};

    fn vecn(space: SpaceDesc, e: &[(FinSet, i64)]) -> SpaceVec {
        SpaceVec::new(space, e.iter().map(|(s, c)| (s.clone(), q(*c)))).unwrap()
    }

    #[test]
    fn singletons_and_zero() {
        for s in [SpaceDesc::Tsirelson, SpaceDesc::FrakX(1), SpaceDesc::SchreierHash] {
            let c = s.basis(4).unwrap()[1].clone();
            let r = brute_force_norm(&vecn(s.clone(), &[(c, -1)])).unwrap();
            assert_eq!(r.lower, Real::rational(&q(1)));
            let z = brute_force_norm(&SpaceVec::zero(s)).unwrap();
            assert_eq!(z.lower, Real::zero());
        }
    }

    #[test]
    fn too_large() {
        let x = SpaceVec::new(SpaceDesc::Tsirelson, (1..=9).map(|i| (FinSet::singleton(i), q(1)))).unwrap();
        assert!(matches!(brute_force_norm(&x), Err(PtkError::SupportTooLarge(9))));
    }

    #[test]
    fn allowable_by_enumeration() {
        assert!(allowable_brute(&[&fs![2, 4], &fs![3, 5]], 1));
        assert!(!allowable_brute(&[&fs![1, 2], &fs![1, 3]], 1));
        assert!(!allowable_brute(&[&fs![1, 2], &fs![2, 3]], 1));
        assert!(allowable_brute(&[&fs![3, 6, 9]], 2));
    }

    #[test]
    fn plegma_definition() {
        assert!(plegma_direct(&[&fs![3, 5], &fs![2, 4]]));
        assert!(!plegma_direct(&[&fs![1, 2], &fs![1, 3]]));
        assert!(!plegma_direct(&[&fs![1, 5], &fs![2, 4]]));
    }

    #[test]
    fn quadratic_field_sign() {
        let t = q_frac(1, 240);
        let x = QuadT { a: q(-1), b: q(16) };
        assert_eq!(x.sign(&t), Ordering::Greater);
        let y = QuadT { a: q(-2), b: q(16) };
        assert_eq!(y.sign(&t), Ordering::Less);
    }

    #[test]
    fn mixed_small_rules_use_levels() {
        let rules = MixedRules { m_base: 4, m_offset: 1, n_base: 4, n_offset: 0 };
        let x = SpaceVec::new(
            SpaceDesc::mixed_w(rules).unwrap(),
            (1..=6).map(|i| (FinSet::singleton(i), q(i as i64 % 3 + 1))),
        )
        .unwrap();
        let b = brute_force_norm(&x).unwrap();
        let e = crate::norms::norm_of(&x).unwrap();
        assert!((b.approx_value() - e.approx_value()).abs() < 1e-9);
    }
}
