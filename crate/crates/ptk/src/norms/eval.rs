use std::collections::BTreeSet;

use num::Signed;
use serde::{Deserialize, Serialize};

use super::mixed::{self, MixedNode};
use super::numeric::{pad, q_to_f64, Real, Surd, Q};
use super::packing::{solve, Packing};
use super::space::{QpBase, QpParams, SpaceDesc, SpaceVec};
use super::tsirelson::{self, TreeNode};
use crate::error::{PtkError, Result};
use crate::plegma::pair_plegma;
use crate::setcore::FinSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Complete search.
    Exact,
    /// Search with a node budget; the interval may stay open.
    BranchBound,
    /// Exhaustive enumeration of the norming set, support at most 8.
    Brute,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormOptions {
    pub method: Method,
    pub tol: f64,
    pub budget: Option<u64>,
}

impl Default for NormOptions {
    fn default() -> NormOptions {
        NormOptions { method: Method::Exact, tol: 1e-9, budget: None }
    }
}

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// The functional achieving the lower value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    Zero,
    /// Disjoint blocks, each a tuple or set admitted by the space.
    Blocks { blocks: Vec<Vec<FinSet>> },
    Tree { tree: TreeNode },
    /// One base-norm functional per `C_l`.
    Projections { levels: Vec<ProjectionLevel> },
    Mixed { tree: MixedNode },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectionLevel {
    pub l: u64,
    pub base: BaseWitness,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseWitness {
    L1(Vec<FinSet>),
    Tsirelson(TreeNode),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormResult {
    pub lower: Real,
    pub upper: Real,
    pub exact: bool,
    pub witness: Witness,
}

impl NormResult {
    pub(crate) fn exact(v: Surd, witness: Witness) -> NormResult {
        NormResult { lower: Real::Exact(v.clone()), upper: Real::Exact(v), exact: true, witness }
    }

    pub(crate) fn approx(v: f64, witness: Witness) -> NormResult {
        let (l, u) = pad(v);
        NormResult { lower: Real::Approx(l), upper: Real::Approx(u), exact: false, witness }
    }

    pub fn width(&self) -> f64 {
        self.upper.to_f64() - self.lower.to_f64()
    }

    /// The exact value, when certified.
    pub fn value(&self) -> Option<&Surd> {
        if self.exact {
            self.lower.exact()
        } else {
            None
        }
    }

    /// Midpoint as a float.
    pub fn approx_value(&self) -> f64 {
        0.5 * (self.lower.to_f64() + self.upper.to_f64())
    }
}

/// Norm with default options: complete search, exact where possible.
pub fn norm_of(x: &SpaceVec) -> Result<NormResult> {
    norm(x, &NormOptions::default())
}

pub fn norm(x: &SpaceVec, opts: &NormOptions) -> Result<NormResult> {
    x.space().validate()?;
    let budget = match opts.method {
        Method::Brute => return super::brute::brute_force_norm(x),
        Method::Exact => None,
        Method::BranchBound => Some(opts.budget.unwrap_or(DEFAULT_BUDGET)),
    };
    if x.is_zero() {
        return Ok(NormResult::exact(Surd::zero(), Witness::Zero));
    }
    let r = match x.space() {
        SpaceDesc::Tsirelson => tsirelson_norm(x),
        SpaceDesc::MixedW(rules) => mixed_norm(rules, x),
        SpaceDesc::Qp(p) => qp_norm(p, x, budget)?,
        _ => packing_norm(x, budget)?,
    };
    if r.width() > opts.tol {
        return Err(PtkError::ToleranceUnreachable {
            tol: opts.tol,
            lower: r.lower.to_f64(),
            upper: r.upper.to_f64(),
        });
    }
    Ok(r)
}

/// Plegma pair in either order, by first element.
pub(crate) fn plegma_pair_any(a: &FinSet, b: &FinSet) -> bool {
    match a.min_elem().cmp(&b.min_elem()) {
        std::cmp::Ordering::Less => pair_plegma(a, b),
        std::cmp::Ordering::Greater => pair_plegma(b, a),
        std::cmp::Ordering::Equal => false,
    }
}

/// `E ⊆ F_1 × ... × F_{k+1}` with `F_1 < ... < F_{k+1}` of a common size
/// `m ≤ min F_1`. The smallest `m` works best, and each `F_i` is padded
/// with the largest free integers below `F_{i+1}`.
pub fn allowable_set(block: &[&FinSet], k: usize) -> bool {
    if block.is_empty() {
        return true;
    }
    let proj: Vec<BTreeSet<u64>> =
        (0..=k).map(|i| block.iter().map(|s| s.elems()[i]).collect()).collect();
    let m = proj.iter().map(|p| p.len()).max().unwrap_or(0) as u64;
    let mut cur_min = *proj[k].iter().next().expect("nonempty");
    for i in (0..k).rev() {
        let p = &proj[i];
        let pmax = *p.iter().next_back().expect("nonempty");
        if pmax >= cur_min {
            return false;
        }
        let mut need = m - p.len() as u64;
        let mut low = *p.iter().next().expect("nonempty");
        let mut v = cur_min;
        while need > 0 {
            if v <= 1 {
                return false;
            }
            v -= 1;
            if !p.contains(&v) {
                need -= 1;
                low = low.min(v);
            }
        }
        cur_min = low;
    }
    cur_min >= m
}

fn block_ok(space: &SpaceDesc, block: &[&FinSet]) -> bool {
    let pairwise = || {
        block.iter().enumerate().all(|(i, a)| block[i + 1..].iter().all(|b| plegma_pair_any(a, b)))
    };
    match space {
        SpaceDesc::XiPlegmaL1(_) => {
            let first = block.iter().filter_map(|s| s.min_elem()).min().unwrap_or(0);
            block.len() as u64 <= first && pairwise()
        }
        SpaceDesc::XiPlegmaL2L1(_) | SpaceDesc::Qp(_) => pairwise(),
        SpaceDesc::FrakX(k) => allowable_set(block, *k),
        SpaceDesc::SchreierHash => {
            if block.len() <= 1 {
                return true;
            }
            let l = block[0].len();
            block.iter().all(|s| s.len() == l) && block.len() <= l + 1 && pairwise()
        }
        SpaceDesc::MixedW(_) | SpaceDesc::Tsirelson => block.len() <= 1,
    }
}

fn conflict(space: &SpaceDesc, a: &FinSet, b: &FinSet) -> bool {
    match space {
        SpaceDesc::Qp(_) => a.min_elem() == b.min_elem(),
        SpaceDesc::SchreierHash => a.comparable(b),
        _ => false,
    }
}

fn packing_norm(x: &SpaceVec, budget: Option<u64>) -> Result<NormResult> {
    let space = x.space();
    let coords = x.support();
    let weights: Vec<Q> = x.entries().values().map(|c| c.abs()).collect();
    let n = coords.len();
    let mut pc = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            pc[i][j] = i != j && plegma_pair_any(&coords[i], &coords[j]);
        }
    }
    let fits = |b: &[usize], it: usize| -> bool {
        match space {
            SpaceDesc::XiPlegmaL1(_) | SpaceDesc::XiPlegmaL2L1(_) | SpaceDesc::SchreierHash => {
                if !b.iter().all(|&o| pc[o][it]) {
                    return false;
                }
                let mut all: Vec<&FinSet> = b.iter().map(|&o| &coords[o]).collect();
                all.push(&coords[it]);
                block_ok(space, &all)
            }
            _ => {
                let mut all: Vec<&FinSet> = b.iter().map(|&o| &coords[o]).collect();
                all.push(&coords[it]);
                block_ok(space, &all)
            }
        }
    };
    let conf = |a: usize, b: usize| conflict(space, &coords[a], &coords[b]);
    let square = |v: &Q| v * v;
    let ident = |v: &Q| v.clone();
    let single = matches!(space, SpaceDesc::XiPlegmaL1(_));
    let has_conflict = matches!(space, SpaceDesc::SchreierHash);
    let pr = Packing {
        weights,
        fits: &fits,
        conflict: if has_conflict { Some(&conf) } else { None },
        phi: if single { &ident } else { &square },
        max_blocks: if single { Some(1) } else { None },
        may_skip: single || has_conflict,
        budget,
    };
    let r = solve(&pr);
    let to_val = |v: &Q| if single { Surd::from_rational(v) } else { Surd::sqrt_of(v.clone()) };
    let witness = blocks_witness(&r.blocks, &coords);
    if r.complete {
        return Ok(NormResult::exact(to_val(&r.value), witness));
    }
    Ok(NormResult {
        lower: Real::Exact(to_val(&r.value)),
        upper: Real::Exact(to_val(&r.upper)),
        exact: false,
        witness,
    })
}

fn blocks_witness(blocks: &[Vec<usize>], coords: &[FinSet]) -> Witness {
    let mut bl: Vec<Vec<FinSet>> = blocks
        .iter()
        .map(|b| {
            let mut v: Vec<FinSet> = b.iter().map(|&i| coords[i].clone()).collect();
            v.sort();
            v
        })
        .collect();
    bl.sort();
    Witness::Blocks { blocks: bl }
}

fn binom(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * u128::from(n - i) / u128::from(i + 1);
        if r > u128::from(u64::MAX) {
            return Err(PtkError::InvalidArgument("basis position overflows".into()));
        }
    }
    Ok(r as u64)
}

/// Position of `s` in `C_{min s}` ordered by maximum, then lexicographically.
pub fn cl_index(s: &FinSet) -> Result<u64> {
    let e = s.elems();
    let k = e.len();
    if k == 0 {
        return Err(PtkError::BadIndex("{}".into()));
    }
    if k == 1 {
        return Ok(1);
    }
    let (l, m) = (e[0], e[k - 1]);
    let u = m - l - 1;
    let r = (k - 2) as u64;
    let mut rank = binom(u, r + 1)?;
    let mut prev = 0u64;
    for (i, &x) in e[1..k - 1].iter().enumerate() {
        let t = x - l;
        for v in prev + 1..t {
            rank += binom(u - v, r - 1 - i as u64)?;
        }
        prev = t;
    }
    Ok(rank + 1)
}

fn tsirelson_norm(x: &SpaceVec) -> NormResult {
    let coords = x.support();
    let pos: Vec<u64> = coords.iter().map(|s| s.elems()[0]).collect();
    let vals: Vec<Q> = x.entries().values().map(|c| c.abs()).collect();
    let (v, tree, _) = tsirelson::tsirelson_dp(&pos, &vals);
    let w = match tree {
        Some(t) => Witness::Tree { tree: tsirelson::relabel(&t, &coords) },
        None => Witness::Zero,
    };
    NormResult::exact(Surd::from_rational(&v), w)
}

fn mixed_norm(rules: &mixed::MixedRules, x: &SpaceVec) -> NormResult {
    let coords = x.support();
    let vals: Vec<Q> = x.entries().values().map(|c| c.abs()).collect();
    if rules.n_capped(1) >= coords.len() {
        let (v, arg) = mixed::closed_form(rules, &vals);
        let tree = match arg {
            Some(i) => MixedNode::Leaf(coords[i].clone()),
            None => MixedNode::Sum {
                levels: Vec::new(),
                tail_from: 1,
                tail: coords.iter().map(|c| MixedNode::Leaf(c.clone())).collect(),
            },
        };
        return NormResult::exact(v, Witness::Mixed { tree });
    }
    let (v, choice) = mixed::interval_dp(rules, &vals);
    let tree = mixed::build_tree(&choice, &coords, 0, coords.len() - 1);
    NormResult::approx(v, Witness::Mixed { tree })
}

/// `(Σ_l ‖P_l x‖_l^p)^{1/p}` with the level values and their functionals.
fn qp_projection(p: &QpParams, x: &SpaceVec) -> Result<(f64, Vec<ProjectionLevel>)> {
    let mut levels: Vec<ProjectionLevel> = Vec::new();
    let mut total = 0.0;
    let mut by_l: std::collections::BTreeMap<u64, Vec<(FinSet, Q)>> = Default::default();
    for (s, c) in x.entries() {
        by_l.entry(s.elems()[0]).or_default().push((s.clone(), c.abs()));
    }
    for (l, items) in by_l {
        let (val, base) = match p.base {
            QpBase::L1 => {
                let v: Q = items.iter().map(|(_, c)| c.clone()).sum();
                (v, BaseWitness::L1(items.iter().map(|(s, _)| s.clone()).collect()))
            }
            QpBase::Tsirelson => {
                let mut keyed: Vec<(u64, FinSet, Q)> = Vec::new();
                for (s, c) in items {
                    keyed.push((cl_index(&s)?, s, c));
                }
                keyed.sort_by_key(|t| t.0);
                let pos: Vec<u64> = keyed.iter().map(|t| t.0).collect();
                let vals: Vec<Q> = keyed.iter().map(|t| t.2.clone()).collect();
                let coords: Vec<FinSet> = keyed.iter().map(|t| t.1.clone()).collect();
                let (v, tree, _) = tsirelson::tsirelson_dp(&pos, &vals);
                let tree = tree.expect("nonzero level");
                (v, BaseWitness::Tsirelson(tsirelson::relabel(&tree, &coords)))
            }
        };
        total += q_to_f64(&val).powf(p.p_f64());
        levels.push(ProjectionLevel { l, base });
    }
    Ok((total.powf(1.0 / p.p_f64()), levels))
}

fn qp_norm(p: &QpParams, x: &SpaceVec, budget: Option<u64>) -> Result<NormResult> {
    let (v1, levels) = qp_projection(p, x)?;

    let coords = x.support();
    let (qf, pf) = (p.q_f64(), p.p_f64());
    let weights: Vec<f64> = x.entries().values().map(|c| q_to_f64(&c.abs()).powf(qf)).collect();
    let n = coords.len();
    let fits = |b: &[usize], it: usize| b.iter().all(|&o| o != it && plegma_pair_any(&coords[o], &coords[it]));
    let conf = |a: usize, b: usize| coords[a].min_elem() == coords[b].min_elem();
    let expo = pf / qf;
    let phi = |t: &f64| t.powf(expo);
    let pr = Packing {
        weights,
        fits: &fits,
        conflict: Some(&conf),
        phi: &phi,
        max_blocks: None,
        may_skip: true,
        budget,
    };
    let r = solve(&pr);
    let v2 = r.value.powf(1.0 / pf);
    let u2 = r.upper.powf(1.0 / pf);
    let _ = n;

    let (v, witness) = if v1 >= v2 {
        (v1, Witness::Projections { levels })
    } else {
        (v2, blocks_witness(&r.blocks, &coords))
    };
    let mut res = NormResult::approx(v, witness);
    if !r.complete && u2 > v {
        res.upper = Real::Approx(pad(u2).1);
    }
    Ok(res)
}

/// Value of a witness functional on `x`, after checking that it belongs to
/// the norming set of the space.
pub fn evaluate_witness(x: &SpaceVec, w: &Witness) -> Result<Real> {
    let bad = |m: &str| PtkError::InvalidArgument(format!("witness is not a norming functional: {}", m));
    let space = x.space();
    let val = |s: &FinSet| x.get(s);
    match (space, w) {
        (_, Witness::Zero) => Ok(Real::zero()),
        (SpaceDesc::Tsirelson, Witness::Tree { tree }) => {
            let pos = |s: &FinSet| {
                if s.len() == 1 {
                    Ok(s.elems()[0])
                } else {
                    Err(PtkError::BadIndex(format!("{{{}}}", s)))
                }
            };
            let (v, _, _) = tsirelson::eval_tree(tree, &val, &pos)?;
            Ok(Real::rational(&v))
        }
        (SpaceDesc::MixedW(rules), Witness::Mixed { tree }) => Ok(mixed::eval_tree(rules, tree, &val)?.0),
        (SpaceDesc::Qp(p), Witness::Projections { levels }) => {
            let mut seen = BTreeSet::new();
            let mut total = 0.0;
            for lv in levels {
                if !seen.insert(lv.l) {
                    return Err(bad("repeated level"));
                }
                let in_level = |s: &FinSet| s.len() == p.k && s.elems()[0] == lv.l;
                let v = match (&lv.base, p.base) {
                    (BaseWitness::L1(coords), QpBase::L1) => {
                        let distinct: BTreeSet<&FinSet> = coords.iter().collect();
                        if distinct.len() != coords.len() || !coords.iter().all(in_level) {
                            return Err(bad("coordinates outside the level"));
                        }
                        coords.iter().map(|s| x.get(s).abs()).sum::<Q>()
                    }
                    (BaseWitness::Tsirelson(tree), QpBase::Tsirelson) => {
                        let pos = |s: &FinSet| {
                            if in_level(s) {
                                cl_index(s)
                            } else {
                                Err(bad("coordinate outside the level"))
                            }
                        };
                        tsirelson::eval_tree(tree, &val, &pos)?.0
                    }
                    _ => return Err(bad("base norm mismatch")),
                };
                total += q_to_f64(&v).powf(p.p_f64());
            }
            Ok(Real::Approx(total.powf(1.0 / p.p_f64())))
        }
        (_, Witness::Blocks { blocks }) => {
            if matches!(space, SpaceDesc::Tsirelson | SpaceDesc::MixedW(_)) {
                return Err(bad("block functionals do not norm this space"));
            }
            if matches!(space, SpaceDesc::XiPlegmaL1(_)) && blocks.len() > 1 {
                return Err(bad("a single plegma tuple is allowed"));
            }
            let all: Vec<&FinSet> = blocks.iter().flatten().collect();
            for (i, a) in all.iter().enumerate() {
                if !space.is_coordinate(a)? {
                    return Err(PtkError::BadIndex(format!("{{{}}}", a)));
                }
                for b in &all[i + 1..] {
                    if a == b || conflict(space, a, b) {
                        return Err(bad("blocks overlap or conflict"));
                    }
                }
            }
            for b in blocks {
                let refs: Vec<&FinSet> = b.iter().collect();
                if b.is_empty() || !block_ok(space, &refs) {
                    return Err(bad("block is not admissible"));
                }
            }
            match space {
                SpaceDesc::XiPlegmaL1(_) => {
                    Ok(Real::rational(&blocks.iter().flatten().map(|s| x.get(s).abs()).sum::<Q>()))
                }
                SpaceDesc::Qp(p) => {
                    let (qf, pf) = (p.q_f64(), p.p_f64());
                    let t: f64 = blocks
                        .iter()
                        .map(|b| b.iter().map(|s| q_to_f64(&x.get(s).abs()).powf(qf)).sum::<f64>().powf(pf / qf))
                        .sum();
                    Ok(Real::Approx(t.powf(1.0 / pf)))
                }
                _ => {
                    let sq: Q = blocks
                        .iter()
                        .map(|b| {
                            let m: Q = b.iter().map(|s| x.get(s).abs()).sum();
                            &m * &m
                        })
                        .sum();
                    Ok(Real::Exact(Surd::sqrt_of(sq)))
                }
            }
        }
        _ => Err(bad("witness kind does not match the space")),
    }
}

/// Whether a witness value matches a result's lower end.
pub fn witness_matches(r: &NormResult, v: &Real) -> bool {
    match (&r.lower, v) {
        (Real::Exact(a), Real::Exact(b)) if r.exact => a == b,
        _ => (v.to_f64() - r.approx_value()).abs() <= 1e-9 * (1.0 + v.to_f64().abs()),
    }
}
