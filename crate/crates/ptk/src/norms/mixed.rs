//! The mixed norm built from weighted type-I and ℓ²-combined type-II
//! functionals with weights `m_j = a^{j+b}` and admissibility
//! `n_j = c^{(j+d)²}`.
//!
//! `‖x‖ = max(‖x‖_∞, (Σ_j ‖x‖_j²)^{1/2})` where
//! `‖x‖_j = (1/m_j) max Σ_{q≤d} ‖x|E_q‖` over `E_1 < ... < E_d`, `d ≤ n_j`.
//! Once `n_j ≥ |supp x|` the level value is `‖x‖_1/m_j`, so the tail of
//! the sum is geometric.

use num::bigint::BigInt;
use num::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::numeric::{pow_int, q_to_f64, Real, Surd, Q};
use crate::error::{PtkError, Result};
use crate::setcore::FinSet;

/// `m_j = m_base^{j + m_offset}` and `n_j = n_base^{(j + n_offset)²}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixedRules {
    pub m_base: u32,
    pub m_offset: u32,
    pub n_base: u32,
    pub n_offset: u32,
}

impl Default for MixedRules {
    fn default() -> MixedRules {
        MixedRules { m_base: 4, m_offset: 1, n_base: 2, n_offset: 1 }
    }
}

/// Outcome of the three parameter constraints.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RulesReport {
    /// `Σ_j 1/m_j`, at most `1/10`.
    #[serde(with = "super::numeric::rational_str")]
    pub sum_inv_m: Q,
    pub sum_ok: bool,
    /// First `j` from which `n_j ≥ m_j²` holds for good.
    pub j0: Option<u32>,
    /// `n_{j+1}/n_j > m_j` for every `j`.
    pub ratio_ok: bool,
}

impl RulesReport {
    pub fn ok(&self) -> bool {
        self.sum_ok && self.j0.is_some() && self.ratio_ok
    }
}

const J0_SCAN: u32 = 64;

impl MixedRules {
    pub fn m(&self, j: u32) -> BigInt {
        pow_int(self.m_base, u64::from(j + self.m_offset))
    }

    pub fn n(&self, j: u32) -> BigInt {
        let e = u64::from(j + self.n_offset);
        pow_int(self.n_base, e * e)
    }

    /// `n_j` capped to `usize`, enough to compare with support sizes.
    pub fn n_capped(&self, j: u32) -> usize {
        let e = u64::from(j + self.n_offset);
        let bits = e * e * u64::from(32 - self.n_base.leading_zeros());
        if bits >= 60 {
            return usize::MAX;
        }
        self.n(j).to_usize().unwrap_or(usize::MAX)
    }

    pub fn check(&self) -> RulesReport {
        let (a, c) = (self.m_base, self.n_base);
        if a < 2 || c < 2 {
            return RulesReport { sum_inv_m: Q::zero(), sum_ok: false, j0: None, ratio_ok: false };
        }
        // Σ_{j≥1} a^{-(j+b)} = 1/(a^b (a-1))
        let sum_inv_m = Q::new(BigInt::one(), pow_int(a, u64::from(self.m_offset)) * BigInt::from(a - 1));
        let sum_ok = sum_inv_m <= Q::new(BigInt::one(), BigInt::from(10));

        // n_{j+1}/n_j = c^{2(j+d)+1} and c^{2(j+d)+1}/a^{j+b} grows with j iff c² ≥ a
        let d = u64::from(self.n_offset);
        let ratio_ok = u64::from(c) * u64::from(c) >= u64::from(a)
            && pow_int(c, 2 * (1 + d) + 1) > pow_int(a, u64::from(1 + self.m_offset));

        // past c^{j+d} ≥ a the exponent gap (j+d)² log c − 2(j+b) log a increases
        let j0 = (1..=J0_SCAN).find(|&j| {
            let m = self.m(j);
            self.n(j) >= &m * &m && pow_int(c, u64::from(j) + d) >= BigInt::from(a)
        });
        RulesReport { sum_inv_m, sum_ok, j0, ratio_ok }
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.check();
        if !r.ok() {
            return Err(PtkError::InvalidArgument(format!(
                "weights {:?} fail the constraints: {:?}",
                self, r
            )));
        }
        Ok(())
    }

    /// `Σ_{i ≥ j} 1/m_i² = a^{-2(j+b)} / (1 - a^{-2})`.
    pub fn tail(&self, j: u32) -> Q {
        let a2 = BigInt::from(self.m_base) * BigInt::from(self.m_base);
        let head = Q::new(BigInt::one(), pow_int(self.m_base, 2 * u64::from(j + self.m_offset)));
        head / (Q::one() - Q::new(BigInt::one(), a2))
    }

    /// Smallest level `J` with `n_J ≥ len`.
    pub fn covering_level(&self, len: usize) -> u32 {
        (1..).find(|&j| self.n_capped(j) >= len).expect("n_j is unbounded")
    }
}

/// Value tree of a functional in the norming set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MixedNode {
    Leaf(FinSet),
    /// `Σ_j a_j φ_j` with the best `ℓ²`-normalized `a_j`: each level lists the
    /// parts of a weight-`m_j` functional; levels from `tail_from` on all use
    /// `tail`.
    Sum { levels: Vec<(u32, Vec<MixedNode>)>, tail_from: u32, tail: Vec<MixedNode> },
}

/// Closed form for `n_1 ≥ |supp|`: `max(‖x‖_∞, ‖x‖_1 √T)` with
/// `T = Σ_j 1/m_j²`.
pub(crate) fn closed_form(rules: &MixedRules, abs: &[Q]) -> (Surd, Option<usize>) {
    let (mut arg, mut inf) = (0, Q::zero());
    for (i, v) in abs.iter().enumerate() {
        if *v > inf {
            inf = v.clone();
            arg = i;
        }
    }
    let l1: Q = abs.iter().sum();
    let sq = &l1 * &l1 * rules.tail(1);
    if abs.is_empty() {
        return (Surd::zero(), None);
    }
    if sq > &inf * &inf {
        (Surd::sqrt_of(sq), None)
    } else {
        (Surd::from_rational(&inf), Some(arg))
    }
}

/// Interval DP over the support in floats, for supports larger than `n_1`.
pub(crate) fn interval_dp(rules: &MixedRules, abs: &[Q]) -> (f64, Vec<Vec<Choice>>) {
    let n = abs.len();
    let v: Vec<f64> = abs.iter().map(q_to_f64).collect();
    let mut norm = vec![vec![0.0f64; n]; n];
    let mut choice = vec![vec![Choice::Leaf(0); n]; n];
    let m: Vec<f64> = (0..=rules.covering_level(n.max(1)))
        .map(|j| if j == 0 { 1.0 } else { rules.m(j).to_f64().unwrap_or(f64::INFINITY) })
        .collect();
    for len in 1..=n {
        for a in 0..=n - len {
            let b = a + len - 1;
            let (mut inf, mut arg) = (0.0, a);
            for (t, &x) in v.iter().enumerate().take(b + 1).skip(a) {
                if x > inf {
                    inf = x;
                    arg = t;
                }
            }
            if len == 1 {
                norm[a][b] = inf;
                choice[a][b] = Choice::Leaf(a);
                continue;
            }
            let big = rules.covering_level(len);
            // best[d][s]: partition of [s..b] into at most d parts
            let dmax = (1..big).map(|j| rules.n_capped(j)).max().unwrap_or(1).min(len);
            let mut best = vec![vec![(0.0f64, None::<usize>); len]; dmax + 1];
            for s in (a + 1..=b).rev() {
                best[1][s - a] = (norm[s][b], None);
                for d in 2..=dmax {
                    let mut cur = best[d - 1][s - a];
                    for c in s..b {
                        let val = norm[s][c] + best[d - 1][c + 1 - a].0;
                        if val > cur.0 {
                            cur = (val, Some(c));
                        }
                    }
                    best[d][s - a] = cur;
                }
            }
            let mut levels = Vec::new();
            let mut total = 0.0;
            for j in 1..big {
                let dj = rules.n_capped(j).min(len);
                let (mut val, mut cut) = (f64::NEG_INFINITY, a);
                for c in a..b {
                    let s = norm[a][c] + best[dj - 1][c + 1 - a].0;
                    if s > val {
                        val = s;
                        cut = c;
                    }
                }
                let mut parts = vec![(a, cut)];
                let (mut d, mut s) = (dj - 1, cut + 1);
                loop {
                    match best[d][s - a].1 {
                        None => {
                            parts.push((s, b));
                            break;
                        }
                        Some(c) => {
                            parts.push((s, c));
                            d -= 1;
                            s = c + 1;
                        }
                    }
                }
                total += (val / m[j as usize]).powi(2);
                levels.push((j, parts));
            }
            let l1: f64 = v[a..=b].iter().sum();
            total += l1 * l1 * q_to_f64(&rules.tail(big));
            let val = total.sqrt();
            if val > inf {
                norm[a][b] = val;
                choice[a][b] = Choice::Sum { levels, tail_from: big };
            } else {
                norm[a][b] = inf;
                choice[a][b] = Choice::Leaf(arg);
            }
        }
    }
    let top = if n == 0 { 0.0 } else { norm[0][n - 1] };
    (top, choice)
}

#[derive(Clone, Debug)]
pub(crate) enum Choice {
    Leaf(usize),
    Sum { levels: Vec<(u32, Vec<(usize, usize)>)>, tail_from: u32 },
}

pub(crate) fn build_tree(
    choice: &[Vec<Choice>],
    coords: &[FinSet],
    a: usize,
    b: usize,
) -> MixedNode {
    match &choice[a][b] {
        Choice::Leaf(t) => MixedNode::Leaf(coords[*t].clone()),
        Choice::Sum { levels, tail_from } => MixedNode::Sum {
            levels: levels
                .iter()
                .map(|(j, parts)| (*j, parts.iter().map(|&(s, e)| build_tree(choice, coords, s, e)).collect()))
                .collect(),
            tail_from: *tail_from,
            tail: (a..=b).map(|t| MixedNode::Leaf(coords[t].clone())).collect(),
        },
    }
}

/// Value of a functional tree on `x` with the range of positions it
/// touches, checking that it lies in the norming set. Exact when only the
/// geometric tail is used.
pub(crate) fn eval_tree(
    rules: &MixedRules,
    node: &MixedNode,
    x: &dyn Fn(&FinSet) -> Q,
) -> Result<(Real, u64, u64)> {
    let bad = |m: &str| PtkError::InvalidArgument(format!("witness is not a norming functional: {}", m));
    match node {
        MixedNode::Leaf(s) => {
            let n = s.max_elem().ok_or_else(|| bad("empty coordinate"))?;
            Ok((Real::rational(&num::abs(x(s))), n, n))
        }
        MixedNode::Sum { levels, tail_from, tail } => {
            if *tail_from == 0 {
                return Err(bad("levels start at 1"));
            }
            let (mut lo, mut hi) = (u64::MAX, 0u64);
            let mut part_sum = |parts: &[MixedNode], cap: usize| -> Result<(Option<Q>, f64)> {
                if parts.is_empty() || parts.len() > cap {
                    return Err(bad("wrong number of parts"));
                }
                let mut prev = 0u64;
                let mut exact = Some(Q::zero());
                let mut f = 0.0;
                for p in parts {
                    let (v, mn, mx) = eval_tree(rules, p, x)?;
                    if mn <= prev {
                        return Err(bad("parts are not successive"));
                    }
                    prev = mx;
                    lo = lo.min(mn);
                    hi = hi.max(mx);
                    f += v.to_f64();
                    exact = match (exact, v.exact().and_then(|s| s.as_rational())) {
                        (Some(acc), Some(r)) => Some(acc + r),
                        _ => None,
                    };
                }
                Ok((exact, f))
            };
            let mut seen = std::collections::BTreeSet::new();
            let mut total = 0.0;
            for (j, parts) in levels {
                if *j == 0 || *j >= *tail_from || !seen.insert(*j) {
                    return Err(bad("levels must be distinct and below the tail"));
                }
                let (_, f) = part_sum(parts, rules.n_capped(*j))?;
                total += (f / rules.m(*j).to_f64().unwrap_or(f64::INFINITY)).powi(2);
            }
            let (s, f) = part_sum(tail, rules.n_capped(*tail_from))?;
            let t = rules.tail(*tail_from);
            total += f * f * q_to_f64(&t);
            let val = match s {
                Some(s) if levels.is_empty() => Real::Exact(Surd::sqrt_of(&s * &s * t)),
                _ => Real::Approx(total.sqrt()),
            };
            Ok((val, lo, hi))
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use super::super::numeric::{q, q_frac};

    #[test]
    fn default_rules_pass() {
        let r = MixedRules::default().check();
        assert_eq!(r.sum_inv_m, q_frac(1, 12));
        assert!(r.sum_ok && r.ratio_ok);
        assert_eq!(r.j0, Some(3));
        assert_eq!(MixedRules::default().tail(1), q_frac(1, 240));
    }

    #[test]
    fn bad_rules_fail() {
        let slow = MixedRules { m_base: 4, m_offset: 1, n_base: 2, n_offset: 0 };
        assert!(!slow.check().ratio_ok);
        let heavy = MixedRules { m_base: 2, m_offset: 0, n_base: 2, n_offset: 1 };
        assert!(!heavy.check().sum_ok);
        assert!(MixedRules { m_base: 1, ..MixedRules::default() }.validate().is_err());
    }

    #[test]
    fn levels() {
        let r = MixedRules::default();
        assert_eq!(r.m(1), BigInt::from(16));
        assert_eq!(r.n(1), BigInt::from(16));
        assert_eq!(r.n(2), BigInt::from(512));
        assert_eq!(r.covering_level(16), 1);
        assert_eq!(r.covering_level(17), 2);
        let sum: Q = (1..40).map(|j| Q::new(BigInt::one(), r.m(j) * r.m(j))).sum();
        assert!(q_to_f64(&(r.tail(1) - sum)).abs() < 1e-40);
    }

    #[test]
    fn dp_agrees_with_closed_form_on_small_support() {
        let r = MixedRules { m_base: 4, m_offset: 1, n_base: 4, n_offset: 0 };
        assert!(r.validate().is_ok());
        let abs: Vec<Q> = (1..=3).map(q).collect();
        let (v, _) = interval_dp(&r, &abs);
        assert!((v - 3.0).abs() < 1e-12);
    }
}
