//! Finite shadows of spreading models: norm profiles along plegma tuples,
//! sampled `ℓ^p` constants, Cesàro averages and the `ℓ¹` boosting step.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num::{BigInt, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{PtkError, Result};
use crate::families::{members, FamilyDesc};
use crate::norms::numeric::q_to_f64;
use crate::norms::{norm, norm_of, evaluate_witness, Method, NormOptions, NormResult, Real, SpaceDesc, SpaceVec, Surd, Witness, Q};
use crate::plegma::{for_each_plm, PlegmaTuple};
use crate::setcore::{FinSet, Window};

/// Default number of random tuples next to the least one.
pub const DEFAULT_SAMPLES: usize = 64;

/// An `F`-sequence `(x_s)_{s∈F}`.
#[derive(Clone, Debug, PartialEq)]
pub enum SeqDesc {
    /// `x_s = e_s`.
    Basis { space: SpaceDesc, family: FamilyDesc },
    /// `x_s = Σ_{∅⊏t⊑s} e_t` in the Schreier hash space, over `F_ω`.
    CumulativeChain,
    Table { space: SpaceDesc, family: FamilyDesc, table: BTreeMap<FinSet, SpaceVec> },
}

impl SeqDesc {
    pub fn basis(space: SpaceDesc, family: FamilyDesc) -> SeqDesc {
        SeqDesc::Basis { space, family }
    }

    pub fn space(&self) -> SpaceDesc {
        match self {
            SeqDesc::Basis { space, .. } | SeqDesc::Table { space, .. } => space.clone(),
            SeqDesc::CumulativeChain => SpaceDesc::SchreierHash,
        }
    }

    pub fn family(&self) -> FamilyDesc {
        match self {
            SeqDesc::Basis { family, .. } | SeqDesc::Table { family, .. } => family.clone(),
            SeqDesc::CumulativeChain => FamilyDesc::f_omega(),
        }
    }

    /// `x_s`.
    pub fn vector(&self, s: &FinSet) -> Result<SpaceVec> {
        let not_member = || PtkError::NotMember(format!("{{{}}}", s));
        match self {
            SeqDesc::Basis { space, family } => {
                if !family.contains(s)? {
                    return Err(not_member());
                }
                SpaceVec::unit(space.clone(), s.clone())
            }
            SeqDesc::CumulativeChain => {
                if !FamilyDesc::f_omega().contains(s)? {
                    return Err(not_member());
                }
                let prefixes = (1..=s.len()).map(|k| (s.initial_segment(k).expect("k ≤ |s|"), Q::one()));
                SpaceVec::new(SpaceDesc::SchreierHash, prefixes)
            }
            SeqDesc::Table { table, .. } => table.get(s).cloned().ok_or_else(not_member),
        }
    }

    /// `Σ a_j x_{s_j}`.
    pub fn combination(&self, tuple: &[FinSet], a: &[Q]) -> Result<SpaceVec> {
        let mut acc = SpaceVec::zero(self.space());
        for (s, c) in tuple.iter().zip(a) {
            acc = acc.add(&self.vector(s)?.scale(c))?;
        }
        Ok(acc)
    }
}

/// The first plegma `l`-tuple of members of `F` built from `cands`, in
/// round-robin union order.
pub fn least_tuple(f: &FamilyDesc, l: usize, cands: &[u64]) -> Result<Option<PlegmaTuple>> {
    let mut found = None;
    for_each_plm(f, l, cands, &mut |t| {
        found = Some(t.to_vec());
        false
    })?;
    Ok(found)
}

/// `M(n), M(n+1), ...` up to the horizon.
fn tail_from(m: &Window, n: usize) -> Result<Vec<u64>> {
    if n == 0 || n > m.horizon() {
        return Err(PtkError::NoTupleAtStep(n));
    }
    Ok(m.elems()[n - 1..].to_vec())
}

/// Exact value when certified, midpoint otherwise.
fn value_of(r: &NormResult) -> Real {
    match r.value() {
        Some(v) => Real::Exact(v.clone()),
        None => Real::Approx(r.approx_value()),
    }
}

fn real_cmp(a: &Real, b: &Real) -> Ordering {
    match (a, b) {
        (Real::Exact(x), Real::Exact(y)) => x.cmp(y),
        _ => a.to_f64().partial_cmp(&b.to_f64()).unwrap_or(Ordering::Equal),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProfileStep {
    pub n: usize,
    pub tuple: PlegmaTuple,
    pub value: Real,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SmProfile {
    #[serde(serialize_with = "rationals")]
    pub coeffs: Vec<Q>,
    pub steps: Vec<ProfileStep>,
    /// `value(n+1) − value(n)`.
    pub delta_trace: Vec<f64>,
    pub seed: Option<u64>,
}

fn rationals<S: serde::Serializer>(v: &[Q], ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(v.iter().map(|c| c.to_string()))
}

/// `‖Σ a_j x_{s_j}‖` along the least plegma tuples with `s_1(1) ≥ M(n)`,
/// `n = l..steps`.
pub fn sm_profile(seq: &SeqDesc, a: &[Q], m: &Window, steps: usize) -> Result<SmProfile> {
    let l = a.len();
    if l == 0 || l > steps {
        return Err(PtkError::InvalidArgument(format!("need 1 ≤ |a| = {} ≤ steps = {}", l, steps)));
    }
    let f = seq.family();
    let out: Vec<ProfileStep> = (l..=steps)
        .into_par_iter()
        .map(|n| {
            let cands = tail_from(m, n)?;
            let tuple = least_tuple(&f, l, &cands)?.ok_or(PtkError::NoTupleAtStep(n))?;
            let r = norm_of(&seq.combination(&tuple, a)?)?;
            Ok(ProfileStep { n, tuple, value: value_of(&r) })
        })
        .collect::<Result<Vec<_>>>()?;
    let delta_trace = out.windows(2).map(|w| w[1].value.to_f64() - w[0].value.to_f64()).collect();
    Ok(SmProfile { coeffs: a.to_vec(), steps: out, delta_trace, seed: None })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioWitness {
    pub tuple: PlegmaTuple,
    #[serde(serialize_with = "rationals")]
    pub coeffs: Vec<Q>,
    pub ratio: Real,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LpConstants {
    #[serde(with = "crate::norms::numeric::rational_str")]
    pub p: Q,
    pub n: usize,
    pub c_lower: Real,
    pub c_upper: Real,
    pub lower_witness: RatioWitness,
    pub upper_witness: RatioWitness,
    pub tuples: usize,
    pub evaluations: u64,
    pub seed: u64,
}

/// All sign patterns, the unit vectors and the uniform vector.
pub fn coefficient_grid(n: usize) -> Result<Vec<Vec<Q>>> {
    if n > 12 {
        return Err(PtkError::InvalidArgument(format!("sign grid for n = {} is too large", n)));
    }
    let mut grid = Vec::new();
    for mask in 0u32..1 << n {
        grid.push((0..n).map(|j| if mask >> j & 1 == 1 { -Q::one() } else { Q::one() }).collect());
    }
    for i in 0..n {
        grid.push((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect());
    }
    grid.push(vec![Q::new(BigInt::one(), BigInt::from(n)); n]);
    Ok(grid)
}

/// `‖x‖ / (Σ|a_j|^p)^{1/p}`, exact when `p ∈ {1, 2}` and the norm is.
fn ratio(r: &NormResult, a: &[Q], p: &Q) -> Real {
    let one = Q::one();
    let two = &one + &one;
    let den_sq = if *p == one {
        let s: Q = a.iter().map(|c| c.abs()).sum();
        Some(&s * &s)
    } else if *p == two {
        Some(a.iter().map(|c| c * c).sum::<Q>())
    } else {
        None
    };
    match (r.value(), den_sq) {
        (Some(v), Some(d)) => Real::Exact(Surd::sqrt_of(v.square() / d)),
        _ => {
            let pf = q_to_f64(p);
            let d: f64 = a.iter().map(|c| q_to_f64(&c.abs()).powf(pf)).sum::<f64>().powf(1.0 / pf);
            Real::Approx(r.approx_value() / d)
        }
    }
}

/// Least tuple plus up to `samples` random ones, each the least tuple over
/// a random half of `M(n), M(n+1), ...`. Duplicates are dropped.
pub fn sample_tuples(f: &FamilyDesc, l: usize, m: &Window, n: usize, samples: usize, seed: u64) -> Result<Vec<PlegmaTuple>> {
    let cands = tail_from(m, n)?;
    let first = least_tuple(f, l, &cands)?.ok_or(PtkError::NoTupleAtStep(n))?;
    let mut out = vec![first];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let sub: Vec<u64> = cands.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if let Some(t) = least_tuple(f, l, &sub)? {
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    Ok(out)
}

/// Sampled lower and upper `ℓ^p` constants over plegma `n`-tuples with
/// `s_1(1) ≥ M(n)`. `budget` caps the number of norm evaluations.
pub fn lp_constants(seq: &SeqDesc, p: &Q, n: usize, m: &Window, budget: u64, seed: u64) -> Result<LpConstants> {
    if *p < Q::one() {
        return Err(PtkError::InvalidArgument("p must be at least 1".into()));
    }
    if n == 0 {
        return Err(PtkError::InvalidArgument("n must be positive".into()));
    }
    let grid = coefficient_grid(n)?;
    let per_tuple = grid.len() as u64;
    let room = (budget / per_tuple).max(1) as usize;
    let mut tuples = sample_tuples(&seq.family(), n, m, n, DEFAULT_SAMPLES, seed)?;
    tuples.truncate(room);
    let rows: Vec<Vec<RatioWitness>> = tuples
        .par_iter()
        .map(|t| {
            grid.iter()
                .map(|a| {
                    let r = norm_of(&seq.combination(t, a)?)?;
                    Ok(RatioWitness { tuple: t.clone(), coeffs: a.clone(), ratio: ratio(&r, a, p) })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let all: Vec<&RatioWitness> = rows.iter().flatten().collect();
    let mut lo = all[0];
    let mut hi = all[0];
    for w in &all[1..] {
        if real_cmp(&w.ratio, &lo.ratio) == Ordering::Less {
            lo = w;
        }
        if real_cmp(&w.ratio, &hi.ratio) == Ordering::Greater {
            hi = w;
        }
    }
    Ok(LpConstants {
        p: p.clone(),
        n,
        c_lower: lo.ratio.clone(),
        c_upper: hi.ratio.clone(),
        lower_witness: lo.clone(),
        upper_witness: hi.clone(),
        tuples: tuples.len(),
        evaluations: all.len() as u64,
        seed,
    })
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// `k`-subsets of the first `n` elements of `M`, lexicographically.
fn subsets_of_prefix(m: &Window, n: usize, k: usize) -> Result<Vec<FinSet>> {
    if m.horizon() < n {
        return Err(PtkError::HorizonRequired(format!("{} elements of the window, horizon is {}", n, m.horizon())));
    }
    let pre = &m.elems()[..n];
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return Ok(out);
    }
    loop {
        out.push(FinSet::new(idx.iter().map(|&i| pre[i]).collect())?);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CesaroReport {
    pub k: usize,
    pub n: usize,
    #[serde(skip)]
    pub vector: SpaceVec,
    pub norm: NormResult,
    /// `n^{k+1} / C((k+2)n, k+1)`.
    #[serde(with = "crate::norms::numeric::rational_str")]
    pub lower_bound: Q,
    pub bound_holds: bool,
}

/// Default node budget for the Cesàro searches.
pub const CESARO_BUDGET: u64 = 20_000;

/// `y_n = C((k+2)n, k+1)^{-1} Σ_{s∈[M|(k+2)n]^{k+1}} e_s` in `𝔛_{k+1}`.
pub fn cesaro_norm(k: usize, m: &Window, n: usize, budget: Option<u64>) -> Result<CesaroReport> {
    if n == 0 {
        return Err(PtkError::InvalidArgument("n must be positive".into()));
    }
    let space = SpaceDesc::frak_x(k)?;
    let width = (k + 2) * n;
    let sets = subsets_of_prefix(m, width, k + 1)?;
    let c = binomial(width as u64, k as u64 + 1);
    let coeff = Q::new(BigInt::one(), c.clone());
    let y = SpaceVec::new(space.clone(), sets.iter().map(|s| (s.clone(), coeff.clone())))?;
    let bound = Q::new(BigInt::from(n).pow(k as u32 + 1), c);

    // F_2 × ... × F_{k+2} over consecutive blocks of n elements is allowable
    let pre = &m.elems()[..width];
    let in_product = |s: &FinSet| s.iter().enumerate().all(|(i, x)| pre[(i + 1) * n..(i + 2) * n].contains(&x));
    let mut blocks: Vec<Vec<FinSet>> = vec![sets.iter().filter(|s| in_product(s)).cloned().collect()];
    blocks.extend(sets.iter().filter(|s| !in_product(s)).map(|s| vec![s.clone()]));
    let incumbent = Witness::Blocks { blocks };
    let inc_value = evaluate_witness(&y, &incumbent)?;

    let opts = NormOptions { method: Method::BranchBound, tol: f64::INFINITY, budget: Some(budget.unwrap_or(CESARO_BUDGET)) };
    let mut r = norm(&y, &opts)?;
    if real_cmp(&inc_value, &r.lower) == Ordering::Greater {
        r.lower = inc_value;
        r.witness = incumbent;
        if real_cmp(&r.lower, &r.upper) != Ordering::Less {
            r.upper = r.lower.clone();
            r.exact = true;
        }
    }
    let holds = match &r.lower {
        Real::Exact(v) => v.square() >= &(&bound * &bound),
        Real::Approx(v) => *v >= q_to_f64(&bound),
    };
    Ok(CesaroReport { k, n, vector: y, norm: r, lower_bound: bound, bound_holds: holds })
}

fn average(seq: &SeqDesc, sets: &[FinSet], opts: &NormOptions) -> Result<(SpaceVec, NormResult)> {
    if sets.is_empty() {
        return Err(PtkError::EmptyRestriction);
    }
    let w = Q::new(BigInt::one(), BigInt::from(sets.len()));
    let coeffs = vec![w; sets.len()];
    let v = seq.combination(sets, &coeffs)?;
    let r = norm(&v, opts)?;
    Ok((v, r))
}

/// `C(n,k)^{-1} Σ_{s∈[M|n]^k} x_s` for a sequence indexed by `[ℕ]^k`.
pub fn k_cesaro_sum(seq: &SeqDesc, m: &Window, n: usize, opts: &NormOptions) -> Result<(SpaceVec, NormResult)> {
    let FamilyDesc::KSubsets(k) = seq.family() else {
        return Err(PtkError::InvalidArgument("the sequence must be indexed by [N]^k".into()));
    };
    let sets = subsets_of_prefix(m, n, k)?;
    average(seq, &sets, opts)
}

/// Average of `x_s` over `F↾(M|n)`.
pub fn f_cesaro_sum(f: &FamilyDesc, seq: &SeqDesc, m: &Window, n: usize, opts: &NormOptions) -> Result<(SpaceVec, NormResult)> {
    let prefix = m.prefix(n).map_err(|_| {
        PtkError::HorizonRequired(format!("{} elements of the window, horizon is {}", n, m.horizon()))
    })?;
    let sets = members(&f.clone().restrict(prefix.clone()), prefix.max())?;
    average(seq, &sets, opts)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Boosted {
    pub seq: SeqDesc,
    /// `L = {M((n+1)k) : n ≥ 1}` inside the horizon.
    pub window: Window,
    pub k: usize,
    pub b: Vec<Q>,
    pub eps_prime: Q,
    /// Sampled `max ‖Σ b_i x_{t_i}‖` at the chosen `b`.
    pub estimate: Real,
}

impl Boosted {
    /// The vectors `y_s` of the new sequence.
    pub fn table_values(&self) -> Vec<&SpaceVec> {
        match &self.seq {
            SeqDesc::Table { table, .. } => table.values().collect(),
            _ => Vec::new(),
        }
    }
}

/// The coefficient candidates for `k` blocks, each with `Σ|b_i| = 1`.
fn boost_grid(k: usize) -> Vec<Vec<Q>> {
    let kq = Q::from_integer(BigInt::from(k));
    let mut out = vec![vec![Q::one() / &kq; k]];
    if k <= 10 {
        for mask in 1u32..1 << k {
            out.push((0..k).map(|j| if mask >> j & 1 == 1 { -Q::one() / &kq } else { Q::one() / &kq }).collect());
        }
    }
    out
}

/// Rebuilds an `F`-sequence with lower `ℓ¹` constant close to 1 from one
/// with sampled constant `c`: averages `Σ b_i x_{t_i^s} / (c + 2ε′)` over
/// interleaved windows `I_n = {M(nk+1), ..., M((n+1)k)}`.
pub fn boost_l1(seq: &SeqDesc, f: &FamilyDesc, m: &Window, c: &Q, eps: &Q, budget: u64, seed: u64) -> Result<Boosted> {
    if !eps.is_positive() || *eps >= Q::one() {
        return Err(PtkError::InvalidArgument("eps must lie in (0, 1)".into()));
    }
    if !c.is_positive() || *c > Q::one() {
        return Err(PtkError::InvalidArgument("c must lie in (0, 1]".into()));
    }
    let three = Q::from_integer(BigInt::from(3));
    let two = Q::from_integer(BigInt::from(2));
    // (c − ε′)/(c + 2ε′) > 1 − ε  ⟺  ε′ < εc/(3 − 2ε)
    let eps_p = eps * c / (&two * (&three - &two * eps));
    let target = c + &eps_p;

    let mut left = budget;
    let mut chosen: Option<(usize, Vec<Q>, Real)> = None;
    'search: for k in 1..=m.horizon() {
        let tuples = match sample_tuples(f, k, m, k, 4, seed) {
            Ok(t) => t,
            Err(PtkError::NoTupleAtStep(_)) => break,
            Err(e) => return Err(e),
        };
        for b in boost_grid(k) {
            let mut worst = Real::zero();
            for t in &tuples {
                if left == 0 {
                    break 'search;
                }
                left -= 1;
                let r = norm_of(&seq.combination(t, &b)?)?;
                let v = Real::Approx(r.upper.to_f64());
                let v = match r.value() {
                    Some(s) => Real::Exact(s.clone()),
                    None => v,
                };
                if real_cmp(&v, &worst) == Ordering::Greater {
                    worst = v;
                }
            }
            let below = match &worst {
                Real::Exact(s) => s.square() < &(&target * &target),
                Real::Approx(v) => *v < q_to_f64(&target),
            };
            if below {
                chosen = Some((k, b, worst));
                break 'search;
            }
        }
    }
    let Some((k, b, estimate)) = chosen else {
        return Err(PtkError::BudgetExhausted(format!("no coefficients below c + ε′ = {}", target)));
    };

    let scale = Q::one() / (c + &two * &eps_p);
    let blocks = m.horizon() / k;
    if blocks < 2 {
        return Err(PtkError::HorizonRequired("the window holds fewer than two blocks".into()));
    }
    // I_n for n = 1..blocks-1, L(n) = max I_n
    let block = |n: usize| -> Vec<u64> { m.elems()[n * k..(n + 1) * k].to_vec() };
    let l_elems: Vec<u64> = (1..blocks).map(|n| *block(n).last().expect("k ≥ 1")).collect();
    let window = Window::new(l_elems)?;
    let mut table = BTreeMap::new();
    for s in members(&f.clone().restrict(window.clone()), window.max())? {
        let pos: Vec<usize> = s.iter().map(|x| window.position(x).expect("inside L")).collect();
        let mut terms = Vec::with_capacity(k);
        for i in 0..k {
            let spread: Vec<u64> = pos.iter().map(|&n| block(n)[i]).collect();
            let t = (1..=spread.len())
                .map(|len| FinSet::from_sorted(spread[..len].to_vec()))
                .find(|t| f.contains(t).unwrap_or(false))
                .ok_or_else(|| PtkError::NotMember(format!("no member below the spread of {{{}}}", s)))?;
            terms.push(t);
        }
        let coeffs: Vec<Q> = b.iter().map(|bi| bi * &scale).collect();
        table.insert(s, seq.combination(&terms, &coeffs)?);
    }
    let out = SeqDesc::Table { space: seq.space(), family: f.clone(), table };
    Ok(Boosted { seq: out, window, k, b, eps_prime: eps_p, estimate })
}

/// `(k+1)!/(k+2)^{k+1}`, the limit of the Cesàro lower bounds.
pub fn cesaro_limit(k: usize) -> Q {
    let mut fact = BigInt::one();
    for i in 2..=k as u64 + 1 {
        fact *= i;
    }
    Q::new(fact, BigInt::from(k as u64 + 2).pow(k as u32 + 1))
}
