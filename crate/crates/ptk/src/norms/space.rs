use std::collections::BTreeMap;
use std::fmt;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::mixed::MixedRules;
use super::numeric::{q, Q};
use crate::error::{PtkError, Result};
use crate::families::{closure, members, FamilyDesc};
use crate::setcore::FinSet;

/// Base norm on each `C_l = {s ∈ [ℕ]^k : min s = l}` of the composite space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QpBase {
    L1,
    Tsirelson,
}

/// Parameters of the composite `(q, p)` norm on `c_00([ℕ]^k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QpParams {
    pub k: usize,
    pub q: Q,
    pub p: Q,
    pub base: QpBase,
}

impl QpParams {
    pub fn q_f64(&self) -> f64 {
        super::numeric::q_to_f64(&self.q)
    }

    pub fn p_f64(&self) -> f64 {
        super::numeric::q_to_f64(&self.p)
    }
}

/// The spaces with a computable norm.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpaceDesc {
    /// Coordinates `F`; `sup Σ|x(s_i)|` over plegma tuples with `l ≤ s_1(1)`.
    XiPlegmaL1(FamilyDesc),
    /// Coordinates `F`; `ℓ²` sum of `ℓ¹` masses of disjoint plegma tuples.
    XiPlegmaL2L1(FamilyDesc),
    /// Coordinates `[ℕ]^{k+1}`; `ℓ²` sum of masses of disjoint allowable sets.
    FrakX(usize),
    Qp(QpParams),
    /// Coordinates `Ŝ`, the closure of the Schreier sets.
    SchreierHash,
    MixedW(MixedRules),
    /// Coordinates `ℕ` as singletons.
    Tsirelson,
}

impl SpaceDesc {
    pub fn xi_plegma_l1(f: FamilyDesc) -> SpaceDesc {
        SpaceDesc::XiPlegmaL1(f)
    }

    pub fn xi_plegma_l2l1(f: FamilyDesc) -> SpaceDesc {
        SpaceDesc::XiPlegmaL2L1(f)
    }

    pub fn frak_x(k: usize) -> Result<SpaceDesc> {
        if k == 0 {
            return Err(PtkError::InvalidArgument("frak_x needs k >= 1".into()));
        }
        Ok(SpaceDesc::FrakX(k))
    }

    pub fn qp(k: usize, q_: Q, p: Q, base: QpBase) -> Result<SpaceDesc> {
        if k == 0 {
            return Err(PtkError::InvalidArgument("qp needs k >= 1".into()));
        }
        if !(q_ > q(1) && p > q_) {
            return Err(PtkError::InvalidArgument(format!("qp needs 1 < q < p, got q = {}, p = {}", q_, p)));
        }
        Ok(SpaceDesc::Qp(QpParams { k, q: q_, p, base }))
    }

    pub fn schreier_hash() -> SpaceDesc {
        SpaceDesc::SchreierHash
    }

    pub fn mixed_w(rules: MixedRules) -> Result<SpaceDesc> {
        rules.validate()?;
        Ok(SpaceDesc::MixedW(rules))
    }

    pub fn tsirelson() -> SpaceDesc {
        SpaceDesc::Tsirelson
    }

    /// Re-checks the parameter invariants of a value built by hand.
    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceDesc::FrakX(k) => SpaceDesc::frak_x(*k).map(|_| ()),
            SpaceDesc::Qp(p) => SpaceDesc::qp(p.k, p.q.clone(), p.p.clone(), p.base).map(|_| ()),
            SpaceDesc::MixedW(r) => r.validate(),
            _ => Ok(()),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            SpaceDesc::XiPlegmaL1(_) => "xi_plegma_l1",
            SpaceDesc::XiPlegmaL2L1(_) => "xi_plegma_l2l1",
            SpaceDesc::FrakX(_) => "frak_x",
            SpaceDesc::Qp(_) => "qp",
            SpaceDesc::SchreierHash => "schreier_hash",
            SpaceDesc::MixedW(_) => "mixed_w",
            SpaceDesc::Tsirelson => "tsirelson",
        }
    }

    /// Whether the norm is always a square root of a rational.
    pub fn exact_kind(&self) -> bool {
        !matches!(self, SpaceDesc::Qp(_))
    }

    pub fn is_coordinate(&self, s: &FinSet) -> Result<bool> {
        Ok(match self {
            SpaceDesc::XiPlegmaL1(f) | SpaceDesc::XiPlegmaL2L1(f) => !s.is_empty() && f.contains(s)?,
            SpaceDesc::FrakX(k) => s.len() == k + 1,
            SpaceDesc::Qp(p) => s.len() == p.k,
            SpaceDesc::SchreierHash => s.min_elem().is_none_or(|m| s.len() as u64 <= m),
            SpaceDesc::MixedW(_) | SpaceDesc::Tsirelson => s.len() == 1,
        })
    }

    /// All coordinates inside `[1..h]` in basis order: by maximum, then
    /// lexicographically, with `∅` first.
    pub fn basis(&self, h: u64) -> Result<Vec<FinSet>> {
        let mut v = match self {
            SpaceDesc::XiPlegmaL1(f) | SpaceDesc::XiPlegmaL2L1(f) => {
                members(f, h)?.into_iter().filter(|s| !s.is_empty()).collect()
            }
            SpaceDesc::FrakX(k) => members(&FamilyDesc::k_subsets(k + 1), h)?,
            SpaceDesc::Qp(p) => members(&FamilyDesc::k_subsets(p.k), h)?,
            SpaceDesc::SchreierHash => closure(&FamilyDesc::f_omega(), h)?
                .into_iter()
                .filter(|s| s.min_elem().is_none_or(|m| s.len() as u64 <= m))
                .collect(),
            SpaceDesc::MixedW(_) | SpaceDesc::Tsirelson => (1..=h).map(FinSet::singleton).collect(),
        };
        v.sort_by(basis_cmp);
        Ok(v)
    }
}

/// The basis order: by maximum, then lexicographically.
pub fn basis_cmp(a: &FinSet, b: &FinSet) -> std::cmp::Ordering {
    (a.max_elem(), a).cmp(&(b.max_elem(), b))
}

impl fmt::Display for SpaceDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceDesc::FrakX(k) => write!(f, "frak_x(k={})", k),
            SpaceDesc::Qp(p) => write!(f, "qp(k={}, q={}, p={}, base={:?})", p.k, p.q, p.p, p.base),
            other => write!(f, "{}", other.kind_name()),
        }
    }
}

/// A finitely supported vector with exact rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceVec {
    space: SpaceDesc,
    entries: BTreeMap<FinSet, Q>,
}

impl SpaceVec {
    /// Sums repeated coordinates and drops zeros.
    pub fn new(space: SpaceDesc, entries: impl IntoIterator<Item = (FinSet, Q)>) -> Result<SpaceVec> {
        let mut map: BTreeMap<FinSet, Q> = BTreeMap::new();
        for (s, c) in entries {
            if !space.is_coordinate(&s)? {
                return Err(PtkError::BadIndex(format!("{{{}}} in {}", s, space)));
            }
            *map.entry(s).or_insert_with(Q::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(SpaceVec { space, entries: map })
    }

    pub fn zero(space: SpaceDesc) -> SpaceVec {
        SpaceVec { space, entries: BTreeMap::new() }
    }

    pub fn unit(space: SpaceDesc, s: FinSet) -> Result<SpaceVec> {
        SpaceVec::new(space, [(s, q(1))])
    }

    pub fn space(&self) -> &SpaceDesc {
        &self.space
    }

    pub fn entries(&self) -> &BTreeMap<FinSet, Q> {
        &self.entries
    }

    pub fn get(&self, s: &FinSet) -> Q {
        self.entries.get(s).cloned().unwrap_or_else(Q::zero)
    }

    pub fn support(&self) -> Vec<FinSet> {
        self.entries.keys().cloned().collect()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn linf(&self) -> Q {
        self.entries.values().map(|c| c.abs()).max().unwrap_or_else(Q::zero)
    }

    pub fn l1(&self) -> Q {
        self.entries.values().map(|c| c.abs()).sum()
    }

    pub fn add(&self, other: &SpaceVec) -> Result<SpaceVec> {
        if self.space != other.space {
            return Err(PtkError::InvalidArgument("vectors live in different spaces".into()));
        }
        let all = self.entries.iter().chain(other.entries.iter()).map(|(s, c)| (s.clone(), c.clone()));
        SpaceVec::new(self.space.clone(), all)
    }

    pub fn scale(&self, c: &Q) -> SpaceVec {
        let mut entries: BTreeMap<FinSet, Q> =
            self.entries.iter().map(|(s, v)| (s.clone(), v * c)).collect();
        entries.retain(|_, v| !v.is_zero());
        SpaceVec { space: self.space.clone(), entries }
    }

    /// The same coefficients with every sign made positive.
    pub fn abs(&self) -> SpaceVec {
        let entries = self.entries.iter().map(|(s, v)| (s.clone(), v.abs())).collect();
        SpaceVec { space: self.space.clone(), entries }
    }

    /// Restriction to the coordinates accepted by `keep`.
    pub fn restrict(&self, keep: impl Fn(&FinSet) -> bool) -> SpaceVec {
        let entries = self.entries.iter().filter(|(s, _)| keep(s)).map(|(s, v)| (s.clone(), v.clone())).collect();
        SpaceVec { space: self.space.clone(), entries }
    }
}
