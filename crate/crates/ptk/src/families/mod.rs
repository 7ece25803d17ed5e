//! Symbolic families of finite subsets of ℕ.
//!
//! Every kind answers two questions exactly: is `s` a member, and is `s`
//! an initial segment of a member. Enumeration walks the closure tree in
//! lexicographic order using only those two tests.

mod order;
mod predicates;
pub mod schreier;

use std::fmt;

use crate::error::{PtkError, Result};
use crate::setcore::{FinSet, OrdinalCNF, Window};

pub use order::FamilyOrder;
pub use predicates::{PredicateReport, Tri};

/// A family of finite subsets of ℕ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilyDesc {
    /// `[ℕ]^k`.
    KSubsets(usize),
    /// Maximal elements of the Schreier family `S_ξ`, a family of order `ω^ξ`.
    Schreier(OrdinalCNF),
    /// A finite list, kept sorted and duplicate free.
    Explicit(Vec<FinSet>),
    /// `F↾L`.
    Restrict(Box<FamilyDesc>, Window),
    /// `F(L) = {L(s) : s ∈ F}`.
    Shift(Box<FamilyDesc>, Window),
    /// `F(L⁻¹) = {t : L(t) ∈ F}`.
    Preimage(Box<FamilyDesc>, Window),
    /// `F/_L`: sets `{l_{k_1},...,l_{k_m}}` with `{l_{k_1+1},...,l_{k_m+1}}`
    /// in `F_(l_1)↾L(2ℕ-1)`.
    Quotient(Box<FamilyDesc>, Window),
    /// `F_(n) = {s : n < s, {n} ∪ s ∈ F}`.
    DerivedAt(Box<FamilyDesc>, u64),
    /// `F_[t] = {s ∈ F : t ⊑ s}`.
    Section(Box<FamilyDesc>, FinSet),
    /// `G ⊕ F = {s ∪ t : s ∈ G, t ∈ F, s < t}` with `G` on the left.
    DirectSum(Box<FamilyDesc>, Box<FamilyDesc>),
    /// `F̂`, all initial segments of members.
    Closure(Box<FamilyDesc>),
    /// Members with no proper extension in the family.
    MaxElements(Box<FamilyDesc>),
}

/// Arguments of [`transform`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transform {
    Restrict(Window),
    DerivedAt(u64),
    Section(FinSet),
    Shift(Window),
    Preimage(Window),
    Quotient(Window),
    /// `F ⊕ right`.
    DirectSum(FamilyDesc),
}

/// What a DFS visitor wants next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Walk {
    Descend,
    Prune,
    Stop,
}

impl FamilyDesc {
    pub fn k_subsets(k: usize) -> FamilyDesc {
        FamilyDesc::KSubsets(k)
    }

    /// `F_ω = {s : |s| = min s}`.
    pub fn f_omega() -> FamilyDesc {
        FamilyDesc::Schreier(OrdinalCNF::finite(1))
    }

    /// Maximal elements of `S_n`.
    pub fn schreier(n: u64) -> FamilyDesc {
        FamilyDesc::Schreier(OrdinalCNF::finite(n))
    }

    pub fn explicit(sets: Vec<FinSet>) -> Result<FamilyDesc> {
        let mut sets = sets;
        sets.sort();
        if let Some(w) = sets.windows(2).find(|w| w[0] == w[1]) {
            return Err(PtkError::InvalidArgument(format!("duplicate member {{{}}}", w[0])));
        }
        Ok(FamilyDesc::Explicit(sets))
    }

    pub fn restrict(self, l: Window) -> FamilyDesc {
        FamilyDesc::Restrict(Box::new(self), l)
    }

    pub fn shift(self, l: Window) -> FamilyDesc {
        FamilyDesc::Shift(Box::new(self), l)
    }

    pub fn preimage(self, l: Window) -> FamilyDesc {
        FamilyDesc::Preimage(Box::new(self), l)
    }

    pub fn quotient(self, l: Window) -> FamilyDesc {
        FamilyDesc::Quotient(Box::new(self), l)
    }

    pub fn derived_at(self, n: u64) -> FamilyDesc {
        FamilyDesc::DerivedAt(Box::new(self), n)
    }

    pub fn section(self, t: FinSet) -> FamilyDesc {
        FamilyDesc::Section(Box::new(self), t)
    }

    /// `self ⊕ right`.
    pub fn direct_sum(self, right: FamilyDesc) -> FamilyDesc {
        FamilyDesc::DirectSum(Box::new(self), Box::new(right))
    }

    pub fn closure_family(self) -> FamilyDesc {
        FamilyDesc::Closure(Box::new(self))
    }

    pub fn max_elements(self) -> FamilyDesc {
        FamilyDesc::MaxElements(Box::new(self))
    }

    /// Every infinite subset of ℕ has an initial segment in the family and
    /// the closure is hereditary and spreading, by construction.
    pub fn is_barrier(&self) -> bool {
        use FamilyDesc::*;
        match self {
            KSubsets(_) | Schreier(_) => true,
            DirectSum(g, f) => g.is_barrier() && f.is_barrier(),
            DerivedAt(b, _) => b.is_barrier() && !matches!(b.contains(&FinSet::empty()), Ok(true)),
            Preimage(b, _) | Closure(b) | MaxElements(b) => b.is_barrier(),
            _ => false,
        }
    }

    /// The closure is spreading by construction.
    pub fn closure_spreading(&self) -> bool {
        use FamilyDesc::*;
        match self {
            KSubsets(_) | Schreier(_) => true,
            DirectSum(g, f) => g.closure_spreading() && f.closure_spreading(),
            DerivedAt(b, _) | Closure(b) | MaxElements(b) => b.closure_spreading(),
            _ => false,
        }
    }

    /// No member is a proper initial segment of another, by construction.
    pub fn structurally_thin(&self) -> bool {
        use FamilyDesc::*;
        match self {
            KSubsets(_) | Schreier(_) | MaxElements(_) => true,
            DirectSum(g, f) => g.structurally_thin() && f.structurally_thin(),
            Restrict(b, _) | Shift(b, _) | Preimage(b, _) | Quotient(b, _) | DerivedAt(b, _)
            | Section(b, _) => b.structurally_thin(),
            Explicit(_) | Closure(_) => false,
        }
    }

    /// An upper bound for every element of every member, when the family
    /// is known to be finite.
    pub fn element_bound(&self) -> Option<u64> {
        use FamilyDesc::*;
        match self {
            KSubsets(0) => Some(0),
            KSubsets(_) | Schreier(_) => None,
            Explicit(sets) => Some(sets.iter().filter_map(|s| s.max_elem()).max().unwrap_or(0)),
            Restrict(b, l) => b.element_bound().map(|x| x.min(l.max())),
            Shift(b, l) => {
                let x = b.element_bound()?;
                if x == 0 {
                    Some(0)
                } else {
                    l.at(x as usize).ok()
                }
            }
            Preimage(b, l) => {
                let x = b.element_bound()?;
                if l.max() >= x {
                    Some(l.elems().iter().filter(|&&v| v <= x).count() as u64)
                } else {
                    None
                }
            }
            Quotient(b, _) | DerivedAt(b, _) | Section(b, _) | Closure(b) | MaxElements(b) => {
                b.element_bound()
            }
            DirectSum(g, f) => Some(g.element_bound()?.max(f.element_bound()?)),
        }
    }

    /// Membership test.
    pub fn contains(&self, s: &FinSet) -> Result<bool> {
        use FamilyDesc::*;
        match self {
            KSubsets(k) => Ok(s.len() == *k),
            Schreier(xi) => Ok(schreier::is_maximal(xi, s.elems())),
            Explicit(sets) => Ok(sets.binary_search(s).is_ok()),
            Restrict(b, l) => Ok(subset_of_window(s, l)? && b.contains(s)?),
            Shift(b, l) => match l.positions(s)? {
                Some(p) => b.contains(&p),
                None => Ok(false),
            },
            Preimage(b, l) => b.contains(&l.apply_set(s)?),
            Quotient(b, l) => match quotient_lift(s, l)? {
                Some(u) => quotient_inner(b, l)?.contains(&u),
                None => Ok(false),
            },
            DerivedAt(b, n) => {
                if s.min_elem().is_some_and(|m| m <= *n) {
                    return Ok(false);
                }
                b.contains(&FinSet::singleton(*n).concat(s))
            }
            Section(b, t) => Ok(t.is_prefix_of(s) && b.contains(s)?),
            DirectSum(g, f) => {
                for i in 0..=s.len() {
                    let (a, c) = split(s, i);
                    if g.contains(&a)? && f.contains(&c)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Closure(b) => b.in_closure(s),
            MaxElements(b) => Ok(b.contains(s)? && !has_extension(b, s)?),
        }
    }

    /// `s ∈ F̂`: some member has `s` as an initial segment.
    pub fn in_closure(&self, s: &FinSet) -> Result<bool> {
        use FamilyDesc::*;
        match self {
            KSubsets(k) => Ok(s.len() <= *k),
            Schreier(xi) => Ok(schreier::in_schreier(xi, s.elems())),
            Explicit(sets) => Ok(sets.iter().any(|m| s.is_prefix_of(m))),
            Restrict(b, l) => {
                if !subset_of_window(s, l)? {
                    return Ok(false);
                }
                restricted_closure(b, l, s)
            }
            Shift(b, l) => match l.positions(s)? {
                Some(p) => b.in_closure(&p),
                None => Ok(false),
            },
            Preimage(b, l) => restricted_closure(b, l, &l.apply_set(s)?),
            Quotient(b, l) => match quotient_lift(s, l)? {
                Some(u) => quotient_inner(b, l)?.in_closure(&u),
                None => Ok(false),
            },
            DerivedAt(b, n) => {
                if s.min_elem().is_some_and(|m| m <= *n) {
                    return Ok(false);
                }
                b.in_closure(&FinSet::singleton(*n).concat(s))
            }
            Section(b, t) => {
                if s.is_prefix_of(t) {
                    b.in_closure(t)
                } else if t.is_prefix_of(s) {
                    b.in_closure(s)
                } else {
                    Ok(false)
                }
            }
            DirectSum(g, f) => direct_sum_closure(g, f, s),
            Closure(b) => b.in_closure(s),
            MaxElements(b) => {
                if b.element_bound().is_some() || b.closure_spreading() {
                    b.in_closure(s)
                } else {
                    Err(PtkError::HorizonRequired(
                        "maximal elements of a family that is neither finite nor spreading".into(),
                    ))
                }
            }
        }
    }

    /// Some member `t` satisfies `s < t` (the empty member counts).
    pub fn exists_member_above(&self, m: u64) -> Result<bool> {
        if self.is_barrier() {
            return Ok(true);
        }
        let Some(b) = self.element_bound() else {
            return Err(PtkError::HorizonRequired(format!(
                "members above {} of an unbounded family",
                m
            )));
        };
        let mut found = false;
        self.walk(&(1..=b).collect::<Vec<_>>(), &mut |t, member| {
            if member && t.min_elem().is_none_or(|x| x > m) {
                found = true;
                return Ok(Walk::Stop);
            }
            Ok(Walk::Descend)
        })?;
        Ok(found)
    }

    /// Depth-first walk of the closure tree restricted to sets drawn from
    /// `candidates` (sorted), in lexicographic order. The visitor sees each
    /// node with its membership flag.
    pub fn walk(
        &self,
        candidates: &[u64],
        visit: &mut dyn FnMut(&FinSet, bool) -> Result<Walk>,
    ) -> Result<()> {
        let root = FinSet::empty();
        if !self.in_closure(&root)? {
            return Ok(());
        }
        match visit(&root, self.contains(&root)?)? {
            Walk::Descend => {
                self.walk_from(&root, candidates, visit)?;
            }
            Walk::Prune | Walk::Stop => {}
        }
        Ok(())
    }

    /// Walks the strict extensions of `t` (which must be in the closure).
    pub fn walk_from(
        &self,
        t: &FinSet,
        candidates: &[u64],
        visit: &mut dyn FnMut(&FinSet, bool) -> Result<Walk>,
    ) -> Result<bool> {
        let start = match t.max_elem() {
            Some(m) => candidates.partition_point(|&c| c <= m),
            None => 0,
        };
        for &c in &candidates[start..] {
            let next = t.push(c);
            if !self.in_closure(&next)? {
                continue;
            }
            match visit(&next, self.contains(&next)?)? {
                Walk::Stop => return Ok(false),
                Walk::Prune => {}
                Walk::Descend => {
                    if !self.walk_from(&next, candidates, visit)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Display for FamilyDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilyDesc::*;
        match self {
            KSubsets(k) => write!(f, "[N]^{}", k),
            Schreier(xi) => write!(f, "max S_{}", xi),
            Explicit(sets) => {
                let parts: Vec<String> = sets.iter().map(|s| format!("{{{}}}", s)).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
            Restrict(b, _) => write!(f, "({})|L", b),
            Shift(b, _) => write!(f, "({})(L)", b),
            Preimage(b, _) => write!(f, "({})(L^-1)", b),
            Quotient(b, _) => write!(f, "({})/L", b),
            DerivedAt(b, n) => write!(f, "({})_({})", b, n),
            Section(b, t) => write!(f, "({})_[{}]", b, t),
            DirectSum(g, h) => write!(f, "({}) + ({})", g, h),
            Closure(b) => write!(f, "closure({})", b),
            MaxElements(b) => write!(f, "max({})", b),
        }
    }
}

fn split(s: &FinSet, i: usize) -> (FinSet, FinSet) {
    (FinSet::from_sorted(s.elems()[..i].to_vec()), s.tail(i))
}

fn subset_of_window(s: &FinSet, l: &Window) -> Result<bool> {
    for x in s.iter() {
        if !l.contains(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `s` lies in the closure of `b↾L`; `s ⊆ L` is assumed.
fn restricted_closure(b: &FamilyDesc, l: &Window, s: &FinSet) -> Result<bool> {
    if b.is_barrier() {
        return b.in_closure(s);
    }
    if !b.in_closure(s)? {
        return Ok(false);
    }
    if b.contains(s)? {
        return Ok(true);
    }
    let mut found = false;
    b.walk_from(s, l.elems(), &mut |_, member| {
        if member {
            found = true;
            Ok(Walk::Stop)
        } else {
            Ok(Walk::Descend)
        }
    })?;
    if found || b.element_bound().is_some_and(|x| x <= l.max()) {
        Ok(found)
    } else {
        Err(PtkError::HorizonRequired(format!(
            "no extension of {{{}}} inside the window; a longer window may contain one",
            s
        )))
    }
}

/// Maps `{L(k_1),...}` to `{L(k_1+1),...}`, or `None` when some `k_i` is not
/// even (so `k_i + 1` is not an odd position past the first).
fn quotient_lift(s: &FinSet, l: &Window) -> Result<Option<FinSet>> {
    let Some(pos) = l.positions(s)? else {
        return Ok(None);
    };
    if pos.iter().any(|p| p % 2 == 1) {
        return Ok(None);
    }
    let v = pos.iter().map(|p| l.at(p as usize + 1)).collect::<Result<Vec<u64>>>()?;
    Ok(Some(FinSet::from_sorted(v)))
}

fn quotient_inner(b: &FamilyDesc, l: &Window) -> Result<FamilyDesc> {
    Ok(b.clone().derived_at(l.at(1)?).restrict(l.odd_positions()))
}

fn direct_sum_closure(g: &FamilyDesc, f: &FamilyDesc, s: &FinSet) -> Result<bool> {
    for i in 0..=s.len() {
        let (a, c) = split(s, i);
        if !g.contains(&a)? {
            continue;
        }
        if c.is_empty() {
            if f.exists_member_above(a.max_elem().unwrap_or(0))? {
                return Ok(true);
            }
        } else if f.in_closure(&c)? {
            return Ok(true);
        }
    }
    if !g.in_closure(s)? {
        return Ok(false);
    }
    if g.is_barrier() && f.is_barrier() {
        return Ok(true);
    }
    let Some(bound) = g.element_bound() else {
        return Err(PtkError::HorizonRequired(
            "closure of a direct sum with an unbounded, non-barrier left side".into(),
        ));
    };
    let cands: Vec<u64> = (1..=bound).collect();
    let mut found = false;
    let mut err = None;
    g.walk_from(s, &cands, &mut |t, member| {
        if member {
            match f.exists_member_above(t.max_elem().unwrap_or(0)) {
                Ok(true) => {
                    found = true;
                    return Ok(Walk::Stop);
                }
                Ok(false) => {}
                Err(e) => {
                    err = Some(e);
                    return Ok(Walk::Stop);
                }
            }
        }
        Ok(Walk::Descend)
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// Some `t ∪ {n}`, `n > max t`, lies in the closure of `b`.
fn has_extension(b: &FamilyDesc, t: &FinSet) -> Result<bool> {
    let m = t.max_elem().unwrap_or(0);
    if let Some(bound) = b.element_bound() {
        for n in m + 1..=bound {
            if b.in_closure(&t.push(n))? {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    if b.closure_spreading() {
        // spreading: if any extension exists then a far one does too
        return b.in_closure(&t.push(m + 1_000_000));
    }
    Err(PtkError::HorizonRequired(
        "maximality in a family that is neither finite nor spreading".into(),
    ))
}

fn candidates(n: u64) -> Vec<u64> {
    (1..=n).collect()
}

/// Members of `F` contained in `[1..N]`, in lexicographic order.
pub fn members(f: &FamilyDesc, n: u64) -> Result<Vec<FinSet>> {
    let mut out = Vec::new();
    f.walk(&candidates(n), &mut |t, member| {
        if member {
            out.push(t.clone());
        }
        Ok(Walk::Descend)
    })?;
    Ok(out)
}

/// Initial segments (including ∅) of members of `F` that lie in `[1..N]`.
pub fn closure(f: &FamilyDesc, n: u64) -> Result<Vec<FinSet>> {
    let mut out = Vec::new();
    f.walk(&candidates(n), &mut |t, _| {
        out.push(t.clone());
        Ok(Walk::Descend)
    })?;
    Ok(out)
}

/// Builds the transformed family; membership delegates to the definitions.
pub fn transform(f: &FamilyDesc, op: Transform) -> Result<FamilyDesc> {
    let base = f.clone();
    Ok(match op {
        Transform::Restrict(l) => base.restrict(l),
        Transform::Shift(l) => base.shift(l),
        Transform::Preimage(l) => base.preimage(l),
        Transform::Quotient(l) => base.quotient(l),
        Transform::DerivedAt(n) => {
            if n == 0 {
                return Err(PtkError::InvalidArgument("derived_at needs n >= 1".into()));
            }
            base.derived_at(n)
        }
        Transform::Section(t) => base.section(t),
        Transform::DirectSum(right) => base.direct_sum(right),
    })
}

/// The unique member of `F` that is an initial segment of the window.
pub fn initial_segment_in(f: &FamilyDesc, l: &Window) -> Result<FinSet> {
    let whole = l.as_set();
    for k in 0..=l.horizon() {
        let t = whole.initial_segment(k)?;
        if f.contains(&t)? {
            return Ok(t);
        }
        if !f.in_closure(&t)? {
            return Err(PtkError::NotVeryLargeAtHorizon);
        }
    }
    Err(PtkError::NotVeryLargeAtHorizon)
}

/// Very largeness of `F` in `L`, decided from the window where possible.
///
/// A selection with no initial segment in `F` that has already left the
/// closure refutes it. If every selection is decided inside the window the
/// answer is yes. Otherwise yes is reported only for families that are
/// very large everywhere by construction and whose initial segment along
/// the window itself exists.
pub fn is_very_large(f: &FamilyDesc, l: &Window, budget: u64) -> Result<Tri> {
    enum State {
        Decided,
        Undecided,
        Refuted,
    }
    fn rec(
        f: &FamilyDesc,
        l: &Window,
        t: &FinSet,
        start: usize,
        nodes: &mut u64,
        budget: u64,
    ) -> State {
        *nodes += 1;
        if *nodes > budget {
            return State::Undecided;
        }
        match f.contains(t) {
            Ok(true) => return State::Decided,
            Ok(false) => {}
            Err(_) => return State::Undecided,
        }
        match f.in_closure(t) {
            Ok(false) => return State::Refuted,
            Ok(true) => {}
            Err(_) => return State::Undecided,
        }
        let mut all = true;
        let mut any_child = false;
        for (i, &x) in l.elems().iter().enumerate().skip(start) {
            any_child = true;
            match rec(f, l, &t.push(x), i + 1, nodes, budget) {
                State::Refuted => return State::Refuted,
                State::Undecided => all = false,
                State::Decided => {}
            }
        }
        if all && any_child {
            State::Decided
        } else {
            State::Undecided
        }
    }
    let mut nodes = 0;
    match rec(f, l, &FinSet::empty(), 0, &mut nodes, budget) {
        State::Refuted => Ok(Tri::No),
        State::Decided => Ok(Tri::Yes),
        State::Undecided => {
            if f.is_barrier() && initial_segment_in(f, l).is_ok() {
                Ok(Tri::Yes)
            } else {
                Ok(Tri::UnknownAtHorizon)
            }
        }
    }
}

pub use order::order;
pub use predicates::predicates;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fs;

    #[test]
    fn members_examples() {
        assert_eq!(
            members(&FamilyDesc::f_omega(), 4).unwrap(),
            vec![fs![1], fs![2, 3], fs![2, 4]]
        );
        assert_eq!(
            members(&FamilyDesc::k_subsets(2), 3).unwrap(),
            vec![fs![1, 2], fs![1, 3], fs![2, 3]]
        );
        let ds = FamilyDesc::k_subsets(1).direct_sum(FamilyDesc::k_subsets(1));
        assert_eq!(members(&ds, 3).unwrap(), vec![fs![1, 2], fs![1, 3], fs![2, 3]]);
    }

    #[test]
    fn closure_examples() {
        let e = FamilyDesc::explicit(vec![fs![2, 4]]).unwrap();
        assert_eq!(closure(&e, 4).unwrap(), vec![fs![], fs![2], fs![2, 4]]);
        assert_eq!(
            closure(&FamilyDesc::f_omega(), 3).unwrap(),
            vec![fs![], fs![1], fs![2], fs![2, 3], fs![3]]
        );
        let empty = FamilyDesc::explicit(vec![]).unwrap();
        assert!(closure(&empty, 5).unwrap().is_empty());
    }

    #[test]
    fn explicit_duplicates_rejected() {
        assert!(FamilyDesc::explicit(vec![fs![1], fs![1]]).is_err());
        let e = FamilyDesc::explicit(vec![fs![2, 3], fs![1]]).unwrap();
        assert_eq!(e, FamilyDesc::Explicit(vec![fs![1], fs![2, 3]]));
    }

    #[test]
    fn derived_at_example() {
        let d = transform(&FamilyDesc::f_omega(), Transform::DerivedAt(2)).unwrap();
        let got: Vec<FinSet> = members(&d, 6).unwrap();
        assert_eq!(got, vec![fs![3], fs![4], fs![5], fs![6]]);
    }

    #[test]
    fn preimage_of_k_subsets() {
        let p = transform(&FamilyDesc::k_subsets(2), Transform::Preimage(Window::evens(10))).unwrap();
        assert_eq!(members(&p, 3).unwrap(), vec![fs![1, 2], fs![1, 3], fs![2, 3]]);
    }

    #[test]
    fn preimage_picks_positions() {
        // L(t) ∈ F_ω for L = evens needs |t| = 2 min t
        let p = FamilyDesc::f_omega().preimage(Window::evens(12));
        assert_eq!(members(&p, 4).unwrap(), vec![fs![1, 2], fs![1, 3], fs![1, 4]]);
    }

    #[test]
    fn quotient_unfolds_definition() {
        // F_ω/_L with L the identity: F_(1) = {∅}, so the only member is ∅
        let q = FamilyDesc::f_omega().quotient(Window::identity(12));
        assert_eq!(members(&q, 8).unwrap(), vec![fs![]]);
        // [N]^2/_L: {l_k} with {l_{k+1}} ∈ [N]^2_(l_1) on odd positions
        let q = FamilyDesc::k_subsets(2).quotient(Window::identity(12));
        assert_eq!(members(&q, 7).unwrap(), vec![fs![2], fs![4], fs![6]]);
    }

    #[test]
    fn shift_and_restrict() {
        let s = FamilyDesc::k_subsets(1).shift(Window::evens(6));
        assert_eq!(members(&s, 6).unwrap(), vec![fs![2], fs![4], fs![6]]);
        let r = FamilyDesc::f_omega().restrict(Window::evens(6));
        let got = members(&r, 12).unwrap();
        assert_eq!(got.len(), 9);
        assert_eq!(got[..2], [fs![2, 4], fs![2, 6]]);
        assert_eq!(got[5], fs![4, 6, 8, 10]);
        assert!(members(&r, 13).is_err());
    }

    #[test]
    fn section_and_max_elements() {
        let s = FamilyDesc::f_omega().section(fs![3, 4]);
        assert_eq!(members(&s, 6).unwrap(), vec![fs![3, 4, 5], fs![3, 4, 6]]);
        let m = FamilyDesc::f_omega().closure_family().max_elements();
        assert_eq!(members(&m, 5).unwrap(), members(&FamilyDesc::f_omega(), 5).unwrap());
        let e = FamilyDesc::explicit(vec![fs![1], fs![1, 2], fs![3]]).unwrap().max_elements();
        assert_eq!(members(&e, 5).unwrap(), vec![fs![1, 2], fs![3]]);
    }

    #[test]
    fn initial_segments_in_windows() {
        assert_eq!(
            initial_segment_in(&FamilyDesc::f_omega(), &Window::arithmetic(3, 2, 8)).unwrap(),
            fs![3, 5, 7]
        );
        assert_eq!(
            initial_segment_in(&FamilyDesc::k_subsets(2), &Window::identity(5)).unwrap(),
            fs![1, 2]
        );
        assert_eq!(
            initial_segment_in(&FamilyDesc::f_omega(), &Window::identity(5)).unwrap(),
            fs![1]
        );
        assert_eq!(
            initial_segment_in(&FamilyDesc::k_subsets(3), &Window::identity(2)),
            Err(PtkError::NotVeryLargeAtHorizon)
        );
    }

    #[test]
    fn very_large_examples() {
        let b = 1_000_000;
        assert_eq!(is_very_large(&FamilyDesc::f_omega(), &Window::identity(12), b).unwrap(), Tri::Yes);
        let e = FamilyDesc::explicit(vec![fs![1]]).unwrap();
        assert_eq!(is_very_large(&e, &Window::identity(6), b).unwrap(), Tri::No);
        assert_eq!(
            is_very_large(&FamilyDesc::k_subsets(3), &Window::identity(2), b).unwrap(),
            Tri::UnknownAtHorizon
        );
        assert_eq!(is_very_large(&FamilyDesc::k_subsets(2), &Window::identity(6), b).unwrap(), Tri::Yes);
    }

    #[test]
    fn closure_of_restriction_matches() {
        // closure(F↾L) = F̂↾L for regular thin F
        for f in [FamilyDesc::f_omega(), FamilyDesc::k_subsets(2), FamilyDesc::schreier(2)] {
            let l = Window::arithmetic(1, 2, 8);
            let lhs = closure(&f.clone().restrict(l.clone()), 15).unwrap();
            let rhs: Vec<FinSet> = closure(&f, 15)
                .unwrap()
                .into_iter()
                .filter(|t| t.iter().all(|x| l.position(x).is_some()))
                .collect();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn direct_sum_with_explicit_parts() {
        let g = FamilyDesc::explicit(vec![fs![1], fs![5]]).unwrap();
        let f = FamilyDesc::explicit(vec![fs![3]]).unwrap();
        let ds = g.direct_sum(f);
        assert_eq!(members(&ds, 6).unwrap(), vec![fs![1, 3]]);
        assert_eq!(closure(&ds, 6).unwrap(), vec![fs![], fs![1], fs![1, 3]]);
    }
}
