use serde::Serialize;

use super::FamilyDesc;
use crate::error::{PtkError, Result};
use crate::setcore::{ord_add, FinSet, OrdinalCNF};

/// Order of a family. `value` is `None` for the empty family (order −1).
/// `inherited` marks orders taken from a base family through a
/// transformation known to preserve them rather than computed directly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyOrder {
    pub value: Option<OrdinalCNF>,
    pub inherited: bool,
}

impl FamilyOrder {
    fn exact(v: OrdinalCNF) -> FamilyOrder {
        FamilyOrder { value: Some(v), inherited: false }
    }

    fn empty() -> FamilyOrder {
        FamilyOrder { value: None, inherited: false }
    }

    pub fn display(&self) -> String {
        match &self.value {
            Some(v) => v.to_string(),
            None => "-1".to_string(),
        }
    }
}

/// Rank of `∅` in the closure tree: leaves have rank 0 and every other node
/// has rank one more than the supremum over its children.
pub fn order(f: &FamilyDesc) -> Result<FamilyOrder> {
    use FamilyDesc::*;
    if !f.in_closure(&FinSet::empty()).unwrap_or(true) {
        return Ok(FamilyOrder::empty());
    }
    if let Some(b) = f.element_bound() {
        return Ok(match finite_rank(f, &FinSet::empty(), b)? {
            Some(r) => FamilyOrder::exact(OrdinalCNF::finite(r)),
            None => FamilyOrder::empty(),
        });
    }
    match f {
        KSubsets(k) => Ok(FamilyOrder::exact(OrdinalCNF::finite(*k as u64))),
        Schreier(xi) => match xi.as_finite() {
            Some(n) => Ok(FamilyOrder::exact(OrdinalCNF::omega_pow(n as u32))),
            None => Err(PtkError::OrderUnknown(format!(
                "maximal Schreier sets of level {} have order w^({}), which is not below w^w",
                xi, xi
            ))),
        },
        DirectSum(g, h) => {
            let (og, oh) = (order(g)?, order(h)?);
            match (og.value, oh.value) {
                (Some(a), Some(b)) => Ok(FamilyOrder {
                    value: Some(ord_add(&b, &a)),
                    inherited: og.inherited || oh.inherited,
                }),
                _ => Ok(FamilyOrder::empty()),
            }
        }
        Restrict(b, _) | Shift(b, _) | Preimage(b, _) | MaxElements(b) => {
            let o = order(b)?;
            Ok(FamilyOrder { value: o.value, inherited: true })
        }
        Closure(b) => order(b),
        DerivedAt(b, n) => {
            let t = FinSet::singleton(*n);
            if !b.in_closure(&t)? {
                return Ok(FamilyOrder::empty());
            }
            Ok(FamilyOrder::exact(node_rank(b, &t)?))
        }
        Section(b, t) => {
            if !b.in_closure(t)? {
                return Ok(FamilyOrder::empty());
            }
            let r = node_rank(b, t)?;
            Ok(FamilyOrder::exact(ord_add(&r, &OrdinalCNF::finite(t.len() as u64))))
        }
        Quotient(..) => Err(PtkError::OrderUnknown("order of a quotient family".into())),
        Explicit(_) => unreachable!("explicit families are bounded"),
    }
}

/// Rank of node `t` of the closure tree of an unbounded symbolic family.
fn node_rank(f: &FamilyDesc, t: &FinSet) -> Result<OrdinalCNF> {
    use FamilyDesc::*;
    match f {
        KSubsets(k) => Ok(OrdinalCNF::finite((*k - t.len()) as u64)),
        Schreier(xi) if xi.as_finite() == Some(0) => {
            Ok(OrdinalCNF::finite(if t.is_empty() { 1 } else { 0 }))
        }
        Schreier(xi) if xi.as_finite() == Some(1) => match t.min_elem() {
            None => Ok(OrdinalCNF::omega()),
            Some(m) => Ok(OrdinalCNF::finite(m - t.len() as u64)),
        },
        Closure(b) => node_rank(b, t),
        _ if t.is_empty() => order(f)?
            .value
            .ok_or_else(|| PtkError::OrderUnknown("empty family".into())),
        _ => Err(PtkError::OrderUnknown(format!("rank of node {{{}}} in {}", t, f))),
    }
}

/// Finite tree rank below `t` when all elements are at most `bound`.
fn finite_rank(f: &FamilyDesc, t: &FinSet, bound: u64) -> Result<Option<u64>> {
    if !f.in_closure(t)? {
        return Ok(None);
    }
    let mut best: Option<u64> = None;
    let start = t.max_elem().unwrap_or(0) + 1;
    for n in start..=bound {
        if let Some(r) = finite_rank(f, &t.push(n), bound)? {
            best = Some(best.map_or(r + 1, |b| b.max(r + 1)));
        }
    }
    Ok(Some(best.unwrap_or(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fs;
    use crate::setcore::Window;

    fn ord(f: &FamilyDesc) -> String {
        order(f).unwrap().display()
    }

    #[test]
    fn symbolic_orders() {
        assert_eq!(ord(&FamilyDesc::k_subsets(2)), "2");
        assert_eq!(ord(&FamilyDesc::f_omega()), "w");
        assert_eq!(ord(&FamilyDesc::schreier(2)), "w^2");
        assert_eq!(ord(&FamilyDesc::schreier(0)), "1");
        let ds = FamilyDesc::f_omega().direct_sum(FamilyDesc::k_subsets(3));
        assert_eq!(ord(&ds), "w");
        let ds = FamilyDesc::k_subsets(3).direct_sum(FamilyDesc::f_omega());
        assert_eq!(ord(&ds), "w+3");
    }

    #[test]
    fn explicit_ranks() {
        let e = FamilyDesc::explicit(vec![fs![1], fs![2, 3]]).unwrap();
        assert_eq!(ord(&e), "2");
        assert_eq!(ord(&FamilyDesc::explicit(vec![]).unwrap()), "-1");
        assert_eq!(ord(&FamilyDesc::explicit(vec![fs![]]).unwrap()), "0");
    }

    #[test]
    fn derived_and_section() {
        assert_eq!(ord(&FamilyDesc::f_omega().derived_at(4)), "3");
        assert_eq!(ord(&FamilyDesc::k_subsets(3).derived_at(4)), "2");
        assert_eq!(ord(&FamilyDesc::f_omega().section(fs![5, 6])), "5");
    }

    #[test]
    fn inherited_orders() {
        let o = order(&FamilyDesc::f_omega().preimage(Window::evens(10))).unwrap();
        assert!(o.inherited);
        assert_eq!(o.display(), "w");
        assert!(order(&FamilyDesc::f_omega().quotient(Window::identity(5))).is_err());
    }
}
