//! Wire formats for families, spaces, vectors and sequences.
//!
//! Each `*Json` type mirrors one library type and converts both ways, so
//! anything a command prints can be fed back to the commands that read it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{PtkError, Result};
use crate::families::FamilyDesc;
use crate::norms::numeric::rational_str;
use crate::norms::{MixedRules, QpBase, QpParams, SpaceDesc, SpaceVec, Q};
use crate::setcore::{FinSet, OrdinalCNF, Window};
use crate::spreading::SeqDesc;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilyJson {
    KSubsets { k: usize },
    Schreier { xi: OrdinalCNF },
    Explicit { sets: Vec<FinSet> },
    Restrict { base: Box<FamilyJson>, window: Window },
    Shift { base: Box<FamilyJson>, window: Window },
    Preimage { base: Box<FamilyJson>, window: Window },
    Quotient { base: Box<FamilyJson>, window: Window },
    DerivedAt { base: Box<FamilyJson>, n: u64 },
    Section { base: Box<FamilyJson>, t: FinSet },
    DirectSum { left: Box<FamilyJson>, right: Box<FamilyJson> },
    Closure { base: Box<FamilyJson> },
    MaxElements { base: Box<FamilyJson> },
}

impl FamilyJson {
    pub fn to_desc(&self) -> Result<FamilyDesc> {
        use FamilyJson as J;
        Ok(match self {
            J::KSubsets { k } => FamilyDesc::k_subsets(*k),
            J::Schreier { xi } => FamilyDesc::Schreier(xi.clone()),
            J::Explicit { sets } => FamilyDesc::explicit(sets.clone())?,
            J::Restrict { base, window } => base.to_desc()?.restrict(window.clone()),
            J::Shift { base, window } => base.to_desc()?.shift(window.clone()),
            J::Preimage { base, window } => base.to_desc()?.preimage(window.clone()),
            J::Quotient { base, window } => base.to_desc()?.quotient(window.clone()),
            J::DerivedAt { base, n } => base.to_desc()?.derived_at(*n),
            J::Section { base, t } => base.to_desc()?.section(t.clone()),
            J::DirectSum { left, right } => left.to_desc()?.direct_sum(right.to_desc()?),
            J::Closure { base } => base.to_desc()?.closure_family(),
            J::MaxElements { base } => base.to_desc()?.max_elements(),
        })
    }
}

impl From<&FamilyDesc> for FamilyJson {
    fn from(f: &FamilyDesc) -> FamilyJson {
        use FamilyDesc as D;
        use FamilyJson as J;
        let b = |x: &FamilyDesc| Box::new(FamilyJson::from(x));
        match f {
            D::KSubsets(k) => J::KSubsets { k: *k },
            D::Schreier(xi) => J::Schreier { xi: xi.clone() },
            D::Explicit(sets) => J::Explicit { sets: sets.clone() },
            D::Restrict(g, w) => J::Restrict { base: b(g), window: w.clone() },
            D::Shift(g, w) => J::Shift { base: b(g), window: w.clone() },
            D::Preimage(g, w) => J::Preimage { base: b(g), window: w.clone() },
            D::Quotient(g, w) => J::Quotient { base: b(g), window: w.clone() },
            D::DerivedAt(g, n) => J::DerivedAt { base: b(g), n: *n },
            D::Section(g, t) => J::Section { base: b(g), t: t.clone() },
            D::DirectSum(l, r) => J::DirectSum { left: b(l), right: b(r) },
            D::Closure(g) => J::Closure { base: b(g) },
            D::MaxElements(g) => J::MaxElements { base: b(g) },
        }
    }
}

/// `base^{j + offset}` for `m_j`, `base^{(j + offset)²}` for `n_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleJson {
    pub base: u32,
    pub offset: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceJson {
    XiPlegmaL1 {
        family: FamilyJson,
    },
    XiPlegmaL2l1 {
        family: FamilyJson,
    },
    FrakX {
        k: usize,
    },
    Qp {
        k: usize,
        #[serde(with = "rational_str")]
        q: Q,
        #[serde(with = "rational_str")]
        p: Q,
        base: QpBase,
    },
    SchreierHash,
    MixedW {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<RuleJson>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<RuleJson>,
    },
    Tsirelson,
}

impl SpaceJson {
    pub fn to_desc(&self) -> Result<SpaceDesc> {
        use SpaceJson as J;
        match self {
            J::XiPlegmaL1 { family } => Ok(SpaceDesc::xi_plegma_l1(family.to_desc()?)),
            J::XiPlegmaL2l1 { family } => Ok(SpaceDesc::xi_plegma_l2l1(family.to_desc()?)),
            J::FrakX { k } => SpaceDesc::frak_x(*k),
            J::Qp { k, q, p, base } => SpaceDesc::qp(*k, q.clone(), p.clone(), *base),
            J::SchreierHash => Ok(SpaceDesc::schreier_hash()),
            J::MixedW { m, n } => {
                let d = MixedRules::default();
                let m = m.unwrap_or(RuleJson { base: d.m_base, offset: d.m_offset });
                let n = n.unwrap_or(RuleJson { base: d.n_base, offset: d.n_offset });
                SpaceDesc::mixed_w(MixedRules { m_base: m.base, m_offset: m.offset, n_base: n.base, n_offset: n.offset })
            }
            J::Tsirelson => Ok(SpaceDesc::tsirelson()),
        }
    }
}

impl From<&SpaceDesc> for SpaceJson {
    fn from(s: &SpaceDesc) -> SpaceJson {
        use SpaceDesc as D;
        use SpaceJson as J;
        match s {
            D::XiPlegmaL1(f) => J::XiPlegmaL1 { family: f.into() },
            D::XiPlegmaL2L1(f) => J::XiPlegmaL2l1 { family: f.into() },
            D::FrakX(k) => J::FrakX { k: *k },
            D::Qp(QpParams { k, q, p, base }) => J::Qp { k: *k, q: q.clone(), p: p.clone(), base: *base },
            D::SchreierHash => J::SchreierHash,
            D::MixedW(r) => J::MixedW {
                m: Some(RuleJson { base: r.m_base, offset: r.m_offset }),
                n: Some(RuleJson { base: r.n_base, offset: r.n_offset }),
            },
            D::Tsirelson => J::Tsirelson,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryJson {
    pub set: FinSet,
    #[serde(with = "rational_str")]
    pub coeff: Q,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorJson {
    pub space: SpaceJson,
    pub entries: Vec<EntryJson>,
}

impl VectorJson {
    pub fn to_vec(&self) -> Result<SpaceVec> {
        let space = self.space.to_desc()?;
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.entries {
            if !seen.insert(&e.set) {
                return Err(PtkError::InvalidArgument(format!("coordinate {{{}}} listed twice", e.set)));
            }
        }
        SpaceVec::new(space, self.entries.iter().map(|e| (e.set.clone(), e.coeff.clone())))
    }
}

impl From<&SpaceVec> for VectorJson {
    fn from(v: &SpaceVec) -> VectorJson {
        VectorJson {
            space: v.space().into(),
            entries: v.entries().iter().map(|(s, c)| EntryJson { set: s.clone(), coeff: c.clone() }).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntryJson {
    pub set: FinSet,
    pub entries: Vec<EntryJson>,
}

/// An `F`-sequence. Table rows share the sequence's space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SeqJson {
    Basis { space: SpaceJson, family: FamilyJson },
    CumulativeChain,
    ExplicitTable { space: SpaceJson, family: FamilyJson, table: Vec<TableEntryJson> },
}

impl SeqJson {
    pub fn to_desc(&self) -> Result<SeqDesc> {
        Ok(match self {
            SeqJson::Basis { space, family } => SeqDesc::basis(space.to_desc()?, family.to_desc()?),
            SeqJson::CumulativeChain => SeqDesc::CumulativeChain,
            SeqJson::ExplicitTable { space, family, table } => {
                let space = space.to_desc()?;
                let mut rows = BTreeMap::new();
                for row in table {
                    let v = SpaceVec::new(space.clone(), row.entries.iter().map(|e| (e.set.clone(), e.coeff.clone())))?;
                    if rows.insert(row.set.clone(), v).is_some() {
                        return Err(PtkError::InvalidArgument(format!("row {{{}}} listed twice", row.set)));
                    }
                }
                SeqDesc::Table { space, family: family.to_desc()?, table: rows }
            }
        })
    }
}

impl From<&SeqDesc> for SeqJson {
    fn from(s: &SeqDesc) -> SeqJson {
        match s {
            SeqDesc::Basis { space, family } => SeqJson::Basis { space: space.into(), family: family.into() },
            SeqDesc::CumulativeChain => SeqJson::CumulativeChain,
            SeqDesc::Table { space, family, table } => SeqJson::ExplicitTable {
                space: space.into(),
                family: family.into(),
                table: table
                    .iter()
                    .map(|(s, v)| TableEntryJson { set: s.clone(), entries: VectorJson::from(v).entries })
                    .collect(),
            },
        }
    }
}

/// Parses JSON into `T`, mapping failures to [`PtkError::Parse`].
pub fn from_str<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| PtkError::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::numeric::q;

    #[test]
    fn family_keys() {
        let f: FamilyJson = from_str(r#"{"kind":"schreier","xi":"w"}"#).unwrap();
        assert_eq!(f, FamilyJson::Schreier { xi: OrdinalCNF::omega() });
        let f: FamilyJson = from_str(
            r#"{"kind":"direct_sum","left":{"kind":"k_subsets","k":1},
                "right":{"kind":"section","base":{"kind":"explicit","sets":[[1],[2,3]]},"t":[2]}}"#,
        )
        .unwrap();
        let d = f.to_desc().unwrap();
        assert_eq!(FamilyJson::from(&d), f);
        let text = serde_json::to_string(&FamilyJson::from(&FamilyDesc::k_subsets(2).restrict(Window::evens(3)))).unwrap();
        assert_eq!(text, r#"{"kind":"restrict","base":{"kind":"k_subsets","k":2},"window":[2,4,6]}"#);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(from_str::<FamilyJson>(r#"{"kind":"k_subsets","k":2,"x":1}"#).is_err());
        assert!(from_str::<FamilyJson>(r#"{"kind":"nope"}"#).is_err());
    }

    #[test]
    fn vector_round_trip() {
        let text = r#"{"space":{"kind":"frak_x","k":1},"entries":[{"set":[1,2],"coeff":"1/3"},{"set":[2,5],"coeff":"-0.25"}]}"#;
        let v: VectorJson = from_str(text).unwrap();
        let x = v.to_vec().unwrap();
        assert_eq!(x.get(&crate::fs![2, 5]), q(-1) / q(4));
        let back = serde_json::to_string(&VectorJson::from(&x)).unwrap();
        assert_eq!(back, r#"{"space":{"kind":"frak_x","k":1},"entries":[{"set":[1,2],"coeff":"1/3"},{"set":[2,5],"coeff":"-1/4"}]}"#);
    }

    #[test]
    fn spaces() {
        let s: SpaceJson = from_str(r#"{"kind":"qp","k":2,"q":"3/2","p":2,"base":"tsirelson"}"#).unwrap();
        assert!(matches!(s.to_desc().unwrap(), SpaceDesc::Qp(_)));
        let s: SpaceJson = from_str(r#"{"kind":"mixed_w"}"#).unwrap();
        assert_eq!(s.to_desc().unwrap(), SpaceDesc::MixedW(MixedRules::default()));
        let s: SpaceJson = from_str(r#"{"kind":"mixed_w","m":{"base":2,"offset":0}}"#).unwrap();
        assert!(s.to_desc().is_err());
        let s: SpaceJson = from_str(r#"{"kind":"xi_plegma_l2l1","family":{"kind":"k_subsets","k":2}}"#).unwrap();
        assert_eq!(SpaceJson::from(&s.to_desc().unwrap()), s);
    }

    #[test]
    fn duplicate_coordinates() {
        let v: VectorJson = from_str(r#"{"space":{"kind":"tsirelson"},"entries":[{"set":[1],"coeff":1},{"set":[1],"coeff":2}]}"#).unwrap();
        assert!(v.to_vec().is_err());
    }
}
