use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{PtkError, Result};

/// A finite subset of the positive integers, stored in increasing order.
///
/// The derived ordering is lexicographic with a proper prefix first, which
/// is the order every enumeration in the crate uses.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSet(Vec<u64>);

impl FinSet {
    pub fn new(elems: Vec<u64>) -> Result<FinSet> {
        if elems.first() == Some(&0) {
            return Err(PtkError::InvalidArgument("set elements must be positive".into()));
        }
        if elems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PtkError::InvalidArgument(format!(
                "set elements must be strictly increasing: {:?}",
                elems
            )));
        }
        Ok(FinSet(elems))
    }

    /// Sorts and checks for duplicates.
    pub fn from_unsorted(mut elems: Vec<u64>) -> Result<FinSet> {
        elems.sort_unstable();
        FinSet::new(elems)
    }

    pub(crate) fn from_sorted(elems: Vec<u64>) -> FinSet {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        FinSet(elems)
    }

    pub fn empty() -> FinSet {
        FinSet(Vec::new())
    }

    pub fn singleton(n: u64) -> FinSet {
        assert!(n > 0, "set elements must be positive");
        FinSet(vec![n])
    }

    /// `{a, a+1, ..., b-1}`.
    pub fn interval(a: u64, b: u64) -> FinSet {
        assert!(a > 0, "set elements must be positive");
        FinSet((a..b).collect())
    }

    pub fn elems(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `s(k)`, 1-based.
    pub fn at(&self, k: usize) -> Option<u64> {
        if k == 0 {
            None
        } else {
            self.0.get(k - 1).copied()
        }
    }

    pub fn min_elem(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn max_elem(&self) -> Option<u64> {
        self.0.last().copied()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.0.binary_search(&n).is_ok()
    }

    /// `s|k`.
    pub fn initial_segment(&self, k: usize) -> Result<FinSet> {
        if k > self.len() {
            return Err(PtkError::OutOfRange { k, len: self.len() });
        }
        Ok(FinSet(self.0[..k].to_vec()))
    }

    /// `self ⊑ other`: self is an initial segment of other.
    pub fn is_prefix_of(&self, other: &FinSet) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn comparable(&self, other: &FinSet) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// `self < other`: every element of self is below every element of other.
    /// Holds vacuously when either set is empty.
    pub fn precedes(&self, other: &FinSet) -> bool {
        match (self.max_elem(), other.min_elem()) {
            (Some(a), Some(b)) => a < b,
            _ => true,
        }
    }

    pub fn is_subset_of(&self, other: &FinSet) -> bool {
        self.0.iter().all(|x| other.contains(*x))
    }

    pub fn is_disjoint(&self, other: &FinSet) -> bool {
        self.0.iter().all(|x| !other.contains(*x))
    }

    /// Appends `n`, which must exceed the current maximum.
    pub fn push(&self, n: u64) -> FinSet {
        assert!(self.max_elem().map_or(n > 0, |m| n > m));
        let mut v = self.0.clone();
        v.push(n);
        FinSet(v)
    }

    /// `s ∪ t` for `s < t`.
    pub fn concat(&self, other: &FinSet) -> FinSet {
        assert!(self.precedes(other));
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FinSet(v)
    }

    pub fn union(&self, other: &FinSet) -> FinSet {
        let mut v: Vec<u64> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        FinSet(v)
    }

    /// Elements after the first `k`.
    pub fn tail(&self, k: usize) -> FinSet {
        FinSet(self.0[k.min(self.len())..].to_vec())
    }

    /// Elements strictly greater than `n`.
    pub fn above(&self, n: u64) -> FinSet {
        FinSet(self.0.iter().copied().filter(|&x| x > n).collect())
    }

    /// Elements at most `n`.
    pub fn up_to(&self, n: u64) -> FinSet {
        FinSet(self.0.iter().copied().filter(|&x| x <= n).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }
}

/// `s|k = {s(1), ..., s(k)}`.
pub fn initial_segment(s: &FinSet, k: usize) -> Result<FinSet> {
    s.initial_segment(k)
}

/// `s2 /_{s1} = s2 ∩ [1, max s1]`.
pub fn set_quotient(s1: &FinSet, s2: &FinSet) -> Result<FinSet> {
    let m = s1.max_elem().ok_or(PtkError::EmptyBase)?;
    Ok(s2.up_to(m))
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for FinSet {
    type Err = PtkError;

    fn from_str(s: &str) -> Result<FinSet> {
        let s = s.trim();
        let s = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')).unwrap_or(s);
        if s.trim().is_empty() {
            return Ok(FinSet::empty());
        }
        let elems = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| PtkError::Parse(format!("bad set element {:?}", p)))
            })
            .collect::<Result<Vec<u64>>>()?;
        FinSet::new(elems)
    }
}

impl From<FinSet> for Vec<u64> {
    fn from(s: FinSet) -> Vec<u64> {
        s.0
    }
}

impl TryFrom<Vec<u64>> for FinSet {
    type Error = PtkError;

    fn try_from(v: Vec<u64>) -> Result<FinSet> {
        FinSet::new(v)
    }
}

impl Serialize for FinSet {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FinSet {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<FinSet, D::Error> {
        let v = Vec::<u64>::deserialize(de)?;
        FinSet::new(v).map_err(serde::de::Error::custom)
    }
}

/// Builds a set from literal elements; panics on invalid input.
#[macro_export]
macro_rules! fs {
    () => { $crate::setcore::FinSet::empty() };
    ($($x:expr),+ $(,)?) => {
        $crate::setcore::FinSet::new(vec![$($x as u64),+]).expect("valid set literal")
    };
}

/// Parses `"1,3;2,4"` into a list of sets.
pub fn parse_set_list(s: &str) -> Result<Vec<FinSet>> {
    s.split(';').map(|p| p.parse()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_segments() {
        assert_eq!(initial_segment(&fs![3, 7, 9], 2).unwrap(), fs![3, 7]);
        assert_eq!(initial_segment(&fs![3, 7, 9], 0).unwrap(), FinSet::empty());
        assert_eq!(initial_segment(&fs![5], 1).unwrap(), fs![5]);
        assert_eq!(
            initial_segment(&fs![5], 2),
            Err(PtkError::OutOfRange { k: 2, len: 1 })
        );
    }

    #[test]
    fn quotients() {
        assert_eq!(set_quotient(&fs![2, 5], &fs![3, 6]).unwrap(), fs![3]);
        assert_eq!(set_quotient(&fs![9], &fs![3, 6]).unwrap(), fs![3, 6]);
        assert_eq!(set_quotient(&fs![1], &fs![3, 6]).unwrap(), FinSet::empty());
        assert_eq!(set_quotient(&FinSet::empty(), &fs![3]), Err(PtkError::EmptyBase));
    }

    #[test]
    fn rejects_unsorted() {
        assert!(FinSet::new(vec![3, 2]).is_err());
        assert!(FinSet::new(vec![0, 2]).is_err());
        assert!(FinSet::new(vec![2, 2]).is_err());
        assert_eq!(FinSet::from_unsorted(vec![4, 1]).unwrap(), fs![1, 4]);
    }

    #[test]
    fn text_round_trip() {
        let s: FinSet = "1,3,7".parse().unwrap();
        assert_eq!(s, fs![1, 3, 7]);
        assert_eq!(s.to_string(), "1,3,7");
        assert_eq!("".parse::<FinSet>().unwrap(), FinSet::empty());
        assert_eq!(parse_set_list("1,3;2,4").unwrap(), vec![fs![1, 3], fs![2, 4]]);
    }

    #[test]
    fn order_and_relations() {
        assert!(fs![1, 2] < fs![1, 2, 3]);
        assert!(fs![1, 2, 3] < fs![1, 3]);
        assert!(fs![1, 2].is_prefix_of(&fs![1, 2, 5]));
        assert!(!fs![1, 5].is_prefix_of(&fs![1, 2, 5]));
        assert!(fs![1, 2].precedes(&fs![3]));
        assert!(!fs![1, 3].precedes(&fs![3]));
        assert!(FinSet::empty().precedes(&fs![1]));
    }
}
