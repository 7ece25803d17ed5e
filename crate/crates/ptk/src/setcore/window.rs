use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::FinSet;
use crate::error::{PtkError, Result};

/// The first `horizon` elements of an infinite set `L`.
///
/// Asking for `L(n)` with `n > horizon` is an error; nothing is extrapolated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    elems: Vec<u64>,
}

impl Window {
    pub fn new(elems: Vec<u64>) -> Result<Window> {
        if elems.is_empty() {
            return Err(PtkError::InvalidArgument("a window needs a positive horizon".into()));
        }
        FinSet::new(elems.clone())?;
        Ok(Window { elems })
    }

    /// `{1, ..., n}`.
    pub fn identity(n: usize) -> Window {
        Window::arithmetic(1, 1, n)
    }

    /// `{2, 4, ..., 2n}`.
    pub fn evens(n: usize) -> Window {
        Window::arithmetic(2, 2, n)
    }

    /// `{start, start+step, ...}` with `n` elements.
    pub fn arithmetic(start: u64, step: u64, n: usize) -> Window {
        assert!(start > 0 && step > 0 && n > 0);
        Window { elems: (0..n as u64).map(|i| start + i * step).collect() }
    }

    pub fn horizon(&self) -> usize {
        self.elems.len()
    }

    pub fn elems(&self) -> &[u64] {
        &self.elems
    }

    pub fn max(&self) -> u64 {
        *self.elems.last().expect("windows are nonempty")
    }

    pub fn min(&self) -> u64 {
        self.elems[0]
    }

    /// `L(n)`, 1-based.
    pub fn at(&self, n: usize) -> Result<u64> {
        if n == 0 || n > self.horizon() {
            return Err(PtkError::IndexBeyondHorizon { index: n as u64, horizon: self.horizon() });
        }
        Ok(self.elems[n - 1])
    }

    /// The 1-based position of `value` in the window.
    pub fn position(&self, value: u64) -> Option<usize> {
        self.elems.binary_search(&value).ok().map(|i| i + 1)
    }

    /// Whether `value` lies in `L`; an error when the window cannot tell.
    pub fn contains(&self, value: u64) -> Result<bool> {
        if value > self.max() {
            return Err(PtkError::HorizonRequired(format!(
                "membership of {} in a window ending at {}",
                value,
                self.max()
            )));
        }
        Ok(self.position(value).is_some())
    }

    /// `L(s) = {L(s(1)), ..., L(s(|s|))}`.
    pub fn apply_set(&self, s: &FinSet) -> Result<FinSet> {
        let v = s.iter().map(|i| self.at(i as usize)).collect::<Result<Vec<u64>>>()?;
        Ok(FinSet::from_sorted(v))
    }

    /// Positions of the elements of `t` in `L`, or `None` when `t ⊄ L`.
    pub fn positions(&self, t: &FinSet) -> Result<Option<FinSet>> {
        let mut out = Vec::with_capacity(t.len());
        for x in t.iter() {
            if !self.contains(x)? {
                return Ok(None);
            }
            out.push(self.position(x).unwrap() as u64);
        }
        Ok(Some(FinSet::from_sorted(out)))
    }

    /// The sub-window at the given 1-based positions.
    pub fn select(&self, positions: &[usize]) -> Result<Window> {
        let v = positions.iter().map(|&p| self.at(p)).collect::<Result<Vec<u64>>>()?;
        Window::new(v)
    }

    /// `{L(n), L(n+1), ...}`.
    pub fn from_position(&self, n: usize) -> Result<Window> {
        self.at(n)?;
        Window::new(self.elems[n - 1..].to_vec())
    }

    /// `{L(1), ..., L(n)}`.
    pub fn prefix(&self, n: usize) -> Result<Window> {
        if n == 0 {
            return Err(PtkError::InvalidArgument("empty prefix".into()));
        }
        self.at(n)?;
        Window::new(self.elems[..n].to_vec())
    }

    /// `L(2ℕ) = {L(2), L(4), ...}`.
    pub fn even_positions(&self) -> Result<Window> {
        Window::new(self.elems.iter().skip(1).step_by(2).copied().collect())
    }

    /// `L(2ℕ-1) = {L(1), L(3), ...}`.
    pub fn odd_positions(&self) -> Window {
        Window { elems: self.elems.iter().step_by(2).copied().collect() }
    }

    pub fn as_set(&self) -> FinSet {
        FinSet::from_sorted(self.elems.clone())
    }
}

/// `L(s)` for a window `L`.
pub fn apply_set(l: &Window, s: &FinSet) -> Result<FinSet> {
    l.apply_set(s)
}

impl TryFrom<Vec<u64>> for Window {
    type Error = PtkError;

    fn try_from(v: Vec<u64>) -> Result<Window> {
        Window::new(v)
    }
}

impl Serialize for Window {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.elems.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Window {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Window, D::Error> {
        let v = Vec::<u64>::deserialize(de)?;
        Window::new(v).map_err(serde::de::Error::custom)
    }
}
