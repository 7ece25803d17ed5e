use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{PtkError, Result};

/// An ordinal below ω^ω in Cantor normal form.
///
/// Terms are `(exponent, coefficient)` with strictly decreasing exponents and
/// positive coefficients. The derived ordering on the term list is the
/// ordinal ordering.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrdinalCNF {
    terms: Vec<(u32, u64)>,
}

impl OrdinalCNF {
    pub fn zero() -> OrdinalCNF {
        OrdinalCNF { terms: Vec::new() }
    }

    pub fn finite(n: u64) -> OrdinalCNF {
        if n == 0 {
            OrdinalCNF::zero()
        } else {
            OrdinalCNF { terms: vec![(0, n)] }
        }
    }

    pub fn omega() -> OrdinalCNF {
        OrdinalCNF::omega_pow(1)
    }

    /// `ω^e`.
    pub fn omega_pow(e: u32) -> OrdinalCNF {
        OrdinalCNF { terms: vec![(e, 1)] }
    }

    /// Builds from terms that must already be in normal form.
    pub fn from_terms(terms: Vec<(u32, u64)>) -> Result<OrdinalCNF> {
        if terms.iter().any(|t| t.1 == 0) || terms.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(PtkError::InvalidArgument(format!("not in Cantor normal form: {:?}", terms)));
        }
        Ok(OrdinalCNF { terms })
    }

    pub fn terms(&self) -> &[(u32, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(0, c)] => Some(*c),
            _ => None,
        }
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.terms.last(), Some((0, _)))
    }

    pub fn is_limit(&self) -> bool {
        matches!(self.terms.last(), Some((e, _)) if *e > 0)
    }

    pub fn succ(&self) -> OrdinalCNF {
        self.add(&OrdinalCNF::finite(1))
    }

    /// The predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<OrdinalCNF> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().unwrap();
        last.1 -= 1;
        if last.1 == 0 {
            terms.pop();
        }
        Some(OrdinalCNF { terms })
    }

    /// The `n`-th element of the canonical sequence of a limit ordinal:
    /// `(β + ω^e·c)[n] = β + ω^e·(c-1) + ω^(e-1)·n`.
    pub fn fundamental(&self, n: u64) -> Option<OrdinalCNF> {
        if !self.is_limit() {
            return None;
        }
        let mut terms = self.terms.clone();
        let (e, c) = terms.pop().unwrap();
        if c > 1 {
            terms.push((e, c - 1));
        }
        if n > 0 {
            terms.push((e - 1, n));
        }
        Some(OrdinalCNF { terms })
    }

    /// Ordinal addition.
    pub fn add(&self, other: &OrdinalCNF) -> OrdinalCNF {
        let Some(&(lead, lead_c)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(u32, u64)> =
            self.terms.iter().copied().take_while(|t| t.0 >= lead).collect();
        match terms.last_mut() {
            Some(t) if t.0 == lead => t.1 += lead_c,
            _ => terms.push((lead, lead_c)),
        }
        terms.extend_from_slice(&other.terms[1..]);
        OrdinalCNF { terms }
    }
}

/// `a + b` in ordinal arithmetic.
pub fn ord_add(a: &OrdinalCNF, b: &OrdinalCNF) -> OrdinalCNF {
    a.add(b)
}

impl fmt::Display for OrdinalCNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&(e, c)| match (e, c) {
                (0, c) => c.to_string(),
                (1, 1) => "w".to_string(),
                (1, c) => format!("w*{}", c),
                (e, 1) => format!("w^{}", e),
                (e, c) => format!("w^{}*{}", e, c),
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

fn parse_term(t: &str) -> Result<OrdinalCNF> {
    let bad = || PtkError::Parse(format!("bad ordinal term {:?}", t));
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    let t = t.trim();
    let Some(rest) = t.strip_prefix('w').or_else(|| t.strip_prefix('ω')) else {
        return Ok(OrdinalCNF::finite(num(t)?));
    };
    let (exp, coef) = match rest.split_once('*') {
        Some((e, c)) => (e, num(c)?),
        None => (rest, 1),
    };
    let exp = match exp.trim() {
        "" => 1,
        e => {
            let e = e.strip_prefix('^').ok_or_else(bad)?;
            u32::try_from(num(e)?).map_err(|_| bad())?
        }
    };
    if coef == 0 {
        return Ok(OrdinalCNF::zero());
    }
    Ok(OrdinalCNF { terms: vec![(exp, coef)] })
}

impl FromStr for OrdinalCNF {
    type Err = PtkError;

    /// Accepts `w^E*C` terms joined by `+`; the sum is evaluated, so
    /// non-normal input such as `3+w` is accepted and normalised.
    fn from_str(s: &str) -> Result<OrdinalCNF> {
        if s.trim().is_empty() {
            return Err(PtkError::Parse("empty ordinal".into()));
        }
        s.split('+').try_fold(OrdinalCNF::zero(), |acc, t| Ok(acc.add(&parse_term(t)?)))
    }
}

impl Serialize for OrdinalCNF {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for OrdinalCNF {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<OrdinalCNF, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(de)? {
            Raw::Num(n) => Ok(OrdinalCNF::finite(n)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
