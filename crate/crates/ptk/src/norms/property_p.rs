//! Search for `k` successive vectors with `‖x_j‖ ≥ δ` and `‖Σ x_j‖ ≤ 1`.
//!
//! Candidates are `δ e_t` over the basis order, found by iterative deepening
//! on the largest element used. Adding coordinates never lowers the norm,
//! so a prefix whose norm exceeds 1 is dropped.

use num::{One, Signed};
use serde::Serialize;

use super::eval::{norm_of, NormResult};
use super::numeric::Q;
use super::space::{SpaceDesc, SpaceVec};
use crate::error::{PtkError, Result};
use crate::setcore::FinSet;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyPWitness {
    /// Basis coordinates of the blocks, in order.
    pub sets: Vec<FinSet>,
    /// Common coefficient of every block.
    #[serde(with = "super::numeric::rational_str")]
    pub coeff: Q,
    pub sum_norm: NormResult,
}

impl PropertyPWitness {
    pub fn blocks(&self, space: &SpaceDesc) -> Result<Vec<SpaceVec>> {
        self.sets.iter().map(|s| SpaceVec::new(space.clone(), [(s.clone(), self.coeff.clone())])).collect()
    }
}

struct Search<'a> {
    space: &'a SpaceDesc,
    coeff: Q,
    k: usize,
    basis: Vec<FinSet>,
    left: u64,
}

enum Step {
    Found(Vec<usize>, NormResult),
    NotHere,
    OutOfBudget,
}

impl Search<'_> {
    fn sum_norm(&mut self, picked: &[usize]) -> Result<Option<NormResult>> {
        if self.left == 0 {
            return Ok(None);
        }
        self.left -= 1;
        let x = SpaceVec::new(
            self.space.clone(),
            picked.iter().map(|&i| (self.basis[i].clone(), self.coeff.clone())),
        )?;
        Ok(Some(norm_of(&x)?))
    }

    /// Extends `picked` with indices below `end`; the last pick is at least `last_from`.
    fn dfs(&mut self, picked: &mut Vec<usize>, end: usize, last_from: usize) -> Result<Step> {
        let depth = picked.len();
        let start = picked.last().map_or(0, |&i| i + 1);
        let from = if depth + 1 == self.k { start.max(last_from) } else { start };
        for i in from..end {
            if end - i < self.k - depth {
                break;
            }
            picked.push(i);
            let r = if depth == 0 {
                None
            } else {
                match self.sum_norm(picked)? {
                    Some(r) => Some(r),
                    None => {
                        picked.pop();
                        return Ok(Step::OutOfBudget);
                    }
                }
            };
            let within = r.as_ref().is_none_or(|r| r.upper.to_f64() <= 1.0);
            if within {
                if depth + 1 == self.k {
                    let r = match r {
                        Some(r) => r,
                        None => match self.sum_norm(picked)? {
                            Some(r) => r,
                            None => {
                                picked.pop();
                                return Ok(Step::OutOfBudget);
                            }
                        },
                    };
                    return Ok(Step::Found(picked.clone(), r));
                }
                match self.dfs(picked, end, last_from)? {
                    Step::NotHere => {}
                    other => return Ok(other),
                }
            }
            picked.pop();
        }
        Ok(Step::NotHere)
    }
}

/// `budget` bounds the number of norm evaluations; `None` when no witness
/// turns up within it.
pub fn property_p_witness(space: &SpaceDesc, delta: &Q, k: usize, budget: u64) -> Result<Option<PropertyPWitness>> {
    space.validate()?;
    if k == 0 {
        return Err(PtkError::InvalidArgument("k must be at least 1".into()));
    }
    if !delta.is_positive() {
        return Err(PtkError::InvalidArgument("delta must be positive".into()));
    }
    // ‖Σ x_j‖ ≥ ‖x_1‖ ≥ δ
    if *delta > Q::one() {
        return Ok(None);
    }
    let mut s = Search { space, coeff: delta.clone(), k, basis: Vec::new(), left: budget };
    let mut h = 0u64;
    loop {
        h += 1;
        let before = s.basis.len();
        s.basis = space.basis(h)?;
        if s.basis.len() == before {
            // finite families stop growing; idle heights still cost budget
            if s.left == 0 {
                return Ok(None);
            }
            s.left -= 1;
            continue;
        }
        let end = s.basis.len();
        match s.dfs(&mut Vec::new(), end, before)? {
            Step::Found(idx, sum_norm) => {
                let sets = idx.iter().map(|&i| s.basis[i].clone()).collect();
                return Ok(Some(PropertyPWitness { sets, coeff: s.coeff, sum_norm }));
            }
            Step::OutOfBudget => return Ok(None),
            Step::NotHere => {
                if s.left == 0 {
                    return Ok(None);
                }
            }
        }
    }
}
