//! Branch and bound for weighted block packing.
//!
//! Items carry nonnegative weights. A solution is a family of disjoint
//! blocks, each accepted by a hereditary predicate, with no two chosen
//! items in global conflict; its value is `Σ φ(block weight)` for a convex
//! `φ` with `φ(0) = 0`. With `R` the weight still placeable, any completion
//! gains at most `φ(B_max + R) − φ(B_max)`.

use num::Zero;

use super::numeric::Q;

pub(crate) trait Weight: Clone + PartialOrd {
    fn zero() -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
}

impl Weight for Q {
    fn zero() -> Self {
        <Q as Zero>::zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
}

impl Weight for f64 {
    fn zero() -> Self {
        0.0
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
}

pub(crate) struct Packing<'a, W> {
    pub weights: Vec<W>,
    /// May `item` join `block`? `block` is nonempty and already accepted.
    pub fits: &'a dyn Fn(&[usize], usize) -> bool,
    /// Items that can never both be chosen.
    pub conflict: Option<&'a dyn Fn(usize, usize) -> bool>,
    pub phi: &'a dyn Fn(&W) -> W,
    pub max_blocks: Option<usize>,
    /// Whether leaving an item out can help; false when singletons always
    /// fit, blocks are unlimited and nothing conflicts.
    pub may_skip: bool,
    pub budget: Option<u64>,
}

pub(crate) struct Packed<W> {
    pub value: W,
    pub blocks: Vec<Vec<usize>>,
    /// Equal to `value` when the search finished.
    pub upper: W,
    pub complete: bool,
}

struct Search<'p, 'a, W> {
    pr: &'p Packing<'a, W>,
    order: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    sums: Vec<W>,
    chosen: Vec<usize>,
    best: W,
    best_blocks: Vec<Vec<usize>>,
    nodes: u64,
    open_upper: Option<W>,
}

impl<W: Weight> Search<'_, '_, W> {
    fn value(&self) -> W {
        self.sums.iter().fold(W::zero(), |acc, s| acc.plus(&(self.pr.phi)(s)))
    }

    fn free(&self, item: usize) -> bool {
        match self.pr.conflict {
            Some(c) => self.chosen.iter().all(|&o| !c(o, item)),
            None => true,
        }
    }

    fn room_for_new(&self) -> bool {
        self.pr.max_blocks.is_none_or(|m| self.blocks.len() < m)
    }

    fn bound(&self, pos: usize, value: &W) -> W {
        let mut rest = W::zero();
        for &it in &self.order[pos..] {
            if self.free(it) && (self.room_for_new() || self.blocks.iter().any(|b| (self.pr.fits)(b, it))) {
                rest = rest.plus(&self.pr.weights[it]);
            }
        }
        let mut bmax = W::zero();
        for s in &self.sums {
            if *s > bmax {
                bmax = s.clone();
            }
        }
        let phi = self.pr.phi;
        value.minus(&phi(&bmax)).plus(&phi(&bmax.plus(&rest)))
    }

    fn go(&mut self, pos: usize) {
        let value = self.value();
        if pos == self.order.len() {
            if value > self.best {
                self.best = value;
                self.best_blocks = self.blocks.clone();
            }
            return;
        }
        let bound = self.bound(pos, &value);
        if bound <= self.best {
            return;
        }
        if self.pr.budget.is_some_and(|b| self.nodes >= b) {
            if self.open_upper.as_ref().is_none_or(|u| bound > *u) {
                self.open_upper = Some(bound);
            }
            return;
        }
        self.nodes += 1;
        let it = self.order[pos];
        if self.free(it) {
            self.chosen.push(it);
            for b in 0..self.blocks.len() {
                if (self.pr.fits)(&self.blocks[b], it) {
                    self.blocks[b].push(it);
                    let old = self.sums[b].clone();
                    self.sums[b] = old.plus(&self.pr.weights[it]);
                    self.go(pos + 1);
                    self.sums[b] = old;
                    self.blocks[b].pop();
                }
            }
            if self.room_for_new() {
                self.blocks.push(vec![it]);
                self.sums.push(self.pr.weights[it].clone());
                self.go(pos + 1);
                self.sums.pop();
                self.blocks.pop();
            }
            self.chosen.pop();
        }
        if self.pr.may_skip || !self.free(it) {
            self.go(pos + 1);
        }
    }
}

/// Greedy start: heaviest first, into the first block that takes it.
fn greedy<W: Weight>(pr: &Packing<'_, W>, order: &[usize]) -> (W, Vec<Vec<usize>>) {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut sums: Vec<W> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    for &it in order {
        if let Some(c) = pr.conflict {
            if chosen.iter().any(|&o| c(o, it)) {
                continue;
            }
        }
        if let Some(b) = (0..blocks.len()).find(|&b| (pr.fits)(&blocks[b], it)) {
            blocks[b].push(it);
            sums[b] = sums[b].plus(&pr.weights[it]);
        } else if pr.max_blocks.is_none_or(|m| blocks.len() < m) {
            blocks.push(vec![it]);
            sums.push(pr.weights[it].clone());
        } else {
            continue;
        }
        chosen.push(it);
    }
    let value = sums.iter().fold(W::zero(), |acc, s| acc.plus(&(pr.phi)(s)));
    (value, blocks)
}

pub(crate) fn solve<W: Weight>(pr: &Packing<'_, W>) -> Packed<W> {
    let n = pr.weights.len();
    let mut order: Vec<usize> = (0..n).collect();
    // heaviest first, stable on index
    order.sort_by(|&a, &b| pr.weights[b].partial_cmp(&pr.weights[a]).unwrap_or(std::cmp::Ordering::Equal));
    let (g, gb) = greedy(pr, &order);
    let mut s = Search {
        pr,
        order,
        blocks: Vec::new(),
        sums: Vec::new(),
        chosen: Vec::new(),
        best: g,
        best_blocks: gb,
        nodes: 0,
        open_upper: None,
    };
    s.go(0);
    let complete = s.open_upper.is_none();
    let upper = match s.open_upper {
        Some(u) if u > s.best => u,
        _ => s.best.clone(),
    };
    Packed { value: s.best, blocks: s.best_blocks, upper, complete }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::numeric::q;

    #[test]
    fn squares_prefer_merging() {
        let w = vec![q(1), q(2), q(3)];
        let phi = |x: &Q| x * x;
        let all = |_: &[usize], _: usize| true;
        let pr = Packing { weights: w, fits: &all, conflict: None, phi: &phi, max_blocks: None, may_skip: false, budget: None };
        let r = solve(&pr);
        assert_eq!(r.value, q(36));
        assert!(r.complete);
    }

    #[test]
    fn pairs_only() {
        // blocks of at most two items
        let w = vec![q(3), q(3), q(1), q(1)];
        let phi = |x: &Q| x * x;
        let fits = |b: &[usize], _: usize| b.len() < 2;
        let pr = Packing { weights: w, fits: &fits, conflict: None, phi: &phi, max_blocks: None, may_skip: false, budget: None };
        assert_eq!(solve(&pr).value, q(40));
    }

    #[test]
    fn single_block_with_conflicts() {
        let w = vec![q(5), q(4), q(4)];
        let id = |x: &Q| x.clone();
        let all = |_: &[usize], _: usize| true;
        let conflict = |a: usize, b: usize| (a == 0) != (b == 0);
        let pr = Packing {
            weights: w,
            fits: &all,
            conflict: Some(&conflict),
            phi: &id,
            max_blocks: Some(1),
            may_skip: true,
            budget: None,
        };
        let r = solve(&pr);
        assert_eq!(r.value, q(8));
        assert_eq!(r.blocks, vec![vec![1, 2]]);
    }

    #[test]
    fn budget_keeps_a_valid_interval() {
        let w: Vec<Q> = (1..=12).map(q).collect();
        let phi = |x: &Q| x * x;
        let fits = |b: &[usize], it: usize| b.iter().all(|&o| !(o + it).is_multiple_of(3));
        let mk = |budget| Packing { weights: w.clone(), fits: &fits, conflict: None, phi: &phi, max_blocks: None, may_skip: false, budget };
        let full = solve(&mk(None));
        let cut = solve(&mk(Some(5)));
        assert!(cut.value <= full.value && full.value <= cut.upper);
    }
}
