//! Bounded searches for homogeneous sets, plegma tuples inside dense sets
//! and shift embeddings. A search either returns a certificate that
//! re-validates or reports how much it examined before giving up.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{PtkError, Result};
use crate::families::{closure, FamilyDesc, Walk};
use crate::plegma::{for_each_plm, is_plegma, union_of, PlegmaTuple};
use crate::setcore::{FinSet, Window};

/// A finite colouring of tuples of sets.
#[derive(Clone)]
pub struct Coloring {
    pub name: String,
    pub palette: usize,
    eval: Arc<dyn Fn(&[FinSet]) -> usize + Send + Sync>,
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coloring({}, {})", self.name, self.palette)
    }
}

impl Coloring {
    pub fn new(
        name: &str,
        palette: usize,
        eval: impl Fn(&[FinSet]) -> usize + Send + Sync + 'static,
    ) -> Coloring {
        Coloring { name: name.to_string(), palette, eval: Arc::new(eval) }
    }

    /// Built-in colourings of the union of a tuple: `const`, `parity-min`,
    /// `parity-max`, `parity-size` and `hash-mod:<p>`.
    pub fn named(name: &str) -> Result<Coloring> {
        let bad = || PtkError::InvalidArgument(format!("unknown colouring {}", name));
        Ok(match name {
            "const" => Coloring::new(name, 1, |_| 0),
            "parity-min" => Coloring::new(name, 2, |t| (union_of(t).min_elem().unwrap_or(0) % 2) as usize),
            "parity-max" => Coloring::new(name, 2, |t| (union_of(t).max_elem().unwrap_or(0) % 2) as usize),
            "parity-size" => Coloring::new(name, 2, |t| union_of(t).len() % 2),
            _ => {
                let p: u64 = name
                    .strip_prefix("hash-mod:")
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?;
                if p == 0 {
                    return Err(bad());
                }
                Coloring::new(name, p as usize, move |t| {
                    let mut h = 0u64;
                    let mut w = 1u64;
                    for x in union_of(t).iter() {
                        h = (h + (x % p) * w) % p;
                        w = (w * 31) % p;
                    }
                    h as usize
                })
            }
        })
    }

    pub fn color(&self, t: &[FinSet]) -> usize {
        (self.eval)(t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<Window>,
    /// Partial assignments examined.
    pub checked: u64,
    /// True when the search stopped at the budget rather than running out
    /// of candidates. Exhaustion at the budget carries no conclusion.
    pub budget_hit: bool,
    pub color: Option<usize>,
}

/// Depth-first search for a `target`-element subset of `M` all of whose
/// new objects (those with maximum equal to the last chosen element) pass
/// `accept`. `accept` gets the partial set and the colour fixed so far.
fn subset_search(
    m: &Window,
    target: usize,
    budget: u64,
    accept: &mut dyn FnMut(&[u64], &mut Option<usize>) -> Result<bool>,
) -> Result<SearchOutcome> {
    struct St<'a> {
        m: &'a [u64],
        target: usize,
        budget: u64,
        checked: u64,
        hit: bool,
        chosen: Vec<u64>,
    }
    fn rec(
        st: &mut St,
        from: usize,
        color: Option<usize>,
        accept: &mut dyn FnMut(&[u64], &mut Option<usize>) -> Result<bool>,
    ) -> Result<Option<Option<usize>>> {
        if st.chosen.len() == st.target {
            return Ok(Some(color));
        }
        let need = st.target - st.chosen.len();
        for i in from..st.m.len() {
            if st.m.len() - i < need {
                break;
            }
            if st.checked >= st.budget {
                st.hit = true;
                return Ok(None);
            }
            st.checked += 1;
            st.chosen.push(st.m[i]);
            let mut c = color;
            if accept(&st.chosen, &mut c)? {
                if let Some(r) = rec(st, i + 1, c, accept)? {
                    return Ok(Some(r));
                }
                if st.hit {
                    st.chosen.pop();
                    return Ok(None);
                }
            }
            st.chosen.pop();
        }
        Ok(None)
    }
    if target > m.horizon() {
        return Err(PtkError::IndexBeyondHorizon { index: target as u64, horizon: m.horizon() });
    }
    let mut st = St { m: m.elems(), target, budget, checked: 0, hit: false, chosen: Vec::new() };
    let found = rec(&mut st, 0, None, accept)?;
    Ok(match found {
        Some(color) => SearchOutcome {
            status: SearchStatus::Found,
            witness: Some(Window::new(st.chosen.clone())?),
            checked: st.checked,
            budget_hit: false,
            color,
        },
        None => SearchOutcome {
            status: SearchStatus::Exhausted,
            witness: None,
            checked: st.checked,
            budget_hit: st.hit,
            color: None,
        },
    })
}

/// Plegma `l`-tuples of `F↾L` whose union ends at the last element of `chosen`.
fn new_tuples(
    f: &FamilyDesc,
    l: usize,
    chosen: &[u64],
    visit: &mut dyn FnMut(&[FinSet]) -> bool,
) -> Result<()> {
    let last = *chosen.last().unwrap();
    for_each_plm(f, l, chosen, &mut |t| {
        if t.iter().any(|s| s.max_elem() == Some(last)) {
            visit(t)
        } else {
            true
        }
    })
}

/// Searches `L ⊆ M` of size `target` with `Plm_l(F↾L)` monochromatic.
pub fn find_monochromatic(
    f: &FamilyDesc,
    l: usize,
    c: &Coloring,
    m: &Window,
    target: usize,
    budget: u64,
) -> Result<SearchOutcome> {
    subset_search(m, target, budget, &mut |chosen, color| {
        let mut ok = true;
        new_tuples(f, l, chosen, &mut |t| {
            let k = c.color(t);
            match color {
                None => {
                    *color = Some(k);
                    true
                }
                Some(prev) if *prev == k => true,
                Some(_) => {
                    ok = false;
                    false
                }
            }
        })?;
        Ok(ok)
    })
}

/// Every plegma `l`-tuple of `F↾L` gets one colour; returns it (or `None`
/// when there are no tuples) or the first offending pair of tuples.
pub fn revalidate_monochromatic(
    f: &FamilyDesc,
    l: usize,
    c: &Coloring,
    w: &Window,
) -> Result<std::result::Result<Option<usize>, (PlegmaTuple, PlegmaTuple)>> {
    let mut first: Option<(PlegmaTuple, usize)> = None;
    let mut bad = None;
    for_each_plm(f, l, w.elems(), &mut |t| {
        let k = c.color(t);
        match &first {
            None => {
                first = Some((t.to_vec(), k));
                true
            }
            Some((_, k0)) if *k0 == k => true,
            Some((t0, _)) => {
                bad = Some((t0.clone(), t.to_vec()));
                false
            }
        }
    })?;
    Ok(match bad {
        Some(p) => Err(p),
        None => Ok(first.map(|(_, k)| k)),
    })
}

/// Searches `L ⊆ M` of size `target` such that all members of `F↾L` lie in
/// one piece of the partition.
pub fn find_homogeneous_partition(
    f: &FamilyDesc,
    piece: &Coloring,
    m: &Window,
    target: usize,
    budget: u64,
) -> Result<SearchOutcome> {
    subset_search(m, target, budget, &mut |chosen, color| {
        let last = *chosen.last().unwrap();
        let mut ok = true;
        f.walk(chosen, &mut |t, member| {
            if member && t.max_elem() == Some(last) {
                let k = piece.color(std::slice::from_ref(t));
                match color {
                    None => *color = Some(k),
                    Some(prev) if *prev == k => {}
                    Some(_) => {
                        ok = false;
                        return Ok(Walk::Stop);
                    }
                }
            }
            Ok(Walk::Descend)
        })?;
        Ok(ok)
    })
}

/// A plegma `l`-tuple inside `A ⊆ [ℕ]^k`, the lexicographically least by
/// concatenation, or `None` when `A` has none.
pub fn find_plegma_in_dense(a: &[FinSet], l: usize) -> Result<Option<PlegmaTuple>> {
    let Some(k) = a.first().map(|s| s.len()) else {
        return Ok(None);
    };
    if let Some(bad) = a.iter().find(|s| s.len() != k) {
        return Err(PtkError::WrongArity(format!("{{{}}}", bad)));
    }
    if k == 0 {
        return Err(PtkError::EmptyMember);
    }
    let mut sorted = a.to_vec();
    sorted.sort();
    sorted.dedup();
    fn rec(a: &[FinSet], l: usize, from: usize, cur: &mut Vec<FinSet>) -> bool {
        if cur.len() == l {
            return true;
        }
        for i in from..a.len() {
            cur.push(a[i].clone());
            if is_plegma(cur).unwrap_or(false) && rec(a, l, i + 1, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::new();
    Ok(if l > 0 && rec(&sorted, l, 0, &mut cur) { Some(cur) } else { None })
}

/// Searches `L(1) < ... < L(N)` in `M` with `L(s) ∈ Ĝ` for every `s ∈ F̂`
/// with `max s ≤ N`.
pub fn find_shift_embedding(
    f: &FamilyDesc,
    g: &FamilyDesc,
    m: &Window,
    n: usize,
    budget: u64,
) -> Result<SearchOutcome> {
    let mut by_max: BTreeMap<u64, Vec<FinSet>> = BTreeMap::new();
    for s in closure(f, n as u64)? {
        if let Some(x) = s.max_elem() {
            by_max.entry(x).or_default().push(s);
        }
    }
    subset_search(m, n, budget, &mut |chosen, _| {
        let i = chosen.len() as u64;
        for s in by_max.get(&i).map(|v| v.as_slice()).unwrap_or(&[]) {
            let img = FinSet::from_sorted(s.iter().map(|p| chosen[p as usize - 1]).collect());
            if !g.in_closure(&img)? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

/// Re-checks a shift embedding certificate.
pub fn revalidate_embedding(f: &FamilyDesc, g: &FamilyDesc, l: &Window) -> Result<bool> {
    for s in closure(f, l.horizon() as u64)? {
        if !g.in_closure(&l.apply_set(&s)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fs;
    use crate::plegma::enumerate_plm;
    use crate::families::members;

    #[test]
    fn constant_coloring_takes_prefix() {
        let c = Coloring::named("const").unwrap();
        let m = Window::identity(20);
        let r = find_monochromatic(&FamilyDesc::k_subsets(1), 2, &c, &m, 6, 10_000).unwrap();
        assert_eq!(r.status, SearchStatus::Found);
        assert_eq!(r.witness.unwrap(), Window::identity(6));
    }

    #[test]
    fn parity_max_on_singletons() {
        let c = Coloring::named("parity-max").unwrap();
        let m = Window::identity(30);
        let f = FamilyDesc::k_subsets(1);
        let r = find_monochromatic(&f, 2, &c, &m, 8, 1_000_000).unwrap();
        assert_eq!(r.status, SearchStatus::Found);
        let w = r.witness.unwrap();
        assert_eq!(w.horizon(), 8);
        assert!(revalidate_monochromatic(&f, 2, &c, &w).unwrap().is_ok());
    }

    #[test]
    fn schreier_parity_max_revalidates() {
        let c = Coloring::named("parity-max").unwrap();
        let f = FamilyDesc::f_omega();
        let r = find_monochromatic(&f, 2, &c, &Window::identity(30), 6, 1_000_000).unwrap();
        if let Some(w) = r.witness {
            assert!(revalidate_monochromatic(&f, 2, &c, &w).unwrap().is_ok());
        }
    }

    #[test]
    fn partitions() {
        let f = FamilyDesc::f_omega();
        let m = Window::identity(30);
        let one = Coloring::named("const").unwrap();
        let r = find_homogeneous_partition(&f, &one, &m, 6, 1000).unwrap();
        assert_eq!(r.witness.unwrap(), Window::identity(6));
        let p = Coloring::named("parity-min").unwrap();
        let r = find_homogeneous_partition(&f, &p, &m, 6, 100_000).unwrap();
        let w = r.witness.unwrap();
        let parities: Vec<u64> = members(&f.clone().restrict(w.clone()), w.max())
            .unwrap()
            .iter()
            .map(|s| s.min_elem().unwrap() % 2)
            .collect();
        assert!(parities.windows(2).all(|x| x[0] == x[1]));
    }

    #[test]
    fn dense_examples() {
        let a = vec![fs![1], fs![2], fs![3]];
        assert_eq!(find_plegma_in_dense(&a, 2).unwrap(), Some(vec![fs![1], fs![2]]));
        let a = vec![fs![1, 2], fs![3, 4]];
        assert_eq!(find_plegma_in_dense(&a, 2).unwrap(), None);
        assert!(matches!(
            find_plegma_in_dense(&[fs![1], fs![2, 3]], 2),
            Err(PtkError::WrongArity(_))
        ));
    }

    #[test]
    fn dense_search_is_exact() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let all = enumerate_plm(&FamilyDesc::k_subsets(2), 1, 9).unwrap();
        for _ in 0..20 {
            let a: Vec<FinSet> =
                all.iter().filter(|_| rng.gen_bool(0.3)).map(|t| t[0].clone()).collect();
            let got = find_plegma_in_dense(&a, 3).unwrap();
            let mut brute = false;
            for i in 0..a.len() {
                for j in 0..a.len() {
                    for k in 0..a.len() {
                        let t = [a[i].clone(), a[j].clone(), a[k].clone()];
                        brute |= is_plegma(&t).unwrap();
                    }
                }
            }
            assert_eq!(got.is_some(), brute);
            if let Some(t) = got {
                assert!(is_plegma(&t).unwrap());
            }
        }
    }

    #[test]
    fn shift_embeddings() {
        let m = Window::identity(20);
        let r = find_shift_embedding(&FamilyDesc::k_subsets(1), &FamilyDesc::k_subsets(2), &m, 8, 10_000)
            .unwrap();
        assert_eq!(r.witness.unwrap(), Window::identity(8));
        let r = find_shift_embedding(&FamilyDesc::schreier(1), &FamilyDesc::schreier(2), &m, 12, 10_000)
            .unwrap();
        let w = r.witness.unwrap();
        assert!(revalidate_embedding(&FamilyDesc::schreier(1), &FamilyDesc::schreier(2), &w).unwrap());
        let r = find_shift_embedding(&FamilyDesc::k_subsets(3), &FamilyDesc::k_subsets(2), &m, 5, 100_000)
            .unwrap();
        assert_eq!(r.status, SearchStatus::Exhausted);
        assert!(!r.budget_hit);
    }

    #[test]
    fn hash_coloring_in_range() {
        let c = Coloring::named("hash-mod:5").unwrap();
        assert_eq!(c.palette, 5);
        assert!(c.color(&[fs![3, 9, 12]]) < 5);
        assert!(Coloring::named("hash-mod:0").is_err());
        assert!(Coloring::named("rainbow").is_err());
    }
}
