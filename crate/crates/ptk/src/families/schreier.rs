//! Membership in the Schreier families `S_ξ`, `ξ < ω^ω`.
//!
//! `S_0` is the singletons, `S_{ξ+1}` the unions `s_1 ∪ ... ∪ s_n` of
//! successive members of `S_ξ` with `n ≤ min s_1`, and for a limit `λ`,
//! `S_λ = {s : s ∈ S_{λ[min s]}}` with the canonical sequence of
//! [`OrdinalCNF::fundamental`].

use std::collections::HashMap;

use crate::setcore::OrdinalCNF;

/// End of the longest initial piece of `s[i..]` lying in `S_ξ`.
fn max_prefix(
    xi: &OrdinalCNF,
    s: &[u64],
    i: usize,
    memo: &mut HashMap<(OrdinalCNF, usize), usize>,
) -> usize {
    if i >= s.len() {
        return s.len();
    }
    if xi.is_zero() {
        return i + 1;
    }
    if let Some(j) = memo.get(&(xi.clone(), i)) {
        return *j;
    }
    let j = if let Some(p) = xi.pred() {
        // greedy decomposition into maximal S_p pieces uses the fewest pieces
        let mut pos = i;
        let mut count = 0u64;
        while pos < s.len() && count < s[i] {
            pos = max_prefix(&p, s, pos, memo);
            count += 1;
        }
        pos
    } else {
        let lam = xi.fundamental(s[i]).expect("limit ordinal");
        max_prefix(&lam, s, i, memo)
    };
    memo.insert((xi.clone(), i), j);
    j
}

/// `s ∈ S_ξ`. The empty set belongs to every level.
pub fn in_schreier(xi: &OrdinalCNF, s: &[u64]) -> bool {
    s.is_empty() || max_prefix(xi, s, 0, &mut HashMap::new()) == s.len()
}

/// `s` is a maximal element of `S_ξ`.
///
/// Whether `s ∪ {n}` lies in `S_ξ` does not depend on `n > max s`, so one
/// extension is enough.
pub fn is_maximal(xi: &OrdinalCNF, s: &[u64]) -> bool {
    let Some(&last) = s.last() else {
        return false;
    };
    if !in_schreier(xi, s) {
        return false;
    }
    let mut ext = s.to_vec();
    ext.push(last + 1);
    !in_schreier(xi, &ext)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> OrdinalCNF {
        s.parse().unwrap()
    }

    #[test]
    fn level_one() {
        let one = o("1");
        assert!(in_schreier(&one, &[2, 7]));
        assert!(!in_schreier(&one, &[2, 7, 9]));
        assert!(is_maximal(&one, &[3, 4, 9]));
        assert!(!is_maximal(&one, &[3, 4]));
        assert!(is_maximal(&one, &[1]));
    }

    #[test]
    fn level_two() {
        let two = o("2");
        // {2,3} then {4,5,6,7}
        assert!(in_schreier(&two, &[2, 3, 4, 5, 6, 7]));
        assert!(!in_schreier(&two, &[2, 3, 4, 5, 6, 7, 8]));
        assert!(is_maximal(&two, &[2, 3, 4, 5, 6, 7]));
        assert!(is_maximal(&two, &[1]));
        assert!(!in_schreier(&two, &[1, 2]));
    }

    #[test]
    fn level_omega_uses_min() {
        let w = o("w");
        // min 1: S_1 so only singletons with min 1
        assert!(!in_schreier(&w, &[1, 2]));
        // min 2: S_2
        assert!(in_schreier(&w, &[2, 3, 4, 5, 6, 7]));
        assert!(!in_schreier(&w, &[2, 3, 4, 5, 6, 7, 8]));
    }

    #[test]
    fn level_zero_is_singletons() {
        let z = OrdinalCNF::zero();
        assert!(in_schreier(&z, &[5]));
        assert!(!in_schreier(&z, &[5, 6]));
        assert!(is_maximal(&z, &[5]));
    }
}
