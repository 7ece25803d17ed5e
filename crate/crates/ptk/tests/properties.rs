mod common;

use common::*;
use num::Signed;
use proptest::prelude::*;
use ptk::norms::{norm_of, NormResult, Q, SpaceVec};
use ptk::setcore::{apply_set, ord_add, set_quotient, FinSet, OrdinalCNF, Window};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TRIANGLE_SLACK: f64 = 1e-12;

fn small_set(max: u64) -> impl Strategy<Value = FinSet> {
    proptest::collection::btree_set(1..=max, 0..6).prop_map(|s| FinSet::new(s.into_iter().collect()).unwrap())
}

fn window() -> impl Strategy<Value = Window> {
    proptest::collection::btree_set(1u64..200, 12..20).prop_map(|s| Window::new(s.into_iter().collect()).unwrap())
}

fn ordinal() -> impl Strategy<Value = OrdinalCNF> {
    proptest::collection::btree_map(0u32..4, 1u64..4, 0..3).prop_map(|m| {
        let terms: Vec<(u32, u64)> = m.into_iter().rev().collect();
        OrdinalCNF::from_terms(terms).unwrap()
    })
}

fn same(a: &NormResult, b: &NormResult) -> bool {
    if a.exact && b.exact {
        a.lower == b.lower
    } else {
        (a.approx_value() - b.approx_value()).abs() <= 1e-12 * (1.0 + a.approx_value())
    }
}

fn pick_space(i: usize) -> ptk::norms::SpaceDesc {
    let spaces = all_spaces();
    spaces[i % spaces.len()].clone()
}

proptest! {
    #[test]
    fn apply_set_is_monotone(l in window(), s in small_set(12), t in small_set(12)) {
        let ls = apply_set(&l, &s).unwrap();
        prop_assert_eq!(ls.len(), s.len());
        if s.is_subset_of(&t) {
            prop_assert!(ls.is_subset_of(&apply_set(&l, &t).unwrap()));
        }
        if s.is_prefix_of(&t) {
            prop_assert!(ls.is_prefix_of(&apply_set(&l, &t).unwrap()));
        }
        if s.precedes(&t) {
            prop_assert!(ls.precedes(&apply_set(&l, &t).unwrap()));
        }
    }

    #[test]
    fn ordinal_addition_is_associative(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(ord_add(&ord_add(&a, &b), &c), ord_add(&a, &ord_add(&b, &c)));
        prop_assert_eq!(ord_add(&a, &OrdinalCNF::zero()), a.clone());
        prop_assert_eq!(ord_add(&OrdinalCNF::zero(), &a), a);
    }

    #[test]
    fn quotient_is_an_initial_segment(s1 in small_set(20), s2 in small_set(20)) {
        match set_quotient(&s1, &s2) {
            Ok(r) => {
                prop_assert!(r.is_prefix_of(&s2));
                prop_assert!(r.max_elem() <= s1.max_elem());
            }
            Err(_) => prop_assert!(s1.is_empty()),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn norm_axioms(i in 0usize..8, seed in any::<u64>()) {
        let space = pick_space(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_vector(&space, &mut rng, 4, 6);
        let y = random_vector(&space, &mut rng, 4, 6);
        let nx = norm_of(&x).unwrap();
        let ny = norm_of(&y).unwrap();
        prop_assert!(nx.lower.to_f64() > 0.0);

        let sum = norm_of(&x.add(&y).unwrap()).unwrap();
        prop_assert!(sum.approx_value() <= nx.approx_value() + ny.approx_value() + TRIANGLE_SLACK);

        let c = random_coeff(&mut rng);
        let scaled = norm_of(&x.scale(&c)).unwrap();
        if nx.exact && scaled.exact {
            let (a, b) = (nx.value().unwrap().square().clone(), scaled.value().unwrap().square().clone());
            prop_assert_eq!(b, a * &c * &c);
        } else {
            let want = ptk::norms::numeric::q_to_f64(&c.abs()) * nx.approx_value();
            prop_assert!((scaled.approx_value() - want).abs() <= 1e-12 * (1.0 + want));
        }

        let flipped = SpaceVec::new(
            space.clone(),
            x.entries().iter().map(|(s, v)| (s.clone(), if rng.gen_bool(0.5) { -v.clone() } else { v.clone() })),
        ).unwrap();
        prop_assert!(same(&nx, &norm_of(&flipped).unwrap()));

        // shrinking magnitudes and dropping coordinates never raises the norm
        let mut kept = Vec::new();
        for (s, v) in x.entries() {
            if rng.gen_bool(0.7) {
                kept.push((s.clone(), v * Q::new(1.into(), rng.gen_range(1i64..4).into())));
            }
        }
        let smaller = SpaceVec::new(space.clone(), kept).unwrap();
        prop_assert!(norm_of(&smaller).unwrap().approx_value() <= nx.approx_value() + TRIANGLE_SLACK);
    }
}
