mod common;

use common::*;
use ptk::norms::{brute_force_norm, SpaceDesc, evaluate_witness, norm_of, witness_matches};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn search_matches_enumeration() {
    for (i, space) in all_spaces().into_iter().chain(extra_spaces()).enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(17 + i as u64);
        let mut above_sup = 0;
        for _ in 0..500 {
            let x = random_vector(&space, &mut rng, 6, 7);
            let a = norm_of(&x).unwrap();
            let b = brute_force_norm(&x).unwrap();
            if space.exact_kind() && i < all_spaces().len() {
                assert!(a.exact && b.exact, "{} {:?}", space, x);
                assert_eq!(a.lower, b.lower, "{} {:?}", space, x);
            } else if a.exact && b.exact {
                assert_eq!(a.lower, b.lower, "{} {:?}", space, x);
            } else {
                assert_eq!(a.exact, b.exact);
                assert!((a.approx_value() - b.approx_value()).abs() <= 1e-9, "{} {:?} {:?} {:?}", space, x, a, b);
            }
            for r in [&a, &b] {
                let w = evaluate_witness(&x, &r.witness).unwrap();
                assert!(witness_matches(r, &w), "{} {:?} {:?}", space, x, r);
            }
            if a.approx_value() > ptk::norms::numeric::q_to_f64(&x.linf()) + 1e-12 {
                above_sup += 1;
            }
        }
        eprintln!("{}: {} of 500 above the sup norm", space, above_sup);
        // with six coordinates the mixed weights never beat the sup norm
        if !matches!(space, SpaceDesc::MixedW(_)) {
            assert!(above_sup >= 50, "{}", space);
        }
    }
}
