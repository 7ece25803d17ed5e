#![allow(dead_code)]

use ptk::families::FamilyDesc;
use ptk::norms::{MixedRules, QpBase, SpaceDesc, SpaceVec, Q};
use ptk::setcore::FinSet;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// One space of every kind.
pub fn all_spaces() -> Vec<SpaceDesc> {
    vec![
        SpaceDesc::xi_plegma_l1(FamilyDesc::k_subsets(2)),
        SpaceDesc::xi_plegma_l2l1(FamilyDesc::schreier(1)),
        SpaceDesc::frak_x(1).unwrap(),
        SpaceDesc::qp(2, qf(3, 2), q(2), QpBase::L1).unwrap(),
        SpaceDesc::qp(2, qf(3, 2), q(2), QpBase::Tsirelson).unwrap(),
        SpaceDesc::schreier_hash(),
        SpaceDesc::mixed_w(MixedRules::default()).unwrap(),
        SpaceDesc::tsirelson(),
    ]
}

/// Extra spaces reaching the other code paths.
pub fn extra_spaces() -> Vec<SpaceDesc> {
    let small = MixedRules { m_base: 4, m_offset: 1, n_base: 4, n_offset: 0 };
    vec![
        SpaceDesc::frak_x(2).unwrap(),
        SpaceDesc::xi_plegma_l1(FamilyDesc::schreier(1)),
        SpaceDesc::xi_plegma_l2l1(FamilyDesc::k_subsets(2)),
        SpaceDesc::qp(3, qf(5, 4), q(3), QpBase::Tsirelson).unwrap(),
        SpaceDesc::mixed_w(small).unwrap(),
    ]
}

pub fn random_coeff(rng: &mut ChaCha8Rng) -> Q {
    let c = [q(1), q(2), qf(1, 2), qf(3, 2), qf(1, 3), q(3), qf(2, 5)].choose(rng).unwrap().clone();
    if rng.gen_bool(0.5) {
        -c
    } else {
        c
    }
}

/// Coordinates drawn from the basis up to `h`, at most `max_supp` of them.
pub fn random_vector(space: &SpaceDesc, rng: &mut ChaCha8Rng, max_supp: usize, h: u64) -> SpaceVec {
    let basis: Vec<FinSet> = space.basis(h).unwrap();
    let n = rng.gen_range(1..=max_supp.min(basis.len()));
    let picks: Vec<FinSet> = basis.choose_multiple(rng, n).cloned().collect();
    SpaceVec::new(space.clone(), picks.into_iter().map(|s| (s, random_coeff(rng)))).unwrap()
}
