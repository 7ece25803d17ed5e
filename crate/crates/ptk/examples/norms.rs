use ptk::families::FamilyDesc;
use ptk::fs;
use ptk::norms::{brute_force_norm, norm_of, parse_rational, MixedRules, QpBase, SpaceDesc, SpaceVec};

fn main() -> ptk::Result<()> {
    let half = parse_rational("1/2")?;
    let one = parse_rational("1")?;
    let spaces = vec![
        SpaceDesc::xi_plegma_l1(FamilyDesc::k_subsets(2)),
        SpaceDesc::xi_plegma_l2l1(FamilyDesc::k_subsets(2)),
        SpaceDesc::frak_x(1)?,
        SpaceDesc::qp(2, parse_rational("3/2")?, parse_rational("2")?, QpBase::Tsirelson)?,
    ];
    for space in spaces {
        let x = SpaceVec::new(space.clone(), [(fs![2, 4], one.clone()), (fs![3, 5], half.clone()), (fs![3, 6], one.clone())])?;
        let r = norm_of(&x)?;
        let b = brute_force_norm(&x)?;
        println!("{:<16} {:>22} brute {:>22}", space.kind_name(), r.lower, b.lower);
    }

    let t = SpaceVec::new(SpaceDesc::tsirelson(), (3..=5).map(|i| (fs![i], one.clone())))?;
    println!("Tsirelson e_3+e_4+e_5: {}", norm_of(&t)?.lower);

    let w = SpaceDesc::mixed_w(MixedRules::default())?;
    let y = SpaceVec::new(w, (1..=20).map(|i| (fs![i], one.clone())))?;
    let r = norm_of(&y)?;
    println!("mixed norm of twenty unit vectors: {} (exact: {})", r.lower, r.exact);
    println!("witness: {}", serde_json::to_string(&r.witness).unwrap_or_default());
    Ok(())
}
