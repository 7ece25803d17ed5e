use ptk::families::FamilyDesc;
use ptk::norms::{parse_rational, SpaceDesc};
use ptk::setcore::Window;
use ptk::spreading::{lp_constants, sm_profile, SeqDesc};

fn main() -> ptk::Result<()> {
    let f = FamilyDesc::k_subsets(2);
    let seq = SeqDesc::basis(SpaceDesc::frak_x(1)?, f);
    let a: Vec<_> = ["1", "1", "1"].iter().map(|c| parse_rational(c)).collect::<Result<_, _>>()?;
    let m = Window::identity(40);
    let p = sm_profile(&seq, &a, &m, 7)?;
    for s in &p.steps {
        println!("n = {}: {} -> {}", s.n, serde_json::to_string(&s.tuple).unwrap(), s.value);
    }
    println!("differences {:?}", p.delta_trace);

    let two = parse_rational("2")?;
    let c = lp_constants(&seq, &two, 3, &m, 5_000, 7)?;
    println!("l^2 constants over {} tuples: [{}, {}]", c.tuples, c.c_lower, c.c_upper);

    let chain = SeqDesc::CumulativeChain;
    let p = sm_profile(&chain, &a[..2], &m, 5)?;
    println!("cumulative chain: {:?}", p.steps.iter().map(|s| s.value.to_f64()).collect::<Vec<_>>());
    Ok(())
}
