use ptk::families::FamilyDesc;
use ptk::norms::{parse_rational, SpaceDesc};
use ptk::setcore::Window;
use ptk::spreading::{boost_l1, lp_constants, SeqDesc};

fn main() -> ptk::Result<()> {
    let f = FamilyDesc::k_subsets(1);
    let seq = SeqDesc::basis(SpaceDesc::tsirelson(), f.clone());
    let m = Window::identity(40);
    let one = parse_rational("1")?;
    let before = lp_constants(&seq, &one, 4, &m, 10_000, 1)?;
    println!("before: lower l^1 constant {}", before.c_lower);

    let eps = parse_rational("1/4")?;
    let c = parse_rational("1/2")?;
    let b = boost_l1(&seq, &f, &m, &c, &eps, 10_000, 1)?;
    println!("k = {}, b = {:?}, eps' = {}", b.k, b.b.iter().map(|x| x.to_string()).collect::<Vec<_>>(), b.eps_prime);
    let after = lp_constants(&b.seq, &one, 2, &b.window, 10_000, 1)?;
    println!("after: lower l^1 constant {} on {} rows", after.c_lower, b.table_values().len());
    Ok(())
}
