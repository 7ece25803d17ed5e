use ptk::norms::{parse_rational, property_p_witness, MixedRules, SpaceDesc};

fn main() -> ptk::Result<()> {
    let one = parse_rational("1")?;
    for k in 2..=4 {
        let w = property_p_witness(&SpaceDesc::schreier_hash(), &one, k, 100_000)?;
        println!("hash space, k = {}: {}", k, serde_json::to_string(&w.map(|w| w.sets)).unwrap());
    }
    let mixed = SpaceDesc::mixed_w(MixedRules::default())?;
    for k in [15, 16] {
        let found = property_p_witness(&mixed, &one, k, 5_000)?.is_some();
        println!("mixed space, k = {}: found {}", k, found);
    }
    println!("frak_x, k = 2: {:?}", property_p_witness(&SpaceDesc::frak_x(1)?, &one, 2, 2_000)?.is_some());
    Ok(())
}
