use ptk::families::FamilyDesc;
use ptk::ramsey::{find_monochromatic, find_plegma_in_dense, find_shift_embedding, revalidate_monochromatic, Coloring};
use ptk::setcore::{parse_set_list, Window};

fn main() -> ptk::Result<()> {
    let f = FamilyDesc::k_subsets(1);
    let c = Coloring::named("parity-max")?;
    let m = Window::identity(30);
    let out = find_monochromatic(&f, 2, &c, &m, 8, 100_000)?;
    println!("{:?} after {} steps", out.status, out.checked);
    if let Some(w) = &out.witness {
        println!("L = {:?}, colour {:?}", w.elems(), out.color);
        println!("revalidated: {:?}", revalidate_monochromatic(&f, 2, &c, w)?);
    }

    let a = parse_set_list("1,2;1,3;2,4;3,5;4,6")?;
    println!("plegma pair inside A: {}", serde_json::to_string(&find_plegma_in_dense(&a, 2)?).unwrap());

    let e = find_shift_embedding(&FamilyDesc::k_subsets(2), &FamilyDesc::f_omega(), &m, 6, 100_000)?;
    println!("[N]^2 into the closure of F_w along {:?}", e.witness.map(|w| w.elems().to_vec()));
    Ok(())
}
