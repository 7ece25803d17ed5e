use ptk::families::{closure, members, order, predicates, FamilyDesc};
use ptk::setcore::Window;

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).unwrap()
}

fn main() -> ptk::Result<()> {
    let f = FamilyDesc::f_omega();
    println!("F_w inside [1..6]: {}", json(&members(&f, 6)?));
    println!("closure of [N]^2 inside [1..3]: {}", json(&closure(&FamilyDesc::k_subsets(2), 3)?));

    let sum = FamilyDesc::k_subsets(2).direct_sum(FamilyDesc::k_subsets(3));
    println!("order of [N]^2 + [N]^3: {}", order(&sum)?.display());
    println!("order of S_2 maximal: {}", order(&FamilyDesc::schreier(2))?.display());

    let g = FamilyDesc::k_subsets(2).restrict(Window::evens(6));
    println!("[N]^2 restricted to the evens: {}", json(&members(&g, 12)?));

    let rep = predicates(&f, 10)?;
    println!("F_w regular thin in [1..10]: {}", rep.regular_thin.as_str());
    Ok(())
}
