use ptk::json::{from_str, FamilyJson, VectorJson};
use ptk::norms::norm_of;

fn main() -> ptk::Result<()> {
    let f: FamilyJson = from_str(r#"{"kind":"derived_at","base":{"kind":"schreier","xi":"w"},"n":2}"#)?;
    let desc = f.to_desc()?;
    println!("{}", serde_json::to_string(&FamilyJson::from(&desc)).unwrap());
    println!("members up to 8: {:?}", ptk::families::members(&desc, 8)?);

    let v: VectorJson = from_str(
        r#"{"space":{"kind":"xi_plegma_l1","family":{"kind":"k_subsets","k":2}},
            "entries":[{"set":[2,4],"coeff":"1/3"},{"set":[3,5],"coeff":"-0.5"}]}"#,
    )?;
    let r = norm_of(&v.to_vec()?)?;
    println!("{}", serde_json::to_string(&r).unwrap());
    Ok(())
}
