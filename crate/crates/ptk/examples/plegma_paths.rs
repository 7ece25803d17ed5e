use ptk::families::FamilyDesc;
use ptk::fs;
use ptk::plegma::{bfs_distance, enumerate_plm, is_plegma, plegma_path, tuple_from_union, union_of};
use ptk::setcore::Window;

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).unwrap()
}

fn main() -> ptk::Result<()> {
    println!("(1,3),(2,4) plegma: {}", is_plegma(&[fs![1, 3], fs![2, 4]])?);
    println!("(1,3),(4,5) plegma: {}", is_plegma(&[fs![1, 3], fs![4, 5]])?);

    let f = FamilyDesc::k_subsets(2);
    let tuples = enumerate_plm(&f, 2, 5)?;
    println!("{} plegma pairs of [N]^2 in [1..5], first {}", tuples.len(), json(&tuples[0]));

    let t = &tuples[3];
    let u = union_of(t);
    println!("union {{{}}} splits back into {}", u, json(&tuple_from_union(&f, &u, 2)?));

    let (s0, s) = (fs![1, 3, 5], fs![8, 10, 12]);
    let g = FamilyDesc::k_subsets(3);
    let path = plegma_path(&g, &Window::identity(14), &s0, &s)?;
    println!("path {}", json(&path));
    println!("shortest path length {:?}", bfs_distance(&g, 12, &s0, &s)?);
    Ok(())
}
