use ptk::setcore::Window;
use ptk::spreading::{cesaro_limit, cesaro_norm};

fn main() -> ptk::Result<()> {
    let m = Window::identity(12);
    for n in 1..=3 {
        let r = cesaro_norm(1, &m, n, None)?;
        println!(
            "n = {}: norm in [{:.4}, {:.4}], bound {} holds {}",
            n,
            r.norm.lower.to_f64(),
            r.norm.upper.to_f64(),
            r.lower_bound,
            r.bound_holds
        );
    }
    println!("bounds decrease to {}", cesaro_limit(1));
    Ok(())
}
