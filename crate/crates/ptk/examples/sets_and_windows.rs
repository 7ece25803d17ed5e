use ptk::fs;
use ptk::setcore::{ord_add, set_quotient, FinSet, OrdinalCNF, Window};

fn main() -> ptk::Result<()> {
    let l = Window::evens(10);
    let s = fs![1, 3, 4];
    println!("L = {:?}", l.elems());
    println!("L({{{}}}) = {{{}}}", s, l.apply_set(&s)?);
    println!("{{2,9}} /_{{1,5}} = {{{}}}", set_quotient(&fs![1, 5], &fs![2, 9])?);

    let t: FinSet = "2,7,8".parse()?;
    println!("{{{}}} precedes {{10,11}}: {}", t, t.precedes(&fs![10, 11]));

    // ordinal sums absorb smaller terms on the left
    let a: OrdinalCNF = "3".parse()?;
    let w = OrdinalCNF::omega();
    println!("3 + w = {}, w + 3 = {}", ord_add(&a, &w), ord_add(&w, &a));
    Ok(())
}
