//! Classifies every Tr(l x^(2^k+1)) over a field: bent, negabent and the root set
//! that decides negabentness without computing a transform.

use negabent::io::sweep_csv;
use negabent::make_field;
use negabent::quadratic::{existence_census, gold_function, MonomialClass};

fn main() -> negabent::Result<()> {
    let ctx = make_field(4, None)?;
    print!("{}", sweep_csv(&ctx, 1)?);

    let ctx = make_field(8, None)?;
    for k in 1..8 {
        let class = MonomialClass::new(&ctx, k)?;
        let both = ctx.elements().skip(1).filter(|&l| class.is_bent_negabent(l).unwrap_or(false)).count();
        println!("n=8 k={k}: {} roots, {} bent-negabent lambda", class.root_set_size(), both);
    }

    let c = existence_census(&ctx, 1)?;
    println!("census n=8 k=1: |S1*| = {}, |S2| = {}, overlap {}", c.s1_nonzero, c.s2, c.intersection);

    let lambda = ctx.primitive_element();
    let f = gold_function(&ctx, lambda, 1)?;
    println!("Tr(g x^3) has weight {} and degree {:?}", f.weight(), f.degree());
    Ok(())
}
