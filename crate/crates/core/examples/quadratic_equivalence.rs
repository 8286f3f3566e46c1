//! Explicit affine equivalence between two bent quadratics.

use negabent::bridge::{q_function, quad_equivalence_fn};
use negabent::{compose_affine, make_field, BooleanFunction};

fn main() -> negabent::Result<()> {
    let ctx = make_field(6, None)?;
    let q = q_function(&ctx)?;
    let inner = BooleanFunction::from_fn(6, |x| ((x & (x >> 3)) & 7).count_ones() % 2 == 1);
    let t = quad_equivalence_fn(&inner, &q)?;
    println!("matrix rows {:?}", t.matrix().rows());
    println!("functional {:#x}, constant {}", t.functional(), t.constant());
    println!("maps onto Q: {}", compose_affine(&inner, &t)? == q);
    Ok(())
}
