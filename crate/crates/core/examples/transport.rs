//! Adding the quadratic Q swaps bent and negabent functions.

use negabent::bridge::{q_function, transport};
use negabent::mm::{mm_build, PermSpec};
use negabent::{is_bent, is_negabent, make_field, UnivariatePoly};

fn main() -> negabent::Result<()> {
    let ctx = make_field(8, None)?;
    let q = q_function(&ctx)?;
    println!("Q: degree {:?}, bent {}, negabent {}", q.degree(), is_bent(&q), is_negabent(&q));

    let ctx_t = make_field(4, None)?;
    let pi = PermSpec::from_poly(&ctx_t, &UnivariatePoly::parse(&ctx_t, "1*x^7")?);
    let f = mm_build(&ctx_t, &pi, &UnivariatePoly::zero(&ctx_t))?.function;
    let g = transport(&ctx, &f)?;
    println!("f bent {} -> f + Q negabent {}", is_bent(&f), is_negabent(&g));
    println!("f + Q bent {}", is_bent(&g));
    Ok(())
}
