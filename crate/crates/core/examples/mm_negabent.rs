//! Maiorana-McFarland functions Tr(x pi(y) + h(y)) and their negabent criterion.

use negabent::mm::{homo_build, mm_build, mm_negabent_test, PermSpec};
use negabent::{from_trace_poly, is_bent, is_negabent, make_field, UnivariatePoly};

fn main() -> negabent::Result<()> {
    let ctx = make_field(3, None)?;
    let h = UnivariatePoly::parse(&ctx, "1*x^3")?;
    for c in 1..8 {
        let pi = PermSpec::linear(&ctx, c);
        let m = mm_build(&ctx, &pi, &h)?;
        println!(
            "pi = {c}y: complete {}, criterion {}, spectrum {}",
            pi.is_complete_mapping(),
            mm_negabent_test(&ctx, &m)?,
            is_negabent(&m.function)
        );
    }

    // with pi(y) = y^(2^i) negabentness is inherited from Tr(h)
    let ctx = make_field(4, None)?;
    let h = UnivariatePoly::parse(&ctx, "2*x^3")?;
    let m = homo_build(&ctx, 1, &h)?;
    println!("Tr(h) bent {}, power-map function negabent {}", is_bent(&from_trace_poly(&ctx, &h)), is_negabent(&m.function));
    Ok(())
}
