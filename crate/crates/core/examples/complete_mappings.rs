//! Complete mappings: searched, and from the two algebraic families.

use negabent::make_field;
use negabent::mm::{search_complete_mappings, yann_mapping, YannParams, YannVariant};

fn main() -> negabent::Result<()> {
    let ctx = make_field(4, None)?;
    for pi in search_complete_mappings(&ctx, 3, 7, Some(3)) {
        println!("t=4: {:?} deg(pi + id) = {:?}", pi.table(), pi.add_identity().algebraic_degree(&ctx));
    }

    let params = YannParams::new(3, 2)?;
    for variant in [YannVariant::One, YannVariant::Two] {
        let valid = params.valid_a(variant);
        let pi = yann_mapping(&params, variant, valid[0])?;
        println!(
            "{variant:?} over GF(2^{}): {} admissible a, complete {}",
            params.degree(),
            valid.len(),
            pi.is_complete_mapping()
        );
    }
    Ok(())
}
