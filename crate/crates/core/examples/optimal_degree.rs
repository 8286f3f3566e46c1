//! Bent-negabent functions of degree n/2 written out as table files.

use negabent::bridge::{optimal_degree_construction, Source};
use negabent::io::{write_table, FieldTag};
use negabent::FieldSpec;

fn main() -> negabent::Result<()> {
    for n in [6, 8, 10, 12] {
        let c = optimal_degree_construction(n, Source::Search, 1, None)?;
        println!("n={n}: bent {}, negabent {}, degree {:?}", c.bent, c.negabent, c.degree);
        if n == 8 {
            print!("{}", write_table(&c.function, FieldTag::Single(FieldSpec::default_for(n)?))?);
        }
    }
    Ok(())
}
