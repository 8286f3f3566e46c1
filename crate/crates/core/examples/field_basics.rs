//! Arithmetic in GF(2^n) and the self-dual coordinates used for truth tables.

use negabent::make_field;

fn main() -> negabent::Result<()> {
    let ctx = make_field(6, None)?;
    println!("field {} with {} elements", ctx.spec(), ctx.size());

    let g = ctx.primitive_element();
    let x = ctx.pow(g, 11);
    let y = ctx.inverse(x)?;
    println!("g^11 = {x:#x}, inverse {y:#x}, product {:#x}", ctx.mul(x, y));
    println!("Tr(g^11) = {}", ctx.trace(x) as u8);

    // Tr(xy) is the dot product of coordinates
    let (a, b) = (ctx.pow(g, 5), ctx.pow(g, 40));
    let dot = (ctx.coords(a) & ctx.coords(b)).count_ones() % 2;
    println!("Tr(ab) = {}, <a, b> = {dot}", ctx.trace(ctx.mul(a, b)) as u8);

    let basis: Vec<String> = ctx.self_dual_basis_elements().iter().map(|e| format!("{e:#x}")).collect();
    println!("self-dual basis: {}", basis.join(" "));
    Ok(())
}
