//! Grafting, iterated left powers and the Grossman–Larson product.

use treehopf::prelie::{forest_graft, gl_product, graft, left_power};
use treehopf::text::{parse_forest, parse_tree};
use treehopf::LinComb;

fn main() -> treehopf::Result<()> {
    let (x, y) = (parse_tree("o")?, parse_tree("o(o)")?);
    println!("{} ▷ {} = {}", x, y, graft(&x, &y));

    let o = LinComb::basis(parse_tree("o")?);
    for n in 1..=4 {
        println!("L^{}(•) = {}", n, left_power(&o, &o, n));
    }

    let f = parse_forest("a·b")?;
    let t = parse_tree("c(d)")?;
    println!("({}) ▷ {} = {}", f, t, forest_graft(&f, &t));
    println!("•_i ∗ •_j = {}", gl_product(&parse_forest("i")?, &parse_forest("j")?));
    println!("(i·j) ∗ k = {}", gl_product(&parse_forest("i·j")?, &parse_forest("k")?));
    Ok(())
}
