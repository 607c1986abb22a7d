//! The substitution coproduct δ⁺, the action Ψ_v and inverse characters.

use std::collections::BTreeMap;

use treehopf::substitution::{convolve_plus, invert_character, psi_v, sub_coproduct, PlusCharacter};
use treehopf::text::{parse_forest, parse_tree};
use treehopf::Q;

fn main() -> treehopf::Result<()> {
    for s in ["i", "j(i)", "i3(i1,i2)"] {
        let t = parse_tree(s)?;
        println!("δ⁺({}) = {}", t, sub_coproduct(&t));
    }

    // v(•_i(•_i)) = 1/2, zero on other trees with edges
    let mut values = BTreeMap::new();
    values.insert(parse_tree("a(a)")?, Q::new(1.into(), 2.into()));
    let v = PlusCharacter::table(values, true, None);
    for s in ["a(a)", "a(a,b)", "a(a,a)"] {
        println!("Ψ_v({}) = {}", s, psi_v(&v, &parse_forest(s)?)?);
    }

    let w = PlusCharacter::inverse_factorial();
    let ladder = parse_tree("j(i)")?;
    println!("(1/τ! ⊛ 1/τ!)({}) = {}", ladder, convolve_plus(&w, &w, &ladder)?);
    let inv = invert_character(&w, 3)?;
    for s in ["j(i)", "k(j(i))", "k(i,j)"] {
        println!("(1/τ!)⁻¹({}) = {}", s, inv.eval_tree(&parse_tree(s)?)?);
    }
    Ok(())
}
