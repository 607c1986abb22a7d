//! The Hairer–Kelly map ψ, its symmetrisation ψ̃ and the inverse ψ̃⁻¹.

use treehopf::hk::{hk_flow_identity_residual, hk_psi, hk_psi_tilde, hk_psi_tilde_inv};
use treehopf::text::{parse_forest, parse_tree};

fn main() -> treehopf::Result<()> {
    for s in ["o(o(o))", "o(o,o)"] {
        println!("ψ({}) = {}", s, hk_psi(&parse_tree(s)?)?);
        println!("ψ̃({}) = {}", s, hk_psi_tilde(&parse_forest(s)?)?);
        println!("ψ̃⁻¹({}) = {}", s, hk_psi_tilde_inv(&parse_forest(s)?)?);
    }
    for n in 1..=4 {
        println!("flow identity residual through {} vertices: {}", n, hk_flow_identity_residual(n)?);
    }
    Ok(())
}
