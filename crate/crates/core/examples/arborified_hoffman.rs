//! Arborification and the commuting square 𝔞^c∘Ψ_v = exp_H∘𝔞 for v = 1/τ!.

use treehopf::arbo::{arbo_hoffman_adjoint, arbo_hoffman_exp, arborify, contract_arborify};
use treehopf::qshuffle::hoffman_exp_lc;
use treehopf::text::parse_forest;
use treehopf::tree::Enumerator;
use treehopf::{Forest, Semigroup, SemigroupElement};

fn main() -> treehopf::Result<()> {
    let cherry = parse_forest("i3(i1,i2)")?;
    println!("𝔞({}) = {}", cherry, arborify(&cherry));
    println!("𝔞^c({}) = {}", cherry, contract_arborify(&cherry));
    let psi = arbo_hoffman_exp(&cherry);
    println!("Ψ_v({}) = {}", cherry, psi);
    println!("𝔞^c(Ψ_v(…)) = {}", psi.flat_map(contract_arborify));
    println!("exp_H(𝔞(…)) = {}", hoffman_exp_lc(&arborify(&cherry)));

    let trees = Enumerator::letters(&["a", "b"]).trees_up_to(5);
    let agree = trees.iter().all(|t| {
        let f = Forest::tree(t.clone());
        arbo_hoffman_exp(&f).flat_map(contract_arborify) == hoffman_exp_lc(&arborify(&f))
    });
    println!("square commutes on all {} trees with ≤ 5 vertices over {{a, b}}: {}", trees.len(), agree);

    let adj = arbo_hoffman_adjoint(&Semigroup::undecorated(), &SemigroupElement::letter("o"), 4)?;
    println!("adjoint on •: {}", adj);
    Ok(())
}
