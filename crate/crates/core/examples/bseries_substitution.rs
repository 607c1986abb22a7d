//! B-series of y' = y², the substituted field (1/h) B(1/τ!, f), and the substitution law.

use treehopf::bseries::{bseries_truncated, substitute_field, substitution_law_residual, undecorated_fields};
use treehopf::poly::PolyVectorField;
use treehopf::substitution::PlusCharacter;
use treehopf::{Q, Semigroup, SemigroupElement, Tree};

fn main() -> treehopf::Result<()> {
    let f = undecorated_fields(PolyVectorField::parse("y^2")?);
    let a = PlusCharacter::inverse_factorial();
    let a_fn = |t: &Tree| a.eval_tree(t);
    let y0 = [Q::from_integer(1.into())];

    // the exact flow of y' = y², y(0) = 1 is 1/(1 − h)
    for (k, c) in bseries_truncated(&a_fn, &f, 5, &y0)?.iter().enumerate() {
        println!("h^{}: {}", k, c[0]);
    }

    let sub = substitute_field(&Semigroup::undecorated(), &a_fn, &f, 4)?;
    let o = SemigroupElement::letter("o");
    for k in 0..4 {
        println!("(1/h) B(1/τ!, f), h^{}: {}", k, sub.coeff(&o, k)?);
    }

    let residual = substitution_law_residual(&Semigroup::undecorated(), &a, &a_fn, &f, 4, &y0)?;
    println!("B(b, B(a, f)/h) − B(a ⊛ b, f) through h^4: {}", residual);
    Ok(())
}
