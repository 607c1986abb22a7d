//! Quasi-shuffles, Hoffman's exponential and logarithm, and the maps ψ_f.

use treehopf::qshuffle::{hoffman_exp, hoffman_log, psi_series, quasi_shuffle, shuffle, PowerSeries};
use treehopf::text::parse_word;
use treehopf::Q;

fn main() -> treehopf::Result<()> {
    let (u, v) = (parse_word("a.b")?, parse_word("c")?);
    println!("{} ⋆ {} = {}", u, v, quasi_shuffle(&u, &v));
    println!("{} ⧢ {} = {}", u, v, shuffle(&u, &v));
    for w in ["a", "a.b", "a.b.c"] {
        let w = parse_word(w)?;
        println!("exp_H({}) = {}", w, hoffman_exp(&w));
        println!("log_H({}) = {}", w, hoffman_log(&w));
    }
    // ψ_f for f(t) = t + t², known through t³
    let f = PowerSeries::new(vec![Q::from_integer(1.into()), Q::from_integer(1.into()), Q::from_integer(0.into())]);
    let w = parse_word("a.b.c")?;
    println!("ψ_(t+t²)({}) = {}", w, psi_series(&f, &w)?);
    Ok(())
}
