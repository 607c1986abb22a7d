//! The Butcher–Connes–Kreimer coproduct and convolution of functionals.

use treehopf::bck::{bck_coproduct, convolve_bck, BckFunctional};
use treehopf::text::parse_forest;

fn main() -> treehopf::Result<()> {
    for s in ["o(o)", "o(o,o)", "c(b(a))", "a(b)·c"] {
        let f = parse_forest(s)?;
        println!("Δ({}) = {}", f, bck_coproduct(&f));
    }
    // ⟨d_• ∗ d_•, H⟩ is the coefficient pattern of the GL product •∗• = •· • + •(•)
    let d = BckFunctional::dual_basis(&parse_forest("o")?);
    for h in ["o·o", "o(o)"] {
        println!("(d_• ∗ d_•)({}) = {}", h, convolve_bck(&d, &d, &parse_forest(h)?)?);
    }
    Ok(())
}
