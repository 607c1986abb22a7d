//! Generator images of the Marcus extension, with the Itô–Stratonovich correction at n = 2.

use treehopf::arbo::{marcus_modified_field, MarcusAlphabet};

fn main() -> treehopf::Result<()> {
    let m = marcus_modified_field(4)?;
    let mut rows: Vec<_> = m.iter().collect();
    rows.sort_by_key(|(k, _)| k.weight());
    for (k, v) in rows {
        println!("{} ↦ {}", MarcusAlphabet::render(k), v);
    }
    Ok(())
}
