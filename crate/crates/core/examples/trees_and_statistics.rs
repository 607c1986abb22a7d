//! Enumerate undecorated trees and print their factorial, symmetry factor and Connes–Moscovici coefficient.

use treehopf::tree::{tree_stats, Enumerator};

fn main() {
    let mut en = Enumerator::letters(&["o"]);
    println!("{:<16} {:>4} {:>4} {:>4}", "tree", "τ!", "σ", "cm");
    for t in en.trees_up_to(5) {
        let s = tree_stats(&t);
        println!("{:<16} {:>4} {:>4} {:>4}", t.to_string(), s.factorial, s.sigma, s.cm);
    }
    for n in 1..=8 {
        println!("{} trees with {} vertices", en.trees(n).len(), n);
    }
}
