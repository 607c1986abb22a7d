mod common;

use common::strategies;
use proptest::prelude::*;
use treehopf::text::{parse_forest, parse_lincomb, parse_rational, parse_tree, parse_word};
use treehopf::{Error, LinComb, Tree};

const ABC: &[&str] = &["a", "b", "c"];

#[test]
fn errors() {
    assert!(matches!(parse_tree(""), Err(Error::EmptyInput) | Err(Error::Parse { .. })));
    assert!(matches!(parse_tree("a(b"), Err(Error::Parse { .. })));
    assert!(matches!(parse_tree("a(b,)"), Err(Error::Parse { .. })));
    assert!(matches!(parse_rational("1/0"), Err(_)));
    assert!(parse_lincomb("1/2 * a(", parse_tree).is_err());
}

#[test]
fn brackets_are_multisets() {
    assert_eq!(parse_tree("[b a](c)").unwrap(), parse_tree("[a b](c)").unwrap());
    assert_eq!(parse_word("[b a].c").unwrap().to_string(), "[a b].c");
    assert_eq!(parse_forest("1").unwrap().to_string(), "1");
    assert_eq!(parse_word("e").unwrap().to_string(), "e");
}

proptest! {
    #[test]
    fn tree_round_trip(t in strategies::tree(ABC, 8)) {
        prop_assert_eq!(parse_tree(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn forest_round_trip(f in strategies::forest(ABC, 8)) {
        prop_assert_eq!(parse_forest(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn word_round_trip(w in strategies::word(ABC, 6)) {
        prop_assert_eq!(parse_word(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn lincomb_round_trip(ts in prop::collection::vec((strategies::tree(ABC, 4), -9i64..10, 1i64..5), 0..5)) {
        let x: LinComb<Tree> = ts.into_iter().map(|(t, n, d)| (t, treehopf::Q::new(n.into(), d.into()))).collect();
        prop_assert_eq!(parse_lincomb(&x.to_string(), parse_tree).unwrap(), x);
    }
}
