use artin_core::parse::{parse_exprs, parse_poly};
use artin_core::strategies::expr;
use artin_core::{Error, FieldDescriptor};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn render_reparses_to_the_same_tree(e in expr(2, 3)) {
        let first = parse_exprs(&e.render(), 2, 3).unwrap();
        prop_assert_eq!(first.len(), 1);
        let second = parse_exprs(&first[0].render(), 2, 3).unwrap();
        prop_assert_eq!(&first, &second);
    }

    #[test]
    fn render_preserves_the_polynomial(e in expr(2, 2)) {
        let q = FieldDescriptor::Rationals;
        let direct = e.to_polynomial(q, 2, 2).unwrap();
        let sys = parse_poly(&e.render(), 2, 2, q).unwrap();
        prop_assert_eq!(&sys.polys[0], &direct);
    }
}

#[test]
fn errors_carry_positions() {
    let q = FieldDescriptor::Rationals;
    assert!(matches!(parse_poly("X^2 - W", 2, 3, q), Err(Error::UnknownVariable { line: 1, col: 7, .. })));
    assert!(matches!(parse_poly("X^-1", 1, 1, q), Err(Error::NegativeExponent { line: 1, col: 3 })));
    assert!(matches!(parse_poly("X +\n  * Y", 1, 2, q), Err(Error::SyntaxError { line: 2, col: 3, .. })));
    assert!(matches!(parse_poly("T3", 2, 1, q), Err(Error::UnknownVariable { .. })));
    assert!(matches!(parse_poly("X4", 2, 3, q), Err(Error::UnknownVariable { .. })));
}
