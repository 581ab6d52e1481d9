use jetres_cli::parse_poly;
use jetres_core::exactalg::{rat, Monomial, MultiPoly, VarContext};
use jetres_core::residue::tautological_context;
use proptest::prelude::*;

proptest! {
    #[test]
    fn print_parse_print(terms in proptest::collection::vec((proptest::collection::vec(0u16..4, 4), -30i64..=30, 1i64..=12), 0..8)) {
        let ctx = tautological_context(3);
        let p = MultiPoly::from_terms(&ctx, terms.into_iter().map(|(e, n, d)| (Monomial::from_exponents(&e), rat(n, d))));
        let printed = p.to_string();
        let back = parse_poly(&printed, &ctx).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn z_names_alias_u(e1 in 0u32..5, e2 in 0u32..5) {
        let ctx = VarContext::new(["u1", "u2"]).unwrap();
        let a = parse_poly(&format!("z1^{e1}*z2^{e2}"), &ctx).unwrap();
        let b = parse_poly(&format!("u1^{e1}*u2^{e2}"), &ctx).unwrap();
        prop_assert_eq!(a, b);
    }
}
