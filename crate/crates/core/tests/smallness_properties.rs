mod common;

use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use zornring::{
    degree_shift, dominated_by, dominating_witness, is_big, is_small, split_at, Polynomial, Poset,
    VarId,
};

/// Domination decided from the raw relation pairs.
fn dominated_oracle(p: &Poset, f: &Polynomial, x: &VarId) -> bool {
    let rel = relation_pairs(p);
    f.monomials()
        .all(|m| m.vars().any(|y| rel.iter().any(|(a, b)| a == y && b == x)))
}

fn arb_case() -> impl Strategy<Value = (Poset, Polynomial, Polynomial, Polynomial, Polynomial)> {
    arb_poset().prop_flat_map(|p| {
        let n = p.len();
        (Just(p), arb_poly(n), arb_poly(n), arb_poly(n), arb_poly(n))
    })
}

proptest! {
    #[test]
    fn domination_matches_oracle((p, f) in poset_with_poly()) {
        for x in p.nodes() {
            prop_assert_eq!(dominated_by(&p, &f, x).unwrap(), dominated_oracle(&p, &f, x));
        }
        let least = p.nodes().iter().find(|x| dominated_oracle(&p, &f, x)).cloned();
        prop_assert_eq!(dominating_witness(&p, &f).unwrap(), least.clone());
        prop_assert_eq!(is_small(&p, &f).unwrap(), least.is_some());
    }

    #[test]
    fn dominated_polynomials_form_an_ideal((p, f, g, s, t) in arb_case()) {
        for x in p.nodes() {
            // restrict f and g to their dominated parts
            let (f1, _) = split_at(&p, &f, x).unwrap();
            let (g1, _) = split_at(&p, &g, x).unwrap();
            let combo = &(&s * &f1) + &(&t * &g1);
            prop_assert!(dominated_by(&p, &combo, x).unwrap());
        }
    }

    #[test]
    fn dominated_plus_undominated_escapes((p, f, g, _s, _t) in arb_case()) {
        for x in p.nodes() {
            let (f1, _) = split_at(&p, &f, x).unwrap();
            let (_, g2) = split_at(&p, &g, x).unwrap();
            if !g2.is_zero() {
                prop_assert!(!dominated_by(&p, &(&f1 + &g2), x).unwrap());
            }
        }
    }

    #[test]
    fn domination_is_monotone((p, f) in poset_with_poly()) {
        for y in p.nodes() {
            if dominated_by(&p, &f, y).unwrap() {
                for x in p.nodes() {
                    if p.leq(y, x).unwrap() {
                        prop_assert!(dominated_by(&p, &f, x).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn big_times_big_is_big((p, f, g, _s, _t) in arb_case()) {
        prop_assert!(is_big(&p, &Polynomial::one()).unwrap());
        if is_big(&p, &f).unwrap() && is_big(&p, &g).unwrap() {
            prop_assert!(is_big(&p, &(&f * &g)).unwrap());
        }
    }

    #[test]
    fn split_recombines_and_undominated_product((p, f, g, _s, _t) in arb_case()) {
        for x in p.nodes() {
            let (f1, f2) = split_at(&p, &f, x).unwrap();
            let (_, g2) = split_at(&p, &g, x).unwrap();
            prop_assert_eq!(&f1 + &f2, f.clone());
            prop_assert!(dominated_by(&p, &f1, x).unwrap());
            for m in f2.monomials() {
                for y in m.vars() {
                    prop_assert!(!p.leq(y, x).unwrap());
                }
            }
            if !f2.is_zero() && !g2.is_zero() {
                prop_assert!(!dominated_by(&p, &(&f2 * &g2), x).unwrap());
            }
        }
    }

    #[test]
    fn classification_ignores_coefficient_scaling((p, f) in poset_with_poly(), k in -20i64..=20) {
        prop_assume!(k != 0);
        let scaled = f.scale(&BigInt::from(k));
        for x in p.nodes() {
            prop_assert_eq!(dominated_by(&p, &f, x).unwrap(), dominated_by(&p, &scaled, x).unwrap());
        }
        prop_assert_eq!(is_small(&p, &f).unwrap(), is_small(&p, &scaled).unwrap());
        prop_assert_eq!(is_big(&p, &f).unwrap(), is_big(&p, &scaled).unwrap());
    }

    #[test]
    fn degree_shift_keeps_every_monomial((_p, f, g, _s, _t) in arb_case(), extra in 1u32..3) {
        let x = v("a");
        let d = match g.degree() {
            zornring::Degree::NegInfinity => extra,
            zornring::Degree::Finite(k) => k as u32 + extra,
        };
        let h = degree_shift(&x, d, &f, &g).unwrap();
        let shifted = f.mul_monomial(&zornring::Monomial::var_pow(x.clone(), d));
        for m in shifted.monomials() {
            prop_assert!(!g.appears(m));
            prop_assert_eq!(h.coeff(m), shifted.coeff(m));
        }
        for m in g.monomials() {
            prop_assert_eq!(h.coeff(m), g.coeff(m));
        }
        prop_assert_eq!(h.num_terms(), f.num_terms() + g.num_terms());
    }
}
