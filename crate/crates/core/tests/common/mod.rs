#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use zornring::{Monomial, Polynomial, Poset, VarId};

pub const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

pub fn v(s: &str) -> VarId {
    VarId::new(s).unwrap()
}

/// Posets on up to 6 nodes: edges follow a random permutation of the
/// names, so the order is not tied to name order.
pub fn arb_poset() -> impl Strategy<Value = Poset> {
    (1usize..=6)
        .prop_flat_map(|n| {
            (
                Just(n),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
                proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
            )
        })
        .prop_map(|(n, perm, bits)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        edges.push((v(NAMES[perm[i]]), v(NAMES[perm[j]])));
                    }
                    k += 1;
                }
            }
            Poset::build((0..n).map(|i| v(NAMES[i])), edges).unwrap()
        })
}

/// Polynomials over the first `nvars` names.
pub fn arb_poly(nvars: usize) -> impl Strategy<Value = Polynomial> {
    let term = (
        proptest::collection::vec((0..nvars, 1u32..=3), 0..=3),
        -9i64..=9,
    );
    proptest::collection::vec(term, 0..=5).prop_map(|terms| {
        Polynomial::from_terms(terms.into_iter().map(|(powers, c)| {
            (
                Monomial::from_exponents(powers.into_iter().map(|(i, e)| (v(NAMES[i]), e))),
                BigInt::from(c),
            )
        }))
    })
}

pub fn poset_with_poly() -> impl Strategy<Value = (Poset, Polynomial)> {
    arb_poset().prop_flat_map(|p| {
        let n = p.len();
        (Just(p), arb_poly(n))
    })
}

/// Relation of `p` as a plain list of `(a, b)` with `a <= b`.
pub fn relation_pairs(p: &Poset) -> Vec<(VarId, VarId)> {
    p.relation().map(|(a, b)| (a.clone(), b.clone())).collect()
}
