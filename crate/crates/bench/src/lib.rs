//! Fixtures shared by the benchmarks.

use zornring::testkit::{random_polynomial_where, random_poset, GenConfig};
use zornring::{is_big, Polynomial, Poset};

/// A seeded poset with `nodes` nodes at most, plus two big polynomials on it.
pub fn big_pair(seed: u64, nodes: usize) -> (Poset, Polynomial, Polynomial) {
    let cfg = GenConfig {
        seed,
        max_nodes: nodes,
        edge_probability: 0.3,
        max_terms: 6,
        max_degree: 4,
        coeff_bound: 9,
    };
    let poset = random_poset(&cfg).expect("valid config");
    let draw = |s| {
        random_polynomial_where(&cfg.with_seed(s), &poset, 1000, |f| {
            is_big(&poset, f).unwrap_or(false)
        })
        .expect("valid config")
        .expect("a big polynomial within 1000 draws")
    };
    let f = draw(seed ^ 1);
    let g = draw(seed ^ 2);
    (poset, f, g)
}
