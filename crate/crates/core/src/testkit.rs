//! Seeded generators and exhaustive enumerators for small instances.
//!
//! All randomness comes from ChaCha8 streams seeded through SplitMix64, so a
//! [`GenConfig`] determines its outputs bit for bit. Per-trial seeds are
//! derived with [`derive_seed`].

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polyring::{Monomial, Polynomial};
use crate::poset::{Poset, VarId};

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub seed: u64,
    pub max_nodes: usize,
    pub edge_probability: f64,
    pub max_terms: usize,
    pub max_degree: u32,
    pub coeff_bound: u32,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_nodes: 6,
            edge_probability: 0.3,
            max_terms: 4,
            max_degree: 3,
            coeff_bound: 9,
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_nodes == 0 {
            return Err(Error::InvalidConfig("max_nodes must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.edge_probability) {
            return Err(Error::InvalidConfig(format!(
                "edge_probability {} outside [0, 1]",
                self.edge_probability
            )));
        }
        if self.coeff_bound == 0 {
            return Err(Error::InvalidConfig("coeff_bound must be positive".into()));
        }
        Ok(())
    }

    pub fn with_seed(&self, seed: u64) -> GenConfig {
        GenConfig {
            seed,
            ..self.clone()
        }
    }

    /// The same configuration with the seed of trial number `trial`.
    pub fn for_trial(&self, trial: u64) -> GenConfig {
        self.with_seed(derive_seed(self.seed, trial))
    }
}

/// SplitMix64 finalizer applied to `seed + stream * golden`.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed.wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent streams for posets and polynomials drawn from one config.
const POSET_STREAM: u64 = 0x706f_7365_74;
const POLY_STREAM: u64 = 0x706f_6c79;

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, stream))
}

/// Node name for index `i`; zero padding keeps name order equal to index
/// order.
pub fn node_name(i: usize) -> VarId {
    VarId::new(format!("x{i:02}")).expect("generated identifier")
}

pub fn random_poset(cfg: &GenConfig) -> Result<Poset> {
    cfg.validate()?;
    let mut rng = rng(cfg.seed, POSET_STREAM);
    let n = rng.gen_range(1..=cfg.max_nodes);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(cfg.edge_probability) {
                edges.push((node_name(i), node_name(j)));
            }
        }
    }
    Poset::build((0..n).map(node_name), edges)
}

pub fn random_polynomial(cfg: &GenConfig, poset: &Poset) -> Result<Polynomial> {
    cfg.validate()?;
    if poset.is_empty() {
        return Err(Error::EmptyPoset);
    }
    let mut rng = rng(cfg.seed, POLY_STREAM);
    Ok(sample_polynomial(&mut rng, cfg, poset))
}

fn sample_polynomial(rng: &mut impl Rng, cfg: &GenConfig, poset: &Poset) -> Polynomial {
    if cfg.max_terms == 0 {
        return Polynomial::zero();
    }
    let nodes = poset.nodes();
    let bound = cfg.coeff_bound as i64;
    let count = rng.gen_range(1..=cfg.max_terms);
    // duplicate monomials keep their first coefficient so every coefficient
    // stays within the bound
    let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    for _ in 0..count {
        let degree = rng.gen_range(0..=cfg.max_degree);
        let m = Monomial::from_exponents(
            (0..degree).map(|_| (nodes[rng.gen_range(0..nodes.len())].clone(), 1)),
        );
        let mut c = rng.gen_range(1..=bound);
        if rng.gen_bool(0.5) {
            c = -c;
        }
        terms.entry(m).or_insert_with(|| BigInt::from(c));
    }
    Polynomial::from_terms(terms)
}

/// Draws polynomials from successive streams until `accept` holds, giving up
/// after `attempts` draws.
pub fn random_polynomial_where(
    cfg: &GenConfig,
    poset: &Poset,
    attempts: usize,
    mut accept: impl FnMut(&Polynomial) -> bool,
) -> Result<Option<Polynomial>> {
    for k in 0..attempts as u64 {
        let f = random_polynomial(&cfg.with_seed(derive_seed(cfg.seed, k)), poset)?;
        if accept(&f) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Largest node count accepted by [`all_posets_on`].
pub const EXHAUSTIVE_NODE_LIMIT: usize = 4;

fn letter(i: usize) -> VarId {
    VarId::new(((b'a' + i as u8) as char).to_string()).expect("letter identifier")
}

/// Every labeled poset on exactly `n` nodes named `a, b, ...`, each once.
pub fn all_posets_on(n: usize) -> Result<Vec<Poset>> {
    if n > EXHAUSTIVE_NODE_LIMIT {
        return Err(Error::SizeLimit {
            what: "exhaustive poset enumeration (nodes)",
            limit: EXHAUSTIVE_NODE_LIMIT as u64,
            actual: n as u64,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut seen: BTreeSet<Vec<(VarId, VarId)>> = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &(i, j))| (letter(i), letter(j)));
        let Ok(poset) = Poset::build((0..n).map(letter), edges) else {
            continue;
        };
        let key: Vec<(VarId, VarId)> = poset
            .strict_pairs()
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect();
        if seen.insert(key) {
            out.push(poset);
        }
    }
    Ok(out)
}

/// Every labeled poset with between 1 and `n` nodes.
pub fn all_posets_up_to(n: usize) -> Result<Vec<Poset>> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(all_posets_on(k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Degree;

    fn cfg(seed: u64) -> GenConfig {
        GenConfig {
            seed,
            ..GenConfig::default()
        }
    }

    #[test]
    fn poset_generator_edges() {
        let single = random_poset(&GenConfig { max_nodes: 1, ..cfg(3) }).unwrap();
        assert_eq!(single.len(), 1);

        for seed in 0..20 {
            let anti = random_poset(&GenConfig { edge_probability: 0.0, ..cfg(seed) }).unwrap();
            assert_eq!(anti.strict_pairs().count(), 0);
            let chain = random_poset(&GenConfig { edge_probability: 1.0, ..cfg(seed) }).unwrap();
            assert!(chain.is_chain(chain.nodes()).unwrap());
        }
    }

    #[test]
    fn polynomial_generator() {
        let poset = random_poset(&cfg(1)).unwrap();
        let zero = random_polynomial(&GenConfig { max_terms: 0, ..cfg(1) }, &poset).unwrap();
        assert!(zero.is_zero());
        assert_eq!(
            random_polynomial(&cfg(9), &poset).unwrap(),
            random_polynomial(&cfg(9), &poset).unwrap()
        );
        for seed in 0..50 {
            let f = random_polynomial(&GenConfig { coeff_bound: 1, ..cfg(seed) }, &poset).unwrap();
            assert!(f.terms().all(|(_, c)| c.magnitude() == &1u32.into()));
            let g = random_polynomial(&cfg(seed), &poset).unwrap();
            assert!(g.num_terms() <= 4);
            assert!(g.degree() <= Degree::Finite(3));
        }
        assert_eq!(random_polynomial(&cfg(0), &Poset::empty()), Err(Error::EmptyPoset));
    }

    #[test]
    fn invalid_configs() {
        assert!(random_poset(&GenConfig { max_nodes: 0, ..cfg(0) }).is_err());
        assert!(random_poset(&GenConfig { edge_probability: 1.5, ..cfg(0) }).is_err());
        assert!(random_poset(&GenConfig { coeff_bound: 0, ..cfg(0) }).is_err());
    }

    #[test]
    fn labeled_poset_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| all_posets_on(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 3, 19, 219]);
        assert_eq!(all_posets_up_to(1).unwrap().len(), 1);
        assert_eq!(all_posets_up_to(3).unwrap().len(), 23);
        assert!(matches!(all_posets_on(5), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn derived_seeds_differ() {
        let seeds: BTreeSet<u64> = (0..1000).map(|k| derive_seed(42, k)).collect();
        assert_eq!(seeds.len(), 1000);
    }
}
