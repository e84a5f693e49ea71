//! Ideals of `Z[X]` generated by sets of variables.
//!
//! A maximal small ideal is always generated by the variables it contains,
//! so [`VarIdeal`] is the only ideal representation needed. Maximality,
//! which cannot be checked by enumerating an infinite ring, is certified by
//! exhibiting big polynomials in every proper enlargement `(Y, f)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{Monomial, Polynomial};
use crate::poset::{Poset, VarId, VarSet};
use crate::smallness::is_big;

/// The ideal `(Y)` generated by a set of variables.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VarIdeal {
    pub generators: VarSet,
}

impl VarIdeal {
    pub fn new(generators: VarSet) -> Self {
        VarIdeal { generators }
    }

    fn check_within(&self, poset: &Poset) -> Result<()> {
        match self.generators.iter().find(|g| !poset.contains(g)) {
            Some(g) => Err(Error::UnknownNode(g.clone())),
            None => Ok(()),
        }
    }

    fn covers(&self, m: &Monomial) -> bool {
        m.vars().any(|v| self.generators.contains(v))
    }

    /// Writes `f` as `sum g_y * y` by dividing each monomial by its least
    /// generator. Returns `None` when `f` is not in the ideal.
    pub fn cofactors(&self, f: &Polynomial) -> Option<BTreeMap<VarId, Polynomial>> {
        let mut parts: BTreeMap<VarId, Polynomial> = BTreeMap::new();
        for (m, c) in f.terms() {
            let y = m.vars().find(|v| self.generators.contains(*v))?;
            let quotient = m.div_var(y).expect("generator divides monomial");
            let slot = parts.entry(y.clone()).or_default();
            *slot = &*slot + &Polynomial::term(c.clone(), quotient);
        }
        Some(parts)
    }
}

impl fmt::Display for VarIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.generators.iter().map(VarId::as_str).collect();
        write!(f, "({})", names.join(","))
    }
}

impl fmt::Debug for VarIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarIdeal{self}")
    }
}

/// `f ∈ (Y)` iff every monomial of `f` contains a generator.
pub fn var_ideal_member(poset: &Poset, ideal: &VarIdeal, f: &Polynomial) -> Result<bool> {
    ideal.check_within(poset)?;
    f.check_variables(poset)?;
    Ok(f.monomials().all(|m| ideal.covers(m)))
}

/// `(Y)` is small iff `Y` is compatible: a common upper bound dominates
/// every member, and without one the sum of the generators is already big.
pub fn is_small_var_ideal(poset: &Poset, ideal: &VarIdeal) -> Result<bool> {
    ideal.check_within(poset)?;
    poset.is_compatible(&ideal.generators)
}

/// Sum of the generators, the member used to refute smallness.
pub fn generator_sum(ideal: &VarIdeal) -> Polynomial {
    Polynomial::from_terms(
        ideal
            .generators
            .iter()
            .map(|y| (Monomial::var(y.clone()), BigInt::one())),
    )
}

/// All maximal small ideals, one per maximal compatible subset.
pub fn maximal_small_ideals(poset: &Poset) -> Result<Vec<VarIdeal>> {
    if poset.is_empty() {
        return Err(Error::EmptyPoset);
    }
    Ok(poset
        .maximal_compatible_subsets()
        .into_iter()
        .map(VarIdeal::new)
        .collect())
}

/// Whether `Y` is a maximal compatible subset, checked directly: `Y` is
/// compatible and no single node can be added.
pub fn is_maximal_compatible(poset: &Poset, set: &VarSet) -> Result<bool> {
    if !poset.is_compatible(set)? {
        return Ok(false);
    }
    for x in poset.nodes() {
        if set.contains(x) {
            continue;
        }
        let mut bigger = set.clone();
        bigger.insert(x.clone());
        if poset.is_compatible(&bigger)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Produces a big polynomial in `(Y, f)` for `Y` maximal compatible and
/// `f ∉ (Y)`.
///
/// Let `m` be the lowest monomial of `f` free of generators. If `m = 1`,
/// `f` has a constant term and is big as it stands. Otherwise the witness is
/// `f + c * sum(Y)` with `c = 1 + max |coeff f|`: the scaling keeps every
/// generator monomial and `m` itself alive, so a dominator of the witness
/// would bound `Y` together with some variable of `m`.
pub fn big_witness(poset: &Poset, ideal: &VarIdeal, f: &Polynomial) -> Result<Polynomial> {
    ideal.check_within(poset)?;
    f.check_variables(poset)?;
    if !is_maximal_compatible(poset, &ideal.generators)? {
        return Err(Error::Precondition(format!(
            "{ideal} is not generated by a maximal compatible subset"
        )));
    }
    big_witness_unchecked(poset, ideal, f)
}

fn big_witness_unchecked(poset: &Poset, ideal: &VarIdeal, f: &Polynomial) -> Result<Polynomial> {
    // monomials iterate highest degree first, so the last uncovered one is
    // the lowest
    let Some(m) = f.monomials().filter(|m| !ideal.covers(m)).last() else {
        return Err(Error::Precondition(format!("{f} already lies in {ideal}")));
    };
    let witness = if m.is_one() {
        f.clone()
    } else {
        let c = f.max_abs_coeff() + BigInt::one();
        f + &generator_sum(ideal).scale(&c)
    };
    if !is_big(poset, &witness)? {
        return Err(Error::Internal(format!(
            "witness {witness} for {f} over {ideal} is small"
        )));
    }
    Ok(witness)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProbeOutcome {
    /// The probe already lies in `(Y)`.
    Member,
    /// The probe lies outside `(Y)`; `witness` is a big element of `(Y, probe)`.
    Witness { witness: Polynomial },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub probe: Polynomial,
    pub outcome: ProbeOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub ideal: VarIdeal,
    pub records: Vec<ProbeRecord>,
    pub passed: bool,
}

impl CertificateReport {
    pub fn witness_count(&self) -> usize {
        self.records
            .iter()
            .filter(|r| matches!(r.outcome, ProbeOutcome::Witness { .. }))
            .count()
    }
}

/// Checks each probe against `(Y)`: members are recorded as such, every
/// other probe must yield a big witness in `(Y, probe)`.
pub fn certify_maximality(
    poset: &Poset,
    ideal: &VarIdeal,
    probes: &[Polynomial],
) -> Result<CertificateReport> {
    ideal.check_within(poset)?;
    if !is_maximal_compatible(poset, &ideal.generators)? {
        return Err(Error::Precondition(format!(
            "{ideal} is not generated by a maximal compatible subset"
        )));
    }
    let mut records = Vec::with_capacity(probes.len());
    for probe in probes {
        let outcome = if var_ideal_member(poset, ideal, probe)? {
            ProbeOutcome::Member
        } else {
            ProbeOutcome::Witness {
                witness: big_witness_unchecked(poset, ideal, probe)?,
            }
        };
        records.push(ProbeRecord {
            probe: probe.clone(),
            outcome,
        });
    }
    Ok(CertificateReport {
        ideal: ideal.clone(),
        records,
        passed: true,
    })
}
