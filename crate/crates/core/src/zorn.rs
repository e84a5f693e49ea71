//! From maximal small ideals to maximal elements, plus the two derived
//! posets (partial choice functions and chains) on which the same pipeline
//! produces a choice function and a maximal element.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::{
    is_maximal_compatible, is_small_var_ideal, maximal_small_ideals, var_ideal_member, VarIdeal,
};
use crate::polyring::Polynomial;
use crate::poset::{format_set, words_with_columns, Poset, VarId, VarSet};

/// A named verification result recorded in a [`PipelineTrace`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

/// Every intermediate object of one pipeline run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineTrace {
    pub maximal_small_ideal: VarIdeal,
    pub maximal_compatible_set: VarSet,
    pub upper_bound: VarId,
    pub maximal_element: VarId,
    pub checks: Vec<Check>,
}

impl PipelineTrace {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> + '_ {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for PipelineTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "maximal small ideal: {}", self.maximal_small_ideal)?;
        writeln!(
            f,
            "maximal compatible set: {}",
            format_set(&self.maximal_compatible_set)
        )?;
        writeln!(f, "upper bound: {}", self.upper_bound)?;
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            writeln!(f, "check {}: {status}", c.name)?;
        }
        write!(f, "maximal element: {}", self.maximal_element)
    }
}

/// Runs maximal small ideal → `Y = P ∩ X` → upper bound of `Y` → maximal
/// element, recording a check for each step of the argument.
pub fn wzl_pipeline(poset: &Poset) -> Result<PipelineTrace> {
    let ideals = maximal_small_ideals(poset)?;

    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool| {
        checks.push(Check {
            name: name.to_string(),
            passed,
        })
    };

    // On a finite poset every compatible set lies in a maximal one, so it is
    // enough that each maximal compatible set has an upper bound.
    let mut hypothesis = true;
    for i in &ideals {
        hypothesis &= !poset.upper_bounds(&i.generators)?.is_empty();
    }
    check("every_compatible_subset_bounded", hypothesis);

    let ideal = ideals
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("nonempty poset without maximal small ideal".into()))?;
    check("ideal_is_small", is_small_var_ideal(poset, &ideal)?);

    let mut generated = true;
    for x in poset.nodes() {
        let member = var_ideal_member(poset, &ideal, &Polynomial::var(x.clone()))?;
        generated &= member == ideal.generators.contains(x);
    }
    check("ideal_meets_variables_in_generators", generated);

    let y = ideal.generators.clone();
    check("generators_compatible", poset.is_compatible(&y)?);
    check("generators_maximal_compatible", is_maximal_compatible(poset, &y)?);

    let upper_bound = poset
        .upper_bounds(&y)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal(format!("{} has no upper bound", format_set(&y))))?;
    check("upper_bound_bounds_generators", {
        let mut ok = true;
        for g in &y {
            ok &= poset.leq(g, &upper_bound)?;
        }
        ok
    });

    // If upper_bound < z, then Y ∪ {z} would be compatible (bounded by z).
    let mut no_successor = true;
    for z in poset.nodes() {
        if poset.lt(&upper_bound, z)? {
            no_successor = false;
        }
    }
    check("upper_bound_has_no_strict_successor", no_successor);
    check(
        "upper_bound_in_maximal_elements",
        poset.maximal_elements().contains(&upper_bound),
    );

    Ok(PipelineTrace {
        maximal_small_ideal: ideal,
        maximal_compatible_set: y,
        maximal_element: upper_bound.clone(),
        upper_bound,
        checks,
    })
}

/// A finite family of nonempty sets indexed by tokens.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceFamily {
    sets: BTreeMap<String, BTreeSet<String>>,
}

fn is_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl ChoiceFamily {
    pub fn new<I, S, T>(sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Vec<T>)>,
        S: Into<String>,
        T: Into<String>,
    {
        let mut out = BTreeMap::new();
        for (index, elems) in sets {
            let index = index.into();
            if !is_token(&index) {
                return Err(Error::InvalidFamily(format!("bad index token {index:?}")));
            }
            let elems: BTreeSet<String> = elems.into_iter().map(Into::into).collect();
            if let Some(bad) = elems.iter().find(|e| !is_token(e)) {
                return Err(Error::InvalidFamily(format!("bad element token {bad:?}")));
            }
            if elems.is_empty() {
                return Err(Error::InvalidFamily(format!("set {index} is empty")));
            }
            if out.insert(index.clone(), elems).is_some() {
                return Err(Error::InvalidFamily(format!("index {index} given twice")));
            }
        }
        Ok(ChoiceFamily { sets: out })
    }

    pub fn indices(&self) -> impl Iterator<Item = &str> + '_ {
        self.sets.keys().map(String::as_str)
    }

    pub fn set(&self, index: &str) -> Option<&BTreeSet<String>> {
        self.sets.get(index)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// `∏ |A_i|`, the number of total choice functions.
    pub fn total_choices(&self) -> u64 {
        self.sets.values().map(|s| s.len() as u64).product()
    }
}

/// Parses lines of the form `set <index>: <tok> <tok> ...`.
pub fn parse_family(text: &str) -> Result<ChoiceFamily> {
    let mut sets: Vec<(String, Vec<String>)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let words = words_with_columns(content);
        let Some(&(col, keyword)) = words.first() else {
            continue;
        };
        if keyword != "set" {
            return Err(Error::syntax(line, col, format!("unknown statement `{keyword}`")));
        }
        let Some(colon) = content.find(':') else {
            return Err(Error::syntax(line, col, "expected `set <index>: <tok> ...`"));
        };
        let head = words_with_columns(&content[..colon]);
        if head.len() != 2 {
            return Err(Error::syntax(line, col, "expected a single index before `:`"));
        }
        let (icol, index) = head[1];
        if !is_token(index) {
            return Err(Error::syntax(line, icol, format!("invalid index `{index}`")));
        }
        let offset = content[..=colon].chars().count();
        let mut elems = Vec::new();
        for (c, tok) in words_with_columns(&content[colon + 1..]) {
            if !is_token(tok) {
                return Err(Error::syntax(line, c + offset, format!("invalid token `{tok}`")));
            }
            elems.push(tok.to_string());
        }
        sets.push((index.to_string(), elems));
    }
    ChoiceFamily::new(sets)
}

/// A function from some indices of a family to chosen elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct PartialChoice {
    pub assignments: BTreeMap<String, String>,
}

impl PartialChoice {
    /// Canonical node label: sorted `i=v` pairs joined by commas, or `{}`.
    pub fn encode(&self) -> String {
        if self.assignments.is_empty() {
            return "{}".to_string();
        }
        self.assignments
            .iter()
            .map(|(i, v)| format!("{i}={v}"))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn decode(label: &str) -> Result<Self> {
        let mut assignments = BTreeMap::new();
        if label != "{}" {
            for pair in label.split(',') {
                let (i, v) = pair
                    .split_once('=')
                    .filter(|(i, v)| is_token(i) && is_token(v))
                    .ok_or_else(|| Error::Internal(format!("bad partial choice label {label:?}")))?;
                assignments.insert(i.to_string(), v.to_string());
            }
        }
        Ok(PartialChoice { assignments })
    }

    /// `self ⊆ other` as sets of pairs, i.e. `other` extends `self`.
    pub fn extended_by(&self, other: &PartialChoice) -> bool {
        self.assignments
            .iter()
            .all(|(i, v)| other.assignments.get(i) == Some(v))
    }

    pub fn is_valid_for(&self, family: &ChoiceFamily) -> bool {
        self.assignments
            .iter()
            .all(|(i, v)| family.set(i).is_some_and(|s| s.contains(v)))
    }

    pub fn is_total_for(&self, family: &ChoiceFamily) -> bool {
        self.is_valid_for(family) && family.indices().all(|i| self.assignments.contains_key(i))
    }

    /// Union of partial choices, or `None` if two of them disagree on a
    /// shared index.
    pub fn union<'a>(choices: impl IntoIterator<Item = &'a PartialChoice>) -> Option<PartialChoice> {
        let mut out = PartialChoice::default();
        for c in choices {
            for (i, v) in &c.assignments {
                match out.assignments.get(i) {
                    Some(existing) if existing != v => return None,
                    _ => {
                        out.assignments.insert(i.clone(), v.clone());
                    }
                }
            }
        }
        Some(out)
    }
}

impl fmt::Display for PartialChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .assignments
            .iter()
            .map(|(i, v)| format!("{i}={v}"))
            .collect();
        f.write_str(&pairs.join(" "))
    }
}

/// Largest `∏ (|A_i| + 1)` accepted by [`choice_poset`].
pub const CHOICE_NODE_LIMIT: u64 = 4096;
/// Largest poset accepted by [`chain_poset`].
pub const CHAIN_SOURCE_LIMIT: usize = 12;

/// The poset of all partial choice functions of `family`, ordered by
/// extension.
pub fn choice_poset(family: &ChoiceFamily) -> Result<Poset> {
    let count = family
        .sets
        .values()
        .try_fold(1u64, |acc, s| acc.checked_mul(s.len() as u64 + 1))
        .unwrap_or(u64::MAX);
    if count > CHOICE_NODE_LIMIT {
        return Err(Error::SizeLimit {
            what: "partial choice functions",
            limit: CHOICE_NODE_LIMIT,
            actual: count,
        });
    }

    let mut choices = vec![PartialChoice::default()];
    for (index, elems) in &family.sets {
        let mut next = Vec::with_capacity(choices.len() * (elems.len() + 1));
        for c in &choices {
            next.push(c.clone());
            for e in elems {
                let mut ext = c.clone();
                ext.assignments.insert(index.clone(), e.clone());
                next.push(ext);
            }
        }
        choices = next;
    }

    let labels = choices.iter().map(|c| VarId::from_label(c.encode())).collect();
    Ok(Poset::from_order(labels, |i, j| choices[i].extended_by(&choices[j])))
}

/// Runs the pipeline on the partial-choice poset and decodes the resulting
/// maximal element, which must be a total choice function.
pub fn extract_choice(family: &ChoiceFamily) -> Result<PartialChoice> {
    let poset = choice_poset(family)?;
    let trace = wzl_pipeline(&poset)?;
    if !trace.all_passed() {
        return Err(Error::Internal(format!(
            "pipeline checks failed on choice poset: {:?}",
            trace.failed_checks().collect::<Vec<_>>()
        )));
    }
    let choice = PartialChoice::decode(trace.maximal_element.as_str())?;
    if !choice.is_total_for(family) {
        return Err(Error::Internal(format!(
            "maximal partial choice {} is not total",
            choice.encode()
        )));
    }
    Ok(choice)
}

/// Canonical label of a chain: `{a,c}`, with `{}` for the empty chain.
pub fn encode_chain(chain: &VarSet) -> VarId {
    VarId::from_label(format_set(chain))
}

/// Inverse of [`encode_chain`] for posets whose node names are identifiers.
pub fn decode_chain(label: &VarId) -> Result<VarSet> {
    let inner = label
        .as_str()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| Error::Internal(format!("bad chain label {label:?}")))?;
    if inner.is_empty() {
        return Ok(VarSet::new());
    }
    inner.split(',').map(VarId::new).collect()
}

/// The poset of all chains of `poset` (the empty chain included), ordered by
/// inclusion.
pub fn chain_poset(poset: &Poset) -> Result<Poset> {
    let n = poset.len();
    if n > CHAIN_SOURCE_LIMIT {
        return Err(Error::SizeLimit {
            what: "chain enumeration (nodes)",
            limit: CHAIN_SOURCE_LIMIT as u64,
            actual: n as u64,
        });
    }
    let comparable = |i: usize, j: usize| poset.leq_idx(i, j) || poset.leq_idx(j, i);
    let masks: Vec<u32> = (0u32..1 << n)
        .filter(|&s| {
            (0..n).all(|i| {
                s >> i & 1 == 0 || (i + 1..n).all(|j| s >> j & 1 == 0 || comparable(i, j))
            })
        })
        .collect();
    let labels = masks
        .iter()
        .map(|&s| {
            let chain: VarSet = (0..n)
                .filter(|&i| s >> i & 1 == 1)
                .map(|i| poset.nodes()[i].clone())
                .collect();
            encode_chain(&chain)
        })
        .collect();
    Ok(Poset::from_order(labels, |i, j| masks[i] & !masks[j] == 0))
}

/// Finds a maximal element of `poset` through a maximal chain: the pipeline
/// on the chain poset yields a maximal chain `c`, whose upper bound in
/// `poset` is maximal because `c ∪ {x, y}` would extend `c` whenever `x < y`.
pub fn extract_maximal_via_chains(poset: &Poset) -> Result<VarId> {
    if poset.is_empty() {
        return Err(Error::EmptyPoset);
    }
    let chains = chain_poset(poset)?;
    let trace = wzl_pipeline(&chains)?;
    if !trace.all_passed() {
        return Err(Error::Internal(format!(
            "pipeline checks failed on chain poset: {:?}",
            trace.failed_checks().collect::<Vec<_>>()
        )));
    }
    let chain = decode_chain(&trace.maximal_element)?;
    if !poset.is_chain(&chain)? {
        return Err(Error::Internal(format!("{} is not a chain", format_set(&chain))));
    }
    let x = poset
        .upper_bounds(&chain)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal(format!("chain {} has no upper bound", format_set(&chain))))?;
    for y in poset.nodes() {
        if poset.lt(&x, y)? {
            let mut extended = chain.clone();
            extended.insert(x.clone());
            extended.insert(y.clone());
            let msg = format!(
                "{} extends the maximal chain {}",
                format_set(&extended),
                format_set(&chain)
            );
            return Err(Error::Internal(msg));
        }
    }
    Ok(x)
}
