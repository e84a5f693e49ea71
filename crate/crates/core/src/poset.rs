//! Finite partial orders over named variables.
//!
//! Nodes are kept sorted by name and the order relation is stored as one
//! bitset row per node (`row[i]` holds every `j` with `i <= j`). Every set
//! returned from this module is a [`VarSet`], so iteration order is always
//! the lexicographic order of the names.

use std::borrow::Borrow;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Name of a poset element, which doubles as a polynomial variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VarId(String);

pub type VarSet = BTreeSet<VarId>;

impl VarId {
    /// Creates an identifier, checking it against `[A-Za-z_][A-Za-z0-9_]*`.
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if Self::is_identifier(&name) {
            Ok(VarId(name))
        } else {
            Err(Error::InvalidIdentifier(name))
        }
    }

    /// Creates a label without the lexical check. Derived posets (choice
    /// functions, chains) name their nodes with canonical encodings such as
    /// `1=u,2=v` or `{a,c}`, which are not identifiers.
    pub fn from_label(label: impl Into<String>) -> Self {
        VarId(label.into())
    }

    pub fn is_identifier(s: &str) -> bool {
        let mut chars = s.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return false,
        }
        chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl FromStr for VarId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VarId::new(s)
    }
}

impl Borrow<str> for VarId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// Builds a set of identifiers from string literals. Panics on an invalid
/// name, so it is meant for tests and examples.
pub fn var_set<'a>(names: impl IntoIterator<Item = &'a str>) -> VarSet {
    names
        .into_iter()
        .map(|n| VarId::new(n).expect("valid identifier"))
        .collect()
}

/// Formats a set as `{a,c}`.
pub fn format_set(set: &VarSet) -> String {
    let inner: Vec<&str> = set.iter().map(VarId::as_str).collect();
    format!("{{{}}}", inner.join(","))
}

#[derive(Clone, PartialEq, Eq)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn zeros(n: usize) -> Self {
        BitRow(vec![0; n.div_ceil(64)])
    }

    fn ones(n: usize) -> Self {
        let mut row = Self::zeros(n);
        for i in 0..n {
            row.set(i);
        }
        row
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn union_with(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn intersect_with(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= b;
        }
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64)
                .filter(move |b| word >> b & 1 == 1)
                .map(move |b| w * 64 + b)
        })
    }
}

/// A finite partial order.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    nodes: Vec<VarId>,
    above: Vec<BitRow>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strict: Vec<String> = self
            .strict_pairs()
            .map(|(a, b)| format!("{a}<{b}"))
            .collect();
        f.debug_struct("Poset")
            .field("nodes", &self.nodes)
            .field("strict", &strict)
            .finish()
    }
}

/// Result of checking the three order axioms by brute force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub reflexive: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.reflexive && self.antisymmetric && self.transitive
    }
}

/// Largest poset accepted by [`Poset::maximal_compatible_subsets_bruteforce`].
pub const BRUTEFORCE_NODE_LIMIT: usize = 15;

impl Poset {
    /// Builds the reflexive-transitive closure of `strict_edges`, where an
    /// edge `(a, b)` states `a < b`.
    pub fn build<N, E>(nodes: N, strict_edges: E) -> Result<Poset>
    where
        N: IntoIterator<Item = VarId>,
        E: IntoIterator<Item = (VarId, VarId)>,
    {
        let set: VarSet = nodes.into_iter().collect();
        let nodes: Vec<VarId> = set.into_iter().collect();
        let n = nodes.len();
        let mut above: Vec<BitRow> = (0..n)
            .map(|i| {
                let mut row = BitRow::zeros(n);
                row.set(i);
                row
            })
            .collect();

        let lookup = |v: &VarId| {
            nodes
                .binary_search(v)
                .map_err(|_| Error::UnknownNode(v.clone()))
        };
        for (a, b) in strict_edges {
            let (i, j) = (lookup(&a)?, lookup(&b)?);
            if i == j {
                return Err(Error::Cycle(a, b));
            }
            above[i].set(j);
        }

        // Warshall: whoever reaches k also reaches everything above k.
        for k in 0..n {
            let row_k = above[k].clone();
            for row in above.iter_mut() {
                if row.get(k) {
                    row.union_with(&row_k);
                }
            }
        }

        for i in 0..n {
            for j in above[i].ones_iter() {
                if j != i && above[j].get(i) {
                    return Err(Error::Cycle(nodes[i].clone(), nodes[j].clone()));
                }
            }
        }

        Ok(Poset { nodes, above })
    }

    /// Builds a poset from an order predicate that is already reflexive,
    /// antisymmetric and transitive. Indices passed to `leq` refer to the
    /// order of `nodes` as given. Names must be distinct.
    pub(crate) fn from_order(nodes: Vec<VarId>, leq: impl Fn(usize, usize) -> bool) -> Poset {
        let n = nodes.len();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| nodes[a].cmp(&nodes[b]));
        let above = perm
            .iter()
            .map(|&i| {
                let mut row = BitRow::zeros(n);
                for (new_j, &j) in perm.iter().enumerate() {
                    if leq(i, j) {
                        row.set(new_j);
                    }
                }
                row
            })
            .collect();
        let sorted = perm.iter().map(|&i| nodes[i].clone()).collect::<Vec<_>>();
        debug_assert!(sorted.windows(2).all(|w| w[0] < w[1]), "duplicate node names");
        Poset {
            nodes: sorted,
            above,
        }
    }

    pub fn empty() -> Poset {
        Poset {
            nodes: Vec::new(),
            above: Vec::new(),
        }
    }

    /// Nodes in name order.
    pub fn nodes(&self) -> &[VarId] {
        &self.nodes
    }

    pub fn node_set(&self) -> VarSet {
        self.nodes.iter().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, v: &VarId) -> bool {
        self.nodes.binary_search(v).is_ok()
    }

    pub(crate) fn index_of(&self, v: &VarId) -> Result<usize> {
        self.nodes
            .binary_search(v)
            .map_err(|_| Error::UnknownNode(v.clone()))
    }

    #[inline]
    pub(crate) fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.above[i].get(j)
    }

    fn indices<'a, S>(&self, set: S) -> Result<Vec<usize>>
    where
        S: IntoIterator<Item = &'a VarId>,
    {
        set.into_iter().map(|v| self.index_of(v)).collect()
    }

    fn collect_set(&self, idx: impl IntoIterator<Item = usize>) -> VarSet {
        idx.into_iter().map(|i| self.nodes[i].clone()).collect()
    }

    pub fn leq(&self, a: &VarId, b: &VarId) -> Result<bool> {
        Ok(self.leq_idx(self.index_of(a)?, self.index_of(b)?))
    }

    /// `a < b`.
    pub fn lt(&self, a: &VarId, b: &VarId) -> Result<bool> {
        Ok(a != b && self.leq(a, b)?)
    }

    /// All pairs `(a, b)` with `a <= b`, including the reflexive ones.
    pub fn relation(&self) -> impl Iterator<Item = (&VarId, &VarId)> + '_ {
        self.above.iter().enumerate().flat_map(move |(i, row)| {
            row.ones_iter()
                .map(move |j| (&self.nodes[i], &self.nodes[j]))
        })
    }

    /// All pairs `(a, b)` with `a < b`.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (&VarId, &VarId)> + '_ {
        self.relation().filter(|(a, b)| a != b)
    }

    /// Pairs `(a, b)` where `b` covers `a`, i.e. `a < b` with nothing
    /// strictly between them.
    pub fn cover_pairs(&self) -> Vec<(&VarId, &VarId)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in self.above[i].ones_iter() {
                if i == j {
                    continue;
                }
                let between = (0..n).any(|k| {
                    k != i && k != j && self.leq_idx(i, k) && self.leq_idx(k, j)
                });
                if !between {
                    out.push((&self.nodes[i], &self.nodes[j]));
                }
            }
        }
        out
    }

    pub fn is_chain<'a, S>(&self, set: S) -> Result<bool>
    where
        S: IntoIterator<Item = &'a VarId>,
    {
        let idx = self.indices(set)?;
        Ok(idx.iter().enumerate().all(|(k, &i)| {
            idx[k + 1..]
                .iter()
                .all(|&j| self.leq_idx(i, j) || self.leq_idx(j, i))
        }))
    }

    fn upper_bound_row<'a, S>(&self, set: S) -> Result<BitRow>
    where
        S: IntoIterator<Item = &'a VarId>,
    {
        let mut row = BitRow::ones(self.len());
        for i in self.indices(set)? {
            row.intersect_with(&self.above[i]);
        }
        Ok(row)
    }

    /// Nodes lying above every member of `set`.
    pub fn upper_bounds<'a, S>(&self, set: S) -> Result<VarSet>
    where
        S: IntoIterator<Item = &'a VarId>,
    {
        let row = self.upper_bound_row(set)?;
        Ok(self.collect_set(row.ones_iter()))
    }

    /// Nodes with no strict successor.
    pub fn maximal_elements(&self) -> VarSet {
        self.collect_set((0..self.len()).filter(|&i| self.above[i].count() == 1))
    }

    /// A finite set is compatible exactly when it has an upper bound, since
    /// it is one of its own finite subsets. The empty set is compatible iff
    /// the poset is nonempty.
    pub fn is_compatible<'a, S>(&self, set: S) -> Result<bool>
    where
        S: IntoIterator<Item = &'a VarId>,
    {
        Ok(self.upper_bound_row(set)?.count() > 0)
    }

    /// `{ y : y <= x }`.
    pub fn down_set(&self, x: &VarId) -> Result<VarSet> {
        let j = self.index_of(x)?;
        Ok(self.collect_set((0..self.len()).filter(|&i| self.leq_idx(i, j))))
    }

    /// Inclusion-maximal compatible subsets, sorted.
    ///
    /// Every compatible set sits inside the down-set of one of its upper
    /// bounds, and hence inside `↓m` for a maximal `m` above that bound.
    /// Down-sets of distinct maximal elements are incomparable, so these
    /// are exactly the maximal compatible sets.
    pub fn maximal_compatible_subsets(&self) -> Vec<VarSet> {
        let mut out: Vec<VarSet> = self
            .maximal_elements()
            .iter()
            .map(|m| self.down_set(m).expect("maximal element is a node"))
            .collect();
        out.sort();
        out
    }

    /// Same result as [`Poset::maximal_compatible_subsets`], obtained by
    /// enumerating all `2^n` subsets.
    pub fn maximal_compatible_subsets_bruteforce(&self) -> Result<Vec<VarSet>> {
        let n = self.len();
        if n > BRUTEFORCE_NODE_LIMIT {
            return Err(Error::SizeLimit {
                what: "brute-force subset enumeration (nodes)",
                limit: BRUTEFORCE_NODE_LIMIT as u64,
                actual: n as u64,
            });
        }
        let full: u32 = (1u32 << n) - 1;
        let row_mask = |i: usize| -> u32 {
            (0..n)
                .filter(|&j| self.leq_idx(i, j))
                .fold(0, |m, j| m | 1 << j)
        };
        let rows: Vec<u32> = (0..n).map(row_mask).collect();

        // ub[s] = bitmask of common upper bounds of subset s.
        let mut ub = vec![0u32; 1 << n];
        ub[0] = full;
        for s in 1usize..(1 << n) {
            let low = s.trailing_zeros() as usize;
            ub[s] = ub[s & (s - 1)] & rows[low];
        }
        let compatible = |s: usize| ub[s] != 0;

        let mut out = Vec::new();
        for s in 0usize..(1 << n) {
            if !compatible(s) {
                continue;
            }
            // Compatible sets are closed under subsets, so a compatible set
            // is inclusion-maximal iff no one-element extension is compatible.
            let extendable = (0..n).any(|j| s >> j & 1 == 0 && compatible(s | 1 << j));
            if !extendable {
                out.push(self.collect_set((0..n).filter(|&j| s >> j & 1 == 1)));
            }
        }
        out.sort();
        Ok(out)
    }

    /// The subposet induced on `keep`.
    pub fn induced(&self, keep: &VarSet) -> Result<Poset> {
        let idx = self.indices(keep)?;
        let nodes = idx.iter().map(|&i| self.nodes[i].clone()).collect();
        Ok(Poset::from_order(nodes, |a, b| self.leq_idx(idx[a], idx[b])))
    }

    /// Checks reflexivity, antisymmetry and transitivity with plain loops.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.len();
        let le = |i, j| self.leq_idx(i, j);
        let reflexive = (0..n).all(|i| le(i, i));
        let antisymmetric = (0..n).all(|i| (0..n).all(|j| i == j || !(le(i, j) && le(j, i))));
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| !le(i, j) || (0..n).all(|k| !le(j, k) || le(i, k)))
        });
        AxiomReport {
            reflexive,
            antisymmetric,
            transitive,
        }
    }

    /// Renders the poset in the line-oriented text format, using cover
    /// relations only.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.nodes {
            out.push_str(&format!("node {v}\n"));
        }
        for (a, b) in self.cover_pairs() {
            out.push_str(&format!("rel {a} {b}\n"));
        }
        out
    }
}

/// Parses the poset text format:
///
/// ```text
/// # comment
/// node a
/// node b
/// rel a b      # a < b
/// ```
pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut nodes: Vec<VarId> = Vec::new();
    let mut seen = VarSet::new();
    let mut edges: Vec<(VarId, VarId)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let words = words_with_columns(content);
        let Some(&(col, keyword)) = words.first() else {
            continue;
        };
        let ident = |(c, w): (usize, &str)| {
            VarId::new(w).map_err(|_| Error::syntax(line, c, format!("invalid identifier `{w}`")))
        };
        match keyword {
            "node" => {
                if words.len() != 2 {
                    return Err(Error::syntax(line, col, "expected `node <id>`"));
                }
                let v = ident(words[1])?;
                if !seen.insert(v.clone()) {
                    return Err(Error::DuplicateNode(v));
                }
                nodes.push(v);
            }
            "rel" => {
                if words.len() != 3 {
                    return Err(Error::syntax(line, col, "expected `rel <a> <b>`"));
                }
                edges.push((ident(words[1])?, ident(words[2])?));
            }
            other => {
                return Err(Error::syntax(
                    line,
                    col,
                    format!("unknown statement `{other}`"),
                ))
            }
        }
    }
    Poset::build(nodes, edges)
}

/// Splits on whitespace, keeping the 1-based character column of each word.
pub(crate) fn words_with_columns(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in s.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((c, b)) = start.take() {
                out.push((c + 1, &s[b..byte]));
            }
        } else if start.is_none() {
            start = Some((col, byte));
        }
    }
    if let Some((c, b)) = start {
        out.push((c + 1, &s[b..]));
    }
    out
}
