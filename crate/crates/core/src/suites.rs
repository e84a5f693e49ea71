//! Seeded property suites shared by the `prop-check` command and the test
//! targets.
//!
//! A suite runs a fixed number of trials; each trial derives its own seed
//! from the suite seed, so a failing trial can be replayed alone. The first
//! failure is shrunk (dropping polynomial terms or poset nodes while the
//! property still fails) before it is reported.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ideals::{big_witness, maximal_small_ideals, var_ideal_member, VarIdeal};
use crate::polyring::{parse_poly, Polynomial};
use crate::poset::{format_set, Poset, VarId, VarSet};
use crate::smallness::{dominated_by, is_big};
use crate::testkit::{
    all_posets_up_to, derive_seed, random_polynomial, random_polynomial_where, random_poset,
    GenConfig,
};
use crate::zorn::{
    chain_poset, choice_poset, decode_chain, wzl_pipeline, ChoiceFamily, PartialChoice,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// Products of big polynomials are big.
    Multiplicativity,
    /// Maximal small ideals, maximal compatible subsets and maximal
    /// elements correspond one to one.
    Bijection,
    /// The pipeline ends at a maximal element with every check passing.
    Pipeline,
    /// Unions of compatible sets of partial choices / chains.
    Union,
    /// Structural maximal compatible subsets agree with brute force.
    Oracle,
    /// Big witnesses for enlargements of maximal small ideals.
    Witness,
    /// Dominated polynomials form an ideal; adding a non-dominated one
    /// escapes it.
    Domination,
    /// Printing and parsing are mutually inverse.
    Roundtrip,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Multiplicativity,
        Suite::Bijection,
        Suite::Pipeline,
        Suite::Union,
        Suite::Oracle,
        Suite::Witness,
        Suite::Domination,
        Suite::Roundtrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Multiplicativity => "multiplicativity",
            Suite::Bijection => "bijection",
            Suite::Pipeline => "pipeline",
            Suite::Union => "union",
            Suite::Oracle => "oracle",
            Suite::Witness => "witness",
            Suite::Domination => "domination",
            Suite::Roundtrip => "roundtrip",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Index of the failing case within the suite run.
    pub case: u64,
    /// Seed that regenerates the failing case.
    pub seed: u64,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub cases: u64,
    pub passed: u64,
    pub failed: u64,
    /// Cases where no input meeting the suite's precondition was found.
    pub skipped: u64,
    pub counterexample: Option<Counterexample>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "suite {}: seed={} cases={} passed={} failed={} skipped={} => {}",
            self.suite,
            self.seed,
            self.cases,
            self.passed,
            self.failed,
            self.skipped,
            if self.ok() { "pass" } else { "FAIL" }
        )?;
        if let Some(c) = &self.counterexample {
            write!(
                f,
                "\ncounterexample (case {}, seed {}):\n{}",
                c.case, c.seed, c.description
            )?;
        }
        Ok(())
    }
}

enum Outcome {
    Pass,
    Skip,
    Fail(String),
}

impl From<Result<Outcome>> for Outcome {
    fn from(r: Result<Outcome>) -> Outcome {
        r.unwrap_or_else(|e| Outcome::Fail(format!("error: {e}")))
    }
}

struct Tally {
    report: SuiteReport,
}

impl Tally {
    fn new(suite: Suite, seed: u64) -> Self {
        Tally {
            report: SuiteReport {
                suite,
                seed,
                cases: 0,
                passed: 0,
                failed: 0,
                skipped: 0,
                counterexample: None,
            },
        }
    }

    fn record(&mut self, case_seed: u64, outcome: impl Into<Outcome>) {
        let r = &mut self.report;
        let case = r.cases;
        r.cases += 1;
        match outcome.into() {
            Outcome::Pass => r.passed += 1,
            Outcome::Skip => r.skipped += 1,
            Outcome::Fail(description) => {
                r.failed += 1;
                if r.counterexample.is_none() {
                    r.counterexample = Some(Counterexample {
                        case,
                        seed: case_seed,
                        description,
                    });
                }
            }
        }
    }
}

/// Generator settings for the multiplicativity suite: posets of at most 8
/// nodes, polynomials of at most 6 terms, degree 4, coefficients up to 9.
pub fn multiplicativity_config(seed: u64) -> GenConfig {
    GenConfig {
        seed,
        max_nodes: 8,
        edge_probability: 0.3,
        max_terms: 6,
        max_degree: 4,
        coeff_bound: 9,
    }
}

/// Settings for the random part of the poset corpus (at most 7 nodes).
pub fn corpus_config(seed: u64) -> GenConfig {
    GenConfig {
        seed,
        max_nodes: 7,
        edge_probability: 0.35,
        max_terms: 5,
        max_degree: 3,
        coeff_bound: 9,
    }
}

/// One corpus entry together with the seed that produced it (`None` for the
/// exhaustive part).
pub struct CorpusEntry {
    pub seed: Option<u64>,
    pub poset: Poset,
}

/// Every labeled poset on 1..=4 nodes followed by `random` seeded posets
/// with at most 7 nodes.
pub fn poset_corpus(seed: u64, random: u64) -> Result<Vec<CorpusEntry>> {
    let mut out: Vec<CorpusEntry> = all_posets_up_to(4)?
        .into_iter()
        .map(|poset| CorpusEntry { seed: None, poset })
        .collect();
    let base = corpus_config(seed);
    for k in 0..random {
        let cfg = base.for_trial(k);
        out.push(CorpusEntry {
            seed: Some(cfg.seed),
            poset: random_poset(&cfg)?,
        });
    }
    Ok(out)
}

/// Runs `suite` with `trials` seeded trials. For the corpus-based suites
/// (bijection, pipeline, oracle, witness) `trials` is the number of random
/// posets added to the exhaustive 4-node corpus.
pub fn run_suite(suite: Suite, seed: u64, trials: u64) -> Result<SuiteReport> {
    let mut tally = Tally::new(suite, seed);
    match suite {
        Suite::Multiplicativity => {
            tally.record(seed, check_one_is_big());
            let base = multiplicativity_config(seed);
            for k in 0..trials {
                let cfg = base.for_trial(k);
                tally.record(cfg.seed, multiplicativity_trial(&cfg));
            }
        }
        Suite::Bijection | Suite::Pipeline | Suite::Oracle => {
            for entry in poset_corpus(seed, trials)? {
                let outcome = corpus_check(suite, &entry.poset);
                tally.record(entry.seed.unwrap_or(0), outcome);
            }
        }
        Suite::Witness => {
            for entry in poset_corpus(seed, trials)? {
                let case_seed = entry.seed.unwrap_or(seed);
                tally.record(case_seed, witness_trial(&entry.poset, case_seed, 20));
            }
        }
        Suite::Union => {
            for k in 0..trials {
                let s = derive_seed(seed, k);
                tally.record(s, chain_union_trial(s));
                tally.record(s, choice_union_trial(s));
            }
        }
        Suite::Domination => {
            let base = corpus_config(seed);
            for k in 0..trials {
                let cfg = base.for_trial(k);
                tally.record(cfg.seed, domination_trial(&cfg));
            }
        }
        Suite::Roundtrip => {
            let base = corpus_config(seed);
            for k in 0..trials {
                let cfg = base.for_trial(k);
                tally.record(cfg.seed, roundtrip_trial(&cfg));
            }
        }
    }
    Ok(tally.report)
}

fn check_one_is_big() -> Outcome {
    match is_big(&Poset::empty(), &Polynomial::one()) {
        Ok(true) => {}
        _ => return Outcome::Fail("1 is not big".into()),
    }
    let p = all_posets_up_to(2).expect("small corpus");
    if p.iter().all(|q| is_big(q, &Polynomial::one()) == Ok(true)) {
        Outcome::Pass
    } else {
        Outcome::Fail("1 is not big on some poset".into())
    }
}

/// Greedily removes terms from the polynomials while `fails` keeps holding.
pub fn shrink_polys(
    mut polys: Vec<Polynomial>,
    fails: impl Fn(&[Polynomial]) -> bool,
) -> Vec<Polynomial> {
    loop {
        let mut progressed = false;
        'outer: for i in 0..polys.len() {
            let monomials: Vec<_> = polys[i].monomials().cloned().collect();
            for m in monomials {
                let mut candidate = polys.clone();
                candidate[i] = polys[i].filter_terms(|t| t != &m);
                if fails(&candidate) {
                    polys = candidate;
                    progressed = true;
                    break 'outer;
                }
            }
        }
        if !progressed {
            return polys;
        }
    }
}

/// Greedily removes nodes (passing to induced subposets) while `fails`
/// keeps holding.
pub fn shrink_poset(mut poset: Poset, fails: impl Fn(&Poset) -> bool) -> Poset {
    loop {
        let smaller = poset.nodes().iter().find_map(|v| {
            let mut keep = poset.node_set();
            keep.remove(v);
            let candidate = poset.induced(&keep).ok()?;
            fails(&candidate).then_some(candidate)
        });
        match smaller {
            Some(p) => poset = p,
            None => return poset,
        }
    }
}

fn product_stays_big(poset: &Poset, fg: &[Polynomial]) -> Result<bool> {
    let (f, g) = (&fg[0], &fg[1]);
    if !(is_big(poset, f)? && is_big(poset, g)?) {
        return Ok(true);
    }
    is_big(poset, &(f * g))
}

fn multiplicativity_trial(cfg: &GenConfig) -> Result<Outcome> {
    let poset = random_poset(cfg)?;
    let draw = |stream: u64| {
        random_polynomial_where(&cfg.with_seed(derive_seed(cfg.seed, stream)), &poset, 200, |f| {
            is_big(&poset, f).unwrap_or(false)
        })
    };
    let (Some(f), Some(g)) = (draw(1)?, draw(2)?) else {
        return Ok(Outcome::Skip);
    };
    if product_stays_big(&poset, &[f.clone(), g.clone()])? {
        return Ok(Outcome::Pass);
    }
    let small = shrink_polys(vec![f, g], |fg| !product_stays_big(&poset, fg).unwrap_or(true));
    Ok(Outcome::Fail(format!(
        "poset:\n{}f = {}\ng = {}\nf*g = {} is small",
        poset.to_text(),
        small[0],
        small[1],
        &small[0] * &small[1]
    )))
}

fn corpus_property(suite: Suite, poset: &Poset) -> Result<Option<String>> {
    match suite {
        Suite::Oracle => {
            let fast = poset.maximal_compatible_subsets();
            let slow = poset.maximal_compatible_subsets_bruteforce()?;
            if fast != slow {
                let show = |v: &[VarSet]| v.iter().map(format_set).collect::<Vec<_>>().join(" ");
                return Ok(Some(format!("structural [{}] vs brute force [{}]", show(&fast), show(&slow))));
            }
        }
        Suite::Bijection => {
            let sets = poset.maximal_compatible_subsets();
            let ideals = maximal_small_ideals(poset)?;
            let maxes = poset.maximal_elements();
            let images: Vec<VarIdeal> = sets.iter().cloned().map(VarIdeal::new).collect();
            if ideals.len() != sets.len() || sets.len() != maxes.len() || images != ideals {
                return Ok(Some(format!(
                    "{} ideals, {} maximal compatible subsets, {} maximal elements",
                    ideals.len(),
                    sets.len(),
                    maxes.len()
                )));
            }
            for ideal in &ideals {
                for x in poset.nodes() {
                    let member = var_ideal_member(poset, ideal, &Polynomial::var(x.clone()))?;
                    if member != ideal.generators.contains(x) {
                        return Ok(Some(format!("{ideal} ∩ X differs from its generators at {x}")));
                    }
                }
                if !poset.is_compatible(&ideal.generators)? {
                    return Ok(Some(format!("{ideal} has incompatible generators")));
                }
            }
        }
        Suite::Pipeline => {
            let trace = wzl_pipeline(poset)?;
            if !poset.maximal_elements().contains(&trace.maximal_element) || !trace.all_passed() {
                return Ok(Some(format!("trace:\n{trace}")));
            }
        }
        _ => unreachable!("not a corpus suite"),
    }
    Ok(None)
}

fn corpus_check(suite: Suite, poset: &Poset) -> Outcome {
    let fails = |p: &Poset| !matches!(corpus_property(suite, p), Ok(None));
    match corpus_property(suite, poset) {
        Ok(None) => Outcome::Pass,
        Ok(Some(_)) | Err(_) => {
            let small = shrink_poset(poset.clone(), fails);
            let detail = match corpus_property(suite, &small) {
                Ok(Some(d)) => d,
                Err(e) => format!("error: {e}"),
                Ok(None) => unreachable!("shrinking keeps the failure"),
            };
            Outcome::Fail(format!("poset:\n{}{detail}", small.to_text()))
        }
    }
}

/// For every maximal compatible `Y` of `poset`, draws `probes` polynomials
/// outside `(Y)` and checks that each big witness is big and differs from
/// the probe by an element of `(Y)`.
fn witness_trial(poset: &Poset, seed: u64, probes: u64) -> Result<Outcome> {
    let base = corpus_config(seed);
    for (k, ideal) in maximal_small_ideals(poset)?.into_iter().enumerate() {
        for j in 0..probes {
            let cfg = base.for_trial(k as u64 * 1_000_003 + j);
            let Some(f) = random_polynomial_where(&cfg, poset, 200, |f| {
                !var_ideal_member(poset, &ideal, f).unwrap_or(true)
            })?
            else {
                return Ok(Outcome::Skip);
            };
            if let Some(msg) = witness_failure(poset, &ideal, &f)? {
                return Ok(Outcome::Fail(format!("poset:\n{}{msg}", poset.to_text())));
            }
        }
    }
    Ok(Outcome::Pass)
}

/// `None` when the witness for `f` over `ideal` is sound.
pub fn witness_failure(poset: &Poset, ideal: &VarIdeal, f: &Polynomial) -> Result<Option<String>> {
    let w = big_witness(poset, ideal, f)?;
    if !is_big(poset, &w)? {
        return Ok(Some(format!("witness {w} for {f} over {ideal} is small")));
    }
    let diff = &w - f;
    if !var_ideal_member(poset, ideal, &diff)? {
        return Ok(Some(format!("witness {w} - {f} is not in {ideal}")));
    }
    Ok(None)
}

fn random_subset<T: Clone>(rng: &mut impl Rng, items: impl IntoIterator<Item = T>) -> Vec<T> {
    items.into_iter().filter(|_| rng.gen_bool(0.5)).collect()
}

fn chain_union_trial(seed: u64) -> Result<Outcome> {
    let cfg = GenConfig {
        max_nodes: 6,
        ..corpus_config(seed)
    };
    let poset = random_poset(&cfg)?;
    let chains = chain_poset(&poset)?;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 7));
    // every compatible set of chains lies below one of its upper bounds
    let top = &chains.nodes()[rng.gen_range(0..chains.len())];
    let picked = random_subset(&mut rng, chains.down_set(top)?);
    if !chains.is_compatible(&picked)? {
        return Ok(Outcome::Fail(format!("picked set below {top} is not compatible")));
    }
    let mut union = VarSet::new();
    for label in &picked {
        union.extend(decode_chain(label)?);
    }
    if poset.is_chain(&union)? {
        Ok(Outcome::Pass)
    } else {
        Ok(Outcome::Fail(format!(
            "poset:\n{}union {} of compatible chains is not a chain",
            poset.to_text(),
            format_set(&union)
        )))
    }
}

/// A seeded family with at most 3 indices and at most 3 elements per set.
pub fn random_family(seed: u64) -> ChoiceFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 11));
    let indices = rng.gen_range(0..=3);
    ChoiceFamily::new((0..indices).map(|i| {
        let size = rng.gen_range(1..=3);
        (format!("{}", i + 1), (0..size).map(|e| format!("e{i}{e}")).collect::<Vec<_>>())
    }))
    .expect("generated family is valid")
}

fn choice_union_trial(seed: u64) -> Result<Outcome> {
    let family = random_family(seed);
    let poset = choice_poset(&family)?;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 13));
    let top = &poset.nodes()[rng.gen_range(0..poset.len())];
    let picked = random_subset(&mut rng, poset.down_set(top)?);
    let decoded: Vec<PartialChoice> = picked
        .iter()
        .map(|l| PartialChoice::decode(l.as_str()))
        .collect::<Result<_>>()?;
    let Some(union) = PartialChoice::union(&decoded) else {
        return Ok(Outcome::Fail(format!("compatible partial choices below {top} disagree")));
    };
    let bounds_all = decoded.iter().all(|c| c.extended_by(&union));
    if union.is_valid_for(&family) && bounds_all && poset.contains(&VarId::from_label(union.encode())) {
        Ok(Outcome::Pass)
    } else {
        Ok(Outcome::Fail(format!("union {} is not an upper bound", union.encode())))
    }
}

fn domination_trial(cfg: &GenConfig) -> Result<Outcome> {
    let poset = random_poset(cfg)?;
    let x = &poset.nodes()[(cfg.seed % poset.len() as u64) as usize];
    let dominated = |p: &Polynomial| dominated_by(&poset, p, x).unwrap_or(false);
    let pick = |stream: u64, want: bool| {
        random_polynomial_where(&cfg.with_seed(derive_seed(cfg.seed, stream)), &poset, 200, |p| {
            dominated(p) == want
        })
    };
    let (Some(f), Some(g), Some(h)) = (pick(1, true)?, pick(2, true)?, pick(3, false)?) else {
        return Ok(Outcome::Skip);
    };
    let p = random_polynomial(&cfg.with_seed(derive_seed(cfg.seed, 4)), &poset)?;
    let q = random_polynomial(&cfg.with_seed(derive_seed(cfg.seed, 5)), &poset)?;
    let combo = &(&p * &f) + &(&q * &g);
    if !dominated(&combo) {
        return Ok(Outcome::Fail(format!("p*f + q*g = {combo} escapes domination by {x}")));
    }
    if dominated(&(&f + &h)) {
        return Ok(Outcome::Fail(format!("f + h = {} dominated by {x} though h = {h} is not", &f + &h)));
    }
    Ok(Outcome::Pass)
}

fn roundtrip_trial(cfg: &GenConfig) -> Result<Outcome> {
    let poset = random_poset(cfg)?;
    let f = random_polynomial(cfg, &poset)?;
    let text = f.to_string();
    let back = parse_poly(&text, &poset)?;
    if back != f {
        return Ok(Outcome::Fail(format!("parse(format({f:?})) = {back:?}")));
    }
    if back.to_string() != text {
        return Ok(Outcome::Fail(format!("format(parse({text:?})) = {back}")));
    }
    Ok(Outcome::Pass)
}
