//! Acceptance gate: every criterion runs at its stated size and prints one
//! PASS/FAIL line. Run with `cargo test -p zornring-cli --test acceptance --
//! --nocapture` to see the lines.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use zornring::ideals::is_maximal_compatible;
use zornring::suites::{witness_failure, corpus_config, multiplicativity_config, poset_corpus, random_family};
use zornring::testkit::{all_posets_on, derive_seed, random_polynomial, random_polynomial_where, random_poset, GenConfig};
use zornring::zorn::{chain_poset, choice_poset, decode_chain};
use zornring::{
    big_witness, extract_choice, extract_maximal_via_chains, is_big, maximal_small_ideals,
    parse_poly, parse_poset, var_ideal_member, wzl_pipeline, ChoiceFamily, Poset, VarIdeal,
    VarSet,
};

const SEED: u64 = 20_240_611;

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn report(&mut self, id: u32, name: &str, ok: bool, detail: String) {
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {verdict} {name}: {detail}");
        if !ok {
            self.failures.push(format!("{id} {name}: {detail}"));
        }
    }
}

fn corpus() -> Vec<Poset> {
    poset_corpus(SEED, 1000)
        .unwrap()
        .into_iter()
        .map(|e| e.poset)
        .collect()
}

fn multiplicativity() -> (bool, String) {
    let start = Instant::now();
    let (mut passed, mut failed, mut skipped) = (0u64, 0u64, 0u64);
    let mut first = None;
    let base = multiplicativity_config(SEED);
    for k in 0..10_000 {
        let cfg = base.for_trial(k);
        let p = random_poset(&cfg).unwrap();
        let draw = |s: u64| {
            random_polynomial_where(&cfg.with_seed(derive_seed(cfg.seed, s)), &p, 200, |f| {
                is_big(&p, f).unwrap()
            })
            .unwrap()
        };
        let (Some(f), Some(g)) = (draw(1), draw(2)) else {
            skipped += 1;
            continue;
        };
        if is_big(&p, &(&f * &g)).unwrap() {
            passed += 1;
        } else {
            failed += 1;
            first.get_or_insert(format!("f={f} g={g}"));
        }
    }
    let elapsed = start.elapsed();
    let ok = failed == 0 && skipped == 0 && elapsed < Duration::from_secs(10);
    let mut detail = format!("{passed}/10000 big products, skipped {skipped}, {elapsed:.2?} (< 10s)");
    if let Some(f) = first {
        detail.push_str(&format!(", first failure {f}"));
    }
    (ok, detail)
}

fn oracle(corpus: &[Poset]) -> (bool, String) {
    // the exhaustive part of the corpus includes every labeled 3-node poset
    let three_node = all_posets_on(3).unwrap().len();
    let agree = corpus
        .iter()
        .filter(|p| p.maximal_compatible_subsets() == p.maximal_compatible_subsets_bruteforce().unwrap())
        .count();
    (
        agree == corpus.len() && three_node == 19,
        format!("{agree}/{} posets agree, {three_node} labeled 3-node posets among them", corpus.len()),
    )
}

fn lambda() -> Poset {
    parse_poset("node a\nnode b\nnode c\nrel a b\nrel a c\n").unwrap()
}

fn bijection(corpus: &[Poset]) -> (bool, String) {
    let equal = corpus
        .iter()
        .filter(|p| {
            let ideals = maximal_small_ideals(p).unwrap().len();
            ideals == p.maximal_compatible_subsets().len() && ideals == p.maximal_elements().len()
        })
        .count();
    let lambda_count = maximal_small_ideals(&lambda()).unwrap().len();
    (
        equal == corpus.len() && lambda_count == 2,
        format!("{equal}/{} posets with equal counts, lambda poset gives {lambda_count}", corpus.len()),
    )
}

fn ideals_meet_generators(corpus: &[Poset]) -> (bool, String) {
    let mut checked = 0usize;
    let mut bad = 0usize;
    for p in corpus {
        for ideal in maximal_small_ideals(p).unwrap() {
            checked += 1;
            let meets: VarSet = p
                .nodes()
                .iter()
                .filter(|x| var_ideal_member(p, &ideal, &zornring::Polynomial::var((*x).clone())).unwrap())
                .cloned()
                .collect();
            if meets != ideal.generators || !p.is_compatible(&ideal.generators).unwrap() {
                bad += 1;
            }
        }
    }
    (bad == 0 && checked > 0, format!("{}/{checked} ideals meet X in Y with Y compatible", checked - bad))
}

fn witness(corpus: &[Poset]) -> (bool, String) {
    let (mut probes, mut bad, mut unsampled) = (0u64, 0u64, 0u64);
    let base = corpus_config(SEED);
    for (n, p) in corpus.iter().enumerate() {
        for (k, ideal) in maximal_small_ideals(p).unwrap().into_iter().enumerate() {
            for j in 0..100u64 {
                let cfg = base.for_trial((n as u64) << 32 | (k as u64) << 16 | j);
                let f = random_polynomial_where(&cfg, p, 500, |f| !var_ideal_member(p, &ideal, f).unwrap()).unwrap();
                let Some(f) = f else {
                    unsampled += 1;
                    continue;
                };
                probes += 1;
                if witness_failure(p, &ideal, &f).unwrap().is_some() {
                    bad += 1;
                }
            }
        }
    }
    let anti = parse_poset("node x\nnode y\n").unwrap();
    let f = parse_poly("x - y", &anti).unwrap();
    let w = big_witness(&anti, &VarIdeal::new(["y"].into_iter().map(|s| s.parse().unwrap()).collect()), &f).unwrap();
    let regression = w.to_string() == "x + y" && is_big(&anti, &w).unwrap();
    (
        bad == 0 && unsampled == 0 && regression,
        format!(
            "{}/{probes} witnesses big and in (Y,f), {unsampled} probes unsampled, regression x - y gives {w}",
            probes - bad
        ),
    )
}

fn pipeline(corpus: &[Poset]) -> (bool, String) {
    let good = corpus
        .iter()
        .filter(|p| {
            let t = wzl_pipeline(p).unwrap();
            t.all_passed() && p.maximal_elements().contains(&t.maximal_element)
        })
        .count();
    (good == corpus.len(), format!("{good}/{} posets reach a maximal element", corpus.len()))
}

fn all_families() -> Vec<ChoiceFamily> {
    let mut out = Vec::new();
    for len in 0..=3u32 {
        for code in 0..3u32.pow(len) {
            let sets = (0..len).map(|i| {
                let size = code / 3u32.pow(i) % 3 + 1;
                ((i + 1).to_string(), ["u", "v", "w"][..size as usize].to_vec())
            });
            out.push(ChoiceFamily::new(sets).unwrap());
        }
    }
    out
}

fn choice() -> (bool, String) {
    let families = all_families();
    let good = families
        .iter()
        .filter(|fam| {
            let c = extract_choice(fam).unwrap();
            let valid = c.is_total_for(fam)
                && c.assignments.iter().all(|(i, e)| fam.set(i).is_some_and(|s| s.contains(e)));
            let maxes = choice_poset(fam).unwrap().maximal_elements().len() as u64;
            valid && maxes == fam.indices().map(|i| fam.set(i).unwrap().len() as u64).product::<u64>()
        })
        .count();
    let example = ChoiceFamily::new([("1", vec!["u"]), ("2", vec!["v", "w"])]).unwrap();
    let example_count = choice_poset(&example).unwrap().maximal_elements().len();
    // a few seeded families on top of the exhaustive size patterns
    let seeded = (0..100).all(|k| {
        let fam = random_family(derive_seed(SEED, k));
        extract_choice(&fam).unwrap().is_total_for(&fam)
    });
    (
        good == families.len() && example_count == 2 && seeded,
        format!(
            "{good}/{} size patterns, {{1:{{u}},2:{{v,w}}}} gives {example_count} maximal elements",
            families.len()
        ),
    )
}

fn chains(corpus: &[Poset]) -> (bool, String) {
    let mut posets: Vec<Poset> = corpus.to_vec();
    let big = GenConfig {
        max_nodes: 10,
        ..corpus_config(SEED ^ 0xa5)
    };
    for k in 0..60 {
        let p = random_poset(&big.for_trial(k)).unwrap();
        if p.len() >= 8 {
            posets.push(p);
        }
    }
    let largest = posets.iter().map(Poset::len).max().unwrap();
    let good = posets
        .iter()
        .filter(|p| p.maximal_elements().contains(&extract_maximal_via_chains(p).unwrap()))
        .count();

    let mut unions = 0;
    for k in 0..1000u64 {
        let cfg = GenConfig {
            max_nodes: 6,
            ..corpus_config(derive_seed(SEED, k))
        };
        let p = random_poset(&cfg).unwrap();
        let cp = chain_poset(&p).unwrap();
        let mut rng = derive_seed(cfg.seed, 9);
        let top = &cp.nodes()[(rng % cp.len() as u64) as usize];
        let mut picked = Vec::new();
        for c in cp.down_set(top).unwrap() {
            rng = derive_seed(rng, 1);
            if rng & 1 == 1 {
                picked.push(c);
            }
        }
        assert!(cp.is_compatible(&picked).unwrap());
        let union: VarSet = picked.iter().flat_map(|c| decode_chain(c).unwrap()).collect();
        if p.is_chain(&union).unwrap() {
            unions += 1;
        }
    }
    (
        good == posets.len() && unions == 1000,
        format!(
            "{good}/{} posets (up to {largest} nodes) give a maximal element, {unions}/1000 chain unions are chains",
            posets.len()
        ),
    )
}

fn roundtrip() -> (bool, String) {
    let base = corpus_config(SEED ^ 0x9);
    let mut good = 0;
    for k in 0..1000 {
        let cfg = base.for_trial(k);
        let p = random_poset(&cfg).unwrap();
        let f = random_polynomial(&cfg, &p).unwrap();
        let text = f.to_string();
        let back = parse_poly(&text, &p).unwrap();
        if back == f && back.to_string() == text {
            good += 1;
        }
    }
    (good == 1000, format!("{good}/1000 polynomials round-trip"))
}

fn cli_runs(dir: &Path) -> Vec<Vec<u8>> {
    let write = |name: &str, text: &str| {
        let path = dir.join(name);
        std::fs::write(&path, text).unwrap();
        path.display().to_string()
    };
    let p = write("p.txt", "node a\nnode b\nnode c\nnode d\nrel b a\nrel c a\nrel d c\n");
    let xy = write("xy.txt", "node x\nnode y\n");
    let fam = write("f.txt", "set 1: u\nset 2: v w\n");
    let commands: Vec<Vec<&str>> = vec![
        vec!["poset", "check", &p],
        vec!["poset", "maxcompat", &p, "--oracle"],
        vec!["poly", "classify", &p, "a*b + 3*c^2 - d", "--verbose"],
        vec!["ideal", "maxsmall", &p],
        vec!["ideal", "witness", &xy, "--gens", "y", "x - y"],
        vec!["zorn", "pipeline", &p],
        vec!["--json", "zorn", "pipeline", &p],
        vec!["zorn", "choice", &fam],
        vec!["zorn", "chains", &p],
        vec!["prop-check", "--suite", "multiplicativity", "--trials", "200"],
        vec!["--json", "prop-check", "--suite", "witness", "--trials", "20"],
    ];
    commands
        .iter()
        .map(|args| {
            let out = Command::new(env!("CARGO_BIN_EXE_zornring")).args(args).output().unwrap();
            assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
            let mut bytes = out.stdout;
            bytes.extend(out.stderr);
            bytes
        })
        .collect()
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let mut gate = Gate { failures: Vec::new() };

    let (ok, d) = multiplicativity();
    gate.report(1, "multiplicativity", ok, d);

    let corpus = corpus();
    let (ok, d) = oracle(&corpus);
    gate.report(2, "oracle equivalence", ok, d);
    let (ok, d) = bijection(&corpus);
    gate.report(3, "bijection counts", ok, d);
    let (ok, d) = ideals_meet_generators(&corpus);
    gate.report(4, "maximal small ideals", ok, d);
    let (ok, d) = witness(&corpus);
    gate.report(5, "big witness", ok, d);
    let (ok, d) = pipeline(&corpus);
    gate.report(6, "pipeline", ok, d);
    let (ok, d) = choice();
    gate.report(7, "choice construction", ok, d);
    let (ok, d) = chains(&corpus);
    gate.report(8, "chain construction", ok, d);
    let (ok, d) = roundtrip();
    gate.report(9, "parse/format", ok, d);

    let dir = tempfile::tempdir().unwrap();
    let first = cli_runs(dir.path());
    let second = cli_runs(dir.path());
    let identical = first == second;
    let elapsed = start.elapsed();
    gate.report(
        10,
        "runtime and determinism",
        identical && elapsed < Duration::from_secs(60),
        format!("{} CLI outputs byte-identical: {identical}, total {elapsed:.2?} (< 60s)", first.len()),
    );

    assert!(gate.failures.is_empty(), "failed criteria:\n{}", gate.failures.join("\n"));
}

#[test]
fn maximal_compatible_check_on_lambda() {
    let p = lambda();
    let ideals = maximal_small_ideals(&p).unwrap();
    assert!(ideals.iter().all(|i| is_maximal_compatible(&p, &i.generators).unwrap()));
}
