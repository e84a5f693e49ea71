//! `zornring` command-line interface.
//!
//! Exit codes: 0 ok, 1 usage, 2 syntax, 3 domain error, 4 verification
//! failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use zornring::ideals::is_maximal_compatible;
use zornring::poset::format_set;
use zornring::suites::{run_suite, Suite};
use zornring::{
    big_witness, dominated_by, dominating_witness, extract_choice, extract_maximal_via_chains,
    is_small_var_ideal, maximal_small_ideals, parse_family, parse_poly, parse_poset,
    var_ideal_member, wzl_pipeline, Error, Poset, VarId, VarIdeal, VarSet,
};

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "zornring", version, about = "Posets, small polynomials and maximal small ideals")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Poset queries.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Polynomial queries.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Variable-generated ideals.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Maximal elements through maximal small ideals.
    #[command(subcommand)]
    Zorn(ZornCmd),
    /// Run a seeded property suite.
    PropCheck(PropCheckArgs),
}

#[derive(Subcommand)]
enum PosetCmd {
    /// Verify the order axioms.
    Check { file: PathBuf },
    /// List maximal compatible subsets.
    Maxcompat {
        file: PathBuf,
        /// Cross-check against brute-force subset enumeration.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Classify a polynomial as small or big.
    Classify {
        poset: PathBuf,
        poly: String,
        /// Print the domination table for every node.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Args)]
struct GensArg {
    /// Generators of the ideal, comma separated; empty for the zero ideal.
    #[arg(long, default_value = "")]
    gens: String,
}

#[derive(Subcommand)]
enum IdealCmd {
    /// Is the polynomial in (gens)?
    Member {
        poset: PathBuf,
        #[command(flatten)]
        gens: GensArg,
        poly: String,
    },
    /// Is (gens) a small ideal?
    Small {
        poset: PathBuf,
        #[command(flatten)]
        gens: GensArg,
    },
    /// Generator sets of all maximal small ideals.
    Maxsmall { poset: PathBuf },
    /// A big polynomial in (gens, poly).
    Witness {
        poset: PathBuf,
        #[command(flatten)]
        gens: GensArg,
        poly: String,
    },
}

#[derive(Subcommand)]
enum ZornCmd {
    /// Trace maximal small ideal -> maximal compatible set -> maximal element.
    Pipeline { file: PathBuf },
    /// Extract a choice function from a family file.
    Choice { file: PathBuf },
    /// Find a maximal element through a maximal chain.
    Chains { file: PathBuf },
}

#[derive(Args)]
struct PropCheckArgs {
    #[arg(long, value_parser = parse_suite)]
    suite: Suite,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            e if e.is_syntax() => 2,
            Error::Precondition(_) | Error::Internal(_) => 4,
            _ => 3,
        };
        Failure::new(code, e.to_string())
    }
}

/// Command output: text for humans, a serializable value for `--json`, and
/// an optional verification failure that sets exit code 4 after printing.
struct Output {
    text: String,
    json: serde_json::Value,
    verified: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: impl Serialize) -> Self {
        Output {
            text: text.into(),
            json: serde_json::to_value(json).expect("report serializes"),
            verified: true,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::new(1, format!("cannot read {}: {e}", path.display())))
}

fn load_poset(path: &Path) -> Result<Poset, Failure> {
    Ok(parse_poset(&read(path)?)?)
}

fn load_gens(poset: &Poset, gens: &GensArg) -> Result<VarIdeal, Failure> {
    let mut set = VarSet::new();
    for g in gens.gens.split(',').map(str::trim).filter(|g| !g.is_empty()) {
        let id = VarId::new(g)?;
        if !poset.contains(&id) {
            return Err(Error::UnknownNode(id).into());
        }
        set.insert(id);
    }
    Ok(VarIdeal::new(set))
}

fn set_names(set: &VarSet) -> Vec<&str> {
    set.iter().map(VarId::as_str).collect()
}

fn ideal_text(ideal: &VarIdeal) -> String {
    ideal.to_string()
}

#[derive(Serialize)]
struct CheckReport {
    nodes: usize,
    strict_relations: usize,
    reflexive: bool,
    antisymmetric: bool,
    transitive: bool,
}

#[derive(Serialize)]
struct MaxcompatReport<'a> {
    subsets: Vec<Vec<&'a str>>,
    oracle_agrees: Option<bool>,
}

#[derive(Serialize)]
struct DominationRow<'a> {
    node: &'a str,
    dominated: bool,
}

#[derive(Serialize)]
struct ClassifyReport<'a> {
    small: bool,
    witness: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    domination: Option<Vec<DominationRow<'a>>>,
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Poset(PosetCmd::Check { file }) => {
            let p = load_poset(&file)?;
            let axioms = p.check_axioms();
            let report = CheckReport {
                nodes: p.len(),
                strict_relations: p.strict_pairs().count(),
                reflexive: axioms.reflexive,
                antisymmetric: axioms.antisymmetric,
                transitive: axioms.transitive,
            };
            let flag = |b: bool| if b { "ok" } else { "FAIL" };
            let mut text = String::new();
            if p.is_empty() {
                text.push_str("empty poset\n");
            }
            let _ = write!(
                text,
                "nodes: {}\nstrict relations: {}\nreflexive: {}\nantisymmetric: {}\ntransitive: {}",
                report.nodes,
                report.strict_relations,
                flag(report.reflexive),
                flag(report.antisymmetric),
                flag(report.transitive)
            );
            let mut out = Output::new(text, report);
            out.verified = axioms.all_hold();
            Ok(out)
        }
        Command::Poset(PosetCmd::Maxcompat { file, oracle }) => {
            let p = load_poset(&file)?;
            let subsets = p.maximal_compatible_subsets();
            let agrees = if oracle {
                Some(p.maximal_compatible_subsets_bruteforce()? == subsets)
            } else {
                None
            };
            let mut lines: Vec<String> = subsets.iter().map(format_set).collect();
            match agrees {
                Some(true) => lines.push("oracle: agree".into()),
                Some(false) => lines.push("oracle: MISMATCH".into()),
                None => {}
            }
            let report = MaxcompatReport {
                subsets: subsets.iter().map(set_names).collect(),
                oracle_agrees: agrees,
            };
            let mut out = Output::new(lines.join("\n"), report);
            out.verified = agrees != Some(false);
            Ok(out)
        }
        Command::Poly(PolyCmd::Classify {
            poset,
            poly,
            verbose,
        }) => {
            let p = load_poset(&poset)?;
            let f = parse_poly(&poly, &p)?;
            let witness = dominating_witness(&p, &f)?;
            let mut text = match &witness {
                Some(x) => format!("small witness={x}"),
                None => "big".to_string(),
            };
            let domination = if verbose {
                let mut rows = Vec::new();
                for x in p.nodes() {
                    rows.push(DominationRow {
                        node: x.as_str(),
                        dominated: dominated_by(&p, &f, x)?,
                    });
                }
                for r in &rows {
                    let _ = write!(text, "\n  {}: {}", r.node, if r.dominated { "dominated" } else { "not dominated" });
                }
                Some(rows)
            } else {
                None
            };
            let report = ClassifyReport {
                small: witness.is_some(),
                witness: witness.as_ref().map(VarId::as_str),
                domination,
            };
            Ok(Output::new(text, report))
        }
        Command::Ideal(cmd) => run_ideal(cmd),
        Command::Zorn(cmd) => run_zorn(cmd),
        Command::PropCheck(args) => {
            let report = run_suite(args.suite, args.seed, args.trials)?;
            let mut out = Output::new(report.to_string(), &report);
            out.verified = report.ok();
            Ok(out)
        }
    }
}

fn run_ideal(cmd: IdealCmd) -> Result<Output, Failure> {
    match cmd {
        IdealCmd::Member { poset, gens, poly } => {
            let p = load_poset(&poset)?;
            let ideal = load_gens(&p, &gens)?;
            let f = parse_poly(&poly, &p)?;
            let member = var_ideal_member(&p, &ideal, &f)?;
            Ok(Output::new(member.to_string(), serde_json::json!({ "member": member })))
        }
        IdealCmd::Small { poset, gens } => {
            let p = load_poset(&poset)?;
            let ideal = load_gens(&p, &gens)?;
            let small = is_small_var_ideal(&p, &ideal)?;
            Ok(Output::new(small.to_string(), serde_json::json!({ "small": small })))
        }
        IdealCmd::Maxsmall { poset } => {
            let p = load_poset(&poset)?;
            let ideals = maximal_small_ideals(&p)?;
            let text: Vec<String> = ideals.iter().map(ideal_text).collect();
            let gens: Vec<Vec<&str>> = ideals.iter().map(|i| set_names(&i.generators)).collect();
            Ok(Output::new(text.join("\n"), serde_json::json!({ "ideals": gens })))
        }
        IdealCmd::Witness { poset, gens, poly } => {
            let p = load_poset(&poset)?;
            let ideal = load_gens(&p, &gens)?;
            let f = parse_poly(&poly, &p)?;
            if !is_maximal_compatible(&p, &ideal.generators)? {
                return Err(Failure::new(
                    4,
                    format!("{} is not a maximal compatible subset", format_set(&ideal.generators)),
                ));
            }
            let w = big_witness(&p, &ideal, &f)?;
            Ok(Output::new(w.to_string(), serde_json::json!({ "witness": w })))
        }
    }
}

fn run_zorn(cmd: ZornCmd) -> Result<Output, Failure> {
    match cmd {
        ZornCmd::Pipeline { file } => {
            let p = load_poset(&file)?;
            let trace = wzl_pipeline(&p)?;
            let mut out = Output::new(trace.to_string(), &trace);
            out.verified = trace.all_passed();
            Ok(out)
        }
        ZornCmd::Choice { file } => {
            let family = parse_family(&read(&file)?)?;
            let choice = extract_choice(&family)?;
            Ok(Output::new(choice.to_string(), serde_json::json!({ "choice": choice.assignments })))
        }
        ZornCmd::Chains { file } => {
            let p = load_poset(&file)?;
            let x = extract_maximal_via_chains(&p)?;
            Ok(Output::new(x.to_string(), serde_json::json!({ "maximal_element": x })))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json value"));
            } else if !out.text.is_empty() {
                println!("{}", out.text);
            }
            if out.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: verification failed");
                ExitCode::from(4)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
