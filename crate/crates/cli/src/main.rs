use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use babai_core::cache::ChiCache;
use babai_core::constructions::weakly_r_free_coloring;
use babai_core::engine::{closed_form_babai, closed_form_spectrum, DEFAULT_BUDGET};
use babai_core::graph::cayley_graph;
use babai_core::numtheory::weak_freeness_violation;
use babai_core::oracle::ChromaticSolver;
use babai_core::report::{aligned, conjecture_csv, fmt_set};
use babai_core::{
    distance_graph, is_proper, BabaiError, DistanceSet, Engine, EngineOptions, Family, KSpec, MetricSpace, Mode,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const USAGE: u8 = 2;
const TRUNCATED: u8 = 3;

#[derive(Parser)]
#[command(name = "babai", version, about = "Babai numbers and spectra of path and cycle distance graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chromatic number of one distance graph.
    Chi(ChiArgs),
    /// Babai numbers B_k by brute force and/or closed form.
    Babai(BabaiArgs),
    /// Babai spectra by brute force next to the closed form.
    Spectrum(BabaiArgs),
    /// Check closed forms against brute force over ranges of n and k.
    Verify(VerifyArgs),
    /// Evidence for the conjectured spectrum of paths above n/2.
    Conjecture(ConjectureArgs),
    /// Decide weak r-freeness of a subset of Z_n.
    Wrf(WrfArgs),
    /// Export a distance graph in DIMACS edge format.
    Dimacs(GraphArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Formula,
    Both,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Worker threads for enumeration; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Ceiling on C(|R|, k) * n before enumeration is refused.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// JSON-lines file of previously computed chromatic numbers.
    #[arg(long, env = "BABAI_CACHE")]
    cache: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: usize,
    /// Comma-separated distances, e.g. 1,4,7.
    #[arg(long)]
    distances: DistanceSet,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ChiArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    distances: DistanceSet,
    /// Also print an optimal coloring.
    #[arg(long)]
    witness: bool,
    /// Search-node limit for the exact solver.
    #[arg(long)]
    node_limit: Option<u64>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
struct BabaiArgs {
    #[arg(long)]
    family: Family,
    /// A single n or an inclusive range a..b.
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<usize>,
    /// A single k, an inclusive range a..b, or `all`.
    #[arg(long, value_parser = parse_kspec)]
    k: KSpec,
    #[arg(long, value_enum, default_value = "both")]
    method: Method,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    family: Family,
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_kspec, default_value = "all")]
    k: KSpec,
    #[arg(long, value_parser = parse_mode, default_value = "babai")]
    mode: Mode,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ConjectureArgs {
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_range)]
    k: Option<RangeInclusive<usize>>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct WrfArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    set: DistanceSet,
    #[arg(long)]
    r: usize,
    /// Print and check the r-coloring of Cay(Z_n, S).
    #[arg(long)]
    color: bool,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = |_| format!("expected an integer or a..b, got {s:?}");
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (a.trim().parse().map_err(bad)?, b.trim().trim_start_matches('=').parse().map_err(bad)?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok(a..=b)
        }
        None => s.trim().parse().map(|v| v..=v).map_err(bad),
    }
}

fn parse_kspec(s: &str) -> Result<KSpec, String> {
    if s == "all" {
        return Ok(KSpec::All);
    }
    parse_range(s).map(|r| KSpec::Range(*r.start(), *r.end()))
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: BabaiError| e.to_string())
}

struct Failure(u8, String);

impl From<BabaiError> for Failure {
    fn from(e: BabaiError) -> Self {
        let code = match e {
            BabaiError::BudgetExceeded { .. } => TRUNCATED,
            _ => USAGE,
        };
        Failure(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(USAGE, e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn engine(common: &Common) -> Result<(Engine, Option<Arc<ChiCache>>), Failure> {
    let cache = common.cache.as_ref().map(ChiCache::open).transpose()?.map(Arc::new);
    let options = EngineOptions { jobs: common.jobs, budget: common.budget, cache: cache.clone() };
    Ok((Engine::new(options)?, cache))
}

fn flush(cache: Option<Arc<ChiCache>>) -> Result<(), Failure> {
    if let Some(c) = cache {
        c.flush()?;
    }
    Ok(())
}

fn chi(args: ChiArgs) -> Outcome {
    let space = MetricSpace::new(args.family, args.n)?;
    let g = distance_graph(&space, &args.distances)?;
    let solver = args.node_limit.map_or_else(ChromaticSolver::default, ChromaticSolver::with_node_limit);
    let result = solver.solve(&g)?;
    let text = match args.format {
        Format::Json => {
            let mut v = json!({
                "schema": 1,
                "family": space.family().as_str(),
                "n": space.n(),
                "distances": args.distances,
                "chi": result.chi,
            });
            if args.witness {
                v["witness"] = json!(result.witness);
            }
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        Format::Csv => {
            let mut s = format!("family,n,distances,chi\n{},{},\"{}\",{}\n", space.family(), space.n(), args.distances, result.chi);
            if args.witness {
                s.push_str(&format!("# witness {}\n", result.witness));
            }
            s
        }
        Format::Table => {
            let mut s = format!("G({space}, {}): chi = {}\n", args.distances, result.chi);
            if args.witness {
                s.push_str(&format!("witness: {}\n", result.witness));
            }
            s
        }
    };
    print!("{text}");
    Ok(OK)
}

fn ks(k: &KSpec, space: &MetricSpace) -> RangeInclusive<usize> {
    k.values(space)
}

fn babai(args: BabaiArgs, spectrum: bool) -> Outcome {
    let (engine, cache) = engine(&args.common)?;
    let mut rows = Vec::new();
    let mut code = OK;
    for n in args.n.clone() {
        let space = MetricSpace::new(args.family, n)?;
        for k in ks(&args.k, &space) {
            let formula = match args.method {
                Method::Brute => None,
                _ => Some(if spectrum {
                    closed_form_spectrum(&space, k).map(|p| fmt_set(&p.values))
                } else {
                    closed_form_babai(&space, k).map(|v| v.to_string())
                }),
            };
            let formula = match formula {
                Some(Err(BabaiError::NoClosedForm(_))) if args.method == Method::Both => None,
                Some(Err(e)) => return Err(e.into()),
                Some(Ok(v)) => Some(v),
                None => None,
            };
            let brute = match args.method {
                Method::Formula => None,
                _ => Some(if spectrum {
                    let s = engine.spectrum(&space, k)?;
                    let w: Vec<String> = s.entries.iter().map(|(c, d)| format!("{c}:{d}")).collect();
                    (fmt_set(&s.values()), w.join(" "))
                } else {
                    let b = engine.babai(&space, k)?;
                    (b.value.to_string(), b.witness.to_string())
                }),
            };
            let status = match (&formula, &brute) {
                (Some(f), Some((b, _))) if f == b => "pass",
                (Some(_), Some(_)) => {
                    // a strict subset is still a pass for the path lower bound
                    let lower = spectrum
                        && closed_form_spectrum(&space, k).is_ok_and(|p| {
                            p.claim.holds(&p.values, &engine.spectrum(&space, k).expect("computed above").values())
                        });
                    if lower {
                        "pass"
                    } else {
                        code = NEGATIVE;
                        "fail"
                    }
                }
                (None, Some(_)) if args.method == Method::Both => "no-closed-form",
                _ => "",
            };
            rows.push((space.family(), n, k, formula, brute, status));
        }
    }
    flush(cache)?;
    let text = match args.common.format {
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(f, n, k, formula, brute, status)| {
                    json!({
                        "family": f.as_str(), "n": n, "k": k,
                        "formula": formula, "brute": brute.as_ref().map(|b| &b.0),
                        "witness": brute.as_ref().map(|b| &b.1), "status": status,
                    })
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&json!({"schema": 1, "results": items})).expect("json"))
        }
        Format::Csv => {
            let mut s = String::from("family,n,k,formula,brute,witness,status\n");
            for (f, n, k, formula, brute, status) in &rows {
                let q = |v: &str| if v.contains(',') || v.contains('"') { format!("\"{}\"", v.replace('"', "\"\"")) } else { v.to_string() };
                s.push_str(&format!(
                    "{f},{n},{k},{},{},{},{status}\n",
                    q(formula.as_deref().unwrap_or("")),
                    q(brute.as_ref().map_or("", |b| &b.0)),
                    q(brute.as_ref().map_or("", |b| &b.1)),
                ));
            }
            s
        }
        Format::Table => {
            let header = ["family", "n", "k", "formula", "brute", "witness", "status"].map(String::from);
            let body: Vec<[String; 7]> = rows
                .iter()
                .map(|(f, n, k, formula, brute, status)| {
                    [
                        f.to_string(),
                        n.to_string(),
                        k.to_string(),
                        formula.clone().unwrap_or_default(),
                        brute.as_ref().map(|b| b.0.clone()).unwrap_or_default(),
                        brute.as_ref().map(|b| b.1.clone()).unwrap_or_default(),
                        status.to_string(),
                    ]
                })
                .collect();
            aligned(&header, &body)
        }
    };
    emit(&text, &args.common.output)?;
    Ok(code)
}

fn verify(args: VerifyArgs) -> Outcome {
    let (engine, cache) = engine(&args.common)?;
    let report = engine.verify_range(args.family, args.n, args.k, args.mode)?;
    flush(cache)?;
    let text = match args.common.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Table => report.to_text(),
    };
    emit(&text, &args.common.output)?;
    if args.common.output.is_some() {
        let s = &report.summary;
        eprintln!(
            "{} instances: {} pass, {} fail, {} domain-error, {} no-closed-form, {} truncated",
            s.total, s.pass, s.fail, s.domain_error, s.no_closed_form, s.truncated
        );
    }
    Ok(if report.truncated() {
        TRUNCATED
    } else if report.all_pass() {
        OK
    } else {
        NEGATIVE
    })
}

fn conjecture(args: ConjectureArgs) -> Outcome {
    let (engine, cache) = engine(&args.common)?;
    let rows = engine.conjecture_range(args.n, args.k)?;
    flush(cache)?;
    let text = match args.common.format {
        Format::Json => {
            format!("{}\n", serde_json::to_string_pretty(&json!({"schema": 1, "rows": rows})).expect("json"))
        }
        _ => conjecture_csv(&rows),
    };
    emit(&text, &args.common.output)?;
    Ok(OK)
}

fn wrf(args: WrfArgs) -> Outcome {
    let violation = weak_freeness_violation(args.n, args.set.as_slice(), args.r)?;
    match violation {
        Some(coeffs) => {
            println!("false");
            let terms: Vec<String> = coeffs.iter().zip(args.set.iter()).map(|(m, s)| format!("({m})*{s}")).collect();
            let sum: i64 = coeffs.iter().sum();
            println!("violation: {} = 0 mod {}, coefficient sum {sum} != 0 mod {}", terms.join(" + "), args.n, args.r);
            Ok(NEGATIVE)
        }
        None => {
            println!("true");
            if args.color {
                let col = weakly_r_free_coloring(args.n, &args.set, args.r)?;
                let ok = is_proper(&cayley_graph(args.n, &args.set)?, &col)?;
                println!("coloring: {col}");
                println!("proper: {ok}, colors: {}", col.distinct_colors());
                if !ok {
                    return Ok(NEGATIVE);
                }
            }
            Ok(OK)
        }
    }
}

fn dimacs(args: GraphArgs) -> Outcome {
    let space = MetricSpace::new(args.family, args.n)?;
    let g = distance_graph(&space, &args.distances)?;
    let text = format!("c G({space}, {})\n{}", args.distances, g.to_dimacs());
    emit(&text, &args.output)?;
    Ok(OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Chi(a) => chi(a),
        Command::Babai(a) => babai(a, false),
        Command::Spectrum(a) => babai(a, true),
        Command::Verify(a) => verify(a),
        Command::Conjecture(a) => conjecture(a),
        Command::Wrf(a) => wrf(a),
        Command::Dimacs(a) => dimacs(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
