//! Command-line surface for the involutive tableau workbench.
//!
//! Subcommands read a tableau spec file (JSON, see the `spec` module), run
//! an analysis, and print a report as text or as machine-readable JSON.
//! For a fixed spec file, seed, and flag set the output is byte-identical
//! across runs.  Exit codes: 0 on success, 1 when an analysis fails
//! (for example an unstable span accumulation), 2 on bad input.

mod spec;

use clap::{Parser, Subcommand};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use involutive::charvar::{char_ideal, FlagEntry};
use involutive::config::Caps;
use involutive::elemred::{classify_with_flag, elem_flag, TerminalReason};
use involutive::fixtures::{self, FixtureParams};
use involutive::ideal::groebner;
use involutive::poly::MonomialOrder;
use involutive::spencer::{cartan_test, spencer_h_dims};
use involutive::tableau::Tableau;
use involutive::Error;

#[derive(Parser)]
#[command(
    name = "involutive",
    version,
    about = "Exact-arithmetic workbench for involutive tableaux"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for the deterministic randomized internals (genericity search,
    /// variety slicing).  Overrides the spec file's seed; defaults to 0.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Override the cap on enumerated maximal minors.
    #[arg(long, global = true, value_name = "N")]
    max_minors: Option<usize>,
    /// Override the cap on span-accumulation slicing rounds.
    #[arg(long, global = true, value_name = "N")]
    rounds: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Full classification report, including the elementary reduction flag.
    Analyze { spec: PathBuf },
    /// Three-way involutivity verdict: reduced-form test, Cartan test,
    /// Spencer cohomology.
    Involutive { spec: PathBuf },
    /// Reduced Groebner basis of the characteristic ideal.
    Charideal { spec: PathBuf },
    /// The elementary reduction flag.
    Flag { spec: PathBuf },
    /// List the built-in fixtures or emit one as a spec document.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
}

#[derive(Subcommand)]
enum FixturesAction {
    /// Print the available fixture names.
    List,
    /// Write the named fixture as a spec document to stdout.
    Emit { name: String },
}

/// A classified failure: what to call it, what to say, and how to exit.
struct Failure {
    kind: &'static str,
    message: String,
    code: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            kind: error_kind(&e),
            code: error_exit_code(&e),
            message: e.to_string(),
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DependentGenerators { .. } => "dependent-generators",
        Error::GenericityFailure { .. } => "genericity-failure",
        Error::TriangularityViolated { .. } => "triangularity-violated",
        Error::SupportViolation { .. } => "support-violation",
        Error::InvarianceViolated { .. } => "invariance-violated",
        Error::MinorExplosion { .. } => "minor-explosion",
        Error::Unstable { .. } => "unstable",
        Error::NonmonotoneFlag { .. } => "nonmonotone-flag",
        Error::UnstableFlag { .. } => "unstable-flag",
        Error::NonHomogeneous => "non-homogeneous",
        Error::NotZeroDimensional => "not-zero-dimensional",
        Error::ParameterDomain(_) => "parameter-domain",
        Error::GenerationFailed { .. } => "generation-failed",
        Error::Parse(_) => "parse",
        Error::Schema(_) => "schema",
        Error::Value(_) => "value",
    }
}

/// Input problems exit 2; failures of the analysis itself exit 1.
fn error_exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::Schema(_)
        | Error::Value(_)
        | Error::ParameterDomain(_)
        | Error::DependentGenerators { .. }
        | Error::TriangularityViolated { .. }
        | Error::SupportViolation { .. } => 2,
        _ => 1,
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: &'a str,
}

#[derive(Serialize)]
struct ErrorOut<'a> {
    error: ErrorBody<'a>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if cli.json {
                let out = ErrorOut {
                    error: ErrorBody {
                        kind: f.kind,
                        message: &f.message,
                    },
                };
                println!(
                    "{}",
                    serde_json::to_string(&out).expect("error serialization cannot fail")
                );
            } else {
                eprintln!("error ({}): {}", f.kind, f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Analyze { spec } => {
            let (t, seed, caps) = load(cli, spec)?;
            let (report, _flag) = classify_with_flag(&t, seed, &caps)?;
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{report}");
            }
            Ok(())
        }
        Command::Involutive { spec } => {
            let (t, _seed, _caps) = load(cli, spec)?;
            run_involutive(cli, &t);
            Ok(())
        }
        Command::Charideal { spec } => {
            let (t, _seed, caps) = load(cli, spec)?;
            let gens = char_ideal(&t, &caps)?;
            let basis = groebner(&gens, MonomialOrder::GrevLex);
            let generators: Vec<String> = basis.iter().map(|p| p.to_string()).collect();
            if cli.json {
                #[derive(Serialize)]
                struct IdealOut {
                    nvars: usize,
                    generators: Vec<String>,
                }
                let out = IdealOut {
                    nvars: t.n(),
                    generators,
                };
                println!(
                    "{}",
                    serde_json::to_string(&out).expect("ideal serialization cannot fail")
                );
            } else {
                println!(
                    "characteristic ideal in {} variables (reduced Groebner basis, grevlex)",
                    t.n()
                );
                if generators.is_empty() {
                    println!("  (0)");
                } else {
                    for g in &generators {
                        println!("  {g}");
                    }
                }
            }
            Ok(())
        }
        Command::Flag { spec } => {
            let (t, seed, caps) = load(cli, spec)?;
            let flag = elem_flag(&t, seed, &caps)?;
            let levels = flag.entries();
            if cli.json {
                #[derive(Serialize)]
                struct FlagOut {
                    depth: usize,
                    terminal_reason: TerminalReason,
                    levels: Vec<FlagEntry>,
                }
                let out = FlagOut {
                    depth: flag.depth,
                    terminal_reason: flag.terminal_reason,
                    levels,
                };
                println!(
                    "{}",
                    serde_json::to_string(&out).expect("flag serialization cannot fail")
                );
            } else {
                println!(
                    "reduction flag: depth {}, terminal {}",
                    flag.depth, flag.terminal_reason
                );
                for e in &levels {
                    println!(
                        "  level {}  dim {}  characters [{}]  ell {}  L {}  basis {}",
                        e.level,
                        e.dim,
                        join_counts(&e.characters),
                        e.ell,
                        e.big_l,
                        join_rows(&e.basis),
                    );
                }
            }
            Ok(())
        }
        Command::Fixtures { action } => run_fixtures(cli, action),
    }
}

/// Read, parse, and build the tableau a spec file describes, resolving the
/// effective seed and caps from the file and the command-line overrides.
fn load(cli: &Cli, path: &Path) -> Result<(Tableau, u64, Caps), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        kind: "io",
        message: format!("cannot read {}: {e}", path.display()),
        code: 2,
    })?;
    let parsed = spec::parse_spec(&text)?;
    let mut caps = Caps::default();
    if let Some(overrides) = &parsed.caps {
        overrides.apply(&mut caps);
    }
    if let Some(m) = cli.max_minors {
        caps.max_minors = m;
    }
    if let Some(r) = cli.rounds {
        caps.max_rounds = r;
    }
    let seed = cli.seed.or(parsed.seed).unwrap_or(0);
    let t = parsed.to_tableau(seed, &caps)?;
    Ok((t, seed, caps))
}

/// Cohomology order used for the Spencer oracle: the full admissible range
/// for small tableaux, the leading group only when prolongations get big.
fn spencer_order(n: usize) -> usize {
    if n <= 3 {
        n + 1
    } else {
        2
    }
}

fn run_involutive(cli: &Cli, t: &Tableau) {
    let gnf = t.gnf_report();
    let (cartan_ok, dim_a1, bound) = cartan_test(t);
    let spencer = if t.n() == 0 {
        None
    } else {
        Some(spencer_h_dims(t, spencer_order(t.n())))
    };
    let spencer_ok = spencer.as_ref().is_none_or(|s| s.involutive);
    let verdict = gnf.involutive && cartan_ok && spencer_ok;
    if cli.json {
        #[derive(Serialize)]
        struct CartanOut {
            passed: bool,
            dim_a1: usize,
            bound: usize,
        }
        #[derive(Serialize)]
        struct SpencerOut {
            passed: bool,
            #[serde(skip_serializing_if = "Option::is_none")]
            rho_max: Option<usize>,
            dims_h: Vec<usize>,
        }
        #[derive(Serialize)]
        struct GnfOut {
            passed: bool,
            violations: usize,
        }
        #[derive(Serialize)]
        struct InvolutiveOut {
            involutive: bool,
            gnf: GnfOut,
            cartan: CartanOut,
            spencer: SpencerOut,
        }
        let out = InvolutiveOut {
            involutive: verdict,
            gnf: GnfOut {
                passed: gnf.involutive,
                violations: gnf.violations.len(),
            },
            cartan: CartanOut {
                passed: cartan_ok,
                dim_a1,
                bound,
            },
            spencer: SpencerOut {
                passed: spencer_ok,
                rho_max: spencer.as_ref().map(|_| spencer_order(t.n())),
                dims_h: spencer.as_ref().map_or_else(Vec::new, |s| s.dims_h.clone()),
            },
        };
        println!(
            "{}",
            serde_json::to_string(&out).expect("verdict serialization cannot fail")
        );
    } else {
        let mark = |b: bool| if b { "\u{2713}" } else { "\u{2717}" };
        println!(
            "involutive: {} (gnf+ {} cartan {} spencer {})",
            if verdict { "yes" } else { "no" },
            mark(gnf.involutive),
            mark(cartan_ok),
            mark(spencer_ok),
        );
        println!("  gnf+     {} violations", gnf.violations.len());
        println!("  cartan   dim A^(1) = {dim_a1} of bound {bound}");
        match &spencer {
            Some(s) => println!(
                "  spencer  H dims [{}] for orders 2..={}",
                join_counts(&s.dims_h),
                spencer_order(t.n()),
            ),
            None => println!("  spencer  nothing to check (n = 0)"),
        }
    }
}

const FIXTURE_NAMES: [&str; 4] = ["heat_1d", "heat_2d", "heat_1d_padded", "artificial_355"];

fn fixture_by_name(name: &str) -> Option<involutive::Result<Tableau>> {
    match name {
        "heat_1d" => Some(Ok(fixtures::heat_1d())),
        "heat_2d" => Some(Ok(fixtures::heat_2d())),
        "heat_1d_padded" => Some(Ok(fixtures::heat_1d_padded())),
        "artificial_355" => Some(fixtures::artificial_355(&FixtureParams::default())),
        _ => None,
    }
}

fn run_fixtures(cli: &Cli, action: &FixturesAction) -> Result<(), Failure> {
    match action {
        FixturesAction::List => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string(&FIXTURE_NAMES)
                        .expect("name list serialization cannot fail")
                );
            } else {
                for name in FIXTURE_NAMES {
                    println!("{name}");
                }
            }
            Ok(())
        }
        FixturesAction::Emit { name } => {
            let t = fixture_by_name(name).ok_or_else(|| Failure {
                kind: "value",
                message: format!(
                    "unknown fixture {name:?}; available: {}",
                    FIXTURE_NAMES.join(", ")
                ),
                code: 2,
            })??;
            println!("{}", spec::emit_spec(&t));
            Ok(())
        }
    }
}

fn join_counts(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn join_rows(rows: &[Vec<String>]) -> String {
    if rows.is_empty() {
        "(none)".to_string()
    } else {
        rows.iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect::<Vec<_>>()
            .join(" ")
    }
}
