use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use bipdiv::arith::{factorize, DegreeSet};
use bipdiv::chardeg::character_degrees;
use bipdiv::divisor_graphs::{build_graph, DivisorGraphs, Flavor};
use bipdiv::families::{builtin_corpus, direct_product_degrees, load_corpus, psl2_degrees};
use bipdiv::permgroup::{PermGroup, DEFAULT_CAP};
use bipdiv::verify::{verify_all, VerifyOptions, DEFAULT_RANDOM_SETS, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "bipdiv", version, about = "Divisor graphs of character degree sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a positive integer below 2^63.
    Factor { n: u64 },
    /// Build one graph of a degree set and print it.
    Graph {
        /// Comma-separated degrees; 1 may be included.
        #[arg(long)]
        degrees: DegreeSet,
        #[arg(long, default_value = "B")]
        which: Flavor,
        #[arg(long, value_enum, default_value_t = Emit::Dot)]
        emit: Emit,
    },
    /// Classify the shapes of B, Δ and Γ as JSON.
    Classify {
        #[arg(long)]
        degrees: DegreeSet,
    },
    /// Character degrees of a permutation group by Dixon's method.
    Degrees {
        /// Number of points.
        #[arg(long)]
        deg: usize,
        /// Generators in cycle notation, e.g. "(1 2 3)(4 5)".
        #[arg(long, num_args = 1.., required = true)]
        gens: Vec<String>,
        /// Bound on the number of enumerated elements.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Degree sets of group families.
    Family {
        #[command(subcommand)]
        family: Family,
    },
    /// Run the verification suite; exits with 3 if any check fails.
    Verify {
        /// Corpus JSON file; the builtin corpus when absent.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Number of random degree sets.
        #[arg(long, default_value_t = DEFAULT_RANDOM_SETS)]
        random: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

#[derive(Subcommand)]
enum Family {
    /// cd(PSL(2,q)) for a prime power q >= 4.
    Psl2 {
        #[arg(long)]
        q: u64,
    },
    /// Degree set of a direct product.
    Product {
        #[arg(long)]
        x: DegreeSet,
        #[arg(long)]
        y: DegreeSet,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Dot,
    Json,
}

enum Failure {
    Domain(String),
    /// Carries the report, which is still printed.
    Verification(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn shape_json(degrees: &DegreeSet) -> serde_json::Value {
    let graphs = DivisorGraphs::new(degrees);
    let mut out = serde_json::Map::new();
    out.insert("degrees".into(), json!(degrees.degrees()));
    for flavor in Flavor::ALL {
        let g = graphs.get(flavor);
        let verdict = g.classify_shape();
        let components: Vec<String> = verdict.component_shapes.iter().map(ToString::to_string).collect();
        out.insert(
            flavor.name().into(),
            json!({
                "shape": verdict.shape.to_string(),
                "component_shapes": components,
                "components": g.component_count(),
                "diameter": g.diameter().ok(),
                "complete": g.is_complete(),
            }),
        );
    }
    serde_json::Value::Object(out)
}

/// Runs one command and returns the payload for standard output.
fn run(cli: Cli) -> Result<String, Failure> {
    let payload = match cli.command {
        Command::Factor { n } => format!("{n} = {}\n", factorize(n)?),
        Command::Graph { degrees, which, emit } => {
            let graph = build_graph(&degrees, which);
            match emit {
                Emit::Dot => graph.to_dot(),
                Emit::Json => format!("{}\n", serde_json::to_string(&graph.to_json())?),
            }
        }
        Command::Classify { degrees } => {
            format!("{}\n", serde_json::to_string_pretty(&shape_json(&degrees))?)
        }
        Command::Degrees { deg, gens, cap } => {
            let group = PermGroup::from_cycles(deg, &gens, cap)?;
            let degrees = character_degrees(&group)?;
            let cd = DegreeSet::new(degrees.iter().copied())?;
            let out = json!({ "order": group.order(), "degrees": degrees, "cd": cd.degrees() });
            format!("{}\n", serde_json::to_string(&out)?)
        }
        Command::Family { family } => {
            let cd = match family {
                Family::Psl2 { q } => psl2_degrees(q)?,
                Family::Product { x, y } => direct_product_degrees(&x, &y)?,
            };
            format!("{}\n", serde_json::to_string(&cd)?)
        }
        Command::Verify { corpus, seed, random, cap } => {
            let records = match corpus {
                Some(path) => load_corpus(&path)?,
                None => builtin_corpus(),
            };
            let report = verify_all(&records, VerifyOptions { seed, random_sets: random, cap });
            let s = report.summary;
            eprintln!("{} pass, {} fail, {} inapplicable", s.pass, s.fail, s.inapplicable);
            for f in report.failures() {
                eprintln!("FAIL {} [{}]: {}", f.check_id, f.subject, f.detail);
            }
            let text = format!("{}\n", report.to_json());
            if !report.is_clean() {
                return Err(Failure::Verification(text));
            }
            text
        }
    };
    Ok(payload)
}

// A closed pipe on stdout (e.g. `| head`) is not an error worth reporting.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(payload) => {
            emit(&payload);
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(report)) => {
            emit(&report);
            ExitCode::from(3)
        }
    }
}
