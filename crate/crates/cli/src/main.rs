/// `println!` that ignores a closed stdout (e.g. `| head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

mod input;
mod selftest;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use lts_uce::algebra::{check_binary, check_ternary, derived_lts, Algebra, AlgebraError};
use lts_uce::fields::FieldSpec;
use lts_uce::format::FormatError;
use lts_uce::theorem::{verify_main_theorem_with, TheoremError};
use lts_uce::uce::{build_uce, homology, Category, UceError, UceOptions, UceReport};

#[derive(Parser)]
#[command(name = "ltsuce", version, about = "Universal central extensions of Lie algebras and Lie triple systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Algebra file (JSON) or `catalog:NAME`.
    input: String,
    /// Field for catalog inputs: `Q` or `GF(p)`.
    #[arg(long)]
    field: Option<FieldSpec>,
    /// Print machine-readable JSON.
    #[arg(long)]
    json: bool,
    /// Report timings on stderr.
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct Build {
    #[arg(long, default_value = "lts")]
    category: Category,
    /// Lift the dimension guard.
    #[arg(long)]
    force: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the axioms of an algebra.
    Check(Common),
    /// Build a universal central extension.
    Uce {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        build: Build,
    },
    /// Print H1 and H2 of an algebra in a category.
    Homology {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        build: Build,
    },
    /// Compare the three universal central extensions of a perfect Lie algebra.
    Theorem {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        force: bool,
    },
    #[command(hide = true)]
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A failed run: message and process exit code.
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Syntax { .. } => Failure::new(2, e.to_string()),
            FormatError::Semantic(_) => Failure::new(3, e.to_string()),
        }
    }
}

impl From<UceError> for Failure {
    fn from(e: UceError) -> Self {
        let code = match e {
            UceError::NotPerfect => 4,
            UceError::NotLie | UceError::NotLeibniz | UceError::NotLts | UceError::CategoryMismatch(_) => 5,
            UceError::DimensionGuard { .. } => 3,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<TheoremError> for Failure {
    fn from(e: TheoremError) -> Self {
        match e {
            TheoremError::Uce(u) => u.into(),
            TheoremError::NotPerfect => Failure::new(4, e.to_string()),
            TheoremError::NotLie => Failure::new(5, e.to_string()),
            other => Failure::new(1, other.to_string()),
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        let code = match e {
            AlgebraError::UnknownAlgebra(_) | AlgebraError::DimensionMismatch { .. } | AlgebraError::Invalid(_) => 3,
            _ => 5,
        };
        Failure::new(code, e.to_string())
    }
}

fn print_json<T: Serialize>(value: &T) {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    out!("{text}");
}

#[derive(Serialize)]
struct CheckOutput {
    name: String,
    field: String,
    dim: usize,
    kind: &'static str,
    #[serde(flatten)]
    report: serde_json::Value,
}

fn run_check(common: &Common) -> Result<(), Failure> {
    let a = input::load(&common.input, common.field)?;
    let (kind, report) = match &a {
        Algebra::Binary(b) => ("binary", serde_json::to_value(check_binary(b))),
        Algebra::Ternary(t) => ("ternary", serde_json::to_value(check_ternary(t))),
    };
    let report = report.expect("reports serialize");
    if common.json {
        print_json(&CheckOutput {
            name: a.name().to_string(),
            field: a.field().to_string(),
            dim: a.dim(),
            kind,
            report,
        });
    } else {
        let yes = |b: bool| if b { "yes" } else { "no" };
        match &a {
            Algebra::Binary(b) => {
                let r = check_binary(b);
                out!(
                    "lie: {}, leibniz: {}, perfect: {}, dim {}",
                    yes(r.is_lie),
                    yes(r.is_leibniz),
                    yes(r.is_perfect),
                    a.dim()
                );
            }
            Algebra::Ternary(t) => {
                let r = check_ternary(t);
                out!("lts: {}, perfect: {}, dim {}", yes(r.is_lts), yes(r.is_perfect), a.dim());
            }
        }
        out!("{a}");
        if let serde_json::Value::Object(map) = report {
            for (k, v) in map {
                out!("  {k}: {v}");
            }
        }
    }
    Ok(())
}

/// The algebra to feed a construction in `category`: Lie inputs become
/// their derived triple systems for the LTS category.
fn base_for(a: Algebra, category: Category) -> Result<Algebra, Failure> {
    match (category, a) {
        (Category::Lts, Algebra::Binary(g)) => Ok(Algebra::Ternary(derived_lts(&g)?)),
        (Category::Lts, t) => Ok(t),
        (_, Algebra::Ternary(_)) => Err(Failure::new(5, format!("the {category} category needs a binary algebra"))),
        (_, b) => Ok(b),
    }
}

fn memory_estimate(base: &Algebra, category: Category) -> String {
    let n = base.dim() as f64;
    let ambient = if category.is_ternary() { n.powi(3) } else { n * n };
    let bytes_per_entry = match base.field() {
        FieldSpec::Rationals => 64.0,
        FieldSpec::Prime(2) => 0.125,
        FieldSpec::Prime(_) => 16.0,
    };
    format!(
        "ambient dimension {ambient}, worst-case relation matrix {:.1} MiB",
        ambient * ambient * bytes_per_entry / (1024.0 * 1024.0)
    )
}

fn run_uce(common: &Common, build: &Build, homology_only: bool) -> Result<(), Failure> {
    let start = Instant::now();
    let base = base_for(input::load(&common.input, common.field)?, build.category)?;
    if build.force {
        eprintln!("{}", memory_estimate(&base, build.category));
    }
    let u = build_uce(&base, build.category, &UceOptions { force: build.force })?;
    if common.verbose {
        eprintln!("built in {:.3?}", start.elapsed());
    }
    let report = UceReport::from(&u);
    if homology_only {
        let h = homology(&u);
        if common.json {
            print_json(&serde_json::json!({
                "category": report.category,
                "base": report.base,
                "field": report.field,
                "h1_dim": h.h1_dim,
                "h2_dim": h.h2_dim,
                "h2_basis": h.h2_basis.iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }));
        } else {
            out!("H1 {}, H2 {}", h.h1_dim, h.h2_dim);
        }
    } else if common.json {
        print_json(&report);
    } else {
        out!(
            "{} extension of {} over {}: carrier {}, H2 {}, relations {}",
            report.category, report.base, report.field, report.carrier_dim, report.h2_dim, report.relation_dim
        );
    }
    Ok(())
}

fn run_theorem(common: &Common, force: bool) -> Result<(), Failure> {
    let start = Instant::now();
    let g = match input::load(&common.input, common.field)? {
        Algebra::Binary(g) => g,
        Algebra::Ternary(_) => return Err(Failure::new(5, "the theorem pipeline needs a Lie algebra")),
    };
    let report = verify_main_theorem_with(&g, &UceOptions { force })?;
    if common.verbose {
        eprintln!("pipeline finished in {:.3?}", start.elapsed());
    }
    let summary = report.summary();
    if common.json {
        print_json(&summary);
    } else {
        let d = summary.dims;
        out!("{} over {} (characteristic {})", g.name(), summary.field, summary.characteristic);
        out!(
            "dims: U_Lie {}, U_Leib {}, U_LTS {}, J {}, I {}",
            d.u_lie, d.u_leibniz, d.u_lts, d.j, d.i
        );
        for fact in &summary.facts {
            out!("  [{}] {}", if fact.holds { "ok" } else { "FAIL" }, fact.name);
        }
        let ok = |b: bool| if b { "OK" } else { "FAILED" };
        let lemma4 = report.lemma4.holds();
        if summary.characteristic == 2 {
            out!(
                "branch: char 2, U_LTS ≅ U_Leib: {}, J=0: {}",
                ok(summary.char_branch_verdict),
                ok(lemma4 && d.j == 0)
            );
        } else {
            out!(
                "branch: char≠2, U_LTS ≅ U_Lie: {}, Lemma4 J=I: {}",
                ok(summary.char_branch_verdict),
                ok(lemma4 && report.lemma4.j == report.lemma4.i)
            );
        }
    }
    match report.first_failure() {
        None => Ok(()),
        Some(fact) => Err(Failure::new(1, format!("failed: {fact}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(common) => run_check(common),
        Command::Uce { common, build } => run_uce(common, build, false),
        Command::Homology { common, build } => run_uce(common, build, true),
        Command::Theorem { common, force } => run_theorem(common, *force),
        Command::Selftest { seed } => selftest::run(*seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
