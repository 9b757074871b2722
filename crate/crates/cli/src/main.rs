//! Command-line driver for `hecke-bc`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 budget refusal.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hecke_bc::paths::{enumerate_generalized_with_budget, kl_poly_extract_with_budget};
use hecke_bc::verify::{self, network_product, SuiteReport};
use hecke_bc::{deodhar_expand, graphical_expansion, Error, HeckeElement, SignedPermutation, StarNetwork};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "hecke-bc", version, about = "Type-BC Hecke algebra products three ways")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Dot,
}

#[derive(clap::Args, Debug)]
struct NetArgs {
    /// Rank of the hyperoctahedral group.
    #[arg(long)]
    n: usize,
    /// Stages, e.g. "[1,3] o [2,3] * [1,2]", or a builtin name.
    #[arg(long)]
    stages: String,
    /// Refuse jobs with more path families than this.
    #[arg(long, env = "HECKE_BC_BUDGET", default_value_t = 10_000_000)]
    budget: u128,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand a network by Hecke recursion and by path families.
    Expand {
        #[command(flatten)]
        net: NetArgs,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Run a named self-check suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Extract the coefficient polynomial of one type.
    Klpoly {
        #[command(flatten)]
        net: NetArgs,
        /// Target signed permutation, e.g. "1 2 3 4" or "3-12".
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Print a network as Graphviz.
    Render {
        #[command(flatten)]
        net: NetArgs,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Expand a generator word over subexpressions.
    Deodhar {
        #[arg(long)]
        n: usize,
        /// Generator indices, e.g. "0,1,0"; empty for the identity.
        #[arg(long, default_value = "")]
        gens: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Expand { net, format } => expand(&net, format),
        Command::Verify { suite, format } => verify_suite(&suite, format),
        Command::Klpoly { net, target, format } => klpoly(&net, &target, format),
        Command::Render { net, format } => render(&net, format),
        Command::Deodhar { n, gens, format } => deodhar(n, &gens, format),
    }
}

fn only(format: Format, allowed: &[Format]) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("format {format:?} is not available for this command").to_lowercase()))
    }
}

fn network(args: &NetArgs) -> Result<StarNetwork, Failure> {
    Ok(StarNetwork::parse(&args.stages, args.n)?)
}

fn records(h: &HeckeElement) -> serde_json::Value {
    serde_json::to_value(h.to_records()).expect("records serialize")
}

fn expand(args: &NetArgs, format: Format) -> Outcome {
    only(format, &[Format::Table, Format::Json])?;
    let net = network(args)?;
    let counts = enumerate_generalized_with_budget(&net, Some(args.budget))?;
    let paths = counts.to_hecke(net.rank())?;
    let hecke = network_product(&net)?;
    let diff = hecke.as_ref().map(|h| h.sub(&paths)).transpose()?;
    let agree = diff.as_ref().is_some_and(HeckeElement::is_zero);
    match format {
        Format::Json => {
            let out = json!({
                "network": net.to_string(),
                "rank": net.rank(),
                "hecke": hecke.as_ref().map(records),
                "paths": records(&paths),
                "families": counts.records(),
                "diff": diff.as_ref().map(records),
                "agree": agree,
            });
            println!("{out}");
        }
        _ => {
            println!("network: {net}");
            match &hecke {
                Some(h) => println!("hecke:   {h}"),
                None => println!("hecke:   not divisible by the merged-edge factor"),
            }
            println!("paths:   {paths}");
            match &diff {
                Some(d) if d.is_zero() => println!("diff:    (empty)"),
                Some(d) => println!("diff:    {d}"),
                None => println!("diff:    unavailable"),
            }
        }
    }
    Ok(agree)
}

fn verify_suite(name: &str, format: Format) -> Outcome {
    only(format, &[Format::Table, Format::Json])?;
    let report: SuiteReport = verify::run_suite(name).map_err(|e| match e {
        Error::UnknownSuite(_) => Failure::Usage(format!("{e}; known suites: {}", verify::SUITES.join(", "))),
        other => other.into(),
    })?;
    match format {
        Format::Json => println!(
            "{}",
            json!({
                "suite": report.name,
                "checked": report.checked,
                "agreed": report.agreed,
                "passed": report.passed(),
                "failure": report.failure,
            })
        ),
        _ => println!("{report}"),
    }
    Ok(report.passed())
}

fn klpoly(args: &NetArgs, target: &str, format: Format) -> Outcome {
    only(format, &[Format::Table, Format::Json])?;
    let net = network(args)?;
    let u: SignedPermutation = target.parse()?;
    if u.rank() != net.rank() {
        return Err(Error::RankMismatch { left: net.rank(), right: u.rank() }.into());
    }
    let paths = kl_poly_extract_with_budget(&net, &u, Some(args.budget))?;
    let hecke = network_product(&net)?.map(|h| h.coeff(&u));
    let agree = hecke.as_ref() == Some(&paths);
    match format {
        Format::Json => println!(
            "{}",
            json!({
                "network": net.to_string(),
                "target": u.to_string(),
                "paths": paths.coeffs(),
                "hecke": hecke.as_ref().map(|p| p.coeffs().to_vec()),
                "agree": agree,
            })
        ),
        _ => {
            println!("P[{u}] paths: {paths}");
            match &hecke {
                Some(h) => println!("P[{u}] hecke: {h}"),
                None => println!("P[{u}] hecke: not divisible by the merged-edge factor"),
            }
        }
    }
    Ok(agree)
}

fn render(args: &NetArgs, format: Format) -> Outcome {
    only(format, &[Format::Dot])?;
    print!("{}", network(args)?.render_dot());
    Ok(true)
}

fn parse_gens(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Usage(format!("bad generator index {t:?}"))))
        .collect()
}

fn deodhar(n: usize, gens: &str, format: Format) -> Outcome {
    only(format, &[Format::Table, Format::Json])?;
    let word = parse_gens(gens)?;
    let sub = deodhar_expand(&word, n)?;
    let hecke = verify::generator_product(n, &word)?;
    let paths = graphical_expansion(&StarNetwork::wiring_diagram(n, &word)?)?;
    let agree = sub == hecke && hecke == paths;
    match format {
        Format::Json => println!(
            "{}",
            json!({
                "rank": n,
                "gens": word,
                "subexpressions": records(&sub),
                "hecke": records(&hecke),
                "paths": records(&paths),
                "agree": agree,
            })
        ),
        _ => {
            println!("subexpressions: {sub}");
            println!("hecke:          {hecke}");
            println!("paths:          {paths}");
            let d = hecke.sub(&sub)?;
            if d.is_zero() && agree {
                println!("diff:           (empty)");
            } else {
                println!("diff:           {d}");
            }
        }
    }
    Ok(agree)
}
