mod commands;
mod problem;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use commands::{run, Options};
use problem::{bare, parse_problem, parse_variant, CliError, Kind};

/// Generalized Littlewood-Richardson coefficients and their Horn-type cone.
#[derive(Parser)]
#[command(name = "glr", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Problem file (JSON); standard input when omitted.
    #[arg(long, global = true)]
    file: Option<PathBuf>,

    /// Compare the result against every independent method available.
    #[arg(long, global = true)]
    cross_check: bool,

    /// Which tuple set indexes the inequalities: `one` or `nonzero`.
    #[arg(long, global = true, value_parser = ["one", "nonzero"])]
    variant: Option<String>,

    /// Largest number of subset tuples an enumeration may visit.
    #[arg(long, global = true, default_value_t = glr_core::horn::DEFAULT_BUDGET)]
    budget: u128,

    /// JSON report (the default).
    #[arg(long, global = true, conflicts_with = "plain")]
    json: bool,

    /// `key: value` lines instead of JSON.
    #[arg(long, global = true)]
    plain: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Single LR coefficient; lambdas = [lambda, mu, nu].
    Lr,
    /// The cyclic coefficient f.
    F,
    F1,
    F2,
    /// LP feasibility of the sun-hive polytope.
    Positivity,
    /// Membership in the Horn-type cone (rational entries allowed).
    Cone,
    /// The tuple set T(n, m) and its inequalities.
    HornGen,
    /// f(r·lambda) for r = 1..r_max with the saturation check.
    Stretch,
    /// f = f*·f# on a given wall, or on every wall found.
    Factorize,
    /// The n = 2, m = 6 facet list, regenerated and compared.
    Facets26,
    /// Exhaustive small-instance agreement suites.
    Selftest,
}

impl Cmd {
    fn kind(self) -> Kind {
        match self {
            Cmd::Lr => Kind::Lr,
            Cmd::F => Kind::FSun,
            Cmd::F1 => Kind::F1,
            Cmd::F2 => Kind::F2,
            Cmd::Positivity => Kind::Positivity,
            Cmd::Cone => Kind::Cone,
            Cmd::HornGen => Kind::HornGen,
            Cmd::Stretch => Kind::Stretch,
            Cmd::Factorize => Kind::Factorize,
            Cmd::Facets26 => Kind::Facets26,
            Cmd::Selftest => Kind::Selftest,
        }
    }
}

fn read_input(cli: &Cli, kind: Kind) -> Result<problem::ProblemFile, CliError> {
    let text = match &cli.file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::new("io_error", format!("cannot read {}: {e}", path.display())))?,
        None if matches!(kind, Kind::Facets26 | Kind::Selftest) => return Ok(bare(kind)),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::new("io_error", e.to_string()))?;
            s
        }
    };
    parse_problem(&text, kind)
}

fn render(v: &Map<String, Value>, plain: bool) -> String {
    if !plain {
        return serde_json::to_string_pretty(v).expect("reports serialize") + "\n";
    }
    v.iter()
        .map(|(k, x)| match x {
            Value::String(s) => format!("{k}: {s}\n"),
            other => format!("{k}: {other}\n"),
        })
        .collect()
}

fn execute(cli: &Cli) -> Result<(Map<String, Value>, bool), CliError> {
    let kind = cli.command.kind();
    let p = read_input(cli, kind)?;
    let opts = Options {
        cross_check: cli.cross_check,
        variant: cli.variant.as_deref().map(parse_variant).transpose()?,
        budget: cli.budget,
    };
    let r = run(&p, &opts)?;
    Ok((r.body, r.disagreement))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok((body, disagreement)) => {
            print!("{}", render(&body, cli.plain));
            if disagreement {
                eprintln!("oracle_disagreement: methods disagree or a check failed; see the report");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let mut body = Map::new();
            body.insert("error".into(), json!({ "code": e.code, "message": e.message }));
            if cli.plain {
                eprintln!("error [{}]: {}", e.code, e.message);
            } else {
                eprint!("{}", render(&body, false));
            }
            ExitCode::from(e.exit_code())
        }
    }
}
