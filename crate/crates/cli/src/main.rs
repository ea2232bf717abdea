use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use moddata::constructors::{radford_datum, semion_datum, trivial_datum};
use moddata::extension::DEFAULT_MAX_GROUP_ORDER;
use moddata_cli::commands::{self, DEFAULT_CONDUCTOR_LIMIT};
use moddata_cli::source::load_datum;
use moddata_cli::{serialize_datum, AnalysisBundle, CliError, Limits, Result};

/// Exact modular data: validation, fusion rings, Galois actions, Gauss sums,
/// central-charge extensions and congruence levels.
#[derive(Parser)]
#[command(name = "moddata", version)]
struct Cli {
    /// Emit machine-readable JSON instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    /// Largest |SL(2, Z/M)| that congruence commands may enumerate.
    #[arg(long, global = true, env = "MODDATA_MAX_GROUP_ORDER", default_value_t = DEFAULT_MAX_GROUP_ORDER)]
    max_group_order: u64,
    /// Largest cyclotomic conductor accepted for an input datum.
    #[arg(long, global = true, env = "MODDATA_CONDUCTOR_LIMIT", default_value_t = DEFAULT_CONDUCTOR_LIMIT)]
    conductor_limit: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// JSON datum file, or gen:semion, gen:trivial, gen:radford:N[:E],
    /// gen:A*B for products.
    datum: String,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis chain.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Also enumerate extensions and classify their congruence levels.
        #[arg(long)]
        extensions: bool,
    },
    /// Check the axioms and print the derived invariants.
    Validate(Input),
    /// Fusion coefficients.
    FusionTable(Input),
    /// Galois action on the index set.
    GaloisCheck(Input),
    /// Fusion symbol and sign relations.
    Symbols(Input),
    /// The twelve extensions with their central charges.
    Extensions(Input),
    /// Projective factoring through SL(2, Z/M) and linear lifts at M.
    Congruence {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        level: u64,
        /// Skip the lift search.
        #[arg(long)]
        projective: bool,
    },
    /// Extensions whose representation factors linearly at level M.
    LiftSearch {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        level: u64,
    },
    /// Print a built-in datum as JSON.
    Gen {
        #[command(subcommand)]
        which: Gen,
    },
    /// Classical Gauss sum and its lemma table.
    GaussSum {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        q: i64,
    },
    /// The cyclic-group 3-cocycle.
    Cocycle {
        #[arg(long)]
        n: usize,
        /// Exponent e of zeta = zeta_n^e.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        zeta: i64,
        /// Verify the cocycle identity instead of printing values.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand)]
enum Gen {
    Semion,
    Trivial,
    Radford {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        e: i64,
    },
    /// Kronecker product of two data (files or gen: paths).
    Product { a: String, b: String },
}

enum Output {
    Bundle(AnalysisBundle),
    Text(String),
}

fn load(input: &Input, limits: &Limits) -> Result<moddata::ModularDatum> {
    let d = load_datum(&input.datum)?;
    limits.check_conductor(&d)?;
    Ok(d)
}

fn run(cli: &Cli) -> Result<Output> {
    let limits = Limits {
        max_group_order: cli.max_group_order,
        conductor_limit: cli.conductor_limit,
    };
    let bundle = match &cli.command {
        Command::Analyze { input, extensions } => commands::analyze(&load(input, &limits)?, &limits, *extensions)?,
        Command::Validate(input) => commands::validate(&load(input, &limits)?)?,
        Command::FusionTable(input) => commands::fusion_table(&load(input, &limits)?)?,
        Command::GaloisCheck(input) => commands::galois_check(&load(input, &limits)?)?,
        Command::Symbols(input) => commands::symbols(&load(input, &limits)?)?,
        Command::Extensions(input) => commands::extensions(&load(input, &limits)?, &limits)?,
        Command::Congruence {
            input,
            level,
            projective,
        } => commands::congruence(&load(input, &limits)?, level_arg(*level)?, *projective, &limits)?,
        Command::LiftSearch { input, level } => {
            commands::lift_search_command(&load(input, &limits)?, level_arg(*level)?, &limits)?
        }
        Command::GaussSum { n, q } => commands::gauss_sum(*n, *q)?,
        Command::Cocycle { n, zeta, check } => commands::cocycle(*n, *zeta, *check)?,
        Command::Gen { which } => {
            let d = match which {
                Gen::Semion => semion_datum(),
                Gen::Trivial => trivial_datum(),
                Gen::Radford { n, e } => {
                    radford_datum(*n, *e).map_err(|err| CliError::Usage(format!("radford: {}", err)))?
                }
                Gen::Product { a, b } => load_datum(a)?.kronecker_product(&load_datum(b)?)?,
            };
            return Ok(Output::Text(serialize_datum(&d)));
        }
    };
    Ok(Output::Bundle(bundle))
}

fn level_arg(level: u64) -> Result<u64> {
    if level == 0 {
        return Err(CliError::Usage("--level must be positive".into()));
    }
    Ok(level)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let (text, ok) = match out {
                Output::Text(t) => (t, true),
                Output::Bundle(b) if cli.json => (b.to_json_string(), b.ok()),
                Output::Bundle(b) => (b.to_text(), b.ok()),
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("moddata: {}", e);
            ExitCode::from(e.exit_code())
        }
    }
}
