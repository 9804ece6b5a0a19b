use std::process::ExitCode;

use algeo::cochain;
use algeo::forms::CarrierKind;
use algeo::workbench::{load_algebra, run, Command, Options};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "algeo",
    version,
    about = "Exact checks for Hochschild quasi-complexes and torsion algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Graded calculus and quasi-complex identities.
    Verify(Args),
    /// Algebra of functions, regularity and the structure claims.
    Functions(Args),
    /// Smallest N with d^N = 0 on the tested degrees.
    Coherence(Args),
    /// Chevalley-Eilenberg forms on the vector-field and function carriers.
    Forms(Args),
    /// Everything above in one document.
    Report(Args),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Md,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Carrier {
    A,
    C,
}

#[derive(clap::Args)]
struct Args {
    /// Algebra file (JSON) or builtin name.
    algebra: String,
    #[arg(long, default_value_t = 4)]
    max_arity: usize,
    #[arg(long, default_value_t = 64)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    max_order: usize,
    #[arg(long, default_value_t = 1)]
    max_degree: i64,
    /// Highest form degree used by the forms suite.
    #[arg(long, default_value_t = 2)]
    max_form_degree: usize,
    #[arg(long, value_enum)]
    carrier: Option<Carrier>,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    format: Format,
    /// Largest number of scalars a single cochain may hold (ALGEO_BUDGET overrides).
    #[arg(long)]
    budget: Option<usize>,
    /// Record per-check wall time; reports are then no longer reproducible.
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (command, args) = match cli.command {
        Cmd::Verify(a) => (Command::Verify, a),
        Cmd::Functions(a) => (Command::Functions, a),
        Cmd::Coherence(a) => (Command::Coherence, a),
        Cmd::Forms(a) => (Command::Forms, a),
        Cmd::Report(a) => (Command::Report, a),
    };
    match execute(command, &args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn execute(command: Command, args: &Args) -> Result<bool, String> {
    let budget = match std::env::var("ALGEO_BUDGET") {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .map_err(|_| format!("ALGEO_BUDGET must be a positive integer, got {v:?}"))?,
        ),
        Err(_) => args.budget,
    };
    if let Some(b) = budget {
        if b == 0 {
            return Err("budget must be positive".into());
        }
        cochain::set_budget(b);
    }
    let opts = Options {
        max_arity: args.max_arity,
        trials: args.trials,
        seed: args.seed,
        max_order: args.max_order,
        max_degree: args.max_degree,
        carrier: args.carrier.map(|c| match c {
            Carrier::A => CarrierKind::Functions,
            Carrier::C => CarrierKind::VectorFields,
        }),
        max_form_degree: args.max_form_degree,
        timing: args.timing,
    };
    let (algebra, source) = load_algebra(&args.algebra).map_err(|e| e.to_string())?;
    let report = run(command, &algebra, source, &opts).map_err(|e| e.to_string())?;
    match args.format {
        Format::Md => print!("{}", report.to_markdown()),
        Format::Json => print!("{}", report.to_json()),
    }
    Ok(report.all_passed())
}
