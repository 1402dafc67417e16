use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use piforge::engine::{KappaPolicy, Mode};
use piforge::report::{self, Format, Options};

#[derive(Parser)]
#[command(name = "piforge", version, about = "Augmented dimensional analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a problem file.
    Analyze(AnalyzeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Unbalanced,
    Balanced,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

#[derive(clap::Args)]
struct AnalyzeArgs {
    file: PathBuf,

    #[arg(long, value_enum)]
    mode: Option<ModeArg>,

    /// `auto` or a positive integer.
    #[arg(long, value_parser = parse_kappa)]
    kappa: Option<KappaPolicy>,

    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,

    /// Include the basis/pseudocircuit incidence table.
    #[arg(long)]
    table: bool,

    /// Apply declared symmetries. `--symmetry U V` also declares the pair.
    #[arg(long, num_args = 0..=2, value_names = ["U", "V"])]
    symmetry: Option<Vec<String>>,
}

fn parse_kappa(s: &str) -> Result<KappaPolicy, String> {
    if s == "auto" {
        return Ok(KappaPolicy::Auto);
    }
    match s.parse::<i64>() {
        Ok(k) if k > 0 => Ok(KappaPolicy::Fixed(k)),
        _ => Err(format!("expected `auto` or a positive integer, got `{s}`")),
    }
}

fn run(args: AnalyzeArgs) -> u8 {
    let file = args.file.display().to_string();
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{file}: {e}");
            return 1;
        }
    };
    let mut problem = match report::parse_problem(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{file}:{e}");
            return 2;
        }
    };
    if let Some(mode) = args.mode {
        problem.mode = match mode {
            ModeArg::Unbalanced => Mode::Unbalanced,
            ModeArg::Balanced => Mode::Balanced,
        };
    }
    if let Some(kappa) = args.kappa {
        problem.kappa = kappa;
    }
    match args.symmetry.as_deref() {
        Some([u, v]) => {
            let pair = (u.clone(), v.clone());
            if !problem.symmetries.contains(&pair) {
                problem.symmetries.push(pair);
            }
        }
        Some([_]) => {
            eprintln!("{file}: --symmetry takes no values or exactly two");
            return 2;
        }
        _ => {}
    }
    let opts = Options { table: args.table, symmetry: args.symmetry.is_some() };
    let r = match report::analyze(&problem, opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{file}: {e}");
            return 2;
        }
    };
    let format = match args.format {
        FormatArg::Text => Format::Text,
        FormatArg::Structured => Format::Structured,
    };
    print!("{}", report::render_report(&r, format));
    r.status.exit_code() as u8
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze(args) => ExitCode::from(run(args)),
    }
}
