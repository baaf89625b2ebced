use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use smallorb::cli::commands::{DEFAULT_SEED, EXIT_INPUT};
use smallorb::cli::{generate, run_command, Command, Options, PolytopeDocument};
use smallorb::homology::Coefficients;

#[derive(Parser)]
#[command(name = "smallorb", version, about = "Small orbifolds over simple polytopes")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coeff {
    #[value(name = "Z")]
    Z,
    #[value(name = "Q")]
    Q,
    #[value(name = "Z2")]
    Z2,
    #[value(name = "all")]
    All,
}

#[derive(Args)]
struct Common {
    /// Polytope document; standard input when omitted or `-`.
    input: Option<PathBuf>,
    /// Coefficient ring(s) to report.
    #[arg(long, value_enum, default_value_t = Coeff::All)]
    coeff: Coeff,
    /// Seed for the random objective when the document has none.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Stop the search after this many functions.
    #[arg(long)]
    limit: Option<usize>,
}

#[derive(Subcommand)]
enum Sub {
    /// Check simplicity and any supplied s-characteristic or isotropy function.
    Validate(Common),
    /// Enumerate s-characteristic functions.
    Search(Common),
    /// f- and h-vectors.
    Hvector(Common),
    /// Cellular homology of the small orbifold.
    Homology(Common),
    /// Homology of the toric analogue.
    Toric(Common),
    /// Cohomology ring presentation (even dimensions).
    Ring(Common),
    /// Presentation of the orbifold fundamental group.
    Pi1orb(Common),
    /// Homology of the explicit quotient triangulation.
    Oracle(Common),
    /// Formula, cellular and quotient homology side by side.
    Crosscheck(Common),
    /// Print a document for a built-in family: cube n, polygon m, simplex n, prism m, product m1 m2.
    Generate { family: String, params: Vec<usize> },
}

fn read_input(path: Option<&PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, common) = match cli.command {
        Sub::Generate { family, params } => {
            return match generate::by_name(&family, &params) {
                Ok(data) => {
                    println!("{}", PolytopeDocument::from_data(&data).to_json());
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_INPUT as u8)
                }
            };
        }
        Sub::Validate(c) => (Command::Validate, c),
        Sub::Search(c) => (Command::Search, c),
        Sub::Hvector(c) => (Command::Hvector, c),
        Sub::Homology(c) => (Command::Homology, c),
        Sub::Toric(c) => (Command::Toric, c),
        Sub::Ring(c) => (Command::Ring, c),
        Sub::Pi1orb(c) => (Command::Pi1orb, c),
        Sub::Oracle(c) => (Command::Oracle, c),
        Sub::Crosscheck(c) => (Command::Crosscheck, c),
    };
    let text = match read_input(common.input.as_ref()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read input: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let opts = Options {
        coefficients: match common.coeff {
            Coeff::Z => vec![Coefficients::Z],
            Coeff::Q => vec![Coefficients::Q],
            Coeff::Z2 => vec![Coefficients::Z2],
            Coeff::All => Coefficients::ALL.to_vec(),
        },
        seed: common.seed,
        limit: common.limit,
    };
    let outcome = run_command(cmd, &text, &opts);
    match cli.format {
        Format::Text => print!("{}", outcome.report.to_text()),
        Format::Json => println!("{}", outcome.report.to_json()),
    }
    if let Some(e) = &outcome.report.error {
        eprintln!("error: {e}");
    }
    ExitCode::from(outcome.exit_code as u8)
}
