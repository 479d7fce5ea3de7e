//! `colorideal`: command-line front end for coloring ideals.
//!
//! Exit codes: 0 success or true, 1 false or a negative answer, 2 usage
//! error, 3 computation error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "colorideal",
    version,
    about = "Graph coloring ideals, chordal Gröbner bases and Nullstellensatz certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format. Text is for humans and may change; JSON is stable.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Worker threads for certificate search (default: all cores).
    #[arg(long, env = "COLORIDEAL_THREADS", global = true)]
    pub threads: Option<usize>,

    /// Cross-check the answer against a brute-force or textbook oracle.
    #[arg(long, global = true)]
    pub oracle: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Auto,
    Dimacs,
    EdgeList,
}

#[derive(Args, Debug)]
pub struct GraphSource {
    /// Graph file (DIMACS `.col` or edge list); `-` reads standard input.
    #[arg(
        required_unless_present = "random_chordal",
        conflicts_with = "random_chordal"
    )]
    pub graph: Option<PathBuf>,

    /// Generate a random chordal graph instead, as `N:MAXCLIQUE`.
    #[arg(long, value_name = "N:MAXCLIQUE")]
    pub random_chordal: Option<String>,

    /// Seed for `--random-chordal`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub input_format: InputFormat,
}

#[derive(Args, Debug)]
pub struct Colors {
    /// Number of colors.
    #[arg(long)]
    pub k: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Report whether the graph is chordal, with a perfect elimination order.
    CheckChordal {
        #[command(flatten)]
        source: GraphSource,
    },
    /// Gröbner basis of the coloring ideal of a chordal graph.
    Gb {
        #[command(flatten)]
        colors: Colors,
        /// Prime modulus or `rational`.
        #[arg(long, default_value = "rational")]
        p: String,
        #[command(flatten)]
        source: GraphSource,
    },
    /// Number of labeled proper colorings of a chordal graph.
    Count {
        #[command(flatten)]
        colors: Colors,
        #[command(flatten)]
        source: GraphSource,
    },
    /// A proper coloring of a chordal graph, read off its Gröbner basis.
    Color {
        #[command(flatten)]
        colors: Colors,
        #[command(flatten)]
        source: GraphSource,
    },
    /// Minimal-degree Nullstellensatz certificate of non-colorability.
    Cert {
        #[command(flatten)]
        colors: Colors,
        /// Prime modulus.
        #[arg(long)]
        p: String,
        /// Largest degree to try (default 3k + 1).
        #[arg(long)]
        d_max: Option<u32>,
        /// Omit the vertex coefficients of the full-ring identity.
        #[arg(long)]
        no_lift: bool,
        #[command(flatten)]
        source: GraphSource,
    },
    /// Verify a certificate document produced by `cert`.
    VerifyCert {
        /// JSON file; `-` reads standard input.
        file: PathBuf,
    },
    /// Verify a basis document produced by `gb`.
    VerifyGb {
        /// JSON file; `-` reads standard input.
        file: PathBuf,
    },
    /// Count colorings by exhaustive enumeration.
    OracleCount {
        #[command(flatten)]
        colors: Colors,
        #[command(flatten)]
        source: GraphSource,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.status)
        }
    }
}
