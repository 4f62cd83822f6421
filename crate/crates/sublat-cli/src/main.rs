//! `sublat`: groupoids on subspace lattices from the command line.
//!
//! Subcommands read groupoid documents (JSON, see `document`), run one
//! computation each, and print a report either as pretty JSON or as an
//! indented text tree carrying the same fields. Exit codes: 0 on success,
//! 1 when a well-formed input is rejected by the computation, 2 when the
//! input cannot be parsed.

mod commands;
mod document;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "sublat",
    version,
    about = "Groupoids on subspace lattices over F_p: validation, class tables, centres, \
             primitive quotients, invariant algebras, constrained search"
)]
struct Cli {
    /// Output format; both formats carry the same fields.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for sampled spot checks (extra witness families in `is-central`).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the groupoid axioms on a document and report any violations.
    Validate {
        /// Groupoid document.
        file: PathBuf,
    },
    /// Close the document's morphisms under composition, inverse and
    /// restriction, and emit the resulting document.
    Close {
        file: PathBuf,
        /// Write the closed document here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the similarity-class tables of the groupoid's quotient
    /// assignment, one table per dimension.
    Functor {
        file: PathBuf,
        /// Largest dimension to tabulate; beyond the ambient dimensions the
        /// tables come from the extension to all linear maps.
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Locate the maximal central element and certify it with both
    /// centrality checks.
    Centre {
        file: PathBuf,
    },
    /// Decide centrality of the class of a subspace inclusion, by the
    /// definition and by the witness criterion.
    IsCentral {
        file: PathBuf,
        /// Ambient space holding the subspace; optional when there is one.
        #[arg(long)]
        ambient: Option<String>,
        /// Independent rows spanning the subspace, e.g. "1,0,0;0,1,0".
        #[arg(long, value_name = "ROWS")]
        v_basis: String,
    },
    /// Quotient by a central marker and emit the primitive groupoid together
    /// with a witness log.
    Primitive {
        file: PathBuf,
        /// Independent rows spanning the marker image, e.g. "1,0,0".
        #[arg(long, value_name = "ROWS")]
        delta: String,
        /// Write the quotient document here as well.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dimensions and bases of the invariant algebra degree by degree,
    /// optionally verified against a presentation document.
    Invariants {
        file: PathBuf,
        /// Largest degree to compute.
        #[arg(long)]
        degree: usize,
        /// Presentation document to verify span-for-span.
        #[arg(long)]
        presentation: Option<PathBuf>,
    },
    /// List every closed groupoid over a central marker whose primitive
    /// quotient is the given target; writes one document per result plus a
    /// manifest.
    Enumerate {
        /// Ambient dimension n of F_p^n (p comes from the target document).
        #[arg(long)]
        ambient: usize,
        /// Independent rows spanning the marker image.
        #[arg(long, value_name = "ROWS")]
        delta: String,
        /// Groupoid document for the required primitive quotient.
        #[arg(long)]
        target: PathBuf,
        /// Directory for the emitted documents and manifest.
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { file } => commands::validate(file),
        Command::Close { file, output } => commands::close(file, output.as_deref()),
        Command::Functor { file, max_dim } => commands::functor(file, *max_dim),
        Command::Centre { file } => commands::centre_of(file),
        Command::IsCentral { file, ambient, v_basis } => {
            commands::is_central(file, ambient.as_deref(), v_basis, cli.seed)
        }
        Command::Primitive { file, delta, output } => {
            commands::primitive(file, delta, output.as_deref())
        }
        Command::Invariants { file, degree, presentation } => {
            commands::invariants(file, *degree, presentation.as_deref())
        }
        Command::Enumerate { ambient, delta, target, out_dir } => {
            commands::enumerate(*ambient, delta, target, out_dir)
        }
    };
    match result {
        Ok(value) => {
            match cli.format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&value).expect("reports serialize"))
                }
                Format::Text => print!("{}", report::render_text(&value)),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
