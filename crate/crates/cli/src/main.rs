mod commands;
mod report;
mod serve;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "qdilog", version, about = "Exact quantum dilogarithm identities from quivers")]
struct Cli {
    /// Print the machine-readable report instead of the table.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall time in the report (breaks byte-for-byte reproducibility).
    #[arg(long, global = true)]
    time: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// E(y1) E(y2) = E(y2) E(q^{-1/2} y1 y2) E(y1) on the A2 form.
    Pentagon {
        #[arg(long, default_value_t = 8)]
        depth: u32,
    },
    /// Compares two dilogarithm words on the skew form of a quiver.
    Identity {
        #[arg(long)]
        word_left: String,
        #[arg(long)]
        word_right: String,
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: u32,
    },
    /// Product over the stables of a Dynkin quiver for a central charge.
    Reineke {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        charges: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: u32,
    },
    /// Source-sequence product against the product over roots in decreasing order.
    Corollary {
        #[arg(long = "type")]
        ty: String,
        /// R/L per edge, or `all`.
        #[arg(long)]
        orientation: Option<String>,
        #[arg(long, default_value_t = 6)]
        depth: u32,
    },
    /// The Kronecker factorization (truncation degree at most 5).
    Kronecker {
        #[arg(long, default_value_t = 5)]
        depth: u32,
    },
    /// Green mutation sequences of the framed quiver.
    Green {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long)]
        maximal: bool,
    },
    /// Product along the first maximal green sequence found.
    Dt {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: u32,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Compares the products of two mutation sequences.
    TropicalCompare {
        #[arg(long)]
        quiver: PathBuf,
        /// Comma-separated vertices or an exported history file.
        #[arg(long)]
        seq1: String,
        #[arg(long)]
        seq2: String,
        #[arg(long, default_value_t = 6)]
        depth: u32,
    },
    /// Brute-force Hall algebra checks over F_p.
    Hall {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Dimension bound, e.g. `2,2`.
        #[arg(long)]
        bound: String,
        /// Central charge files for the HN identity.
        #[arg(long)]
        charges: Vec<PathBuf>,
    },
    /// Shift, conjugation and twist formulas.
    Formulas {
        #[arg(long, default_value = "0..5", allow_hyphen_values = true)]
        m_range: String,
        #[arg(long, default_value_t = 8)]
        depth: u32,
    },
    /// JSON-over-HTTP service for the explorer.
    Serve {
        #[arg(long, default_value_t = 8765)]
        port: u16,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match cli.cmd {
        Cmd::Pentagon { depth } => commands::pentagon(depth),
        Cmd::Identity { word_left, word_right, quiver, depth } => {
            commands::identity(&word_left, &word_right, &quiver, depth)
        }
        Cmd::Reineke { quiver, charges, depth } => commands::reineke(&quiver, &charges, depth),
        Cmd::Corollary { ty, orientation, depth } => commands::corollary(&ty, orientation.as_deref(), depth),
        Cmd::Kronecker { depth } => commands::kronecker(depth),
        Cmd::Green { quiver, max_len, maximal } => commands::green(&quiver, max_len, maximal),
        Cmd::Dt { quiver, depth, max_len } => commands::dt(&quiver, depth, max_len),
        Cmd::TropicalCompare { quiver, seq1, seq2, depth } => commands::tropical_compare(&quiver, &seq1, &seq2, depth),
        Cmd::Hall { quiver, p, bound, charges } => commands::hall(&quiver, p, &bound, &charges),
        Cmd::Formulas { m_range, depth } => commands::formulas(&m_range, depth),
        Cmd::Serve { port } => {
            return match serve::serve(port) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(2)
                }
            }
        }
    };
    match result {
        Ok(mut report) => {
            if cli.time {
                report.wall_ms = Some(start.elapsed().as_millis());
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("serializable"));
            } else {
                print!("{}", report.to_text());
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
