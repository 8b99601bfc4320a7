//! `lpa`: invariants and classification of Leavitt path algebras from the command line.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::CliError;
use report::Report;

#[derive(Parser)]
#[command(name = "lpa", version, about = "Invariants of Leavitt path algebras of finite graphs")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex classes, conditions, ideal lattice, predicates and structure of L(E).
    Analyze {
        /// Graph file, or family:NAME (R4, A3, E2, toeplitz, ...).
        graph: String,
        /// Also decide Lie simplicity over F_p.
        #[arg(long = "char")]
        characteristic: Option<u64>,
    },
    /// K0 with the class of the unit, and det(I - A).
    K0 { graph: String },
    /// Classification verdict for two graphs.
    Compare { e: String, f: String },
    /// Apply or search for flow moves.
    Move {
        #[command(subcommand)]
        action: MoveAction,
    },
    /// Graph monoid: presentation, bounded word problem, group and property probes.
    Monoid {
        graph: String,
        /// Queries of the form `x = y`, e.g. `v = 2*v`.
        queries: Vec<String>,
        /// Largest element size visited by the searches.
        #[arg(long, default_value_t = 12)]
        bound: u32,
        /// Check that the nonzero classes form a group matching K0.
        #[arg(long)]
        group: bool,
        /// Samples for the separativity and refinement probes.
        #[arg(long, default_value_t = 0)]
        probes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check Y_i X_j = δ_ij I and Σ X_i Y_i = I for a matrix fixture.
    VerifyDagger { fixture: String },
    /// Normal form of an element of L_K(E), e.g. `e1*.e1 - v`.
    NormalForm {
        graph: String,
        expr: String,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// The partition S1 ⊔ S2 of {1..d} attached to (d, r).
    Partition {
        d: u64,
        r: u64,
        /// Extend to {1..n}, where n ≡ r mod d.
        #[arg(long)]
        extend: Option<u64>,
    },
    /// Cuntz splice at a vertex.
    Splice { graph: String, vertex: String },
}

#[derive(Subcommand)]
enum MoveAction {
    /// Apply a move script (one move per line) and check invariants after each step.
    Apply { graph: String, script: String },
    /// Breadth-first search for a move sequence from E to F.
    Search {
        e: String,
        f: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

fn run(cmd: Command) -> Result<Vec<report::Section>, CliError> {
    use commands::*;
    match cmd {
        Command::Analyze { graph, characteristic } => analyze(&load_graph(&graph)?, characteristic),
        Command::K0 { graph } => k_theory(&load_graph(&graph)?),
        Command::Compare { e, f } => compare_graphs(&load_graph(&e)?, &load_graph(&f)?),
        Command::Move { action: MoveAction::Apply { graph, script } } => move_apply(&load_graph(&graph)?, &read(&script)?),
        Command::Move { action: MoveAction::Search { e, f, depth } } => {
            move_search_cmd(&load_graph(&e)?, &load_graph(&f)?, depth)
        }
        Command::Monoid { graph, queries, bound, group, probes, seed } => {
            monoid(&load_graph(&graph)?, &MonoidOptions { bound, queries, group, probes, seed })
        }
        Command::VerifyDagger { fixture } => dagger(&read(&fixture)?),
        Command::NormalForm { graph, expr, characteristic } => normal_form(&load_graph(&graph)?, &expr, characteristic),
        Command::Partition { d, r, extend } => partition_cmd(d, r, extend),
        Command::Splice { graph, vertex } => splice(&load_graph(&graph)?, &vertex),
    }
}

/// Writes to stdout, ignoring a closed pipe (e.g. `lpa ... | head`).
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).filter(|a| a != "--json").collect();
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli.command) {
        Ok(sections) => {
            let mut r = Report::new(&args);
            for s in sections {
                r.push(s);
            }
            let text = if json { format!("{}\n", r.to_json()) } else { r.to_string() };
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(e) => {
            if json {
                let v = serde_json::json!({ "command": args, "error": { "module": e.module(), "message": e.to_string() } });
                emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("serializes")));
            }
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
