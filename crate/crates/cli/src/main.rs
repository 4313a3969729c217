use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use comograd_cli::serve::Service;
use comograd_cli::{cmd_eval, cmd_index, cmd_query, extract_file, format_descriptor, format_hits, load_db};
use comograd_core::evalkit::format_curves;
use comograd_core::DescriptorKind;

#[derive(Parser)]
#[command(name = "comograd", version, about = "Protein tertiary-structure retrieval with CoMOGrad and PHOG descriptors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the descriptor of each chain in a coordinate file.
    Extract {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        chain: Option<char>,
        #[arg(long, default_value = "combined")]
        kind: DescriptorKind,
    },
    /// Build a feature database from a directory of coordinate files.
    Index {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long)]
        db: PathBuf,
        #[arg(long, default_value = "combined")]
        kind: DescriptorKind,
    },
    /// Rank database entries against a query structure.
    Query {
        #[arg(long)]
        db: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(short = 'k', default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// Expected database kind; rejected if the database holds another.
        #[arg(long)]
        kind: Option<DescriptorKind>,
        #[arg(long)]
        chain: Option<char>,
    },
    /// Score leave-self-out retrieval against SCOP labels.
    Eval {
        #[arg(long)]
        db: PathBuf,
        #[arg(long)]
        queries: PathBuf,
        #[arg(long)]
        scop: PathBuf,
        #[arg(short = 'k', value_delimiter = ',', default_value = "5,10,15,20,25,30,35,40,45,50")]
        k: Vec<usize>,
    },
    /// Serve queries over HTTP (POST /query?k=N with a coordinate file body).
    Serve {
        #[arg(long)]
        db: PathBuf,
        #[arg(long, default_value = "127.0.0.1:8080")]
        listen: String,
        #[arg(long, default_value_t = 4)]
        workers: usize,
    },
}

fn run(cli: Cli) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Extract { input, chain, kind } => {
            for (id, d) in extract_file(&input, chain, kind)? {
                writeln!(out, "{}", format_descriptor(&id, &d))?;
            }
        }
        Command::Index { dir, db, kind } => {
            let summary = cmd_index(&dir, &db, kind)?;
            for (id, reason) in &summary.skipped {
                eprintln!("skipped {id}: {reason}");
            }
            eprintln!("indexed {} chains, skipped {} → {}", summary.indexed, summary.skipped.len(), db.display());
        }
        Command::Query { db, input, k, kind, chain } => {
            let hits = cmd_query(&db, &input, k as usize, kind, chain)?;
            write!(out, "{}", format_hits(&hits))?;
        }
        Command::Eval { db, queries, scop, k } => {
            let curves = cmd_eval(&db, &queries, &scop, &k)?;
            write!(out, "{}", format_curves(&curves))?;
        }
        Command::Serve { db, listen, workers } => {
            let service = Service::bind(load_db(&db)?, &listen)?;
            if let Some(addr) = service.local_addr() {
                eprintln!("listening on {addr}");
            }
            service.run(workers);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
