use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use katokit::report::{self, ErrorJson};
use katokit::sequence::{self, DlousskySequence};
use katokit::{anticanonical, graph, verify, Error};

#[derive(Parser)]
#[command(name = "katokit", version, about = "Exact invariants of intermediate Kato surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full JSON report: stats, multiplicities, index, germ, lattice.
    Analyze {
        /// `[s1 s2 r1]` or a comma-separated entry list.
        sequence: String,
    },
    /// Dual graph as DOT or JSON.
    Graph {
        sequence: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// All canonical sequences with the given b2, one per line.
    Enumerate {
        #[arg(long)]
        b2: usize,
        #[arg(long)]
        index_one: bool,
        #[arg(long)]
        count_only: bool,
    },
    /// Run every cross-check up to the given b2.
    Verify {
        #[arg(long, default_value_t = 10)]
        b2_max: usize,
        /// Print the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Germ exponents, lattice invariants and moduli.
    Germ { sequence: String },
    /// Moduli dimensions for a given delta.
    Moduli {
        sequence: String,
        #[arg(long)]
        delta: u8,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

enum Failure {
    Input(Error),
    Internal(Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e)
        } else {
            Failure::Input(e)
        }
    }
}

fn print_json<T: Serialize>(out: &mut impl Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn configure_threads() -> Result<(), Error> {
    let Ok(raw) = std::env::var("KATOKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::InvalidArgument(format!("KATOKIT_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Internal(e.to_string()))
}

fn parse(text: &str) -> Result<DlousskySequence, Error> {
    sequence::parse_input(text)
}

fn run(cmd: Command, out: &mut impl Write) -> Result<(), Failure> {
    let io_err = |e: io::Error| Failure::Internal(Error::Internal(e.to_string()));
    match cmd {
        Command::Analyze { sequence } => {
            let seq = parse(&sequence)?;
            print_json(out, &report::analyze(&seq)?).map_err(io_err)?;
        }
        Command::Graph { sequence, format } => {
            let seq = parse(&sequence)?;
            let g = graph::build_graph_structural(&seq);
            if g != graph::build_graph_shift(&seq) {
                return Err(Failure::Internal(Error::Internal(format!("graph builders disagree on {seq}"))));
            }
            match format {
                Format::Dot => out.write_all(graph::export_dot(&g, &seq.to_string()).as_bytes()).map_err(io_err)?,
                Format::Json => print_json(out, &report::graph_json(&seq, &g)).map_err(io_err)?,
            }
        }
        Command::Enumerate {
            b2,
            index_one,
            count_only,
        } => {
            if b2 < 2 {
                return Err(Error::InvalidArgument(format!("--b2 must be at least 2, got {b2}")).into());
            }
            let mut all = sequence::enumerate_sequences(b2);
            if index_one {
                let keep: Vec<bool> = all
                    .par_iter()
                    .map(|s| num_traits::One::is_one(&anticanonical::surface_index(s)))
                    .collect();
                let mut it = keep.into_iter();
                all.retain(|_| it.next().unwrap());
            }
            if count_only {
                writeln!(out, "{}", all.len()).map_err(io_err)?;
            } else {
                for s in &all {
                    writeln!(out, "{s}").map_err(io_err)?;
                }
            }
        }
        Command::Verify { b2_max, json } => {
            if b2_max < 2 {
                return Err(Error::InvalidArgument(format!("--b2-max must be at least 2, got {b2_max}")).into());
            }
            let r = verify::run(b2_max);
            if json {
                print_json(out, &r).map_err(io_err)?;
            } else {
                writeln!(out, "verified {} sequences with b2 <= {}", r.sequences, r.b2_max).map_err(io_err)?;
                out.write_all(r.table().as_bytes()).map_err(io_err)?;
            }
            if !r.passed() {
                return Err(Failure::Verify);
            }
        }
        Command::Germ { sequence } => {
            let seq = parse(&sequence)?;
            print_json(out, &report::germ_json(&seq)?).map_err(io_err)?;
        }
        Command::Moduli { sequence, delta } => {
            let seq = parse(&sequence)?;
            print_json(out, &report::moduli_json(&seq, delta)?).map_err(io_err)?;
        }
    }
    Ok(())
}

fn fail(code: u8, err: &ErrorJson) -> ExitCode {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let _ = print_json(&mut lock, err);
    eprintln!("katokit: {}", err.message);
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let message = e.render().to_string();
            return fail(
                1,
                &ErrorJson {
                    code: "usage_error",
                    message: message.lines().next().unwrap_or_default().to_string(),
                },
            );
        }
    };
    if let Err(e) = configure_threads() {
        return fail(1, &ErrorJson::from(&e));
    }

    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out);
    let _ = out.flush();
    drop(out);
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => fail(1, &ErrorJson::from(&e)),
        Err(Failure::Internal(e)) => fail(2, &ErrorJson::from(&e)),
        Err(Failure::Verify) => {
            eprintln!("katokit: verification failed");
            ExitCode::from(2)
        }
    }
}
