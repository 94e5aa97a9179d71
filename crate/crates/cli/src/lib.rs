//! Command-line front end. Every subcommand parses its input, makes one or two
//! library calls and prints the result.
//!
//! Exit codes: 0 on success or a passing check, 1 when a checked property
//! fails or an input does not meet an operation's preconditions, 2 on usage
//! and parse errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use critigraph::enumeration::{
    max_critical_edges, verify_assertions_exhaustive, verify_lemma1_exhaustive, verify_lemma2_exhaustive,
    verify_schwarz_exhaustive, verify_theorem, DEFAULT_CHUNK_BITS,
};
use critigraph::io::{parse_edge_list, serialize_dot, serialize_edge_list, serialize_matrix, to_report_json};
use critigraph::{
    all_chordless_cycles, extremal_digraph, find_chordless_cycle, find_removable_vertex, is_vertex_critical,
    non_critical_witness, Digraph, Error, SearchOptions, VertexSet,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "critigraph", version, about = "Vertex-critical strongly connected digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Edgelist,
    Dot,
    Matrix,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PropertyArg {
    Theorem,
    Lemma1,
    Lemma2,
    Assertion1,
    Assertion2,
    Schwarz,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Worker threads (0 = one per core)
    #[arg(long, env = "CRITIGRAPH_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Chunk the mask space by this many high-order bits
    #[arg(long, default_value_t = DEFAULT_CHUNK_BITS)]
    chunk_bits: u32,
    /// Allow the order-6 search (2^30 digraphs)
    #[arg(long)]
    long_run: bool,
    /// Omit wall-clock fields from the report
    #[arg(long)]
    no_timing: bool,
}

impl RunArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            jobs: self.jobs,
            chunk_bits: self.chunk_bits,
            long_run: self.long_run,
            timing: !self.no_timing,
            ..SearchOptions::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the extremal critical digraph on N vertices
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
    },
    /// Report order, edges, strong connectivity and criticality of a digraph
    Check {
        /// Edge-list file, `-` for stdin
        #[arg(default_value = "-")]
        input: PathBuf,
        /// Fail unless strongly connected
        #[arg(long)]
        sc: bool,
        /// Fail unless vertex-critical
        #[arg(long)]
        critical: bool,
        /// Print every vertex degree
        #[arg(long)]
        degrees: bool,
    },
    /// Find z != V with D - z strongly connected (needs degree(V) >= n)
    Removable {
        #[arg(default_value = "-")]
        input: PathBuf,
        #[arg(long)]
        vertex: usize,
    },
    /// Print a shortest (hence chordless) cycle, or all chordless cycles
    Cycle {
        #[arg(default_value = "-")]
        input: PathBuf,
        #[arg(long)]
        all: bool,
    },
    /// Contract a vertex set into one vertex
    Contract {
        #[arg(default_value = "-")]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
    },
    /// Exhaustive search for the maximum edge count of critical digraphs
    Search {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        run: RunArgs,
        /// Record finished chunks here and resume from it if present
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Include per-chunk partial results in the report
        #[arg(long)]
        chunk_results: bool,
    },
    /// Exhaustively verify one property at order N
    Verify {
        #[arg(long, value_enum)]
        property: PropertyArg,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Re-emit an edge list in another format
    Convert {
        #[arg(default_value = "-")]
        input: PathBuf,
        #[arg(long, value_enum)]
        to: Format,
    },
}

enum Failure {
    Usage(String),
    Negative(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Checkpoint(_) | Error::Capacity { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Negative(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

fn read_graph(path: &PathBuf) -> Result<Digraph, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
    };
    parse_edge_list(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn render(d: &Digraph, format: Format) -> String {
    match format {
        Format::Edgelist => serialize_edge_list(d),
        Format::Dot => serialize_dot(d),
        Format::Matrix => serialize_matrix(d),
    }
}

fn exit_for(passed: bool) -> i32 {
    if passed {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Construct { n, format } => {
            write!(out, "{}", render(&extremal_digraph(n)?, format))?;
            Ok(EXIT_OK)
        }
        Command::Check { input, sc, critical, degrees } => {
            let d = read_graph(&input)?;
            let connected = d.is_strongly_connected();
            writeln!(out, "order: {}", d.order())?;
            writeln!(out, "edges: {}", d.edge_count())?;
            writeln!(out, "strongly_connected: {connected}")?;
            let crit = if d.order() >= 2 { Some(is_vertex_critical(&d)?) } else { None };
            match crit {
                Some(c) => writeln!(out, "vertex_critical: {c}")?,
                None => writeln!(out, "vertex_critical: undefined")?,
            }
            if degrees {
                for v in 0..d.order() {
                    writeln!(out, "degree {v}: {}", d.degree(v)?)?;
                }
            }
            let mut status = EXIT_OK;
            if sc && !connected {
                writeln!(out, "FAIL: not strongly connected")?;
                status = EXIT_FAIL;
            }
            if critical && crit != Some(true) {
                status = EXIT_FAIL;
                if !connected || d.order() < 2 {
                    writeln!(out, "FAIL: not vertex-critical (not strongly connected)")?;
                } else if let Some(z) = non_critical_witness(&d)? {
                    writeln!(out, "FAIL: not vertex-critical; D - {z} is strongly connected")?;
                    writeln!(out, "witness: {z}")?;
                }
            }
            Ok(status)
        }
        Command::Removable { input, vertex } => {
            let d = read_graph(&input)?;
            writeln!(out, "{}", find_removable_vertex(&d, vertex)?)?;
            Ok(EXIT_OK)
        }
        Command::Cycle { input, all } => {
            let d = read_graph(&input)?;
            let cycles = if all { all_chordless_cycles(&d)? } else { vec![find_chordless_cycle(&d)?] };
            for c in cycles {
                let vs: Vec<String> = c.vertices().iter().map(|v| v.to_string()).collect();
                writeln!(out, "{}", vs.join(" "))?;
            }
            Ok(EXIT_OK)
        }
        Command::Contract { input, set, format } => {
            let d = read_graph(&input)?;
            if let Some(&v) = set.iter().find(|&&v| v >= d.order()) {
                return Err(Failure::Usage(format!("vertex {v} is out of range for order {}", d.order())));
            }
            let r = d.contract(set.into_iter().collect::<VertexSet>())?;
            if format == Format::Edgelist {
                writeln!(out, "# merged vertex: {}", r.merged_vertex)?;
                let map: Vec<String> = r.old_to_new.iter().enumerate().map(|(o, n)| format!("{o}->{n}")).collect();
                writeln!(out, "# mapping: {}", map.join(" "))?;
            }
            write!(out, "{}", render(&r.graph, format))?;
            Ok(EXIT_OK)
        }
        Command::Search { n, run, checkpoint, chunk_results } => {
            let opts = SearchOptions { checkpoint, keep_chunk_results: chunk_results, ..run.options() };
            let report = max_critical_edges(n, &opts)?;
            write!(out, "{}", to_report_json(&report))?;
            Ok(EXIT_OK)
        }
        Command::Verify { property, n, run } => {
            let opts = run.options();
            let passed = match property {
                PropertyArg::Theorem => {
                    let r = verify_theorem(n, &opts)?;
                    write!(out, "{}", to_report_json(&r))?;
                    r.verification.passed()
                }
                PropertyArg::Lemma1 => {
                    let r = verify_lemma1_exhaustive(n, &opts)?;
                    write!(out, "{}", to_report_json(&r))?;
                    r.passed()
                }
                PropertyArg::Lemma2 => {
                    let r = verify_lemma2_exhaustive(n, &opts)?;
                    write!(out, "{}", to_report_json(&r))?;
                    r.passed()
                }
                PropertyArg::Assertion1 | PropertyArg::Assertion2 => {
                    let r = verify_assertions_exhaustive(n, &opts)?;
                    write!(out, "{}", to_report_json(&r))?;
                    if property == PropertyArg::Assertion1 {
                        r.assertion1.passed()
                    } else {
                        r.assertion2.passed()
                    }
                }
                PropertyArg::Schwarz => {
                    let r = verify_schwarz_exhaustive(n, &opts)?;
                    write!(out, "{}", to_report_json(&r))?;
                    r.passed()
                }
            };
            Ok(exit_for(passed))
        }
        Command::Convert { input, to } => {
            let d = read_graph(&input)?;
            write!(out, "{}", render(&d, to))?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Negative(msg)) => {
            let _ = writeln!(err, "{msg}");
            EXIT_FAIL
        }
    }
}
