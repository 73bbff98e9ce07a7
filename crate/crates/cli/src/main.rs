//! `cbgraph`: recognition, certificates and constructions for graphs with convex balls.
//!
//! Exit codes: 0 when the property holds, 1 when it fails (a witness is printed),
//! 2 on usage or input errors.

mod commands;
mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use cbgraph::conditions::CbMethod;
use cbgraph::generators::{make, Family, FAMILY_NAMES};
use cbgraph::graph::{parse_edge_list, write_edge_list};
use cbgraph::{all_pairs_distances, DistanceOracle};

use report::Out;

#[derive(Parser)]
#[command(name = "cbgraph", version, about = "Graphs with convex balls: recognition, certificates, constructions")]
struct Cli {
    /// Output mode; `kv` prints one reproducible `key=value` per line.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads (default: all cores). Results do not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Kv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Direct,
    IncTpc0,
    IncTpc1,
    IncTpc2,
    IncpTpcp,
    Structural,
}

impl From<Method> for CbMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Direct => CbMethod::Direct,
            Method::IncTpc0 => CbMethod::IncTpc0,
            Method::IncTpc1 => CbMethod::IncTpc1,
            Method::IncTpc2 => CbMethod::IncTpc2,
            Method::IncpTpcp => CbMethod::IncPlusTpcPlus,
            Method::Structural => CbMethod::Structural,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Edgelist,
}

/// Graph arguments are an edge-list file, `-` for standard input, or
/// `gen:<family>` for a built-in family.
#[derive(Subcommand)]
enum Command {
    /// Write a named family as an edge list (labels go to `<file>.labels`).
    Gen {
        /// Family such as `petersen`, `cycle:7` or `circulant:9:1,2`; see `--list`.
        family: Option<String>,
        /// Parameters appended to the family, as in `gen cycle 7`.
        params: Vec<String>,
        #[arg(short, long, default_value = "-")]
        output: String,
        /// Print the known families and exit.
        #[arg(long)]
        list: bool,
    },
    /// CB recognition by every characterization.
    Check {
        graph: String,
        /// Run one method only.
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Every local condition with its first failing locus.
    Conditions {
        graph: String,
        #[arg(long)]
        max_dist: Option<usize>,
    },
    /// Isometric cycles and forbidden subgraphs.
    Substructures { graph: String },
    /// Classification histogram of metric triangles.
    Triangles { graph: String },
    /// The normal clique-path from `u` to `v`.
    Comb {
        graph: String,
        u: usize,
        v: usize,
        /// Tie-break seed for the normal vertex path.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also enumerate every normal clique-path and check uniqueness.
        #[arg(long)]
        unique: bool,
    },
    /// Fellow-traveler constants of the normal clique-paths.
    Fellow {
        graph: String,
        /// Scan every quadruple (the default).
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        /// Scan this many random quadruples instead.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Shortens every non-geodesic walk up to a length and bounds the fellow-traveler constant.
    Fftp {
        graph: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Checks that BFS orders dismantle a power of the graph.
    Dismantle {
        graph: String,
        /// Single base vertex (default: all).
        #[arg(long)]
        base: Option<usize>,
        #[arg(long, default_value_t = 2)]
        power: usize,
        /// Tie-break seeds `0..k` per base.
        #[arg(long, default_value_t = 3)]
        seeds: u64,
    },
    /// Core left after deleting dominated vertices.
    Core { graph: String },
    /// Sets stabilized by an automorphism.
    Stabilize {
        graph: String,
        /// Comma-separated image list `f(0),f(1),...`.
        #[arg(long, value_delimiter = ',', required = true)]
        perm: Vec<usize>,
    },
    /// Helly number and its diameter-2 variant.
    Helly {
        graph: String,
        #[arg(long, default_value_t = cbgraph::helly::DEFAULT_CAP)]
        cap: usize,
    },
    /// Truncated universal cover of the triangle-pentagon complex.
    Cover {
        graph: String,
        #[arg(long, default_value_t = 0)]
        base: usize,
        #[arg(long)]
        radius: usize,
        /// Write the cover; the `cover image height` map goes to `<file>.map`.
        #[arg(long, value_enum)]
        emit: Option<Emit>,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Runs the full acceptance suite.
    Corpus,
}

pub struct Input {
    pub d: DistanceOracle,
}

fn load(source: &str) -> Result<Input> {
    let graph = if let Some(spec) = source.strip_prefix("gen:") {
        let family: Family = spec.parse()?;
        make(&family)?.graph
    } else {
        let text = if source == "-" {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        } else {
            fs::read_to_string(source).with_context(|| format!("reading {source}"))?
        };
        parse_edge_list(&text).with_context(|| format!("parsing {source}"))?.graph
    };
    let d = all_pairs_distances(&graph).with_context(|| format!("loading {source}"))?;
    Ok(Input { d })
}

/// Vertex ids on the command line are the dense ids `0..n`, assigned in
/// ascending order of the file's labels.
pub fn vertex(d: &DistanceOracle, v: usize) -> Result<usize> {
    if v >= d.n() {
        bail!("vertex {v} out of range (graph has {} vertices)", d.n());
    }
    Ok(v)
}

/// Writes `body` to `path`, and `sidecar` to `path.<ext>`; on standard output
/// the sidecar lines follow as comments.
pub fn write_output(path: &str, body: &str, sidecar: &str, ext: &str) -> Result<()> {
    if path == "-" {
        let mut s = body.to_string();
        for line in sidecar.lines() {
            s.push_str(&format!("# {ext} {line}\n"));
        }
        io::stdout().write_all(s.as_bytes())?;
    } else {
        fs::write(path, body).with_context(|| format!("writing {path}"))?;
        if !sidecar.is_empty() {
            let side = format!("{path}.{ext}");
            fs::write(&side, sidecar).with_context(|| format!("writing {side}"))?;
        }
    }
    Ok(())
}

fn gen(family: Option<String>, params: Vec<String>, output: &str, list: bool) -> Result<bool> {
    if list {
        println!("{}", FAMILY_NAMES.join("\n"));
        return Ok(true);
    }
    let Some(name) = family else { bail!("missing family (try --list)") };
    let spec = std::iter::once(name).chain(params).collect::<Vec<_>>().join(":");
    let ng = make(&spec.parse::<Family>()?)?;
    write_output(output, &write_edge_list(&ng.graph), &ng.label_sidecar(), "labels")?;
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().context("--threads")?;
    }
    let mut out = Out::new(cli.format == Format::Kv);
    // Commands that write an edge list to standard output send the report to stderr.
    let mut to_stderr = false;
    let holds = match cli.command {
        Command::Gen { family, params, output, list } => return gen(family, params, &output, list),
        Command::Corpus => commands::corpus(&mut out)?,
        cmd => {
            let (name, source) = match &cmd {
                Command::Check { graph, .. } => ("check", graph),
                Command::Conditions { graph, .. } => ("conditions", graph),
                Command::Substructures { graph } => ("substructures", graph),
                Command::Triangles { graph } => ("triangles", graph),
                Command::Comb { graph, .. } => ("comb", graph),
                Command::Fellow { graph, .. } => ("fellow", graph),
                Command::Fftp { graph, .. } => ("fftp", graph),
                Command::Dismantle { graph, .. } => ("dismantle", graph),
                Command::Core { graph } => ("core", graph),
                Command::Stabilize { graph, .. } => ("stabilize", graph),
                Command::Helly { graph, .. } => ("helly", graph),
                Command::Cover { graph, .. } => ("cover", graph),
                Command::Gen { .. } | Command::Corpus => unreachable!(),
            };
            let inp = load(source)?;
            out.header(name, source, &inp.d);
            match cmd {
                Command::Check { method, .. } => commands::check(&mut out, &inp, method.map(Into::into))?,
                Command::Conditions { max_dist, .. } => commands::conditions(&mut out, &inp, max_dist)?,
                Command::Substructures { .. } => commands::substructures(&mut out, &inp)?,
                Command::Triangles { .. } => commands::triangles(&mut out, &inp)?,
                Command::Comb { u, v, seed, unique, .. } => commands::comb(&mut out, &inp, u, v, seed, unique)?,
                Command::Fellow { samples, seed, .. } => commands::fellow(&mut out, &inp, samples, seed)?,
                Command::Fftp { max_len, .. } => commands::fftp(&mut out, &inp, max_len)?,
                Command::Dismantle { base, power, seeds, .. } => commands::dismantle(&mut out, &inp, base, power, seeds)?,
                Command::Core { .. } => commands::core(&mut out, &inp)?,
                Command::Stabilize { perm, .. } => commands::stabilize(&mut out, &inp, &perm)?,
                Command::Helly { cap, .. } => commands::helly(&mut out, &inp, cap)?,
                Command::Cover { base, radius, emit, output, .. } => {
                    let target = emit.map(|_| output.as_str());
                    to_stderr = target == Some("-");
                    commands::cover(&mut out, &inp, base, radius, target)?
                }
                Command::Gen { .. } | Command::Corpus => unreachable!(),
            }
        }
    };
    let text = out.into_string();
    if to_stderr {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    Ok(holds)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
