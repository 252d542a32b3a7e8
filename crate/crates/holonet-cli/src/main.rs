//! Command-line surface for the holonet library: build the bundled poset
//! models, validate and split cocycles, join components back together, emit
//! holonomy reports, construct cocycles from group representations, and run
//! the acceptance checks.
//!
//! All I/O is JSON on files or stdio (`-` reads stdin). Exit codes: 0 on
//! success, 2 for bad parameters or malformed input, 3 for an invalid
//! cocycle, 4 for a failed mathematical precondition.

use clap::{Args, Parser, Subcommand};
use holonet::corpus;
use holonet::holonomy;
use holonet::homotopy;
use holonet::linalg;
use holonet::poset::{
    build_circle_poset, build_directed_interval_poset, build_graph_interval_poset,
};
use holonet::splitting;
use holonet::{Cocycle, Error, Graph, PathFrame, Poset};

#[derive(Parser)]
#[command(name = "holonet", version, about = "Cohomology of finite posets: \
unitary 1-cocycles, charge/topological splitting, holonomy analysis")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct FrameArgs {
    /// Pole (base element) of the path frame.
    #[arg(long, default_value_t = 0, conflicts_with = "frame")]
    pole: usize,
    /// Walk the spanning tree depth-first instead of breadth-first.
    #[arg(long, conflicts_with = "frame")]
    depth_first: bool,
    /// Frame descriptor file `{"pole": o, "tree": [[upper, lower], …]}`.
    #[arg(long)]
    frame: Option<String>,
}

impl FrameArgs {
    fn build(&self, p: &Poset) -> holonet::Result<PathFrame> {
        match &self.frame {
            Some(path) => PathFrame::from_descriptor(p, &read_value(path)?),
            None if self.depth_first => PathFrame::build_depth_first(p, self.pole),
            None => PathFrame::build(p, self.pole),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a bundled poset model and print it as JSON.
    Build {
        #[command(subcommand)]
        model: Model,
        #[arg(long, global = true)]
        out: Option<String>,
    },
    /// Check unitarity and the cocycle law; exits 3 when invalid.
    Validate {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        cocycle: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sampled general 2-simplices beyond the exhaustive chains.
        #[arg(long, default_value_t = 40)]
        samples: usize,
        /// Override the pass/fail tolerance on the reported deviations.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Print the spanning-tree descriptor of a path frame.
    Frame {
        #[arg(long)]
        poset: String,
        #[arg(long, default_value_t = 0)]
        pole: usize,
        /// Walk the spanning tree depth-first instead of breadth-first.
        #[arg(long)]
        depth_first: bool,
        #[arg(long)]
        out: Option<String>,
    },
    /// Split a cocycle into charge and topological components.
    Split {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        cocycle: String,
        #[command(flatten)]
        frame: FrameArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        samples: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Join a topological component onto a topologically trivial charge
    /// cocycle; exits 4 when the pieces are not joinable.
    Join {
        #[arg(long)]
        poset: String,
        /// Topological component (pole-valued cocycle).
        #[arg(long)]
        topological: String,
        /// Topologically trivial charge cocycle.
        #[arg(long)]
        charge: String,
        #[command(flatten)]
        frame: FrameArgs,
        #[arg(long)]
        out: Option<String>,
    },
    /// Validation, coboundary verdict, homology, and holonomy characters.
    Report {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        cocycle: String,
        #[command(flatten)]
        frame: FrameArgs,
        /// Longest generator word tabulated in the character table.
        #[arg(long, default_value_t = 4)]
        max_word_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        samples: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Build a cocycle from unitary images of the surviving loop generators.
    FromRep {
        #[arg(long)]
        poset: String,
        /// JSON file `{"images": [matrix, …]}`, one matrix per generator.
        #[arg(long)]
        images: String,
        #[command(flatten)]
        frame: FrameArgs,
        #[arg(long)]
        out: Option<String>,
    },
    /// Run the acceptance checks over the bundled corpus.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Model {
    /// Arcs of up to max-len unit segments on a circle of n marked points.
    Circle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
    },
    /// Simple edge-paths of a multigraph `{"n_vertices": v, "edges": [[u,v], …]}`.
    Graph {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
    },
    /// Intervals [i,j] on a directed line of n points.
    Directed {
        #[arg(long)]
        n: usize,
    },
    /// Two four-point circles wedged at a shared unit arc.
    FigureEight,
}

fn read_value(path: &str) -> holonet::Result<serde_json::Value> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin())
            .map_err(|e| Error::BadInput(format!("reading stdin: {e}")))?
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::BadInput(format!("reading {path}: {e}")))?
    };
    Ok(serde_json::from_str(&text)?)
}

/// Print to stdout, treating a closed pipe as a silent success.
fn print_line(text: &str) -> holonet::Result<()> {
    use std::io::Write;
    match writeln!(std::io::stdout(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(Error::BadInput(format!("writing stdout: {e}")))
        }
        _ => Ok(()),
    }
}

fn emit(out: &Option<String>, v: &serde_json::Value) -> holonet::Result<()> {
    let text = serde_json::to_string_pretty(v)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Error::BadInput(format!("writing {path}: {e}"))),
        None => print_line(&text),
    }
}

fn read_poset(path: &str) -> holonet::Result<Poset> {
    Poset::from_value(&read_value(path)?)
}

fn read_cocycle(p: &Poset, path: &str) -> holonet::Result<Cocycle> {
    Cocycle::from_value(p, &read_value(path)?)
}

/// Validate and return the report, failing with the worst offender when the
/// deviations exceed `tol`.
fn checked_validation(
    z: &Cocycle,
    samples: usize,
    seed: u64,
    tol: Option<f64>,
) -> (holonet::ValidationReport, bool) {
    let mut report = z.validate(samples, seed);
    if let Some(t) = tol {
        report.valid = report.max_unitarity_error <= t && report.max_deviation <= t;
    }
    let ok = report.valid;
    (report, ok)
}

fn require_valid(z: &Cocycle, samples: usize, seed: u64) -> holonet::Result<()> {
    let report = z.validate(samples, seed);
    if !report.valid {
        return Err(Error::InvalidCocycle(
            report
                .worst
                .unwrap_or_else(|| "cocycle law violated".into()),
        ));
    }
    Ok(())
}

fn run(cli: Cli) -> holonet::Result<i32> {
    match cli.cmd {
        Cmd::Build { model, out } => {
            let p = match model {
                Model::Circle { n, max_len } => build_circle_poset(n, max_len)?,
                Model::Graph { spec, max_len } => {
                    let g: Graph = serde_json::from_value(read_value(&spec)?)?;
                    build_graph_interval_poset(&g, max_len)?
                }
                Model::Directed { n } => build_directed_interval_poset(n)?,
                Model::FigureEight => corpus::figure_eight(),
            };
            emit(&out, &p.to_value())?;
            Ok(0)
        }
        Cmd::Validate {
            poset,
            cocycle,
            seed,
            samples,
            tol,
            out,
        } => {
            let p = read_poset(&poset)?;
            let z = read_cocycle(&p, &cocycle)?;
            let (report, ok) = checked_validation(&z, samples, seed, tol);
            emit(&out, &serde_json::to_value(&report)?)?;
            Ok(if ok { 0 } else { 3 })
        }
        Cmd::Frame {
            poset,
            pole,
            depth_first,
            out,
        } => {
            let p = read_poset(&poset)?;
            let f = if depth_first {
                PathFrame::build_depth_first(&p, pole)?
            } else {
                PathFrame::build(&p, pole)?
            };
            emit(&out, &f.descriptor_value())?;
            Ok(0)
        }
        Cmd::Split {
            poset,
            cocycle,
            frame,
            seed,
            samples,
            out,
        } => {
            let p = read_poset(&poset)?;
            let z = read_cocycle(&p, &cocycle)?;
            require_valid(&z, samples, seed)?;
            let f = frame.build(&p)?;
            let charge = splitting::charge_component(&z, &f);
            let topo = splitting::topological_component(&z, &f);
            let rt = splitting::split_join_roundtrip(&z, &f)?;
            emit(
                &out,
                &serde_json::json!({
                    "pole": f.pole(),
                    "charge": linalg::canonicalize_value(&charge.to_value()),
                    "topological": linalg::canonicalize_value(&topo.cocycle().to_value()),
                    "roundtrip_deviation": rt,
                }),
            )?;
            Ok(0)
        }
        Cmd::Join {
            poset,
            topological,
            charge,
            frame,
            out,
        } => {
            let p = read_poset(&poset)?;
            let phi = read_cocycle(&p, &topological)?;
            let z = read_cocycle(&p, &charge)?;
            let f = frame.build(&p)?;
            let joined = splitting::join(&phi, &z, &f)?;
            emit(&out, &linalg::canonicalize_value(&joined.to_value()))?;
            Ok(0)
        }
        Cmd::Report {
            poset,
            cocycle,
            frame,
            max_word_len,
            seed,
            samples,
            out,
        } => {
            let p = read_poset(&poset)?;
            let z = read_cocycle(&p, &cocycle)?;
            require_valid(&z, samples, seed)?;
            let f = frame.build(&p)?;
            let validation = z.validate(samples, seed);
            let coboundary = z.is_coboundary(&f).is_some();
            let pres = homotopy::presentation(&p, &f);
            let (rank, torsion) = homotopy::h1_invariants(&pres);
            let report = holonomy::build_report(&z, &f, max_word_len)?;
            emit(
                &out,
                &serde_json::json!({
                    "validation": serde_json::to_value(&validation)?,
                    "coboundary": coboundary,
                    "h1": { "rank": rank, "torsion": torsion },
                    "holonomy": serde_json::to_value(&report)?,
                }),
            )?;
            Ok(0)
        }
        Cmd::FromRep {
            poset,
            images,
            frame,
            out,
        } => {
            let p = read_poset(&poset)?;
            let f = frame.build(&p)?;
            let pres = homotopy::presentation(&p, &f);
            let doc = read_value(&images)?;
            let mats = doc
                .get("images")
                .and_then(|a| a.as_array())
                .ok_or_else(|| Error::BadInput("images JSON needs an \"images\" array".into()))?
                .iter()
                .map(linalg::mat_from_value)
                .collect::<holonet::Result<Vec<_>>>()?;
            let sigma = holonomy::induce_images(&pres, &mats)?;
            let z = holonomy::from_rep(&p, &f, &sigma)?;
            emit(&out, &linalg::canonicalize_value(&z.to_value()))?;
            Ok(0)
        }
        Cmd::Corpus { seed } => {
            let results = corpus::run_all(seed);
            let mut all = true;
            for r in &results {
                print_line(&r.line())?;
                all &= r.passed;
            }
            Ok(if all { 0 } else { 1 })
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BadInput(_) | Error::Json(_) => 2,
        Error::InvalidCocycle(_) => 3,
        Error::Precondition(_) => 4,
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "error": e.to_string() }));
            std::process::exit(exit_code(&e));
        }
    }
}
