//! Command dispatch for the `kempe-torus` binary: JSON on stdout, human
//! summaries on stderr, exit code 0 on success, 1 on domain errors, 2 on
//! usage errors. All randomized commands take an explicit seed.

use crate::coloring::{random_proper, verify_certificate};
use crate::fourcolor::classify;
use crate::graph::Graph;
use crate::io;
use crate::reconfig::{certify_equivalence, kempe_classes, normalize};
use crate::topology::edge_width;
use crate::torus_graph::{
    build, canonical_forms, enumerate_graphs, sample_uniform, sample_uniform_triples, GraphParams,
};
use crate::wsk::run_chain;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "kempe-torus", version, about = "Kempe-swap reconfiguration on 6-regular toroidal graphs")]
struct Cli {
    /// Worker parallelism hint; outputs are deterministic regardless.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(alias = "shifted_grid")]
    ShiftedGrid,
    Circulant,
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleMode {
    /// Uniform over isomorphism classes.
    Classes,
    /// Uniform over valid parameter triples.
    Triples,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph spec file, optionally with a DIMACS export.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        c: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(short, long)]
        output: PathBuf,
        /// Also export DIMACS edges plus a rotation sidecar.
        #[arg(long)]
        dimacs: Option<PathBuf>,
    },
    /// Shortest non-contractible cycle length and a witness.
    Edgewidth { graph: PathBuf },
    /// 4-colorability verdict by classification, with a solver witness.
    Classify4 {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Exact Kempe equivalence classes of all proper k-colorings.
    Classes {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: u8,
        #[arg(long)]
        quotient: bool,
        #[arg(long, default_value_t = 5_000_000)]
        state_cap: usize,
    },
    /// Swap a 5-coloring to one containing a good monochromatic 4-template.
    Normalize {
        #[arg(long)]
        graph: PathBuf,
        /// Input coloring; omit to draw one from --seed.
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Where to write the certificate JSON.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Certificate connecting two 5-colorings.
    Certify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replay-check a certificate.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Run the WSK chain.
    Wsk {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: u8,
        #[arg(long)]
        steps: u64,
        #[arg(long)]
        seed: u64,
        /// Class report from `classes`; visits are tallied per class.
        #[arg(long)]
        classes: Option<PathBuf>,
    },
    /// All isomorphism classes of 6-regular toroidal graphs on n vertices.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Sample one graph on n vertices.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SampleMode::Classes)]
        mode: SampleMode,
    },
}

fn gen_params(
    family: Family,
    a: Option<usize>,
    b: Option<usize>,
    c: Option<usize>,
    n: Option<usize>,
    r: Option<usize>,
) -> Result<GraphParams, String> {
    match family {
        Family::ShiftedGrid => match (a, b) {
            (Some(a), Some(b)) => Ok(GraphParams::ShiftedGrid { a, b, c: c.unwrap_or(1) }),
            _ => Err("--family shifted-grid requires --a and --b (and optionally --c)".into()),
        },
        Family::Circulant => match (n, r) {
            (Some(n), Some(r)) => Ok(GraphParams::Circulant { n, r }),
            _ => Err("--family circulant requires --n and --r".into()),
        },
    }
}

fn execute(cli: Cli) -> Result<serde_json::Value, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Gen { family, a, b, c, n, r, output, dimacs } => {
            let params = gen_params(family, a, b, c, n, r)?;
            let g = build(params)?; // reject invalid parameters before writing
            io::write_graph_spec(&output, params)?;
            if let Some(dimacs_path) = &dimacs {
                io::write_dimacs(dimacs_path, &g)?;
            }
            eprintln!("wrote {} ({} vertices)", output.display(), g.vertex_count());
            Ok(json!({
                "params": params,
                "vertices": g.vertex_count(),
                "fingerprint": format!("{:016x}", g.fingerprint()),
                "output": output,
                "dimacs": dimacs,
            }))
        }
        Command::Edgewidth { graph } => {
            let g = io::read_graph(&graph)?;
            let (width, witness) = edge_width(&g)?;
            eprintln!("edge-width {width}");
            Ok(json!({ "edge_width": width, "witness": witness }))
        }
        Command::Classify4 { graph } => {
            let text = std::fs::read_to_string(&graph)?;
            let params: GraphParams = serde_json::from_str(&text)?;
            let verdict = classify(params)?;
            eprintln!(
                "{params}: {}",
                if verdict.colorable { "4-colorable".to_string() } else {
                    format!("exception case {}", verdict.exception_case.unwrap())
                }
            );
            Ok(serde_json::to_value(&verdict)?)
        }
        Command::Classes { graph, k, quotient, state_cap } => {
            let g = io::read_graph(&graph)?;
            let report = kempe_classes(&g, k, quotient, state_cap)?;
            eprintln!(
                "{} classes over {} states (k={k}, quotient={quotient})",
                report.class_count, report.states_visited
            );
            Ok(serde_json::to_value(&report)?)
        }
        Command::Normalize { graph, coloring, seed, output } => {
            let g = io::read_graph(&graph)?;
            let phi = match (coloring, seed) {
                (Some(path), _) => io::read_coloring(&path)?,
                (None, Some(seed)) => random_proper(&g, 5, seed)?,
                (None, None) => return Err("normalize needs --coloring or --seed".into()),
            };
            let out = normalize(&g, &phi)?;
            if let Some(path) = &output {
                io::write_certificate(path, &out.certificate)?;
            }
            eprintln!("normalized in {} moves", out.certificate.moves.len());
            Ok(json!({
                "certificate": out.certificate,
                "template": out.template,
                "final_coloring": out.final_coloring,
            }))
        }
        Command::Certify { graph, from, to, output } => {
            let g = io::read_graph(&graph)?;
            let phi1 = io::read_coloring(&from)?;
            let phi2 = io::read_coloring(&to)?;
            let out = certify_equivalence(&g, &phi1, &phi2)?;
            if let Some(path) = &output {
                io::write_certificate(path, &out.certificate)?;
            }
            eprintln!(
                "certified via {:?} in {} moves",
                out.route,
                out.certificate.moves.len()
            );
            Ok(json!({ "certificate": out.certificate, "route": out.route }))
        }
        Command::Verify { graph, from, cert } => {
            let g = io::read_graph(&graph)?;
            let phi = io::read_coloring(&from)?;
            let certificate = io::read_certificate(&cert)?;
            verify_certificate(&g, &phi, &certificate)?;
            eprintln!("certificate verifies ({} moves)", certificate.moves.len());
            Ok(json!({ "valid": true, "moves": certificate.moves.len() }))
        }
        Command::Wsk { graph, k, steps, seed, classes } => {
            let g = io::read_graph(&graph)?;
            let report = match classes {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)?;
                    let on_file: crate::reconfig::ClassReport = serde_json::from_str(&text)?;
                    // The serialized report has no state map; recompute and
                    // cross-check against the file.
                    let fresh = kempe_classes(&g, on_file.k, on_file.quotient, 5_000_000)?;
                    if fresh.class_count != on_file.class_count {
                        return Err(format!(
                            "class report mismatch: file has {} classes, recomputed {}",
                            on_file.class_count, fresh.class_count
                        )
                        .into());
                    }
                    Some(fresh)
                }
                None => None,
            };
            let stats = run_chain(&g, k, steps, seed, report.as_ref())?;
            eprintln!(
                "{} steps, {} distinct colorings",
                stats.steps, stats.distinct_colorings
            );
            Ok(serde_json::to_value(&stats)?)
        }
        Command::Enumerate { n } => {
            let graphs = enumerate_graphs(n)?;
            let mut items = Vec::new();
            for g in &graphs {
                items.push(json!({
                    "params": g.params(),
                    "canonical_forms": canonical_forms(g)?,
                }));
            }
            eprintln!("{} isomorphism classes on {n} vertices", graphs.len());
            Ok(json!({ "n": n, "count": graphs.len(), "classes": items }))
        }
        Command::Sample { n, seed, mode } => {
            let g = match mode {
                SampleMode::Classes => sample_uniform(n, seed)?,
                SampleMode::Triples => sample_uniform_triples(n, seed)?,
            };
            eprintln!("sampled {}", g.params());
            Ok(json!({ "params": g.params(), "seed": seed }))
        }
    }
}

/// Parses and runs; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap distinguishes help/version (success) from usage errors.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(value) => {
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable output"));
            0
        }
        Err(err) => {
            eprintln!("error: {err}");
            println!("{}", json!({ "error": err.to_string() }));
            1
        }
    }
}
