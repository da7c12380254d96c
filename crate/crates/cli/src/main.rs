// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use defcol::defect::{decide_defective_with_budget, DEFAULT_NODE_BUDGET};
use defcol::depth::connected_tree_depth;
use defcol::graph::{ct_with_budget, disjoint_copies, join, DEFAULT_VERTEX_BUDGET};
use defcol::io::{parse_graph, to_graph6, to_json};
use defcol::minor::{has_minor_with, MinorMode, MinorOptions, MinorOutcome};
use defcol::scheme::instances::{caterpillar, star_of_balls};
use defcol::scheme::{
    build_scheme, certify_scheme, color_from_scheme, paper_constants, scheme_from_json, scheme_to_json, SchemeEntry,
    SchemeParams,
};
use defcol::{Error, Graph};

#[derive(Parser)]
#[command(name = "defcol", version, about = "Defective colouring toolkit")]
struct Cli {
    /// Seed for randomised subroutines.
    #[arg(long, global = true, env = "DEFCOL_SEED", default_value_t = 0)]
    seed: u64,
    /// Largest graph a generator may build.
    #[arg(long, global = true, default_value_t = DEFAULT_VERTEX_BUDGET)]
    budget_vertices: usize,
    /// Search-node cap for the exact solvers.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    budget_nodes: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate graphs.
    Gen {
        #[command(subcommand)]
        what: GenCmd,
        #[arg(long, global = true, value_enum, default_value_t = Format::Graph6)]
        format: Format,
    },
    /// Tree-depth and connected tree-depth with a witness tree.
    Depth(Input),
    /// Minor containment; exit 1 when absent.
    Minor {
        /// Pattern graph file.
        #[arg(long)]
        pattern: PathBuf,
        /// Randomised search that can prove presence only.
        #[arg(long)]
        heuristic: bool,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Defective colouring, exact or from a scheme.
    Color {
        /// Exact search for a k-colouring with defect d; exit 1 when none exists.
        #[arg(long, requires_all = ["k", "d"], conflicts_with = "scheme")]
        exact: bool,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        /// Scheme file to colour greedily.
        #[arg(long, requires = "params", required_unless_present = "exact")]
        scheme: Option<PathBuf>,
        /// Scheme parameters: a JSON file or inline JSON.
        #[arg(long)]
        params: Option<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Elimination schemes.
    Scheme {
        #[command(subcommand)]
        what: SchemeCmd,
    },
    /// Table of the constants used by the colouring argument.
    Constants {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        d_homo: u64,
        #[arg(long, default_value_t = 1)]
        n1: u64,
        #[arg(long, default_value_t = 1)]
        n2: u64,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Closure of the balanced k-ary tree of height h.
    Ct {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        k: usize,
    },
    /// Join of two graphs.
    Join { a: PathBuf, b: PathBuf },
    /// Hub vertices joined to every vertex of disjoint cliques.
    StarOfBalls {
        #[arg(long, default_value_t = 1)]
        apices: usize,
        #[arg(long)]
        pieces: usize,
        #[arg(long, default_value_t = 2)]
        piece_size: usize,
    },
    /// Path with pendant leaves on every spine vertex.
    Caterpillar {
        #[arg(long)]
        spine: usize,
        #[arg(long)]
        leaves: usize,
    },
    /// Disjoint copies of a graph.
    Copies {
        #[arg(long)]
        count: usize,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand)]
enum SchemeCmd {
    /// Build a scheme for the input graph.
    Build {
        #[arg(long)]
        params: String,
        #[command(flatten)]
        input: Input,
    },
    /// Check every consecutive pair; exit 1 when a condition fails.
    Certify {
        #[arg(long)]
        params: String,
        #[arg(long)]
        scheme: PathBuf,
        #[command(flatten)]
        input: Input,
    },
    /// Greedy colouring driven by a scheme.
    Color {
        #[arg(long)]
        params: String,
        #[arg(long)]
        scheme: PathBuf,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args)]
struct Input {
    /// Graph file in graph6 or JSON; standard input when absent or `-`.
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Json,
}

/// Failure with its exit status.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. }
            | Error::SizeLimit { .. }
            | Error::SearchBudget { .. }
            | Error::SearchFailure { .. }
            | Error::BucketTooSmall { .. }
            | Error::GeodesicTooShort { .. }
            | Error::BranchMismatch
            | Error::EmptyPalette { .. }
            | Error::DefectExceeded { .. }
            | Error::CertFailed { .. } => 3,
            _ => 2,
        };
        Fail(code, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail(2, msg.into())
}

fn read_text(path: Option<&PathBuf>) -> Result<String, Fail> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| usage(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn read_graph(path: Option<&PathBuf>) -> Result<Graph, Fail> {
    Ok(parse_graph(&read_text(path)?)?)
}

fn read_params(arg: &str) -> Result<SchemeParams, Fail> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        read_text(Some(&PathBuf::from(arg)))?
    };
    let p: SchemeParams = serde_json::from_str(&text).map_err(|e| usage(format!("bad parameters: {e}")))?;
    p.validate()?;
    Ok(p)
}

fn read_scheme(path: &PathBuf) -> Result<Vec<SchemeEntry>, Fail> {
    Ok(scheme_from_json(&read_text(Some(path))?)?)
}

fn emit_graph(g: &Graph, f: Format) -> String {
    match f {
        Format::Graph6 => to_graph6(g),
        Format::Json => to_json(g),
    }
}

/// Output document and exit status.
fn run(cli: Cli) -> Result<(String, u8), Fail> {
    let ok = |s: String| Ok((s, 0));
    match cli.cmd {
        Cmd::Gen { what, format } => {
            let g = match what {
                GenCmd::Ct { h, k } => ct_with_budget(h, k, cli.budget_vertices)?,
                GenCmd::StarOfBalls { apices, pieces, piece_size } => {
                    let size = apices as u128 + pieces as u128 * piece_size as u128;
                    if size > cli.budget_vertices as u128 {
                        return Err(Fail(3, format!("star of balls would have {size} vertices, over the budget of {}", cli.budget_vertices)));
                    }
                    star_of_balls(apices, pieces, piece_size)
                }
                GenCmd::Caterpillar { spine, leaves } => {
                    let size = spine as u128 * (1 + leaves as u128);
                    if size > cli.budget_vertices as u128 {
                        return Err(Fail(3, format!("caterpillar would have {size} vertices, over the budget of {}", cli.budget_vertices)));
                    }
                    caterpillar(spine, leaves)
                }
                GenCmd::Join { a, b } => join(&read_graph(Some(&a))?, &read_graph(Some(&b))?, cli.budget_vertices)?,
                GenCmd::Copies { count, input } => disjoint_copies(count, &read_graph(input.input.as_ref())?, cli.budget_vertices)?,
            };
            ok(emit_graph(&g, format))
        }
        Cmd::Depth(input) => ok(connected_tree_depth(&read_graph(input.input.as_ref())?)?.to_json()),
        Cmd::Minor { pattern, heuristic, restarts, input } => {
            let host = read_graph(input.input.as_ref())?;
            let pattern = read_graph(Some(&pattern))?;
            let opts = MinorOptions {
                mode: if heuristic {
                    MinorMode::Heuristic { seed: cli.seed, restarts }
                } else {
                    MinorMode::Exhaustive
                },
                node_budget: cli.budget_nodes,
                ..MinorOptions::default()
            };
            match has_minor_with(&host, &pattern, &opts)? {
                MinorOutcome::Present(m) => ok(m.to_json()),
                MinorOutcome::Absent => Ok((r#"{"present":false}"#.into(), 1)),
                MinorOutcome::Unknown => Err(Fail(3, "heuristic search found no model; absence not established".into())),
            }
        }
        Cmd::Color { exact, k, d, scheme, params, input } => {
            let g = read_graph(input.input.as_ref())?;
            if exact {
                let (k, d) = (k.expect("required by clap"), d.expect("required by clap"));
                let r = decide_defective_with_budget(&g, k, d, cli.budget_nodes)?;
                let doc = serde_json::to_string(&r).expect("serialisable");
                return Ok((doc, if r.feasible { 0 } else { 1 }));
            }
            let (scheme, params) = match (scheme, params) {
                (Some(s), Some(p)) => (read_scheme(&s)?, read_params(&p)?),
                _ => return Err(usage("color needs --exact or --scheme with --params")),
            };
            ok(color_from_scheme(&scheme, &params, &g)?.to_json())
        }
        Cmd::Scheme { what } => match what {
            SchemeCmd::Build { params, input } => {
                let g = read_graph(input.input.as_ref())?;
                ok(scheme_to_json(&build_scheme(&g, &read_params(&params)?)?))
            }
            SchemeCmd::Certify { params, scheme, input } => {
                let g = read_graph(input.input.as_ref())?;
                let cert = certify_scheme(&read_scheme(&scheme)?, &read_params(&params)?, &g);
                let doc = serde_json::to_string(&cert).expect("serialisable");
                Ok((doc, if cert.is_clean() { 0 } else { 1 }))
            }
            SchemeCmd::Color { params, scheme, input } => {
                let g = read_graph(input.input.as_ref())?;
                ok(color_from_scheme(&read_scheme(&scheme)?, &read_params(&params)?, &g)?.to_json())
            }
        },
        Cmd::Constants { h, k, r, d_homo, n1, n2 } => {
            if h < 3 || k == 0 || r == 0 || d_homo == 0 || n1 == 0 || n2 == 0 {
                return Err(usage("constants need h >= 3 and positive k, r, d-homo, n1, n2"));
            }
            ok(serde_json::to_string(&paper_constants(h, k, r, d_homo, n1, n2)).expect("serialisable"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((doc, code)) => {
            let mut out = io::stdout().lock();
            if writeln!(out, "{doc}").is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(Fail(code, msg)) => {
            eprintln!("defcol: {msg}");
            ExitCode::from(code)
        }
    }
}
