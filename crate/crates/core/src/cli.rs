//! Command-line front end.
//!
//! Exit codes: 0 ok, 1 input error, 2 internal invariant failure, 3 the
//! generic and flag-complex pipelines disagree.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::arrangement::parse_arrangement;
use crate::complex::{assemble_complex_to, formality_report, verdict};
use crate::error::Error;
use crate::graphic::{
    boundary_matrices, cross_check, flag_complex, flag_formality_level, graphic_rank, parse_graph,
    simplicial_homology, CrossCheckReport, Graph, LevelAgreement,
};
use crate::linalg::Matrix;
use crate::random::{GnpSampler, Probability, GENERATOR_NAME};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "formality", version, about = "Decide k-formality of hyperplane arrangements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Relation complex and formality level of an arrangement file.
    Arr {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Assemble levels only up to K.
        #[arg(long = "max-k", value_name = "K")]
        max_k: Option<usize>,
    },
    /// Clique counts, flag homology and the formality level of the graphic
    /// arrangement of a graph file.
    Graph {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compare the lattice pipeline with the flag complex on a connected graph.
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run `verify` on seeded random G(n, p) graphs.
    Random {
        #[arg(long)]
        n: usize,
        /// Edge probability as NUM/DEN.
        #[arg(long)]
        p: Probability,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        json: bool,
    },
}

/// Machine-readable report shared by all modes.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub mode: &'static str,
    pub ambient_dim: usize,
    pub num_hyperplanes: usize,
    pub rank: usize,
    pub d_dims: Vec<usize>,
    pub d_ranks: Vec<usize>,
    pub homology: Vec<usize>,
    pub formality_level: Option<usize>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clique_counts: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag_homology: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_level_agreement: Option<Vec<bool>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<LevelAgreement>>,
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

fn tuple(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn level_text(level: Option<usize>) -> String {
    level.map_or_else(|| "n/a".to_string(), |l| l.to_string())
}

/// Runs `arr`: parse, assemble, report.
pub fn run_arr(text: &str, max_k: Option<usize>) -> Result<Report, Failure> {
    let a = parse_arrangement(text).map_err(Error::from)?;
    let c = assemble_complex_to(&a, max_k.unwrap_or(a.rank()))?;
    let r = formality_report(&c)?;
    Ok(Report {
        mode: "arr",
        ambient_dim: a.ambient_dim(),
        num_hyperplanes: a.len(),
        rank: a.rank(),
        verdict: r.verdict(),
        formality_level: Some(r.formality_level),
        d_dims: r.d_dims,
        d_ranks: r.d_ranks,
        homology: r.homology,
        max_k,
        ..Report::default()
    })
}

/// Runs `graph`: flag complex only, levels read off via the identification
/// `D_k = C_k` for `k >= 1`.
pub fn run_graph(g: &Graph) -> Report {
    let components = g.num_components();
    let rank = graphic_rank(g);
    let fc = flag_complex(g, g.num_vertices());
    let counts = fc.face_counts();
    let cc = boundary_matrices(&fc);
    let flag_h = simplicial_homology(&cc, &counts);

    let mut d_dims = vec![g.num_vertices()];
    d_dims.extend((1..=rank).map(|k| counts.get(k).copied().unwrap_or(0)));
    let d_ranks: Vec<usize> = (1..=rank)
        .map(|k| cc.boundary(k).map_or(0, Matrix::rank))
        .collect();
    let homology: Vec<usize> = (1..rank).map(|i| flag_h.get(i).copied().unwrap_or(0)).collect();
    let connected = g.is_connected() && g.num_edges() > 0;
    let formality_level = connected.then(|| flag_formality_level(&flag_h, rank));
    let verdict = match formality_level {
        Some(l) => verdict(l, rank, rank),
        None => "undetermined: the criterion needs a connected graph with an edge".to_string(),
    };
    Report {
        mode: "graph",
        ambient_dim: g.num_vertices(),
        num_hyperplanes: g.num_edges(),
        rank,
        d_dims,
        d_ranks,
        homology,
        formality_level,
        verdict,
        components: Some(components),
        clique_counts: Some(counts),
        flag_homology: Some(flag_h),
        ..Report::default()
    }
}

pub fn verify_report(r: &CrossCheckReport) -> Report {
    Report {
        mode: "verify",
        ambient_dim: r.num_vertices,
        num_hyperplanes: r.num_edges,
        rank: r.rank,
        d_dims: r.generic.d_dims.clone(),
        d_ranks: r.generic.d_ranks.clone(),
        homology: r.generic.homology.clone(),
        formality_level: Some(r.formality_level()),
        verdict: r.generic.verdict(),
        components: Some(1),
        clique_counts: Some(r.clique_counts.clone()),
        flag_homology: Some(r.flag_homology.clone()),
        agreement: Some(r.agreement()),
        per_level_agreement: Some(r.per_level_agreement()),
        levels: Some(r.levels.clone()),
        ..Report::default()
    }
}

pub fn run_verify(g: &Graph) -> Result<Report, Failure> {
    Ok(verify_report(&cross_check(g)?))
}

fn exit_for(report: &Report) -> i32 {
    match report.agreement {
        Some(false) => EXIT_DISAGREEMENT,
        _ => EXIT_OK,
    }
}

/// Text rendering. Every number printed here is also a JSON field.
pub fn render_text(r: &Report) -> String {
    let mut s = String::new();
    let _ = write!(
        s,
        "mode={} ambient_dim={} hyperplanes={}",
        r.mode, r.ambient_dim, r.num_hyperplanes
    );
    if let Some(c) = r.components {
        let _ = write!(s, " components={c}");
    }
    if let Some(k) = r.max_k {
        let _ = write!(s, " max_k={k}");
    }
    s.push('\n');
    if let (Some(a), Some(h)) = (&r.clique_counts, &r.flag_homology) {
        let _ = writeln!(s, "cliques a={} flag H={}", tuple(a), tuple(h));
    }
    let _ = writeln!(
        s,
        "rank={}, D={}, H={}, level={} ({})",
        r.rank,
        tuple(&r.d_dims),
        tuple(&r.homology),
        level_text(r.formality_level),
        r.verdict
    );
    let _ = writeln!(s, "d_ranks={}", tuple(&r.d_ranks));
    if let Some(levels) = &r.levels {
        for l in levels {
            let _ = writeln!(
                s,
                "level {}: generic={} special={} cliques={} dims={} columns={} boundary={} blocks={}",
                l.level,
                l.generic_dim,
                l.special_dim,
                l.clique_count,
                ok(l.dims_agree),
                ok(l.columns_agree),
                ok(l.boundary_agrees),
                ok(l.blocks_are_cliques)
            );
        }
    }
    if let Some(a) = r.agreement {
        let _ = writeln!(s, "agreement={a}");
    }
    s
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct RandomInstance {
    index: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<Report>,
}

#[derive(Serialize)]
struct RandomSummary {
    generated: usize,
    run: usize,
    skipped: usize,
    agreements: usize,
    disagreements: usize,
    level_counts: BTreeMap<usize, usize>,
}

#[derive(Serialize)]
struct RandomRun {
    mode: &'static str,
    generator: &'static str,
    seed: u64,
    n: usize,
    p: String,
    count: usize,
    instances: Vec<RandomInstance>,
    summary: RandomSummary,
}

/// Runs `random`. Returns the rendered output and the exit code; output is
/// produced even when an instance fails so the stream stays reproducible.
pub fn run_random(n: usize, p: Probability, seed: u64, count: usize, json: bool) -> (String, i32) {
    let mut instances = Vec::with_capacity(count);
    let mut summary = RandomSummary {
        generated: count,
        run: 0,
        skipped: 0,
        agreements: 0,
        disagreements: 0,
        level_counts: BTreeMap::new(),
    };
    let mut code = EXIT_OK;
    let mut text = format!(
        "# generator: {GENERATOR_NAME}\n# seed={seed} n={n} p={p} count={count}\n"
    );
    for (index, g) in GnpSampler::new(n, p, seed).take(count).enumerate() {
        let index = index + 1;
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let edge_text: Vec<String> = edges.iter().map(|(i, j)| format!("{i}-{j}")).collect();
        let _ = writeln!(text, "instance {index}: edges=[{}]", edge_text.join(" "));
        let skip = if g.num_edges() == 0 {
            Some("edgeless".to_string())
        } else if !g.is_connected() {
            Some(format!("disconnected ({} components)", g.num_components()))
        } else {
            None
        };
        if let Some(reason) = skip {
            let _ = writeln!(text, "  skipped: {reason}");
            summary.skipped += 1;
            instances.push(RandomInstance {
                index,
                edges,
                skipped: Some(reason),
                report: None,
            });
            continue;
        }
        match run_verify(&g) {
            Ok(report) => {
                summary.run += 1;
                if report.agreement == Some(true) {
                    summary.agreements += 1;
                } else {
                    summary.disagreements += 1;
                    code = code.max(EXIT_DISAGREEMENT);
                }
                if let Some(l) = report.formality_level {
                    *summary.level_counts.entry(l).or_default() += 1;
                }
                let _ = writeln!(
                    text,
                    "  a={} H={} level={} agreement={}",
                    tuple(report.clique_counts.as_deref().unwrap_or(&[])),
                    tuple(&report.homology),
                    level_text(report.formality_level),
                    report.agreement.unwrap_or(false)
                );
                instances.push(RandomInstance {
                    index,
                    edges,
                    skipped: None,
                    report: Some(report),
                });
            }
            Err(f) => {
                let _ = writeln!(text, "  error: {}", f.message);
                code = if f.code == EXIT_INTERNAL { EXIT_INTERNAL } else { code.max(f.code) };
                instances.push(RandomInstance {
                    index,
                    edges,
                    skipped: Some(format!("error: {}", f.message)),
                    report: None,
                });
            }
        }
    }
    let levels: Vec<String> = summary
        .level_counts
        .iter()
        .map(|(l, c)| format!("{l}:{c}"))
        .collect();
    let _ = writeln!(
        text,
        "summary: generated={} run={} skipped={} agreements={} disagreements={} levels=[{}]",
        summary.generated,
        summary.run,
        summary.skipped,
        summary.agreements,
        summary.disagreements,
        levels.join(" ")
    );
    if json {
        let run = RandomRun {
            mode: "random",
            generator: GENERATOR_NAME,
            seed,
            n,
            p: p.to_string(),
            count,
            instances,
            summary,
        };
        (to_json(&run), code)
    } else {
        (text, code)
    }
}

fn render(report: &Report, json: bool) -> String {
    if json {
        to_json(report)
    } else {
        render_text(report)
    }
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::from(Error::from(e)))
}

/// Executes a parsed command, writing the report to `out` and errors to
/// `err`. Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result: Result<(String, i32), Failure> = match cli.command {
        Command::Arr { file, json, max_k } => read(&file)
            .and_then(|text| run_arr(&text, max_k))
            .map(|r| (render(&r, json), EXIT_OK)),
        Command::Graph { file, json } => load_graph(&file).map(|g| (render(&run_graph(&g), json), EXIT_OK)),
        Command::Verify { file, json } => load_graph(&file)
            .and_then(|g| run_verify(&g))
            .map(|r| (render(&r, json), exit_for(&r))),
        Command::Random {
            n,
            p,
            seed,
            count,
            json,
        } => {
            if n == 0 {
                Err(Failure {
                    code: EXIT_INPUT,
                    message: "--n must be at least 1".into(),
                })
            } else {
                Ok(run_random(n, p, seed, count, json))
            }
        }
    };
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
