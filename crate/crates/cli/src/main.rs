//! `alphabound` — spectral upper bounds for independence numbers of graphs
//! and even uniform hypergraphs, over edge-list files.
//!
//! Exit codes: 0 on success (including negative answers such as an
//! uncertified set), 1 when a computation is refused because a mathematical
//! precondition fails (the message names the violated hypothesis) or a
//! resource cap is exceeded, 2 on parse or I/O errors.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use alphabound::constructions::{
    join, join_bound_comparison, odd_bipartite_complete, pendant_graph, regular_generator,
};
use alphabound::exact::{exact_alpha, exact_alpha_t, shannon_lower, DEFAULT_POWER_CAP};
use alphabound::graph::{parse_graph, ParseMode};
use alphabound::graph_bounds::{
    haemers_bound, hoffman_bound, laplacian_bound, ratio_bound, ratio_equality_witness,
    theta_certify, BoundReport,
};
use alphabound::hypergraph::{parse_hypergraph, TSet};
use alphabound::hypergraph_bounds::{
    signed_t_independence_auto, signed_t_independence_bound, strong_independence_bound,
    t_independence_bound, t_independence_equality_witness, LambdaSource,
};
use alphabound::linalg::sym_eigen;
use alphabound::tensor_eigen::{min_h_eigenvalue, SolverConfig, DEFAULT_SEED};
use alphabound::{Error, Graph, Hypergraph};
use clap::{Args, Parser, Subcommand};

use report::{
    render_human, Artifact, BoundEntry, CertificateEntry, ExactEntry, Minimum, Report, Skipped,
    WitnessDetail, WitnessEntry, EXACT_LAMBDA_TOL,
};

#[derive(Parser)]
#[command(
    name = "alphabound",
    version,
    about = "Spectral independence bounds with certificates and exact cross-checks",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// RNG seed for the tensor eigensolver; equal seeds give byte-identical
    /// reports (up to meta.runtime_ms).
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Descent starts for the tensor eigensolver.
    #[arg(long, global = true, default_value_t = 64)]
    starts: usize,

    /// Eigen-equation residual below which a solver run counts as converged.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,

    /// Emit the JSON report instead of a table.
    #[arg(long, global = true)]
    json: bool,

    /// Node budget for the exact branch-and-bound searches.
    #[arg(long, global = true, default_value_t = alphabound::exact::DEFAULT_NODE_BUDGET)]
    budget: u64,

    /// Renumber sparsely-numbered vertex ids densely while parsing instead
    /// of treating gaps as errors.
    #[arg(long, global = true)]
    compact: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Upper bounds from spectra, with an exact cross-check when feasible.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Certificates that pin the independence and theta numbers exactly.
    #[command(subcommand)]
    Certify(CertifyCmd),
    /// Structural equality characterizations for a candidate set.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Exact brute-force searches.
    #[command(subcommand)]
    Exact(ExactCmd),
    /// Generators for the built-in families.
    #[command(subcommand)]
    Construct(ConstructCmd),
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// All applicable graph bounds from an edge-list file.
    Graph {
        /// Edge-list file (`n <N>` header optional, `u v` per line).
        #[arg(required_unless_present = "dir", conflicts_with = "dir")]
        file: Option<PathBuf>,
        /// Process every file in the directory, sorted by name.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// The t-independence bound of an even uniform hypergraph.
    Hypergraph {
        /// Hyperedge-list file (`k`/`n` headers optional, one edge per line).
        #[arg(required_unless_present = "dir", conflicts_with = "dir")]
        file: Option<PathBuf>,
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Intersection size t; its parity selects the unsigned (odd) or
        /// signed (even) route.
        #[arg(long)]
        t: usize,
        /// Treat this as the exact minimum H-eigenvalue instead of running
        /// the solver.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<f64>,
    },
}

#[derive(Subcommand)]
enum CertifyCmd {
    /// Certify α = θ = |S| for an independent set with enough outside
    /// coverage.
    Theta {
        file: PathBuf,
        /// Comma-separated vertex ids.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<u32>,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Check the structural equality characterization of the ratio bound
    /// (graphs) or the t-independence bound (hypergraphs, with --t).
    Equality {
        file: PathBuf,
        /// Comma-separated vertex ids.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<u32>,
        /// Check the hypergraph characterization at this t; omit for the
        /// graph one.
        #[arg(long)]
        t: Option<usize>,
        /// Exact minimum H-eigenvalue, replacing the solver (hypergraphs).
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<f64>,
    },
}

#[derive(Subcommand)]
enum ExactCmd {
    /// Maximum independent set by branch and bound.
    Alpha { file: PathBuf },
    /// Maximum t-independent set by exhaustive search.
    AlphaT {
        file: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// Shannon capacity lower bound max α(G^k)^{1/k}, k ≤ 2.
    PowerAlpha {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
}

#[derive(Args)]
struct JoinSpec {
    /// Order of the first (cycle-like) regular part.
    #[arg(long)]
    n1: usize,
    /// Degree of the first part.
    #[arg(long)]
    r1: usize,
    /// Order of the second part.
    #[arg(long)]
    n2: usize,
    /// Degree of the second part.
    #[arg(long)]
    r2: usize,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// All k-sets meeting side A (size a) in exactly t vertices and side B
    /// (size b) in k−t.
    OddBipartite {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// Attach pendant vertices to every vertex of a graph and certify the
    /// pendant set.
    Pendant {
        file: PathBuf,
        /// Comma-separated pendant counts, one per vertex.
        #[arg(long, value_delimiter = ',', required = true)]
        pendants: Vec<usize>,
    },
    /// The join of two graphs from files.
    Join { file1: PathBuf, file2: PathBuf },
    /// Join two generated regular graphs and compare three bounds on the
    /// result, spectral against closed form.
    JoinComparison(JoinSpec),
}

// ---- error plumbing ------------------------------------------------------

enum CliError {
    Lib(Error),
    Io(PathBuf, std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(..) | CliError::Lib(Error::Parse { .. } | Error::Input(_)) => 2,
            CliError::Lib(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "cannot read {}: {e}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Lib(e)
    }
}

type CliResult<T> = Result<T, CliError>;

// ---- shared context ------------------------------------------------------

struct Ctx {
    seed: u64,
    starts: usize,
    tol: f64,
    budget: u64,
    mode: ParseMode,
}

impl Ctx {
    fn solver(&self) -> SolverConfig {
        SolverConfig {
            starts: self.starts,
            seed: self.seed,
            residual_tol: self.tol,
            ..SolverConfig::default()
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn load_graph(path: &Path, ctx: &Ctx) -> CliResult<Graph> {
    Ok(parse_graph(&read(path)?, ctx.mode)?)
}

fn load_hypergraph(path: &Path, ctx: &Ctx) -> CliResult<Hypergraph> {
    Ok(parse_hypergraph(&read(path)?, ctx.mode)?)
}

/// Regular files in `dir`, sorted by name; the corpus processing order.
fn corpus(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::Io(dir.to_path_buf(), e))?;
    let mut files = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| CliError::Io(dir.to_path_buf(), e))?;
        let path = entry.path();
        if path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

// ---- operations ----------------------------------------------------------

fn bounds_graph(g: &Graph, input: String, ctx: &Ctx) -> CliResult<Report> {
    let clock = Instant::now();
    let mut r = Report::new(input, ctx.seed);
    r.parameters.insert("budget", ctx.budget.into());

    type BoundFn = fn(&Graph) -> alphabound::Result<BoundReport>;
    let all: [(&'static str, BoundFn); 4] = [
        ("hoffman", hoffman_bound),
        ("haemers", haemers_bound),
        ("laplacian", laplacian_bound),
        ("beta1", ratio_bound),
    ];
    for (name, bound) in all {
        match bound(g) {
            Ok(rep) => r.bounds.push(BoundEntry::graph(rep)),
            Err(e @ Error::Refusal { .. }) => r.skipped.push(Skipped {
                name,
                reason: e.to_string(),
            }),
            Err(e) => return Err(e.into()),
        }
    }
    match exact_alpha(g, ctx.budget) {
        Ok(res) => r.exact = Some(ExactEntry::Alpha(res)),
        Err(e @ Error::CapExceeded { .. }) => r.skipped.push(Skipped {
            name: "exact-alpha",
            reason: e.to_string(),
        }),
        Err(e) => return Err(e.into()),
    }
    r.mark_tightness();
    r.meta.runtime_ms = clock.elapsed().as_millis();
    Ok(r)
}

fn bounds_hypergraph(
    h: &Hypergraph,
    input: String,
    t: usize,
    lambda_override: Option<f64>,
    ctx: &Ctx,
) -> CliResult<Report> {
    let clock = Instant::now();
    let mut r = Report::new(input, ctx.seed);
    r.parameters.insert("t", t.into());
    r.parameters.insert("budget", ctx.budget.into());
    if lambda_override.is_none() {
        r.parameters.insert("starts", ctx.starts.into());
    }

    let bound = if t % 2 == 1 {
        // Odd t: the unsigned adjacency tensor.
        let (lambda, source, diag) = match lambda_override {
            Some(v) => (v, LambdaSource::ExactKnown, None),
            None => {
                let pair = min_h_eigenvalue(h, &ctx.solver())?;
                (pair.lambda, LambdaSource::SolverHeuristic, Some(pair))
            }
        };
        let rep = if t == 1 {
            strong_independence_bound(h, lambda, source)?
        } else {
            t_independence_bound(h, t, lambda, source)?
        };
        r.minimum = Some(Minimum {
            lambda: rep.lambda,
            source: rep.lambda_source,
            residual: diag.as_ref().map(|p| p.residual),
            converged: diag.as_ref().map(|p| p.converged),
            starts_used: diag.as_ref().map(|p| p.starts_used),
        });
        rep
    } else {
        // Even t: the tensor signed by a maximum t-independent set.
        let (rep, set, residual, converged) = match lambda_override {
            None => {
                let outcome = signed_t_independence_auto(h, t, &ctx.solver(), ctx.budget)?;
                (
                    outcome.report,
                    outcome.set,
                    Some(outcome.solver_residual),
                    Some(outcome.solver_converged),
                )
            }
            Some(v) => {
                let alpha = exact_alpha_t(h, t, ctx.budget)?;
                if !alpha.exact {
                    return Err(Error::Refusal {
                        what: "signed t-independence bound".into(),
                        hypothesis: "the signing needs a maximum t-independent set, but the \
                                     exact search exhausted its node budget"
                            .into(),
                    }
                    .into());
                }
                let s = TSet::new(h, alpha.witness, t)?;
                let rep = signed_t_independence_bound(h, &s, v, LambdaSource::ExactKnown)?;
                (rep, s.vertices().to_vec(), None, None)
            }
        };
        r.parameters.insert("signing-set", set.into());
        r.minimum = Some(Minimum {
            lambda: rep.lambda,
            source: rep.lambda_source,
            residual,
            converged,
            starts_used: None,
        });
        rep
    };

    let tolerance = match bound.lambda_source {
        LambdaSource::ExactKnown => EXACT_LAMBDA_TOL,
        LambdaSource::SolverHeuristic => ctx.tol,
    };
    r.bounds.push(BoundEntry::hypergraph(&bound, tolerance));

    match exact_alpha_t(h, t, ctx.budget) {
        Ok(res) => {
            if res.exact {
                let witness = t_independence_equality_witness(h, t, &res.witness, bound.lambda)?;
                r.witness = Some(WitnessEntry {
                    set: res.witness.clone(),
                    t: Some(t),
                    lambda: bound.lambda,
                    detail: WitnessDetail::TIndependence(witness),
                });
            }
            r.exact = Some(ExactEntry::Alpha(res));
        }
        Err(e @ Error::CapExceeded { .. }) => r.skipped.push(Skipped {
            name: "exact-alpha-t",
            reason: e.to_string(),
        }),
        Err(e) => return Err(e.into()),
    }
    r.mark_tightness();
    r.meta.runtime_ms = clock.elapsed().as_millis();
    Ok(r)
}

fn certify_theta(path: &Path, set: Vec<u32>, ctx: &Ctx) -> CliResult<Report> {
    let clock = Instant::now();
    let g = load_graph(path, ctx)?;
    let mut r = Report::new(path.display().to_string(), ctx.seed);
    let certificate = theta_certify(&g, &set)?;
    r.certificates.push(CertificateEntry {
        name: "theta",
        set,
        certificate,
    });
    r.meta.runtime_ms = clock.elapsed().as_millis();
    Ok(r)
}

fn check_equality(
    path: &Path,
    set: Vec<u32>,
    t: Option<usize>,
    lambda_override: Option<f64>,
    ctx: &Ctx,
) -> CliResult<Report> {
    let clock = Instant::now();
    let mut r = Report::new(path.display().to_string(), ctx.seed);
    match t {
        None => {
            let g = load_graph(path, ctx)?;
            let lambda = sym_eigen(&g.adjacency_matrix())?.lambda_min();
            let witness = ratio_equality_witness(&g, &set)?;
            r.witness = Some(WitnessEntry {
                set,
                t: None,
                lambda,
                detail: WitnessDetail::Ratio(witness),
            });
        }
        Some(t) => {
            let h = load_hypergraph(path, ctx)?;
            r.parameters.insert("t", t.into());
            let (lambda, source, diag) = match lambda_override {
                Some(v) => (v, LambdaSource::ExactKnown, None),
                None => {
                    let pair = min_h_eigenvalue(&h, &ctx.solver())?;
                    (pair.lambda, LambdaSource::SolverHeuristic, Some(pair))
                }
            };
            r.minimum = Some(Minimum {
                lambda,
                source,
                residual: diag.as_ref().map(|p| p.residual),
                converged: diag.as_ref().map(|p| p.converged),
                starts_used: diag.as_ref().map(|p| p.starts_used),
            });
            let witness = t_independence_equality_witness(&h, t, &set, lambda)?;
            r.witness = Some(WitnessEntry {
                set,
                t: Some(t),
                lambda,
                detail: WitnessDetail::TIndependence(witness),
            });
        }
    }
    r.meta.runtime_ms = clock.elapsed().as_millis();
    Ok(r)
}

fn exact_cmd(cmd: &ExactCmd, ctx: &Ctx) -> CliResult<Report> {
    let clock = Instant::now();
    let mut r;
    match cmd {
        ExactCmd::Alpha { file } => {
            let g = load_graph(file, ctx)?;
            r = Report::new(file.display().to_string(), ctx.seed);
            r.parameters.insert("budget", ctx.budget.into());
            r.exact = Some(ExactEntry::Alpha(exact_alpha(&g, ctx.budget)?));
        }
        ExactCmd::AlphaT { file, t } => {
            let h = load_hypergraph(file, ctx)?;
            r = Report::new(file.display().to_string(), ctx.seed);
            r.parameters.insert("t", (*t).into());
            r.parameters.insert("budget", ctx.budget.into());
            r.exact = Some(ExactEntry::Alpha(exact_alpha_t(&h, *t, ctx.budget)?));
        }
        ExactCmd::PowerAlpha { file, k } => {
            let g = load_graph(file, ctx)?;
            r = Report::new(file.display().to_string(), ctx.seed);
            r.parameters.insert("k-max", (*k).into());
            r.parameters.insert("budget", ctx.budget.into());
            r.parameters.insert("power-cap", DEFAULT_POWER_CAP.into());
            r.exact = Some(ExactEntry::Power(shannon_lower(
                &g,
                *k,
                ctx.budget,
                DEFAULT_POWER_CAP,
            )?));
        }
    }
    r.meta.runtime_ms = clock.elapsed().as_millis();
    Ok(r)
}

fn construct_cmd(cmd: &ConstructCmd, ctx: &Ctx) -> CliResult<Report> {
    let clock = Instant::now();
    let mut r;
    match cmd {
        ConstructCmd::OddBipartite { t, k, a, b } => {
            let family = odd_bipartite_complete(*t, *k, *a, *b)?;
            r = Report::new(
                format!("odd-bipartite(t={t}, k={k}, a={a}, b={b})"),
                ctx.seed,
            );
            for (key, value) in [("t", t), ("k", k), ("a", a), ("b", b)] {
                r.parameters.insert(key, (*value).into());
            }
            let h = &family.hypergraph;
            r.artifact = Some(Artifact {
                kind: "hypergraph",
                n: h.n(),
                m: h.m(),
                k: Some(h.k()),
                pendants: Vec::new(),
                edge_list: h.to_edge_list(),
            });
            if let Some(lambda) = family.lambda_min {
                r.minimum = Some(Minimum {
                    lambda,
                    source: LambdaSource::ExactKnown,
                    residual: None,
                    converged: None,
                    starts_used: None,
                });
            }
        }
        ConstructCmd::Pendant { file, pendants } => {
            let g = load_graph(file, ctx)?;
            let built = pendant_graph(&g, pendants)?;
            r = Report::new(format!("pendant({})", file.display()), ctx.seed);
            r.artifact = Some(Artifact {
                kind: "graph",
                n: built.graph.n(),
                m: built.graph.m(),
                k: None,
                pendants: built.pendants.clone(),
                edge_list: built.graph.to_edge_list(),
            });
            r.certificates.push(CertificateEntry {
                name: "theta",
                set: built.pendants,
                certificate: built.certificate,
            });
        }
        ConstructCmd::Join { file1, file2 } => {
            let g1 = load_graph(file1, ctx)?;
            let g2 = load_graph(file2, ctx)?;
            let joined = join(&g1, &g2)?;
            r = Report::new(
                format!("join({}, {})", file1.display(), file2.display()),
                ctx.seed,
            );
            r.artifact = Some(Artifact {
                kind: "graph",
                n: joined.n(),
                m: joined.m(),
                k: None,
                pendants: Vec::new(),
                edge_list: joined.to_edge_list(),
            });
        }
        ConstructCmd::JoinComparison(spec) => {
            let g1 = regular_generator(spec.n1, spec.r1)?;
            let g2 = regular_generator(spec.n2, spec.r2)?;
            r = Report::new(
                format!(
                    "join-comparison(n1={}, r1={}, n2={}, r2={})",
                    spec.n1, spec.r1, spec.n2, spec.r2
                ),
                ctx.seed,
            );
            for (key, value) in [
                ("n1", spec.n1),
                ("r1", spec.r1),
                ("n2", spec.n2),
                ("r2", spec.r2),
            ] {
                r.parameters.insert(key, value.into());
            }
            r.comparison = Some(join_bound_comparison(&g1, &g2)?);
        }
    }
    r.meta.runtime_ms = clock.elapsed().as_millis();
    Ok(r)
}

// ---- dispatch ------------------------------------------------------------

/// The reports of one invocation; corpus mode always renders as a JSON
/// array, single inputs as one object.
struct Run {
    reports: Vec<Report>,
    corpus: bool,
}

fn run(cli: &Cli, ctx: &Ctx) -> CliResult<Run> {
    let single = |report: Report| Run {
        reports: vec![report],
        corpus: false,
    };
    match &cli.command {
        Command::Bounds(BoundsCmd::Graph { file, dir }) => match (file, dir) {
            (Some(file), _) => {
                let g = load_graph(file, ctx)?;
                Ok(single(bounds_graph(&g, file.display().to_string(), ctx)?))
            }
            (None, Some(dir)) => {
                let mut reports = Vec::new();
                for path in corpus(dir)? {
                    let g = load_graph(&path, ctx)?;
                    reports.push(bounds_graph(&g, path.display().to_string(), ctx)?);
                }
                Ok(Run {
                    reports,
                    corpus: true,
                })
            }
            (None, None) => unreachable!("clap enforces file or --dir"),
        },
        Command::Bounds(BoundsCmd::Hypergraph {
            file,
            dir,
            t,
            lambda,
        }) => match (file, dir) {
            (Some(file), _) => {
                let h = load_hypergraph(file, ctx)?;
                Ok(single(bounds_hypergraph(
                    &h,
                    file.display().to_string(),
                    *t,
                    *lambda,
                    ctx,
                )?))
            }
            (None, Some(dir)) => {
                let mut reports = Vec::new();
                for path in corpus(dir)? {
                    let h = load_hypergraph(&path, ctx)?;
                    reports.push(bounds_hypergraph(
                        &h,
                        path.display().to_string(),
                        *t,
                        *lambda,
                        ctx,
                    )?);
                }
                Ok(Run {
                    reports,
                    corpus: true,
                })
            }
            (None, None) => unreachable!("clap enforces file or --dir"),
        },
        Command::Certify(CertifyCmd::Theta { file, set }) => {
            Ok(single(certify_theta(file, set.clone(), ctx)?))
        }
        Command::Check(CheckCmd::Equality {
            file,
            set,
            t,
            lambda,
        }) => Ok(single(check_equality(file, set.clone(), *t, *lambda, ctx)?)),
        Command::Exact(cmd) => Ok(single(exact_cmd(cmd, ctx)?)),
        Command::Construct(cmd) => Ok(single(construct_cmd(cmd, ctx)?)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        seed: cli.seed,
        starts: cli.starts,
        tol: cli.tol,
        budget: cli.budget,
        mode: if cli.compact {
            ParseMode::Compact
        } else {
            ParseMode::Strict
        },
    };
    match run(&cli, &ctx) {
        Ok(run) => {
            let text = if cli.json {
                let mut text = if run.corpus {
                    serde_json::to_string_pretty(&run.reports)
                } else {
                    serde_json::to_string_pretty(&run.reports[0])
                }
                .expect("reports always serialize");
                text.push('\n');
                text
            } else {
                let rendered: Vec<String> = run.reports.iter().map(render_human).collect();
                rendered.join("\n")
            };
            // A closed pipe (e.g. `| head`) is a normal way to stop reading.
            use std::io::Write as _;
            match std::io::stdout().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: cannot write output: {e}");
                    ExitCode::from(2)
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
