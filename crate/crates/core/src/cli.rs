//! The `unfriendly` command-line tool.
//!
//! Exit codes: 0 success or verified, 1 verifier failure, 2 parse or
//! configuration error, 3 resource bound exceeded.

use std::fs;
use std::io::{self, BufReader, Write};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::closure::close;
use crate::coloring::{is_unfriendly_total, Color, PartialColoring};
use crate::error::{Error, Result};
use crate::filter::{audit, run_chain, Schedule};
use crate::graph::{generate, random_gnp, Family, FiniteGraph, LazyGraph, DEFAULT_BUDGET};
use crate::layered::{
    check_component_bound, layered_solve, maximal_bipartite_pair, BaseSolver, DegreeClassMap,
    LayeredConfig,
};
use crate::solve::limit::{limit_partition, LimitConfig};
use crate::solve::{
    solve_exact_bounded, solve_local, FlipPolicy, SolveReport, DEFAULT_EXHAUSTIVE_BOUND,
};

const VERIFIER_FAILED: u8 = 1;
const CONFIG_ERROR: u8 = 2;
const BOUND_EXCEEDED: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "unfriendly",
    version,
    about = "Unfriendly partitions of finite and countable graphs"
)]
pub struct Cli {
    /// Neighbor enumeration budget for lazy graphs.
    #[arg(long, global = true, env = "UNFRIENDLY_BUDGET",
          default_value_t = NonZeroUsize::new(DEFAULT_BUDGET).expect("positive default"))]
    pub budget: NonZeroUsize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a finite graph from a named family as an edge list.
    Generate {
        #[arg(long)]
        family: Family,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Compute a coloring and check it.
    Solve(SolveArgs),
    /// Check whether a total coloring is unfriendly.
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Extend a partial coloring by the closure operator.
    Close {
        graph: PathBuf,
        coloring: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Write the per-stage trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Compute the maximal bipartite pair for a class file.
    Pair {
        graph: PathBuf,
        classes: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also report which low components have at most this many neighbors.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Build a chain of colorings meeting requirements on a lazy graph.
    Filter(FilterArgs),
    /// Extract a coloring of an inner ball that extends through several levels.
    Limit(LimitArgs),
    /// Run a seeded batch of random graphs through a solver.
    Corpus(CorpusArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Local,
    Layered,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Lowest,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BaseArg {
    Exact,
    Local,
    Auto,
}

impl From<BaseArg> for BaseSolver {
    fn from(b: BaseArg) -> Self {
        match b {
            BaseArg::Exact => BaseSolver::Exact,
            BaseArg::Local => BaseSolver::Local,
            BaseArg::Auto => BaseSolver::Auto,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScheduleArg {
    Diagonal,
    File,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
    pub method: MethodArg,
    /// Largest vertex count accepted by the exact solver.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_BOUND)]
    pub bound: usize,
    /// Starting total coloring for local search (default: all 0).
    #[arg(long)]
    pub start: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OrderArg::Lowest)]
    pub order: OrderArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Class file for the layered method.
    #[arg(long)]
    pub classes: Option<PathBuf>,
    /// Put vertices of degree at least this in the high class (layered).
    #[arg(long, conflicts_with = "classes")]
    pub threshold: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub repetitions: usize,
    #[arg(long, value_enum, default_value_t = BaseArg::Auto)]
    pub base: BaseArg,
    /// Write the coloring here; the stats line then goes to stdout.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    /// Write the layered action log here.
    #[arg(long)]
    pub log: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FilterArgs {
    #[arg(long, default_value = "kinf")]
    pub family: Family,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    #[arg(long, default_value_t = 5)]
    pub horizon: usize,
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    #[arg(long, value_enum, default_value_t = ScheduleArg::Diagonal)]
    pub schedule: ScheduleArg,
    /// Requirement list, one `dom v` or `both v n` per line.
    #[arg(long, required_if_eq("schedule", "file"))]
    pub schedule_file: Option<PathBuf>,
    /// Write the chain log here.
    #[arg(long)]
    pub log: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LimitArgs {
    /// Lazy family (`ray`, `grid`, ...).
    #[arg(long, conflicts_with = "graph")]
    pub family: Option<Family>,
    /// Finite edge-list file, used in place of a family.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    #[arg(long, default_value_t = 4)]
    pub levels: usize,
    #[arg(long, default_value_t = 1)]
    pub inner_radius: usize,
    /// Cap on recorded solutions per level.
    #[arg(long, default_value_t = 10_000)]
    pub cap: usize,
    /// Write `prefix.txt` and one `level_K.txt` per level here.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CorpusArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
    pub method: MethodArg,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 1)]
    pub min_n: usize,
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    /// Edge probability; drawn uniformly per graph when absent.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ExhaustiveBound { .. }
        | Error::BudgetExhausted { .. }
        | Error::NoCommonExtension { .. } => BOUND_EXCEEDED,
        _ => CONFIG_ERROR,
    }
}

/// Runs a parsed command and returns its exit code.
pub fn run(cli: Cli) -> Result<u8> {
    let budget = cli.budget.get();
    match cli.command {
        Command::Generate { family, seed, out } => {
            if family.is_lazy() {
                return Err(Error::BadParameter(format!(
                    "`{family}` is infinite and has no edge-list form"
                )));
            }
            let g = generate(&family, seed)?
                .into_finite()
                .expect("finite family");
            emit(out.as_deref(), &g.to_edge_list())?;
            Ok(0)
        }
        Command::Solve(args) => cmd_solve(args),
        Command::Verify { graph, coloring } => {
            let g = read_graph(&graph)?;
            let c = read_coloring(&coloring)?;
            let verdict = is_unfriendly_total(&g, &c)?;
            if verdict.unfriendly {
                println!("unfriendly");
                Ok(0)
            } else {
                let list: Vec<String> = verdict.violators.iter().map(|v| v.to_string()).collect();
                println!("not unfriendly; violators: {}", list.join(" "));
                Ok(VERIFIER_FAILED)
            }
        }
        Command::Close {
            graph,
            coloring,
            out,
            trace,
        } => {
            let g = read_graph(&graph)?;
            let c = read_coloring(&coloring)?;
            if let Some(v) = c.domain().find(|&v| !g.contains(v)) {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: g.vertex_count(),
                });
            }
            let (closed, t) = close(&g, &c);
            emit(out.as_deref(), &closed.to_text())?;
            if let Some(path) = trace {
                fs::write(path, t.to_text())?;
            }
            Ok(0)
        }
        Command::Pair {
            graph,
            classes,
            out,
            bound,
        } => {
            let g = read_graph(&graph)?;
            let classes = read_classes(&classes, g.vertex_count())?;
            let pair = maximal_bipartite_pair(&g, &classes);
            emit(out.as_deref(), &pair.to_text())?;
            if let Some(k) = bound {
                print!("{}", check_component_bound(&g, &classes, k).to_text());
            }
            Ok(0)
        }
        Command::Filter(args) => cmd_filter(args, budget),
        Command::Limit(args) => cmd_limit(args, budget),
        Command::Corpus(args) => cmd_corpus(args),
    }
}

fn cmd_solve(args: SolveArgs) -> Result<u8> {
    let g = read_graph(&args.graph)?;
    let n = g.vertex_count();
    let policy = match args.order {
        OrderArg::Lowest => FlipPolicy::LowestIndexFirst,
        OrderArg::Random => FlipPolicy::SeededRandom(args.seed),
    };
    let report = match args.method {
        MethodArg::Exact => solve_exact_bounded(&g, args.bound)?,
        MethodArg::Local => {
            let start = match &args.start {
                Some(path) => read_coloring(path)?,
                None => PartialColoring::uniform(n, Color::Zero),
            };
            solve_local(&g, &start, policy)?
        }
        MethodArg::Layered => {
            let classes = match (&args.classes, args.threshold) {
                (Some(path), _) => read_classes(path, n)?,
                (None, Some(t)) => DegreeClassMap::by_degree(&g, t),
                (None, None) => {
                    return Err(Error::BadParameter(
                        "the layered method needs --classes or --threshold".into(),
                    ))
                }
            };
            let config = LayeredConfig {
                repetitions: args.repetitions,
                base: args.base.into(),
                exhaustive_bound: args.bound,
            };
            let layered = layered_solve(&g, &classes, config)?;
            if let Some(path) = &args.log {
                fs::write(path, layered.log_text())?;
            }
            layered.report
        }
    };
    let stats = format!(
        "# method cross_edges work verified\n{}\n",
        report.stats_line()
    );
    match &args.out {
        Some(path) => {
            fs::write(path, report.coloring.to_text())?;
            print!("{stats}");
        }
        None => {
            print!("{}", report.coloring.to_text());
            eprint!("{stats}");
        }
    }
    Ok(if report.verified { 0 } else { VERIFIER_FAILED })
}

fn cmd_filter(args: FilterArgs, budget: usize) -> Result<u8> {
    let g = lazy_family(&args.family, args.seed)?;
    let schedule = match args.schedule {
        ScheduleArg::Diagonal => Schedule::Diagonal,
        ScheduleArg::File => {
            let path = args.schedule_file.as_ref().ok_or_else(|| {
                Error::BadParameter("--schedule file needs --schedule-file".into())
            })?;
            Schedule::parse_listed(BufReader::new(fs::File::open(path)?))?
        }
    };
    let state = run_chain(g.as_ref(), &schedule, args.steps, budget)?;
    if let Some(path) = &args.log {
        fs::write(path, state.log_text())?;
    }
    let report = audit(&state, g.as_ref(), args.horizon, args.depth, budget)?;
    print!("{}", report.to_text());
    Ok(0)
}

fn cmd_limit(args: LimitArgs, budget: usize) -> Result<u8> {
    let g: Box<dyn LazyGraph> = match (&args.family, &args.graph) {
        (Some(family), _) => lazy_family(family, args.seed)?,
        (None, Some(path)) => Box::new(crate::graph::FiniteAsLazy(read_graph(path)?)),
        (None, None) => {
            return Err(Error::BadParameter(
                "limit needs --family or --graph".into(),
            ));
        }
    };
    let config = LimitConfig {
        levels: args.levels,
        inner_radius: args.inner_radius,
        budget,
        solution_cap: args.cap,
        ..LimitConfig::default()
    };
    let tower = limit_partition(g.as_ref(), args.root, &config)?;
    println!("# level radius vertices solutions sampled");
    for (k, level) in tower.levels.iter().enumerate() {
        println!(
            "{k} {} {} {} {}",
            level.ball.radius,
            level.ball.vertices.len(),
            level.solutions.len(),
            level.sampled
        );
    }
    let largest = tower.levels.last().expect("at least one level");
    let witness = &largest.solutions[largest.witness];
    let ball = &largest.ball;
    let interior_ok = ball.interior_locals().into_iter().all(|i| {
        let (same, opposite) = ball.graph.neighbors(i).iter().fold((0, 0), |(s, o), &j| {
            if witness[j] == witness[i] {
                (s + 1, o)
            } else {
                (s, o + 1)
            }
        });
        opposite >= same
    });
    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("prefix.txt"), tower.stable_prefix.to_text())?;
        for (k, level) in tower.levels.iter().enumerate() {
            fs::write(
                dir.join(format!("level_{k}.txt")),
                level.solution_coloring(level.witness).to_text(),
            )?;
        }
    } else {
        print!("{}", tower.stable_prefix.to_text());
    }
    Ok(if interior_ok { 0 } else { VERIFIER_FAILED })
}

/// One corpus instance: id, graph and solver output.
struct CorpusRow {
    id: usize,
    n: usize,
    m: usize,
    report: SolveReport,
}

fn cmd_corpus(args: CorpusArgs) -> Result<u8> {
    if args.count == 0 || args.min_n == 0 || args.min_n > args.max_n {
        return Err(Error::BadParameter(
            "need count >= 1 and 1 <= min-n <= max-n".into(),
        ));
    }
    if let Some(p) = args.p {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::BadParameter(format!(
                "edge probability {p} not in [0, 1]"
            )));
        }
    }
    if args.method == MethodArg::Exact && args.max_n > DEFAULT_EXHAUSTIVE_BOUND {
        return Err(Error::ExhaustiveBound {
            n: args.max_n,
            bound: DEFAULT_EXHAUSTIVE_BOUND,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let graphs: Vec<FiniteGraph> = (0..args.count)
        .map(|_| {
            let n = rng.gen_range(args.min_n..=args.max_n);
            let p = args.p.unwrap_or_else(|| rng.gen());
            let mut graph_rng = ChaCha8Rng::seed_from_u64(rng.gen());
            random_gnp(n, p, &mut graph_rng)
        })
        .collect();
    let rows = graphs
        .par_iter()
        .enumerate()
        .map(|(id, g)| {
            let report = corpus_solve(g, args.method)?;
            Ok(CorpusRow {
                id,
                n: g.vertex_count(),
                m: g.edge_count(),
                report,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut text = String::from("# graph_id n m method verified cross_edges work\n");
    let mut passed = 0;
    for row in &rows {
        passed += usize::from(row.report.verified);
        text.push_str(&format!(
            "{} {} {} {} {} {} {}\n",
            row.id,
            row.n,
            row.m,
            row.report.method,
            row.report.verified,
            row.report.cross_edges,
            row.report.work
        ));
    }
    text.push_str(&format!(
        "# pass_rate {passed}/{} {:.6}\n",
        rows.len(),
        passed as f64 / rows.len() as f64
    ));
    emit(args.out.as_deref(), &text)?;
    Ok(if passed == rows.len() {
        0
    } else {
        VERIFIER_FAILED
    })
}

fn corpus_solve(g: &FiniteGraph, method: MethodArg) -> Result<SolveReport> {
    match method {
        MethodArg::Exact => solve_exact_bounded(g, DEFAULT_EXHAUSTIVE_BOUND),
        MethodArg::Local => solve_local(
            g,
            &PartialColoring::uniform(g.vertex_count(), Color::Zero),
            FlipPolicy::LowestIndexFirst,
        ),
        MethodArg::Layered => {
            // High class: degree above the average.
            let n = g.vertex_count();
            let threshold = (2 * g.edge_count()).div_ceil(n.max(1)) + 1;
            let classes = DegreeClassMap::by_degree(g, threshold);
            Ok(layered_solve(g, &classes, LayeredConfig::default())?.report)
        }
    }
}

fn lazy_family(family: &Family, seed: u64) -> Result<Box<dyn LazyGraph>> {
    generate(family, seed)?.into_lazy().ok_or_else(|| {
        Error::BadParameter(format!(
            "`{family}` is a finite family; a lazy graph is needed"
        ))
    })
}

fn read_graph(path: &Path) -> Result<FiniteGraph> {
    FiniteGraph::parse_edge_list(BufReader::new(fs::File::open(path)?))
}

fn read_coloring(path: &Path) -> Result<PartialColoring> {
    PartialColoring::parse_text(BufReader::new(fs::File::open(path)?))
}

fn read_classes(path: &Path, n: usize) -> Result<DegreeClassMap> {
    DegreeClassMap::parse_text(BufReader::new(fs::File::open(path)?), n)
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
