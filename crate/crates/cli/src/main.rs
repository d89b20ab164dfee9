use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use dynmis::bench::{self, EngineKind, InitPolicy, RunConfig, DEFAULT_CHECK_CAP};
use dynmis::generators::{self, OpMix, PlrParams};
use dynmis::graph::{self, DynamicGraph, Strictness, UpdateOp, VertexId};
use dynmis::oracle::{self, Certificate, DEFAULT_ORACLE_CAP};

#[derive(Parser)]
#[command(name = "dynmis", version, about = "Dynamic maximum independent set maintenance")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay an update stream through an engine and emit per-step CSV.
    Run(RunArgs),
    /// Generate a graph in edge-list format.
    GenGraph(GenGraphArgs),
    /// Generate a random valid update stream for a graph.
    GenOps(GenOpsArgs),
    /// Exact gap between an independent set and the independence number.
    Gap(GapArgs),
    /// Check that a set is maximal and free of small swaps.
    Certify(CertifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Simple,
    Oneswap,
    Twoswap,
}

impl From<EngineArg> for EngineKind {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Simple => EngineKind::Simple,
            EngineArg::Oneswap => EngineKind::OneSwap,
            EngineArg::Twoswap => EngineKind::TwoSwap,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum InitArg {
    Greedy,
    File,
    Prefix,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, env = "DYNMIS_ENGINE", value_enum, default_value = "twoswap")]
    engine: EngineArg,
    #[arg(long, env = "DYNMIS_GRAPH")]
    graph: PathBuf,
    /// Op-stream file; when absent, `--gen-ops` ops are generated from `--seed`.
    #[arg(long, env = "DYNMIS_OPS")]
    ops: Option<PathBuf>,
    #[arg(long, env = "DYNMIS_GEN_OPS", default_value_t = 0)]
    gen_ops: usize,
    #[arg(long, env = "DYNMIS_MIX", default_value = "0.1,0.1,0.4,0.4", value_parser = parse_mix)]
    mix: OpMix,
    #[arg(long, env = "DYNMIS_INIT", value_enum, default_value = "greedy")]
    init: InitArg,
    /// Initial independent set file, required with `--init file`.
    #[arg(long, env = "DYNMIS_IS")]
    is: Option<PathBuf>,
    #[arg(long, env = "DYNMIS_CHECK_EVERY", default_value_t = 0)]
    check_every: usize,
    #[arg(long, env = "DYNMIS_CHECK_CAP", default_value_t = DEFAULT_CHECK_CAP)]
    check_cap: usize,
    /// Skip invalid ops instead of failing.
    #[arg(long, env = "DYNMIS_LENIENT")]
    lenient: bool,
    #[arg(long, env = "DYNMIS_SEED", default_value_t = 0)]
    seed: u64,
    /// Write CSV here instead of standard output.
    #[arg(long, env = "DYNMIS_CSV_OUT")]
    csv_out: Option<PathBuf>,
}

#[derive(Args)]
struct GenGraphArgs {
    #[command(subcommand)]
    family: Family,
    #[arg(long, env = "DYNMIS_OUT", global = true)]
    out: Option<PathBuf>,
    /// Also write the family's seed independent set here.
    #[arg(long, global = true)]
    is_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Family {
    /// Power-law random graph with about e^alpha / x^beta vertices of degree x.
    Plr {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, env = "DYNMIS_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Complete graph with every edge subdivided.
    Clique {
        #[arg(long)]
        n: usize,
    },
    /// Hypercube with every edge subdivided.
    Hypercube {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Args)]
struct GenOpsArgs {
    #[arg(long, env = "DYNMIS_GRAPH")]
    graph: PathBuf,
    #[arg(long)]
    count: usize,
    #[arg(long, env = "DYNMIS_MIX", default_value = "0.1,0.1,0.4,0.4", value_parser = parse_mix)]
    mix: OpMix,
    #[arg(long, env = "DYNMIS_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "DYNMIS_OUT")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GapArgs {
    #[arg(long, env = "DYNMIS_GRAPH")]
    graph: PathBuf,
    #[arg(long, env = "DYNMIS_IS")]
    is: PathBuf,
    #[arg(long, env = "DYNMIS_ORACLE_CAP", default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long, env = "DYNMIS_GRAPH")]
    graph: PathBuf,
    #[arg(long, env = "DYNMIS_IS")]
    is: PathBuf,
    /// Largest swap level to rule out.
    #[arg(short, long, default_value_t = 2)]
    k: usize,
}

fn parse_mix(s: &str) -> Result<OpMix, String> {
    let w: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match w.as_slice() {
        &[add_vertex, remove_vertex, add_edge, remove_edge] => {
            Ok(OpMix { add_vertex, remove_vertex, add_edge, remove_edge })
        }
        _ => Err(format!("expected four weights av,rv,ae,re, got {}", w.len())),
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path).with_context(|| format!("opening {}", path.display()))?))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load_graph(path: &Path, strictness: Strictness) -> Result<DynamicGraph> {
    graph::parse_graph(open(path)?, strictness).with_context(|| format!("parsing {}", path.display()))
}

fn load_set(path: &Path) -> Result<Vec<VertexId>> {
    graph::parse_vertex_set(open(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn run(args: RunArgs) -> Result<()> {
    let strictness = if args.lenient { Strictness::Lenient } else { Strictness::Strict };
    let g = load_graph(&args.graph, strictness)?;
    let ops: Vec<UpdateOp> = match &args.ops {
        Some(p) => graph::parse_ops(open(p)?).with_context(|| format!("parsing {}", p.display()))?,
        None => generators::gen_op_stream(&g, args.gen_ops, &args.mix, args.seed)?,
    };
    let init = match (args.init, &args.is) {
        (InitArg::Greedy, _) => InitPolicy::Greedy,
        (InitArg::Prefix, _) => InitPolicy::Prefix,
        (InitArg::File, Some(p)) => InitPolicy::Given(load_set(p)?),
        (InitArg::File, None) => bail!("--init file needs --is <path>"),
    };
    let cfg = RunConfig {
        engine: args.engine.into(),
        init,
        check_every: args.check_every,
        check_cap: args.check_cap,
        strictness,
    };
    let mut out = output(args.csv_out.as_deref())?;
    let result = bench::replay(&g, &ops, &cfg, &mut out);
    out.flush()?;
    let summary = result?;
    eprintln!("{summary}");
    Ok(())
}

fn gen_graph(args: GenGraphArgs) -> Result<()> {
    let (g, seed_is) = match args.family {
        Family::Plr { alpha, beta, seed } => (generators::gen_plr(&PlrParams::new(alpha, beta, seed))?, None),
        Family::Clique { n } => {
            if n < 3 {
                bail!("clique family needs n >= 3");
            }
            let (g, s) = generators::gen_subdivided_clique(n);
            (g, Some(s))
        }
        Family::Hypercube { n } => {
            if !(2..=20).contains(&n) {
                bail!("hypercube family needs 2 <= n <= 20");
            }
            let (g, s) = generators::gen_subdivided_hypercube(n);
            (g, Some(s))
        }
    };
    let mut out = output(args.out.as_deref())?;
    graph::write_graph(&g, &mut out)?;
    out.flush()?;
    match (args.is_out, seed_is) {
        (Some(p), Some(s)) => {
            let mut f = output(Some(&p))?;
            graph::write_vertex_set(&s, &mut f)?;
            f.flush()?;
        }
        (Some(_), None) => bail!("this family has no seed independent set"),
        _ => {}
    }
    Ok(())
}

fn gen_ops(args: GenOpsArgs) -> Result<()> {
    let g = load_graph(&args.graph, Strictness::Strict)?;
    let ops = generators::gen_op_stream(&g, args.count, &args.mix, args.seed)?;
    let mut out = output(args.out.as_deref())?;
    graph::write_ops(&ops, &mut out)?;
    out.flush()?;
    Ok(())
}

fn gap(args: GapArgs) -> Result<()> {
    let g = load_graph(&args.graph, Strictness::Strict)?;
    let m = load_set(&args.is)?;
    println!("{}", bench::gap_report(&g, &m, args.oracle_cap)?);
    Ok(())
}

fn certify(args: CertifyArgs) -> Result<()> {
    let g = load_graph(&args.graph, Strictness::Strict)?;
    let m = load_set(&args.is)?;
    oracle::certify_maximal(&g, &m)?;
    match oracle::certify_swap_free(&g, &m, args.k)? {
        Certificate::SwapFree => {
            println!("ok: maximal, no swaps up to level {}", args.k);
            Ok(())
        }
        Certificate::Swap(w) => bail!("{}-swap: out {:?}, in {:?}", w.level(), w.swap_out, w.swap_in),
    }
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run(a) => run(a),
        Command::GenGraph(a) => gen_graph(a),
        Command::GenOps(a) => gen_ops(a),
        Command::Gap(a) => gap(a),
        Command::Certify(a) => certify(a),
    }
}
