//! `pp`: invariants, partitions, verification, oracles, generators and batch
//! checks from the command line. Machine output is `key=value`, one per line.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use twoproper::check::{run_check, CheckOptions, Corpus, Statement};
use twoproper::exceptional::{generate, recognize_with_map, ExceptionalClass, F11Extra, F12Extra};
use twoproper::format::{emit_edge_list, emit_graph6, emit_partition, parse_graph, parse_partition, InputFormat};
use twoproper::generators::{
    complete, complete_bipartite, cycle, gen_random, gen_sharp_gt, gen_sharp_gt_prime, path, SharpnessSpec,
};
use twoproper::invariants::{summarize, IndependentSetReport};
use twoproper::oracle::{oracle_alpha_star, oracle_min_2pp, oracle_sigma_star, OracleBudget};
use twoproper::partition::{
    construct_2pp, construct_almost_2pp, h_three_part_partition, verify_partition, AlmostError, Partition,
    PartitionKind, PartitionOptions, PartitionOutcome,
};
use twoproper::Graph;

const EXIT_PRECONDITION: u8 = 2;
const EXIT_CONSTRUCTION: u8 = 3;
const EXIT_MALFORMED: u8 = 4;

#[derive(Parser)]
#[command(name = "pp", version, about = "2-connected vertex partitions under degree conditions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Graph6,
}

impl From<Format> for InputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Edgelist => InputFormat::EdgeList,
            Format::Graph6 => InputFormat::Graph6,
        }
    }
}

#[derive(Args)]
struct GraphInput {
    /// Graph file; standard input when absent or `-`.
    input: Option<PathBuf>,
    /// Input encoding; guessed from the first line when absent.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Print n, delta, sigma2, pi2, sigma*, alpha*, alpha and witnesses.
    Invariants(GraphInput),
    /// Construct a 2-proper (or almost 2-proper) partition.
    Partition {
        #[command(flatten)]
        graph: GraphInput,
        /// Construct an almost 2-proper partition instead.
        #[arg(long)]
        almost: bool,
        /// Try every end-block as root and keep the smallest result.
        #[arg(long)]
        all_roots: bool,
        /// Largest order for the exhaustive last resort; 0 disables it.
        #[arg(long)]
        oracle_fallback_budget: Option<usize>,
        /// Also write the partition file here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a partition file against a graph.
    Verify {
        graph: PathBuf,
        partition: PathBuf,
        /// Override the kind given in the partition file header.
        #[arg(long, value_parser = ["2proper", "almost"])]
        kind: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Brute-force sigma*, alpha* and minimum partition size.
    Oracle {
        #[command(flatten)]
        graph: GraphInput,
        /// Allow one K2 part (almost 2-proper).
        #[arg(long)]
        almost: bool,
        /// Largest order accepted by the partition search.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Print a named or random graph.
    Gen {
        #[command(subcommand)]
        which: GenCommand,
        /// Output encoding.
        #[arg(long, value_enum, default_value = "edgelist", global = true)]
        format: Format,
    },
    /// Check a statement over every labeled graph of one order or a random ensemble.
    TheoremCheck {
        /// Every labeled graph on N vertices (N <= 7).
        #[arg(long, value_name = "N", conflicts_with = "random")]
        exhaustive: Option<usize>,
        /// COUNT graphs G(N, P).
        #[arg(long, num_args = 3, value_names = ["COUNT", "N", "P"])]
        random: Option<Vec<String>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// ind, prop1, prop2, lemmas, corollary-pi, corollary-sigma, almost or claims.
        #[arg(long, default_value = "ind")]
        which: String,
        /// Permit the 2^21-graph corpus on 7 vertices.
        #[arg(long)]
        allow_n7: bool,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// A single edge.
    K2,
    /// Two triangles sharing a vertex.
    F5,
    /// Member of the order-11 exceptional family.
    F11 {
        /// Optional edges, comma-separated subset of ab1,ab2.
        #[arg(long = "L", default_value = "")]
        l: String,
    },
    /// Member of the order-12 exceptional family.
    F12 {
        /// Optional edges, comma-separated subset of ab1,ab2,ac9,b2c9.
        #[arg(long = "L")]
        l: String,
    },
    /// The H(s, t) family, 2 <= s <= t.
    H {
        s: usize,
        t: usize,
        /// Drop the a-b edge.
        #[arg(long)]
        minus: bool,
    },
    /// Cliques of the given sizes plus a hub joined to one vertex of each.
    Gt {
        #[arg(required = true)]
        sizes: Vec<usize>,
        /// Admit n = d(d+1) + 1.
        #[arg(long)]
        boundary: bool,
    },
    /// Cliques of the given sizes plus a hub joined to every vertex.
    GtPrime {
        #[arg(required = true)]
        sizes: Vec<usize>,
        /// Admit n = d(d+1) + 1.
        #[arg(long)]
        boundary: bool,
    },
    /// Complete graph K_n.
    Complete { n: usize },
    /// Cycle C_n.
    Cycle { n: usize },
    /// Path on n vertices.
    Path { n: usize },
    /// Complete bipartite graph K_{a,b}.
    Bipartite { a: usize, b: usize },
    /// G(n, p) from a seeded SplitMix64 stream.
    Random {
        n: usize,
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn env_budget(default: OracleBudget) -> Result<OracleBudget> {
    match std::env::var("PP_ORACLE_MAX_N") {
        Ok(v) => Ok(OracleBudget::new(v.trim().parse().with_context(|| format!("PP_ORACLE_MAX_N={v:?}"))?)),
        Err(_) => Ok(default),
    }
}

fn read_text(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading standard input")?;
            Ok(s)
        }
    }
}

fn load_graph(input: &GraphInput) -> Result<Graph> {
    let text = read_text(input.input.as_deref())?;
    parse_graph(&text, input.format.map(Into::into)).context("parsing graph")
}

fn join(vs: &[usize]) -> String {
    vs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn print_witness(key: &str, w: &IndependentSetReport) {
    println!("{key}={}", join(&w.vertices));
    println!("{key}_weight={}", w.weight);
}

fn cmd_invariants(input: &GraphInput) -> Result<ExitCode> {
    let g = load_graph(input)?;
    let s = summarize(&g).context("invariants need at least one vertex")?;
    println!("n={}", s.n);
    println!("delta={}", s.delta);
    println!("sigma2={}", s.sigma2);
    println!("pi2={}", s.pi2);
    println!("sigma_star={}", s.sigma_star);
    match &s.sigma_star_witness {
        Some(w) => print_witness("sigma_star_witness", w),
        None => println!("sigma_star_witness=none"),
    }
    println!("alpha_star={}", s.alpha_star);
    print_witness("alpha_star_witness", &s.alpha_star_witness);
    println!("alpha={}", s.alpha);
    Ok(ExitCode::SUCCESS)
}

fn emit_partition_result(p: &Partition, bound: usize, output: Option<&Path>) -> Result<()> {
    println!("parts={}", p.len());
    println!("parts_bound={bound}");
    let text = emit_partition(p);
    print!("{text}");
    if let Some(path) = output {
        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn cmd_partition(
    input: &GraphInput,
    almost: bool,
    all_roots: bool,
    budget: Option<usize>,
    output: Option<&Path>,
) -> Result<ExitCode> {
    let g = load_graph(input)?;
    let oracle = match budget {
        Some(0) => None,
        Some(k) => Some(OracleBudget::new(k)),
        None => Some(env_budget(OracleBudget::partitions())?),
    };
    let opts = PartitionOptions { all_roots, oracle };
    if almost {
        return match construct_almost_2pp(&g, &opts) {
            Ok((p, bound)) => {
                println!("outcome=partitioned");
                if let Some(r) = recognize_with_map(&g) {
                    println!("class={}", r.class);
                }
                emit_partition_result(&p, bound, output)?;
                Ok(ExitCode::SUCCESS)
            }
            Err(AlmostError::PreconditionFailed(w)) => {
                println!("outcome=precondition-failed");
                print_witness("witness", &w);
                Ok(ExitCode::from(EXIT_PRECONDITION))
            }
            Err(e @ AlmostError::NotFound(_)) => {
                println!("outcome=construction-failure");
                println!("reason={e}");
                Ok(ExitCode::from(EXIT_CONSTRUCTION))
            }
        };
    }
    match construct_2pp(&g, &opts) {
        PartitionOutcome::Partitioned { partition, parts_bound, path } => {
            println!("outcome=partitioned");
            println!("path={}", path.tag());
            emit_partition_result(&partition, parts_bound, output)?;
            Ok(ExitCode::SUCCESS)
        }
        PartitionOutcome::Exceptional(class) => {
            println!("outcome=exceptional");
            println!("class={class}");
            let r = recognize_with_map(&g).expect("recognized");
            if let Some(p) = h_three_part_partition(&class, &r.map) {
                println!("note=has a 3-part partition above the alpha* bound");
                print!("{}", emit_partition(&p));
            }
            Ok(ExitCode::SUCCESS)
        }
        PartitionOutcome::PreconditionFailed(w) => {
            println!("outcome=precondition-failed");
            print_witness("witness", &w);
            Ok(ExitCode::from(EXIT_PRECONDITION))
        }
        PartitionOutcome::ConstructionFailure(c) => {
            println!("outcome=construction-failure");
            println!("claim={}", c.claim.tag());
            println!("block={}", c.block);
            Ok(ExitCode::from(EXIT_CONSTRUCTION))
        }
    }
}

fn cmd_verify(graph: &Path, partition: &Path, kind: Option<&str>, format: Option<Format>) -> Result<ExitCode> {
    let g = load_graph(&GraphInput { input: Some(graph.to_path_buf()), format })?;
    let text = read_text(Some(partition))?;
    let mut p = match parse_partition(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: malformed partition file: {e}");
            return Ok(ExitCode::from(EXIT_MALFORMED));
        }
    };
    if let Some(k) = kind {
        p.kind = PartitionKind::from_tag(k).expect("validated by clap");
    }
    println!("kind={}", p.kind.tag());
    println!("parts={}", p.len());
    match verify_partition(&g, &p) {
        Ok(()) => {
            println!("result=pass");
            Ok(ExitCode::SUCCESS)
        }
        Err(issues) => {
            println!("result=fail");
            for i in issues {
                println!("issue={i}");
            }
            Ok(ExitCode::FAILURE)
        }
    }
}

fn cmd_oracle(input: &GraphInput, almost: bool, max_n: Option<usize>) -> Result<ExitCode> {
    let g = load_graph(input)?;
    let inv_budget = env_budget(OracleBudget::invariants())?;
    let part_budget = match max_n {
        Some(k) => OracleBudget::new(k),
        None => env_budget(OracleBudget::partitions())?,
    };
    println!("n={}", g.n());
    match (oracle_sigma_star(&g, &inv_budget), oracle_alpha_star(&g, &inv_budget)) {
        (Ok(s), Ok(a)) => {
            println!("sigma_star={s}");
            println!("alpha_star={a}");
        }
        (Err(e), _) | (_, Err(e)) => println!("invariants=skipped ({e})"),
    }
    match oracle_min_2pp(&g, almost, &part_budget) {
        Ok(Some((k, p))) => {
            println!("min_parts={k}");
            print!("{}", emit_partition(&p));
        }
        Ok(None) => println!("min_parts=none"),
        Err(e) => println!("min_parts=skipped ({e})"),
    }
    Ok(ExitCode::SUCCESS)
}

fn sharpness(sizes: &[usize], boundary: bool) -> Result<SharpnessSpec> {
    let spec = if boundary { SharpnessSpec::boundary(sizes.to_vec()) } else { SharpnessSpec::new(sizes.to_vec()) };
    Ok(spec?)
}

fn exceptional(class: ExceptionalClass) -> Result<Graph> {
    Ok(generate(&class)?)
}

fn cmd_gen(which: &GenCommand, format: Format) -> Result<ExitCode> {
    let g = match which {
        GenCommand::K2 => exceptional(ExceptionalClass::K2)?,
        GenCommand::F5 => exceptional(ExceptionalClass::F5)?,
        GenCommand::F11 { l } => exceptional(ExceptionalClass::F11(l.parse::<F11Extra>()?))?,
        GenCommand::F12 { l } => exceptional(ExceptionalClass::F12(l.parse::<F12Extra>()?))?,
        GenCommand::H { s, t, minus } => exceptional(ExceptionalClass::H { s: *s, t: *t, minus: *minus })?,
        GenCommand::Gt { sizes, boundary } => gen_sharp_gt(&sharpness(sizes, *boundary)?),
        GenCommand::GtPrime { sizes, boundary } => gen_sharp_gt_prime(&sharpness(sizes, *boundary)?),
        GenCommand::Complete { n } => complete(*n),
        GenCommand::Cycle { n } => cycle(*n),
        GenCommand::Path { n } => path(*n),
        GenCommand::Bipartite { a, b } => complete_bipartite(*a, *b),
        GenCommand::Random { n, p, seed } => {
            if !(0.0..=1.0).contains(p) {
                bail!("edge probability {p} outside [0, 1]");
            }
            gen_random(*n, *p, *seed)
        }
    };
    match format {
        Format::Edgelist => print!("{}", emit_edge_list(&g)),
        Format::Graph6 => println!("{}", emit_graph6(&g)),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_theorem_check(
    exhaustive: Option<usize>,
    random: Option<&[String]>,
    seed: u64,
    which: &str,
    allow_n7: bool,
) -> Result<ExitCode> {
    let statement: Statement = which.parse()?;
    let corpus = match (exhaustive, random) {
        (Some(n), None) => Corpus::Exhaustive { n },
        (None, Some([count, n, p])) => Corpus::Random {
            count: count.parse().context("COUNT")?,
            n: n.parse().context("N")?,
            p: p.parse().context("P")?,
            seed,
        },
        _ => bail!("give exactly one of --exhaustive N or --random COUNT N P"),
    };
    let opts = CheckOptions { allow_n7, oracle: env_budget(OracleBudget::partitions())?, ..CheckOptions::default() };
    let report = run_check(corpus, statement, &opts)?;
    print!("{}", report.render());
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Invariants(input) => cmd_invariants(input),
        Command::Partition { graph, almost, all_roots, oracle_fallback_budget, output } => {
            cmd_partition(graph, *almost, *all_roots, *oracle_fallback_budget, output.as_deref())
        }
        Command::Verify { graph, partition, kind, format } => cmd_verify(graph, partition, kind.as_deref(), *format),
        Command::Oracle { graph, almost, max_n } => cmd_oracle(graph, *almost, *max_n),
        Command::Gen { which, format } => cmd_gen(which, *format),
        Command::TheoremCheck { exhaustive, random, seed, which, allow_n7 } => {
            cmd_theorem_check(*exhaustive, random.as_deref(), *seed, which, *allow_n7)
        }
    }
}
