use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use domstruct::cycles::SeamRule;
use domstruct::error::{Error, Result};
use domstruct::graph::Graph;
use domstruct::harness::{run_corpus, verify_graph, CorpusSource, RunConfig};
use domstruct::io::report::{write_report, InputFormat, Verdict};
use domstruct::io::{parse_edge_list, parse_graph6_lines, to_graph6_string, write_dot, DotAnnotations};
use domstruct::oracle::{enumerate_all_dsets, min_dominating_set_exact, DEFAULT_NODE_BUDGET};
use domstruct::pipeline::{analyze_k, solve_cubic, PipelineConfig, SolveVerdict};
use domstruct::scheme_k::{construct_k, ChoicePolicy, KConfig};

#[derive(Parser)]
#[command(name = "domstruct", version, about = "Domination structures and scheme K on small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Canonical,
    Randomized,
}

#[derive(Args)]
struct InputArgs {
    /// Input file, or `-` for stdin.
    #[arg(long, short)]
    input: PathBuf,
    /// Defaults to edgelist for .txt/.edges/.el files, graph6 otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct KArgs {
    /// How scheme K picks cut vertices, cycles and pivots.
    #[arg(long, value_enum, default_value = "canonical")]
    policy: Policy,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap on scheme K iterations (default 10 n^2).
    #[arg(long)]
    max_iters: Option<usize>,
    /// Do not treat a single shared vertex as a seamless join.
    #[arg(long)]
    strict_seams: bool,
}

impl KArgs {
    fn config(&self) -> KConfig {
        let policy = match self.policy {
            Policy::Canonical => ChoicePolicy::Canonical,
            Policy::Randomized => ChoicePolicy::Randomized { seed: self.seed },
        };
        KConfig { policy, max_iterations: self.max_iters, ..KConfig::default() }
    }

    fn seam_rule(&self) -> SeamRule {
        SeamRule { allow_single_vertex: !self.strict_seams }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    k: KArgs,
    /// Node budget for each exact oracle call.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    oracle_budget: u64,
    /// Run the cascade from every minimum labeling and keep the best result.
    #[arg(long = "all-Y", alias = "all-y")]
    all_y: bool,
    /// Record per-phase wall-clock times (makes reports non-reproducible).
    #[arg(long)]
    timings: bool,
}

impl SolveArgs {
    fn pipeline(&self) -> PipelineConfig {
        PipelineConfig {
            k: self.k.config(),
            seam_rule: self.k.seam_rule(),
            oracle_budget: self.oracle_budget,
            all_y: self.all_y,
            timings: self.timings,
        }
    }

    fn run_config(&self, strict: bool, disable: &[String]) -> RunConfig {
        RunConfig { pipeline: self.pipeline(), disabled_claims: disable.iter().cloned().collect(), strict }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Apply scheme K and print the step trace.
    Construct {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        k: KArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Enumerate labelings of the domination structure of K(G).
    Labelings {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        k: KArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the reduction cascade on a connected cubic graph.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Exit with status 2 unless every candidate is a minimum dominating set.
        #[arg(long)]
        strict: bool,
    },
    /// Exact minimum dominating set.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        oracle_budget: u64,
        /// List every minimum dominating set.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Evaluate every claim on each input graph.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Exit with status 2 if any claim is refuted.
        #[arg(long)]
        strict: bool,
        /// Claim to report as skipped (repeatable).
        #[arg(long)]
        disable: Vec<String>,
    },
    /// Verify a corpus: a graph6 file, an edge-list directory, random cubic
    /// graphs, or (by default) the bundled catalog of cubic graphs on 4 to
    /// 10 vertices.
    Corpus {
        /// graph6 file, one graph per line.
        #[arg(long, short, conflicts_with_all = ["dir", "generate"])]
        input: Option<PathBuf>,
        /// Directory of edge-list files.
        #[arg(long, conflicts_with = "generate")]
        dir: Option<PathBuf>,
        /// Number of random cubic graphs to generate (uses --seed).
        #[arg(long)]
        generate: Option<usize>,
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 14)]
        n_max: usize,
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        disable: Vec<String>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Print random connected cubic graphs in graph6.
    Gen {
        #[arg(long, short)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Write a graph (optionally K(G) with its added edges and a labeling)
    /// as DOT.
    ExportDot {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        k: KArgs,
        /// Draw K(G) with added edges marked.
        #[arg(long = "k-graph")]
        k_graph: bool,
        /// Mark the first minimum dominating labeling of K(G).
        #[arg(long)]
        labels: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

struct Named {
    id: String,
    format: InputFormat,
    graph: Graph,
}

fn read_input(args: &InputArgs) -> Result<Vec<Named>> {
    let text = if args.input == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(&args.input).map_err(|e| Error::Io(format!("{}: {e}", args.input.display())))?
    };
    let ext = args.input.extension().and_then(|e| e.to_str()).unwrap_or("");
    let format = args.format.unwrap_or(match ext {
        "txt" | "edges" | "el" | "edgelist" => Format::Edgelist,
        _ => Format::Graph6,
    });
    let stem = args.input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "stdin".into());
    Ok(match format {
        Format::Edgelist => {
            vec![Named { id: stem, format: InputFormat::Edgelist, graph: parse_edge_list(&text)? }]
        }
        Format::Graph6 => {
            let graphs = parse_graph6_lines(&text)?;
            let many = graphs.len() > 1;
            graphs
                .into_iter()
                .enumerate()
                .map(|(i, graph)| Named {
                    id: if many { format!("{stem}:{}", i + 1) } else { stem.clone() },
                    format: InputFormat::Graph6,
                    graph,
                })
                .collect()
        }
    })
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Writes one value, or an array when the input held several graphs.
fn write_json<T: Serialize>(path: Option<&PathBuf>, items: &[T]) -> Result<()> {
    let Some(path) = path else { return Ok(()) };
    let text = match items {
        [one] => serde_json::to_string_pretty(one),
        many => serde_json::to_string_pretty(many),
    }
    .expect("serializable output");
    write_out(path, &(text + "\n"))
}

fn run(cli: Cli) -> Result<u8> {
    let mut code = 0;
    match cli.command {
        Command::Construct { input, k, json } => {
            let mut traces = Vec::new();
            for g in read_input(&input)? {
                let t = construct_k(&g.graph, &k.config())?;
                println!(
                    "{}: n={} m={} -> m={} in {} steps ({})",
                    g.id,
                    g.graph.n(),
                    g.graph.m(),
                    t.output.m(),
                    t.steps.len(),
                    if t.terminated { "terminated" } else { "iteration cap hit" }
                );
                for (i, s) in t.steps.iter().enumerate() {
                    let added: Vec<_> = s.added.iter().collect();
                    println!("  step {}: {:?} at {} adds {:?}", i + 1, s.kind, s.chosen, added);
                }
                traces.push(t);
            }
            write_json(json.as_ref(), &traces)?;
        }
        Command::Labelings { input, k, json } => {
            let mut out = Vec::new();
            for g in read_input(&input)? {
                let a = analyze_k(&g.graph, &k.config(), k.seam_rule())?;
                match &a.labelings {
                    None => println!("{}: K(G) has no domination structure", g.id),
                    Some(set) => {
                        println!(
                            "{}: {} distinct labelings from {} attempts, {} conflicted",
                            g.id,
                            set.labelings.len(),
                            set.raw_attempts,
                            set.conflicted_attempts
                        );
                        for l in &set.labelings {
                            let tag = if l.consistent { "" } else { " (inconsistent)" };
                            println!("  {:?}{tag}", l.labeled.to_vec());
                        }
                        let cands: Vec<_> = a.candidates.iter().map(|c| c.to_vec()).collect();
                        println!("  minimum dominating labelings: {cands:?}");
                    }
                }
                out.push(a);
            }
            write_json(json.as_ref(), &out)?;
        }
        Command::Solve { input, solve, json, strict } => {
            let mut out = Vec::new();
            for g in read_input(&input)? {
                let r = solve_cubic(&g.graph, &solve.pipeline())?;
                let gamma = r.oracle_gamma.map_or("?".to_string(), |x| x.to_string());
                println!(
                    "{}: {:?} |X|={} gamma={gamma} X={:?}",
                    g.id,
                    r.verdict,
                    r.candidate.len(),
                    r.candidate.to_vec()
                );
                for f in &r.flags {
                    println!("  {f}");
                }
                if strict && matches!(r.verdict, SolveVerdict::Suboptimal | SolveVerdict::NotDominating) {
                    code = 2;
                }
                out.push(r);
            }
            write_json(json.as_ref(), &out)?;
        }
        Command::Oracle { input, oracle_budget, all, json } => {
            let graphs = read_input(&input)?;
            if all {
                let mut out = Vec::new();
                for g in graphs {
                    let e = enumerate_all_dsets(&g.graph, oracle_budget);
                    let sets: Vec<_> = e.dsets.iter().map(|s| s.to_vec()).collect();
                    println!("{}: gamma={} ({} sets{}) {sets:?}", g.id, e.gamma, sets.len(), budget_tag(e.budget_hit));
                    out.push(e);
                }
                write_json(json.as_ref(), &out)?;
            } else {
                let mut out = Vec::new();
                for g in graphs {
                    let r = min_dominating_set_exact(&g.graph, oracle_budget);
                    println!("{}: gamma={}{} X={:?}", g.id, r.gamma, budget_tag(r.budget_hit), r.witness.to_vec());
                    out.push(r);
                }
                write_json(json.as_ref(), &out)?;
            }
        }
        Command::Verify { input, solve, json, strict, disable } => {
            let cfg = solve.run_config(strict, &disable);
            let mut docs = Vec::new();
            for g in read_input(&input)? {
                let doc = verify_graph(&g.graph, &g.id, g.format, &cfg);
                println!("{} (n={}, m={})", doc.graph_id, doc.n, doc.m);
                for c in &doc.claims {
                    println!("  {:<34} {:<18} {}", c.claim, c.verdict.as_str(), c.details);
                }
                if strict && doc.claims.iter().any(|c| c.verdict == Verdict::Refuted) {
                    code = 2;
                }
                docs.push(doc);
            }
            if let (Some(path), [one]) = (&json, docs.as_slice()) {
                write_out(path, &write_report(one))?;
            } else {
                write_json(json.as_ref(), &docs)?;
            }
        }
        Command::Corpus { input, dir, generate, n_min, n_max, solve, json, strict, disable, threads } => {
            if let Some(t) = threads {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build_global()
                    .map_err(|e| Error::Input(e.to_string()))?;
            }
            let source = match (input, dir, generate) {
                (Some(p), _, _) => CorpusSource::Graph6File(p),
                (_, Some(d), _) => CorpusSource::EdgeListDir(d),
                (_, _, Some(count)) => CorpusSource::Generator { count, n_min, n_max, seed: solve.k.seed },
                _ => CorpusSource::Catalog,
            };
            let cfg = solve.run_config(strict, &disable);
            let run = run_corpus(&source, &cfg)?;
            println!("{} graphs", run.summary.graphs);
            for (claim, per) in &run.summary.verdicts {
                let counts: Vec<String> = per.iter().map(|(v, k)| format!("{}={k}", v.as_str())).collect();
                println!("  {claim:<34} {}", counts.join(" "));
            }
            if !run.summary.failing_graphs.is_empty() {
                println!("failing graphs: {}", run.summary.failing_graphs.join(", "));
            }
            if let Some(path) = &json {
                write_out(path, &(run.to_json() + "\n"))?;
            }
            code = run.exit_code(strict) as u8;
        }
        Command::Gen { n, count, seed, output } => {
            let mut text = String::new();
            for i in 0..count as u64 {
                let g = domstruct::harness::random_cubic(n, seed.wrapping_add(i))?;
                text.push_str(&to_graph6_string(&g));
                text.push('\n');
            }
            match output {
                Some(p) => write_out(&p, &text)?,
                None => io::stdout().write_all(text.as_bytes())?,
            }
        }
        Command::ExportDot { input, k, k_graph, labels, output } => {
            let mut text = String::new();
            for g in read_input(&input)? {
                let mut ann = DotAnnotations { name: Some(g.id.clone()), ..Default::default() };
                let mut shown = g.graph.clone();
                if k_graph || labels {
                    let a = analyze_k(&g.graph, &k.config(), k.seam_rule())?;
                    if k_graph {
                        ann.added = a.trace.added_edges();
                        shown = a.trace.output.clone();
                    }
                    if labels {
                        ann.labeled = a.candidates.first().cloned().unwrap_or_default();
                    }
                }
                text.push_str(&write_dot(&shown, &ann));
            }
            match output {
                Some(p) => write_out(&p, &text)?,
                None => io::stdout().write_all(text.as_bytes())?,
            }
        }
    }
    Ok(code)
}

fn budget_tag(hit: bool) -> &'static str {
    if hit {
        ", budget exhausted: upper bound"
    } else {
        ""
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
