mod output;
mod table1;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphent::bounds::{
    entanglement_report, lc_orbit_search, BoundsReport, MatchingOptions, MatchingStrategy, ReportOptions,
};
use graphent::capacity::{
    achievable_rate, capacity_bound, colouring_ensemble, finite_blocklength_bound, povm_constraint_check, Ensemble,
};
use graphent::graph::DEFAULT_MIS_BUDGET;
use graphent::locc::{run_trials, simulate_discrimination};
use graphent::measures::{mixed_measures, mixed_robustness, two_graph_mixture_measures, MixedGraphState};
use graphent::{build_family, Family, Graph, GraphStateIndex, VertexSet};
use serde_json::{json, Value};

use output::{Format, Output};

const EXIT_INPUT: u8 = 1;
const EXIT_UNCERTIFIED: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

/// Entanglement bounds, LOCC discrimination and capacity bounds for graph states.
#[derive(Parser, Debug)]
#[command(name = "graphent", version)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Node budget for the independent-set search.
    #[arg(long, global = true, default_value_t = DEFAULT_MIS_BUDGET)]
    budget_nodes: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cut search strategy.
    #[arg(long, global = true, value_enum, default_value_t = Strategy::Auto)]
    strategy: Strategy,
    /// Restarts for the heuristic cut search.
    #[arg(long, global = true, default_value_t = graphent::bounds::DEFAULT_RESTARTS)]
    restarts: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Strategy {
    Auto,
    Exhaustive,
    Heuristic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "snake_case")]
enum FamilyName {
    Cluster1d,
    Cluster2d,
    Cluster3d,
    GhzStar,
    GhzComplete,
    Ring,
    Steane7,
}

#[derive(Args, Debug, Default)]
struct GraphSource {
    #[arg(long, value_enum)]
    family: Option<FamilyName>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long)]
    layers: Option<usize>,
    /// Graph JSON file: {"n": 4, "edges": [[0, 1], ...]}.
    #[arg(long, conflicts_with = "family")]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lower and upper entanglement bounds.
    Bounds {
        #[command(flatten)]
        graph: GraphSource,
    },
    /// Bounds for the standard family table, checked against closed forms.
    Table1,
    /// Simulate the amber/blue measurement protocol.
    Discriminate {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Also randomize the non-amber index bits.
        #[arg(long)]
        randomize_blue: bool,
        /// Run once on this index (bitstring k_0 k_1 ...) and print the trace.
        #[arg(long)]
        index: Option<String>,
    },
    /// Measures of a mixture of graph-basis states.
    Mixed {
        #[command(flatten)]
        graph: GraphSource,
        /// JSON object mapping index bitstrings to weights.
        #[arg(long, required_unless_present = "mix_lc")]
        weights: Option<PathBuf>,
        /// Amber set as comma-separated vertices (default: the report's).
        #[arg(long)]
        amber: Option<String>,
        /// Mix |G_k> with the same index on the graph locally complemented here.
        #[arg(long, requires = "u")]
        mix_lc: Option<usize>,
        /// Weight of |G_k> in the two-graph mixture.
        #[arg(long)]
        u: Option<f64>,
        /// Index for the two-graph mixture (default all zeros).
        #[arg(long)]
        index: Option<String>,
    },
    /// Capacity bounds for the colouring ensemble or a supplied ensemble.
    Capacity {
        #[command(flatten)]
        graph: GraphSource,
        /// Ensemble JSON file instead of a graph.
        #[arg(long, conflicts_with_all = ["family", "file"])]
        ensemble: Option<PathBuf>,
        /// Block length for the finite-length bound.
        #[arg(long, requires = "epsilon")]
        length: Option<usize>,
        /// Worst-case decoding error for the finite-length bound.
        #[arg(long, requires = "length")]
        epsilon: Option<f64>,
    },
    /// Search the local-complementation orbit for a larger amber set.
    Orbit {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 16)]
        beam: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl ToString) -> Failure {
    Failure { code: EXIT_INPUT, message: message.to_string() }
}

impl From<graphent::Error> for Failure {
    fn from(e: graphent::Error) -> Self {
        input_error(e)
    }
}

/// Result plus the exit code to use after writing it.
type Outcome = Result<(Output, u8), Failure>;

impl GraphSource {
    fn is_given(&self) -> bool {
        self.family.is_some() || self.file.is_some()
    }

    fn load(&self) -> Result<Graph, Failure> {
        if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
            return Ok(Graph::from_json(&text)?);
        }
        let need = |v: Option<usize>, name: &str| {
            v.ok_or_else(|| input_error(format!("--{name} is required for this family")))
        };
        let family = match self.family.ok_or_else(|| input_error("give either --family or --file"))? {
            FamilyName::Cluster1d => Family::Cluster1d { n: need(self.n, "n")? },
            FamilyName::Cluster2d => {
                Family::Cluster2d { rows: need(self.rows, "rows")?, cols: need(self.cols, "cols")? }
            }
            FamilyName::Cluster3d => Family::Cluster3d {
                rows: need(self.rows, "rows")?,
                cols: need(self.cols, "cols")?,
                layers: need(self.layers, "layers")?,
            },
            FamilyName::GhzStar => Family::GhzStar { n: need(self.n, "n")? },
            FamilyName::GhzComplete => Family::GhzComplete { n: need(self.n, "n")? },
            FamilyName::Ring => Family::Ring { n: need(self.n, "n")? },
            FamilyName::Steane7 => Family::Steane7,
        };
        Ok(build_family(&family)?)
    }
}

fn report_options(cli: &Cli) -> ReportOptions {
    let strategy = match cli.strategy {
        Strategy::Auto => MatchingStrategy::Auto,
        Strategy::Exhaustive => MatchingStrategy::Exhaustive,
        Strategy::Heuristic => MatchingStrategy::Heuristic,
    };
    ReportOptions {
        budget_nodes: cli.budget_nodes,
        matching: MatchingOptions { strategy, seed: cli.seed, restarts: cli.restarts, steps: None },
        orbit: None,
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn certified_code(report: &BoundsReport) -> u8 {
    if report.certified {
        0
    } else {
        EXIT_UNCERTIFIED
    }
}

fn cmd_bounds(cli: &Cli, graph: &GraphSource) -> Outcome {
    let g = graph.load()?;
    let report = entanglement_report(&g, &report_options(cli));
    Ok((Output::record(to_value(&report)), certified_code(&report)))
}

fn cmd_table1(cli: &Cli) -> Outcome {
    let rows = table1::compute(&report_options(cli));
    let code = if rows.iter().all(table1::Row::matches) {
        rows.iter().map(|r| certified_code(&r.report)).max().unwrap_or(0)
    } else {
        EXIT_MISMATCH
    };
    Ok((table1::output(&rows), code))
}

fn parse_index(s: &str, n: usize) -> Result<GraphStateIndex, Failure> {
    let k: GraphStateIndex = s.parse()?;
    if k.n != n {
        return Err(input_error(format!("index {s} has {} bits, graph has {n} vertices", k.n)));
    }
    Ok(k)
}

fn cmd_discriminate(
    cli: &Cli,
    graph: &GraphSource,
    trials: usize,
    randomize_blue: bool,
    index: Option<&str>,
) -> Outcome {
    let g = graph.load()?;
    let report = entanglement_report(&g, &report_options(cli));
    let amber = report.witness_set;
    if let Some(s) = index {
        let k = parse_index(s, g.n())?;
        let result = simulate_discrimination(&g, amber, k, cli.seed)?;
        let mut out = Output::record(json!({
            "amber": amber,
            "index": k,
            "recovered_bits": result.recovered_bits,
            "success": result.successes == 1,
            "trace": result.trace,
        }));
        out.columns.retain(|c| c != "trace");
        out.rows[0].pop();
        out.text_tail = Some(result.trace_text());
        let code = if result.successes == 1 { 0 } else { EXIT_MISMATCH };
        return Ok((out, code));
    }
    if trials == 0 {
        return Err(input_error("--trials must be at least 1"));
    }
    let result = run_trials(&g, amber, trials, cli.seed, randomize_blue)?;
    let rate = result.success_rate();
    let out = Output::record(json!({
        "amber": amber,
        "trials": result.trials,
        "successes": result.successes,
        "success_rate": rate,
    }));
    Ok((out, if rate == 1.0 { 0 } else { EXIT_MISMATCH }))
}

fn parse_vertex_list(s: &str) -> Result<VertexSet, Failure> {
    let mut set = VertexSet::EMPTY;
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let v: usize = part.parse().map_err(|_| input_error(format!("bad vertex '{part}'")))?;
        if v >= graphent::graph::MAX_VERTICES {
            return Err(input_error(format!("vertex {v} out of range")));
        }
        set.insert(v);
    }
    Ok(set)
}

fn read_weights(path: &PathBuf, n: usize) -> Result<Vec<(GraphStateIndex, f64)>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let map: BTreeMap<String, f64> =
        serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    map.iter().map(|(k, &w)| Ok((parse_index(k, n)?, w))).collect()
}

fn cmd_mixed(
    cli: &Cli,
    graph: &GraphSource,
    weights: Option<&PathBuf>,
    amber: Option<&str>,
    mix_lc: Option<usize>,
    u: Option<f64>,
    index: Option<&str>,
) -> Outcome {
    let g = graph.load()?;
    let options = report_options(cli);
    let report = entanglement_report(&g, &options);
    let amber = match amber {
        Some(s) => parse_vertex_list(s)?,
        None => report.witness_set,
    };
    if let (Some(v), Some(u)) = (mix_lc, u) {
        let g_prime = g.local_complement(v)?;
        let report_prime = entanglement_report(&g_prime, &options);
        let k = match index {
            Some(s) => parse_index(s, g.n())?,
            None => GraphStateIndex::zero(g.n()),
        };
        let values = two_graph_mixture_measures(&g, &g_prime, amber, k, u, &report, &report_prime)?;
        let mut record = to_value(&values);
        record["R"] = Value::Null;
        return Ok((Output::record(record), 0));
    }
    let path = weights.ok_or_else(|| input_error("--weights is required"))?;
    let m = MixedGraphState::new(g.clone(), amber, read_weights(path, g.n())?)?;
    let mut record = to_value(&mixed_measures(&m, &report)?);
    record["R"] = json!(mixed_robustness(&m, &report)?);
    record["entropy"] = json!(m.entropy());
    Ok((Output::record(record), 0))
}

fn read_ensemble(path: &PathBuf) -> Result<Ensemble, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    Ok(Ensemble::from_json(&text)?)
}

fn cmd_capacity(
    cli: &Cli,
    graph: &GraphSource,
    ensemble: Option<&PathBuf>,
    length: Option<usize>,
    epsilon: Option<f64>,
) -> Outcome {
    let mut record = serde_json::Map::new();
    let mut code = 0;
    let ens = match ensemble {
        Some(path) => read_ensemble(path)?,
        None => {
            if !graph.is_given() {
                return Err(input_error("give --family, --file or --ensemble"));
            }
            let g = graph.load()?;
            let report = entanglement_report(&g, &report_options(cli));
            code = certified_code(&report);
            record.insert("n".into(), json!(report.n));
            record.insert("E_low".into(), json!(report.e_low));
            record.insert("E_high".into(), json!(report.e_high));
            record.insert("exact".into(), json!(report.exact));
            record.insert("achievable_rate".into(), json!(achievable_rate(&report)));
            colouring_ensemble(&report)?
        }
    };
    let bound = capacity_bound(&ens)?;
    let mean = ens.mean_e_g()?;
    let e_g: Vec<f64> = ens.entries.iter().map(|e| e.e_g).collect();
    let povm = povm_constraint_check(&vec![1.0; e_g.len()], &e_g, ens.n)?;
    record.entry("n").or_insert(json!(ens.n));
    record.insert("states".into(), json!(ens.entries.len()));
    record.insert("mean_E_g".into(), json!(mean));
    record.insert("capacity_bound".into(), json!(bound));
    record.insert("povm_constraint".into(), json!(povm));
    if let (Some(l), Some(eps)) = (length, epsilon) {
        record.insert("finite_length_bound".into(), json!(finite_blocklength_bound(l, eps, ens.n, mean)?));
    }
    Ok((Output::record(Value::Object(record)), code))
}

fn cmd_orbit(cli: &Cli, graph: &GraphSource, depth: usize, beam: usize) -> Outcome {
    let g = graph.load()?;
    if beam == 0 {
        return Err(input_error("--beam must be at least 1"));
    }
    let (best, report) = lc_orbit_search(&g, depth, beam, &report_options(cli));
    let mut record = to_value(&report);
    record["improved"] = json!(best != g);
    record["graph"] = to_value(&best);
    Ok((Output::record(record), certified_code(&report)))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Bounds { graph } => cmd_bounds(cli, graph),
        Command::Table1 => cmd_table1(cli),
        Command::Discriminate { graph, trials, randomize_blue, index } => {
            cmd_discriminate(cli, graph, *trials, *randomize_blue, index.as_deref())
        }
        Command::Mixed { graph, weights, amber, mix_lc, u, index } => {
            cmd_mixed(cli, graph, weights.as_ref(), amber.as_deref(), *mix_lc, *u, index.as_deref())
        }
        Command::Capacity { graph, ensemble, length, epsilon } => {
            cmd_capacity(cli, graph, ensemble.as_ref(), *length, *epsilon)
        }
        Command::Orbit { graph, depth, beam } => cmd_orbit(cli, graph, *depth, *beam),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(&cli) {
        Ok((out, code)) => {
            let text = out.render(cli.format);
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(msg) = written {
                eprintln!("error: {msg}");
                return ExitCode::from(EXIT_INPUT);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
