mod output;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use threshold_hom::graphcore::{parse_graph, parse_hypergraph, Graph, Hypergraph};
use threshold_hom::homcount::{hom_count, hom_count_hyper, hom_density};
use threshold_hom::moves::{hyper_thresholdize, is_threshold_hyper, thresholdize};
use threshold_hom::optimize::{
    alpha_star, domination_exponent, janson_ratio_report, limit_search, search_all_max,
    search_threshold_max, two_star_no_interior_max, LimitSearchOptions, TwoStarInstance,
    TwoStarMode, EFFECTIVE_PART,
};
use threshold_hom::suites::{self, Outcome};
use threshold_hom::threshold::{creation_sequence_of, limit_edge_density};

use output::{Format, Report};

#[derive(Parser)]
#[command(name = "thom", version, about = "Homomorphism counting and extremal search over threshold graphs")]
struct Cli {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of homomorphisms from H to G.
    Count { pattern: PathBuf, target: PathBuf },
    /// Homomorphism density t(H, G) = hom(H, G) / |G|^|H|.
    Density { pattern: PathBuf, target: PathBuf },
    /// Recognize a threshold graph and print its creation sequence.
    IsThreshold { graph: PathBuf },
    /// Turn a graph into a threshold graph by local moves.
    Thresholdize {
        graph: PathBuf,
        /// Write the move log to this file.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Maximize hom(H, T) over threshold graphs T with n vertices and at most m edges.
    SearchThreshold(Budget),
    /// Maximize hom(H, G) over all graphs G with n vertices and at most m edges.
    SearchAll(Budget),
    /// Maximize the limit density of H over threshold limits of edge density c.
    LimitSearch {
        pattern: PathBuf,
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 4)]
        parts: usize,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// Fractional independence number and an optimal half-integral weighting.
    AlphaStar { pattern: PathBuf },
    /// Density domination exponent |H| - alpha*(H).
    Domexp { pattern: PathBuf },
    /// Threshold maxima against the order-of-magnitude bound over a grid.
    Janson {
        pattern: PathBuf,
        /// Comma-separated values or inclusive ranges `a..b[:step]`.
        #[arg(long)]
        n_grid: String,
        #[arg(long)]
        m_grid: String,
    },
    /// One instance of the cherry program on three leading blocks.
    TwoStar {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        d: f64,
        #[arg(long)]
        k: f64,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Evaluate the objective at this middle-block proportion.
        #[arg(long)]
        beta: Option<f64>,
    },
    /// Number of homomorphisms between uniform hypergraphs.
    HyperCount { pattern: PathBuf, target: PathBuf },
    /// Check the neighbourhood chain property of a uniform hypergraph.
    HyperIsThreshold { graph: PathBuf },
    /// Turn a uniform hypergraph into a threshold one by moves and deletions.
    HyperThresholdize {
        graph: PathBuf,
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Run a verification suite by key or number, or `all`.
    Verify {
        #[arg(required_unless_present = "list")]
        suite: Option<String>,
        /// List the available suites.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
struct Budget {
    pattern: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    #[value(name = "0lead")]
    ZeroLead,
    #[value(name = "1lead")]
    OneLead,
}

enum Failure {
    /// Bad input; exit 2.
    Usage(String),
    /// A verification ran and failed; exit 1 after printing the report.
    Verification(Report),
}

type CliResult = Result<Report, Failure>;

fn usage(what: impl std::fmt::Display) -> Failure {
    Failure::Usage(what.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_hypergraph(path: &Path) -> Result<Hypergraph, Failure> {
    parse_hypergraph(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Parses `8,10..12,20..40:5` into a sorted, deduplicated list.
fn parse_grid(spec: &str) -> Result<Vec<usize>, Failure> {
    let bad = || usage(format!("invalid grid {spec:?}"));
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim) {
        if let Some((lo, rest)) = item.split_once("..") {
            let (hi, step) = rest.split_once(':').unwrap_or((rest, "1"));
            let lo: usize = lo.parse().map_err(|_| bad())?;
            let hi: usize = hi.parse().map_err(|_| bad())?;
            let step: usize = step.parse().map_err(|_| bad())?;
            if step == 0 || lo > hi {
                return Err(bad());
            }
            out.extend((lo..=hi).step_by(step));
        } else {
            out.push(item.parse().map_err(|_| bad())?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn run(cmd: Command, seed: u64) -> CliResult {
    let lib = |e: threshold_hom::Error| usage(e);
    match cmd {
        Command::Count { pattern, target } => {
            let c = hom_count(&load_graph(&pattern)?, &load_graph(&target)?).map_err(lib)?;
            Ok(Report::with_text(vec![("count", json!(c.to_string()))], format!("{c}\n")))
        }
        Command::Density { pattern, target } => {
            let t = hom_density(&load_graph(&pattern)?, &load_graph(&target)?).map_err(lib)?;
            Ok(Report::record(vec![
                ("density", json!(t.value().to_string())),
                ("value", json!(t.to_f64())),
            ]))
        }
        Command::IsThreshold { graph } => {
            let g = load_graph(&graph)?;
            let seq = creation_sequence_of(&g).ok();
            Ok(Report::record(vec![
                ("threshold", json!(seq.is_some())),
                ("sequence", seq.map_or(Value::Null, |s| json!(s.to_string()))),
            ]))
        }
        Command::Thresholdize { graph, log } => {
            let g = load_graph(&graph)?;
            let (t, moves) = thresholdize(&g);
            if let Some(path) = log {
                write_file(&path, &moves.to_string())?;
            }
            let seq = creation_sequence_of(&t).map_err(lib)?;
            Ok(Report::with_text(
                vec![
                    ("sequence", json!(seq.to_string())),
                    ("edges", json!(t.edge_count())),
                    ("moves", json!(moves.move_count())),
                    ("movement", json!(moves.total_movement())),
                    ("graph", json!(t.to_string())),
                ],
                t.to_string(),
            ))
        }
        Command::SearchThreshold(b) => {
            let r = search_threshold_max(&load_graph(&b.pattern)?, b.n, b.m).map_err(lib)?;
            Ok(Report::record(vec![
                ("best", json!(r.best.to_string())),
                ("witness", json!(r.witness.to_string())),
                ("explored", json!(r.explored)),
            ]))
        }
        Command::SearchAll(b) => {
            let r = search_all_max(&load_graph(&b.pattern)?, b.n, b.m).map_err(lib)?;
            let edges: Vec<String> = r.witness.edges().map(|(u, v)| format!("{u}-{v}")).collect();
            Ok(Report::record(vec![
                ("best", json!(r.best.to_string())),
                ("witness", json!(edges.join(" "))),
                ("threshold", json!(creation_sequence_of(&r.witness).is_ok())),
                ("explored", json!(r.explored)),
            ]))
        }
        Command::LimitSearch { pattern, c, parts, grid, tolerance } => {
            let opts = LimitSearchOptions {
                max_parts: parts,
                grid_steps: grid,
                tolerance,
                ..LimitSearchOptions::default()
            };
            let r = limit_search(&load_graph(&pattern)?, c, &opts).map_err(lib)?;
            Ok(Report::record(vec![
                ("best", json!(r.best)),
                ("witness", json!(r.witness.to_string())),
                ("edge_density", json!(limit_edge_density(&r.witness))),
                ("effective_parts", json!(r.witness.effective_parts(EFFECTIVE_PART))),
                ("explored", json!(r.explored)),
            ]))
        }
        Command::AlphaStar { pattern } => {
            let r = alpha_star(&load_graph(&pattern)?);
            let weights: Vec<&str> = r
                .doubled_weights()
                .iter()
                .map(|w| ["0", "1/2", "1"][*w as usize])
                .collect();
            let [zero, half, one] = r.weight_classes();
            Ok(Report::record(vec![
                ("alpha_star", json!(r.alpha_star().to_string())),
                ("weights", json!(weights.join(" "))),
                ("zeros", json!(zero)),
                ("halves", json!(half)),
                ("ones", json!(one)),
            ]))
        }
        Command::Domexp { pattern } => {
            let e = domination_exponent(&load_graph(&pattern)?);
            Ok(Report::with_text(vec![("exponent", json!(e.to_string()))], format!("{e}\n")))
        }
        Command::Janson { pattern, n_grid, m_grid } => {
            let h = load_graph(&pattern)?;
            let r = janson_ratio_report(&h, &parse_grid(&n_grid)?, &parse_grid(&m_grid)?).map_err(lib)?;
            let rows = r
                .rows
                .iter()
                .map(|row| {
                    vec![
                        json!(row.n),
                        json!(row.m),
                        json!(row.bound),
                        json!(row.best),
                        json!(row.witness),
                        json!(row.ratio),
                        json!(row.three_part),
                        json!(row.three_part_ratio),
                        json!(row.guarantee),
                    ]
                })
                .collect();
            Ok(Report::Table {
                columns: vec!["n", "m", "bound", "best", "witness", "ratio", "three_part", "three_part_ratio", "guarantee"],
                rows,
                footer: vec![format!(
                    "ratio range [{}, {}], spread {}",
                    r.min_ratio,
                    r.max_ratio,
                    r.spread()
                )],
                text: None,
            })
        }
        Command::TwoStar { c, d, k, mode, beta } => {
            let mode = match mode {
                Mode::ZeroLead => TwoStarMode::ZeroLead,
                Mode::OneLead => TwoStarMode::OneLead,
            };
            let inst = TwoStarInstance::new(c, d, k, mode);
            let feasible = inst.feasible();
            let mut fields = vec![
                ("feasible", json!(feasible.is_some())),
                ("beta_min", feasible.map_or(Value::Null, |f| json!(f.0))),
                ("beta_max", feasible.map_or(Value::Null, |f| json!(f.1))),
                ("no_interior_max", json!(two_star_no_interior_max(&inst))),
            ];
            if let Some(b) = beta {
                let (alpha, gamma) = inst.outer(b);
                fields.push(("beta", json!(b)));
                fields.push(("alpha", json!(alpha)));
                fields.push(("gamma", json!(gamma)));
                fields.push(("objective", json!(inst.objective(b).map_err(lib)?)));
                fields.push(("f", json!(inst.f(b).map_err(lib)?)));
                fields.push(("f_prime", json!(inst.fprime(b).map_err(lib)?)));
                fields.push(("f_second", json!(inst.fsecond(b).map_err(lib)?)));
            }
            Ok(Report::record(fields))
        }
        Command::HyperCount { pattern, target } => {
            let c = hom_count_hyper(&load_hypergraph(&pattern)?, &load_hypergraph(&target)?).map_err(lib)?;
            Ok(Report::with_text(vec![("count", json!(c.to_string()))], format!("{c}\n")))
        }
        Command::HyperIsThreshold { graph } => {
            let g = load_hypergraph(&graph)?;
            Ok(Report::record(vec![("threshold", json!(is_threshold_hyper(&g)))]))
        }
        Command::HyperThresholdize { graph, log } => {
            let g = load_hypergraph(&graph)?;
            let (t, report) = hyper_thresholdize(&g);
            if let Some(path) = log {
                write_file(&path, &report.log.to_string())?;
            }
            Ok(Report::with_text(
                vec![
                    ("edges", json!(t.edge_count())),
                    ("moves", json!(report.moves_used)),
                    ("repair_moves", json!(report.repair_moves)),
                    ("edges_removed", json!(report.edges_removed)),
                    ("levels", json!(report.levels)),
                    ("graph", json!(t.to_string())),
                ],
                t.to_string(),
            ))
        }
        Command::Verify { suite, list } => {
            if list {
                let rows = suites::SUITES
                    .iter()
                    .map(|s| vec![json!(s.id), json!(s.key), json!(s.description)])
                    .collect();
                return Ok(Report::table(vec!["id", "key", "description"], rows));
            }
            let key = suite.expect("clap enforces a suite");
            let outcomes = if key == "all" {
                suites::run_all(seed)
            } else {
                let s = suites::find(&key).ok_or_else(|| usage(format!("unknown suite {key:?}; try --list")))?;
                vec![s.run(seed)]
            };
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            let report = verify_report(&outcomes, failed);
            if failed > 0 {
                Err(Failure::Verification(report))
            } else {
                Ok(report)
            }
        }
    }
}

/// Timings are left out so repeated runs print identical bytes.
fn verify_report(outcomes: &[Outcome], failed: usize) -> Report {
    let rows = outcomes
        .iter()
        .map(|o| vec![json!(o.id), json!(o.key), json!(o.passed), json!(o.detail)])
        .collect();
    let mut text = String::new();
    for o in outcomes {
        let mark = if o.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("[{mark}] {:02} {}: {}\n", o.id, o.key, o.detail));
    }
    text.push_str(&format!("{} passed, {failed} failed\n", outcomes.len() - failed));
    Report::Table {
        columns: vec!["id", "key", "passed", "detail"],
        rows,
        footer: Vec::new(),
        text: Some(text),
    }
}

fn emit(report: &Report, format: Format, out: Option<&Path>) -> io::Result<()> {
    let mut buf = Vec::new();
    report.write(format, &mut buf)?;
    write_to(out, &buf)
}

fn write_to(out: Option<&Path>, bytes: &[u8]) -> io::Result<()> {
    match out {
        Some(p) => fs::write(p, bytes),
        None => io::stdout().lock().write_all(bytes),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let (report, code) = match run(cli.command, cli.seed) {
        Ok(r) => (r, 0),
        Err(Failure::Verification(r)) => (r, 1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&report, format, cli.out.as_deref()) {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
