//! Command-line front end. [`main`] returns the process exit code:
//! 0 on success, 2 on usage errors, 1 when a computation stage fails.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::experiments::{
    lollipop_system, predicted_time, run_lower_bound_with, run_oblivious, search_run_with, sweep, GammaRule,
    Placement, SearchOptions,
};
use crate::graph::{attach_tail, make_complete, parse_graph, OracleSpec, RootedGraph, TailedSystem};
use crate::jost::export_spectrum;
use crate::propagate::{default_grid, monitored_curve_with, uniform_grid, TruncationPolicy, LEAKAGE_TOL};
use crate::operator::principal_state;
use crate::reduction::reduce;
use crate::svg::{render_svg, Plot};

#[derive(Debug, Parser)]
#[command(name = "tailwalk", version, about = "Quantum-walk search on graphs with a semi-infinite tail")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search on the lollipop (or plain clique) and report the fidelity peak.
    Search {
        #[command(flatten)]
        target: LollipopArgs,
        #[command(flatten)]
        time: TimeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare the three oracle placements at one order.
    Oblivious {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "n")]
        gamma: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Bound states and Jost polynomials of the reduced operator.
    Spectrum {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Jacobi parameters and basis of the reduction.
    Reduce {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Lower-bound diagnostics on the cone of a regular graph.
    Lowerbound {
        /// Order of the cone; the base graph is `K_{n-1}`.
        #[arg(long, required_unless_present = "graph", conflicts_with = "graph")]
        n: Option<usize>,
        /// Regular base graph (its root line is ignored).
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value = "n")]
        gamma: String,
        /// Marked vertex of the base graph.
        #[arg(long, default_value_t = 1)]
        w: usize,
        #[command(flatten)]
        time: TimeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Search reports over a list of orders.
    Sweep {
        #[arg(long = "n-list", value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long, default_value = "n")]
        gamma: String,
        #[arg(long, default_value = "clique-vertex")]
        placement: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Fidelity curve of the principal state on any system.
    Evolve {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        time: TimeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct LollipopArgs {
    #[arg(long)]
    n: usize,
    /// Literal weight or a rule "n", "n+c", "n-c".
    #[arg(long, default_value = "n")]
    gamma: String,
    #[arg(long, default_value = "clique-vertex")]
    placement: String,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Order of the clique; ignored with --graph.
    #[arg(long, required_unless_present = "graph")]
    n: Option<usize>,
    #[arg(long, default_value = "n")]
    gamma: String,
    #[arg(long, default_value = "clique-vertex")]
    placement: String,
    /// Graph file; the tail goes on its root.
    #[arg(long, conflicts_with = "n")]
    graph: Option<PathBuf>,
    /// Marked vertex for --graph input.
    #[arg(long, default_value_t = 1, requires = "graph")]
    w: usize,
    /// Leave the tail off a --graph input.
    #[arg(long, requires = "graph")]
    no_tail: bool,
}

#[derive(Debug, Args)]
pub struct TimeArgs {
    /// End of the time grid (default: twice the predicted peak time).
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long, default_value_t = 512)]
    t_steps: usize,
    /// Starting tail length (doubled while leakage is too large).
    #[arg(long)]
    truncation: Option<usize>,
    #[arg(long, default_value_t = LEAKAGE_TOL)]
    leakage_tol: f64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; standard output if absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

enum Failure {
    Usage(String),
    Stage(&'static str, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::InvalidOrder(_) | Error::InvalidGraph(_) | Error::Parse { .. } => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Stage(other.stage(), other.to_string()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Parses `argv` (including the program name), runs the command, and returns the exit code.
pub fn main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(config) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("tailwalk: {msg}");
            2
        }
        Err(Failure::Stage(stage, msg)) => {
            eprintln!("tailwalk: {stage} stage failed: {msg}");
            1
        }
    }
}

fn gamma_rule(s: &str) -> Outcome<GammaRule> {
    Ok(s.parse::<GammaRule>()?)
}

fn placement(s: &str) -> Outcome<Placement> {
    Ok(s.parse::<Placement>()?)
}

fn read_graph(path: &Path) -> Outcome<RootedGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_graph(&text)?)
}

struct Resolved {
    sys: TailedSystem,
    oracle: OracleSpec,
}

fn resolve_system(args: &SystemArgs) -> Outcome<Resolved> {
    let rule = gamma_rule(&args.gamma)?;
    let (sys, w) = match (&args.graph, args.n) {
        (Some(path), _) => {
            let rooted = read_graph(path)?;
            let sys = if args.no_tail { TailedSystem::without_tail(rooted) } else { attach_tail(rooted) };
            (sys, args.w)
        }
        (None, Some(n)) => lollipop_system(n, placement(&args.placement)?)?,
        (None, None) => return Err(Failure::Usage("either --n or --graph is required".into())),
    };
    let gamma = rule.resolve(sys.order());
    let oracle = OracleSpec::new(w, gamma)?;
    oracle_fits(&oracle, sys.order())?;
    Ok(Resolved { sys, oracle })
}

fn oracle_fits(oracle: &OracleSpec, n: usize) -> Outcome<()> {
    if oracle.w > n {
        return Err(Failure::Usage(format!("marked vertex {} outside 1..={n}", oracle.w)));
    }
    Ok(())
}

fn time_options(time: &TimeArgs, default_t_max: f64) -> Outcome<SearchOptions> {
    let grid = match time.t_max {
        None if time.t_steps == 512 => None,
        t_max => {
            let t_max = t_max.unwrap_or(default_t_max);
            if !(t_max > 0.0 && t_max.is_finite()) || time.t_steps < 2 {
                return Err(Failure::Usage("--t-max must be positive and --t-steps at least 2".into()));
            }
            Some(uniform_grid(t_max, time.t_steps))
        }
    };
    if !(time.leakage_tol > 0.0) {
        return Err(Failure::Usage("--leakage-tol must be positive".into()));
    }
    Ok(SearchOptions {
        grid,
        truncation: TruncationPolicy { initial_tail: time.truncation, leakage_tol: time.leakage_tol },
    })
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn unsupported(command: &str, format: Format) -> Failure {
    Failure::Usage(format!("{command} does not support --format {format:?}").to_lowercase())
}

fn emit(out: &OutputArgs, text: &str) -> Outcome<()> {
    let io = |e: std::io::Error| Failure::Stage("output", e.to_string());
    match &out.output {
        None => std::io::stdout().write_all(text.as_bytes()).map_err(io),
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
            tmp.write_all(text.as_bytes()).map_err(io)?;
            tmp.persist(path).map_err(|e| io(e.error))?;
            Ok(())
        }
    }
}

fn run(config: RunConfig) -> Outcome<()> {
    match config.command {
        Command::Search { target, time, out } => {
            let rule = gamma_rule(&target.gamma)?;
            let placement = placement(&target.placement)?;
            let t_pred = predicted_time(target.n.max(1));
            let opts = time_options(&time, 2.0 * t_pred)?;
            let run = search_run_with(target.n, rule.resolve(target.n), placement, &opts)?;
            let text = match out.format.unwrap_or(Format::Json) {
                Format::Json => json(&run.report),
                Format::Csv => run.curve.to_csv(),
                Format::Svg => render_svg(Plot::Curve { curve: &run.curve, predicted: Some(t_pred) }),
            };
            emit(&out, &text)
        }
        Command::Oblivious { n, gamma, out } => {
            let report = run_oblivious(n, gamma_rule(&gamma)?.resolve(n))?;
            let text = match out.format.unwrap_or(Format::Json) {
                Format::Json => json(&report),
                Format::Csv => {
                    let mut s = String::from("placement,t_star,F_star,t_ratio,overlap_initial,overlap_target\n");
                    for r in &report.reports {
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{},{}",
                            r.placement, r.t_star, r.f_star, r.t_ratio, r.overlap_initial, r.overlap_target
                        );
                    }
                    s
                }
                f => return Err(unsupported("oblivious", f)),
            };
            emit(&out, &text)
        }
        Command::Spectrum { system, out } => {
            let r = resolve_system(&system)?;
            if !r.sys.tail_present() {
                return Err(Failure::Usage("spectrum needs a system with a tail".into()));
            }
            let dec = reduce(&r.sys, Some(&r.oracle))?;
            let export = export_spectrum(dec.jacobi())?;
            let text = match out.format.unwrap_or(Format::Json) {
                Format::Json => json(&export),
                Format::Csv => {
                    let mut s = String::from("x,lambda,norm\n");
                    for b in &export.bound_states {
                        let _ = writeln!(s, "{},{},{}", b.x, b.lambda, b.norm);
                    }
                    s
                }
                Format::Svg => {
                    let lambdas: Vec<f64> = export.bound_states.iter().map(|b| b.lambda).collect();
                    render_svg(Plot::Spectrum { eigenvalues: &lambdas })
                }
            };
            emit(&out, &text)
        }
        Command::Reduce { system, out } => {
            let r = resolve_system(&system)?;
            if !r.sys.tail_present() {
                return Err(Failure::Usage("reduce needs a system with a tail".into()));
            }
            let export = reduce(&r.sys, Some(&r.oracle))?.export();
            let text = match out.format.unwrap_or(Format::Json) {
                Format::Json => json(&export),
                Format::Csv => {
                    let mut s = String::from("k,b,a\n");
                    for (k, (b, a)) in export.b.iter().zip(&export.a).enumerate() {
                        let _ = writeln!(s, "{},{b},{a}", k + 1);
                    }
                    s
                }
                f => return Err(unsupported("reduce", f)),
            };
            emit(&out, &text)
        }
        Command::Lowerbound { n, graph, gamma, w, time, out } => {
            let base = match (graph, n) {
                (Some(path), _) => read_graph(&path)?.graph().clone(),
                (None, Some(n)) if n >= 3 => make_complete(n - 1)?,
                (None, Some(n)) => return Err(Failure::Usage(format!("lowerbound needs n >= 3, got {n}"))),
                (None, None) => return Err(Failure::Usage("either --n or --graph is required".into())),
            };
            let gamma = gamma_rule(&gamma)?.resolve(base.order() + 1);
            let eps = 1.0 / (base.order() as f64).sqrt();
            let opts = time_options(&time, std::f64::consts::PI / (gamma * eps))?;
            let report = run_lower_bound_with(&base, gamma, w, &opts)?;
            if let Some(warning) = &report.warning {
                eprintln!("tailwalk: warning: {warning}");
            }
            let text = match out.format.unwrap_or(Format::Json) {
                Format::Json => json(&report),
                Format::Csv => report.m_curve.to_csv(),
                f => return Err(unsupported("lowerbound", f)),
            };
            emit(&out, &text)
        }
        Command::Sweep { n_list, gamma, placement: p, out } => {
            let table = sweep(&n_list, gamma_rule(&gamma)?, placement(&p)?)?;
            let text = match out.format.unwrap_or(Format::Csv) {
                Format::Csv => table.to_csv(),
                Format::Json => json(&table),
                f => return Err(unsupported("sweep", f)),
            };
            emit(&out, &text)
        }
        Command::Evolve { system, time, out } => {
            let r = resolve_system(&system)?;
            let n = r.sys.order();
            let t_pred = predicted_time(n);
            let opts = time_options(&time, 2.0 * t_pred)?;
            let grid = opts.grid.clone().unwrap_or_else(|| default_grid(t_pred));
            let (curve, _) = monitored_curve_with(
                &r.sys,
                Some(&r.oracle),
                r.oracle.w,
                &grid,
                &|tail_len| principal_state(r.sys.graph(), n + tail_len),
                &opts.truncation,
            )?;
            let text = match out.format.unwrap_or(Format::Csv) {
                Format::Csv => curve.to_csv(),
                Format::Json => json(&curve),
                Format::Svg => render_svg(Plot::Curve { curve: &curve, predicted: Some(t_pred) }),
            };
            emit(&out, &text)
        }
    }
}
