//! End-to-end experiments: search on the lollipop, placement comparison,
//! lower-bound diagnostics on cone graphs, and sweeps over the graph order.

use std::f64::consts::PI;
use std::fmt::{self, Write};
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{attach_tail, make_complete, make_cone, FiniteGraph, OracleSpec, RootedGraph, TailedSystem};
use crate::jost::{bound_subspace_overlap, point_spectrum, BoundState};
use crate::operator::{assemble, principal_state, spectral_decompose, QuantumState};
use crate::propagate::{default_grid, monitored_curve_with, peak, FidelityCurve, TruncationPolicy};
use crate::reduction::reduce;

/// Where the oracle sits relative to the tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    /// Oracle on clique vertex 1, tail at vertex n.
    CliqueVertex,
    /// Oracle on the attachment vertex n.
    Root,
    /// Plain `K_n`, no tail, oracle on vertex 1.
    NoTail,
}

impl Placement {
    pub const ALL: [Placement; 3] = [Placement::CliqueVertex, Placement::Root, Placement::NoTail];

    pub fn as_str(&self) -> &'static str {
        match self {
            Placement::CliqueVertex => "clique-vertex",
            Placement::Root => "root",
            Placement::NoTail => "no-tail",
        }
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Placement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Placement::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown placement {s:?}")))
    }
}

impl Serialize for Placement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Oracle weight as a function of the graph order: a literal, or `n + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaRule {
    Literal(f64),
    OrderPlus(f64),
}

impl GammaRule {
    pub fn resolve(&self, n: usize) -> f64 {
        match *self {
            GammaRule::Literal(g) => g,
            GammaRule::OrderPlus(c) => n as f64 + c,
        }
    }
}

impl FromStr for GammaRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("cannot parse gamma rule {s:?}"));
        if let Some(rest) = s.strip_prefix('n') {
            let rest = rest.trim();
            if rest.is_empty() {
                return Ok(GammaRule::OrderPlus(0.0));
            }
            let (sign, num) = match rest.split_at(1) {
                ("+", num) => (1.0, num),
                ("-", num) => (-1.0, num),
                _ => return Err(bad()),
            };
            let c: f64 = num.trim().parse().map_err(|_| bad())?;
            return Ok(GammaRule::OrderPlus(sign * c));
        }
        s.parse::<f64>().map(GammaRule::Literal).map_err(|_| bad())
    }
}

/// Predicted peak time `pi / (2 sqrt n)` for the unnormalized clique adjacency.
pub fn predicted_time(n: usize) -> f64 {
    PI / (2.0 * (n as f64).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub experiment: &'static str,
    pub n: usize,
    pub gamma: f64,
    pub placement: Placement,
    pub t_star: f64,
    #[serde(rename = "F_star")]
    pub f_star: f64,
    pub lambda_plus: Option<f64>,
    pub lambda_minus: Option<f64>,
    pub overlap_initial: f64,
    pub overlap_target: f64,
    pub epsilon1: f64,
    pub predicted_t: f64,
    /// `t_star / predicted_t`.
    pub t_ratio: f64,
    /// Larger root of `y_0` in `(0, 1)` (its eigenvalue is `lambda_minus`).
    pub x_plus: Option<f64>,
    pub x_minus: Option<f64>,
    pub max_leakage: f64,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// A search report with the curve it was measured on.
#[derive(Debug, Clone)]
pub struct SearchRun {
    pub report: SearchReport,
    pub curve: FidelityCurve,
}

/// The search system for a placement on `K_n`, with the marked vertex.
pub fn lollipop_system(n: usize, placement: Placement) -> Result<(TailedSystem, usize)> {
    let rooted = RootedGraph::with_default_root(make_complete(n)?);
    Ok(match placement {
        Placement::CliqueVertex => (attach_tail(rooted), 1),
        Placement::Root => (attach_tail(rooted), n),
        Placement::NoTail => (TailedSystem::without_tail(rooted), 1),
    })
}

fn projection_weight(basis: &[Vec<f64>], state: &QuantumState) -> f64 {
    basis
        .iter()
        .map(|v| {
            v.iter()
                .zip(state.amplitudes())
                .map(|(x, a)| a * *x)
                .sum::<Complex64>()
                .norm_sqr()
        })
        .sum()
}

pub fn run_search(n: usize, gamma: f64, placement: Placement) -> Result<SearchReport> {
    search_run(n, gamma, placement).map(|r| r.report)
}

/// Overrides for the time grid and the tail truncation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SearchOptions {
    /// Explicit grid; defaults to 512 points over twice the predicted time.
    pub grid: Option<Vec<f64>>,
    pub truncation: TruncationPolicy,
}

pub fn search_run(n: usize, gamma: f64, placement: Placement) -> Result<SearchRun> {
    search_run_with(n, gamma, placement, &SearchOptions::default())
}

pub fn search_run_with(n: usize, gamma: f64, placement: Placement, opts: &SearchOptions) -> Result<SearchRun> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("search needs n >= 4, got {n}")));
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidArgument(format!("gamma must be positive, got {gamma}")));
    }
    let (sys, w) = lollipop_system(n, placement)?;
    let oracle = OracleSpec::new(w, gamma)?;
    let predicted_t = predicted_time(n);
    let grid = opts.grid.clone().unwrap_or_else(|| default_grid(predicted_t));
    let (curve, evolution) = monitored_curve_with(
        &sys,
        Some(&oracle),
        w,
        &grid,
        &|tail_len| principal_state(sys.graph(), n + tail_len),
        &opts.truncation,
    )?;
    let best = peak(&curve, |t| evolution.fidelity(t))?;

    let z1 = principal_state(sys.graph(), n)?;
    let target = QuantumState::basis(w, n, n)?;
    let epsilon1 = target.inner(&z1).norm();

    let (lambda_plus, lambda_minus, x_plus, x_minus, overlap_initial, overlap_target);
    if sys.tail_present() {
        let dec = reduce(&sys, Some(&oracle))?;
        let spectrum = point_spectrum(dec.jacobi())?;
        let top: Vec<BoundState> = spectrum.states.iter().take(2).cloned().collect();
        lambda_plus = top.first().map(|s| s.lambda);
        lambda_minus = top.get(1).map(|s| s.lambda);
        x_minus = top.first().map(|s| s.x);
        x_plus = top.get(1).map(|s| s.x);
        overlap_initial = bound_subspace_overlap(&dec.to_jacobi_coords(&z1)?.jacobi, &top);
        overlap_target = bound_subspace_overlap(&dec.to_jacobi_coords(&target)?.jacobi, &top);
    } else {
        let eig = spectral_decompose(&assemble(&sys, Some(&oracle), 0)?)?;
        let top: Vec<Vec<f64>> = (n.saturating_sub(2)..n)
            .rev()
            .map(|j| (0..n).map(|i| eig.vectors[(i, j)]).collect())
            .collect();
        lambda_plus = Some(eig.values[n - 1]);
        lambda_minus = Some(eig.values[n - 2]);
        x_plus = None;
        x_minus = None;
        overlap_initial = projection_weight(&top, &z1);
        overlap_target = projection_weight(&top, &target);
    }

    let report = SearchReport {
        experiment: "search",
        n,
        gamma,
        placement,
        t_star: best.t_star,
        f_star: best.f_star,
        lambda_plus,
        lambda_minus,
        overlap_initial,
        overlap_target,
        epsilon1,
        predicted_t,
        t_ratio: best.t_star / predicted_t,
        x_plus,
        x_minus,
        max_leakage: curve.max_leakage(),
    };
    Ok(SearchRun { report, curve })
}

/// The three placements side by side.
#[derive(Debug, Clone, Serialize)]
pub struct ObliviousReport {
    pub experiment: &'static str,
    pub n: usize,
    pub gamma: f64,
    pub reports: Vec<SearchReport>,
    /// `|t_star(p) - t_star(clique-vertex)| / t_star(clique-vertex)` for root, no-tail.
    pub t_star_rel_root: f64,
    pub t_star_rel_no_tail: f64,
    pub f_star_diff_root: f64,
    pub f_star_diff_no_tail: f64,
    /// Largest pairwise relative `t_star` difference (relative to the smaller time).
    pub max_pairwise_t_rel: f64,
    pub max_pairwise_f_diff: f64,
}

pub fn run_oblivious(n: usize, gamma: f64) -> Result<ObliviousReport> {
    if n < 8 {
        return Err(Error::InvalidArgument(format!("oblivious comparison needs n >= 8, got {n}")));
    }
    let reports = Placement::ALL
        .iter()
        .map(|&p| run_search(n, gamma, p))
        .collect::<Result<Vec<_>>>()?;
    let clique = &reports[0];
    let rel = |r: &SearchReport| (r.t_star - clique.t_star).abs() / clique.t_star;
    let mut max_t: f64 = 0.0;
    let mut max_f: f64 = 0.0;
    for (i, a) in reports.iter().enumerate() {
        for b in &reports[i + 1..] {
            max_t = max_t.max((a.t_star - b.t_star).abs() / a.t_star.min(b.t_star));
            max_f = max_f.max((a.f_star - b.f_star).abs());
        }
    }
    Ok(ObliviousReport {
        experiment: "oblivious",
        n,
        gamma,
        t_star_rel_root: rel(&reports[1]),
        t_star_rel_no_tail: rel(&reports[2]),
        f_star_diff_root: (reports[1].f_star - clique.f_star).abs(),
        f_star_diff_no_tail: (reports[2].f_star - clique.f_star).abs(),
        max_pairwise_t_rel: max_t,
        max_pairwise_f_diff: max_f,
        reports,
    })
}

/// `M(t)` sampled on the evolution grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MCurve {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl MCurve {
    /// CSV with header `t,M`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,M\n");
        for (t, m) in self.times.iter().zip(&self.values) {
            let _ = writeln!(out, "{t},{m}");
        }
        out
    }

    /// Largest forward-difference slope.
    pub fn max_derivative(&self) -> f64 {
        self.times
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(t, m)| (m[1] - m[0]) / (t[1] - t[0]))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LowerBoundReport {
    pub experiment: &'static str,
    /// Order and degree of the regular base graph.
    pub n: usize,
    pub d: usize,
    pub gamma: f64,
    pub w: usize,
    /// Peak time of `|<e_w, psi_w(t)>|` and the fidelity reached there.
    pub t0: f64,
    pub fidelity_t0: f64,
    pub epsilon1: f64,
    /// Eigenvalue of the top bound state of the unmarked operator.
    pub lambda1: f64,
    pub beta_z_distance: f64,
    #[serde(rename = "M_curve")]
    pub m_curve: MCurve,
    #[serde(rename = "M_t0")]
    pub m_t0: f64,
    /// `2 (1 - epsilon1)`.
    #[serde(rename = "M_floor")]
    pub m_floor: f64,
    pub max_derivative: f64,
    /// `2 gamma epsilon1`.
    pub bound_rhs: f64,
    /// `gamma t0 epsilon1`.
    pub product: f64,
    /// `1 / (gamma epsilon1)`, small in the regime the bound addresses.
    pub inverse_gamma_epsilon: f64,
    pub max_leakage: f64,
    pub warning: Option<String>,
}

impl LowerBoundReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn run_lower_bound(g: &FiniteGraph, gamma: f64, w: usize) -> Result<LowerBoundReport> {
    run_lower_bound_with(g, gamma, w, &SearchOptions::default())
}

/// As [`run_lower_bound`]; the default grid covers `[0, pi / (gamma epsilon1)]`.
pub fn run_lower_bound_with(g: &FiniteGraph, gamma: f64, w: usize, opts: &SearchOptions) -> Result<LowerBoundReport> {
    let n = g.order();
    let d = g
        .regular_degree()
        .ok_or_else(|| Error::InvalidArgument("lower-bound experiment needs a regular graph".into()))?;
    if w == 0 || w > n {
        return Err(Error::InvalidArgument(format!("marked vertex {w} outside 1..={n}")));
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidArgument(format!("gamma must be positive, got {gamma}")));
    }
    let warning = ((d as f64) < 2.0 * (n as f64).sqrt())
        .then(|| format!("degree {d} is below 2 sqrt(n) = {:.3}", 2.0 * (n as f64).sqrt()));

    let sys = attach_tail(make_cone(g));
    let cone_order = n + 1;
    let unmarked = reduce(&sys, None)?;
    let spectrum = point_spectrum(unmarked.jacobi())?;
    let beta = spectrum
        .states
        .first()
        .cloned()
        .ok_or_else(|| Error::numerical("lower_bound", "unmarked operator has no bound state"))?;

    let epsilon1 = 1.0 / (n as f64).sqrt();
    let embed_z1 = |tail_len: usize| -> Result<QuantumState> {
        let z = principal_state(g, n)?;
        let mut amps = z.amplitudes().to_vec();
        amps.resize(cone_order + tail_len, Complex64::new(0.0, 0.0));
        Ok(QuantumState::new(amps, cone_order))
    };
    let beta_state = |tail_len: usize| -> Result<QuantumState> {
        let coords: Vec<Complex64> = beta
            .normalized(unmarked.jacobi_dim(tail_len))
            .into_iter()
            .map(Complex64::from)
            .collect();
        let state = unmarked.from_jacobi_coords(&coords, tail_len).normalized();
        let z = embed_z1(tail_len)?;
        Ok(if z.inner(&state).re < 0.0 {
            QuantumState::new(state.amplitudes().iter().map(|a| -a).collect(), cone_order)
        } else {
            state
        })
    };

    let oracle = OracleSpec::new(w, gamma)?;
    let t_pred = PI / (2.0 * gamma * epsilon1);
    let grid = opts.grid.clone().unwrap_or_else(|| default_grid(t_pred));
    let (curve, evolution) = monitored_curve_with(&sys, Some(&oracle), w, &grid, &beta_state, &opts.truncation)?;
    let best = peak(&curve, |t| evolution.fidelity(t))?;

    let beta0 = beta_state(evolution.tail_len())?;
    let z1 = embed_z1(evolution.tail_len())?;
    let beta_z_distance = beta0
        .amplitudes()
        .iter()
        .zip(z1.amplitudes())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();

    let m_at = |t: f64| -> f64 {
        if t == 0.0 {
            return 0.0;
        }
        let phase = Complex64::from_polar(1.0, -beta.lambda * t);
        evolution
            .state(t)
            .amplitudes()
            .iter()
            .zip(beta0.amplitudes())
            .map(|(p, b)| (p - phase * b).norm_sqr())
            .sum()
    };
    let m_curve = MCurve { values: grid.iter().map(|&t| m_at(t)).collect(), times: grid };

    Ok(LowerBoundReport {
        experiment: "lowerbound",
        n,
        d,
        gamma,
        w,
        t0: best.t_star,
        fidelity_t0: best.f_star,
        epsilon1,
        lambda1: beta.lambda,
        beta_z_distance,
        max_derivative: m_curve.max_derivative(),
        m_t0: m_at(best.t_star),
        m_curve,
        m_floor: 2.0 * (1.0 - epsilon1),
        bound_rhs: 2.0 * gamma * epsilon1,
        product: gamma * best.t_star * epsilon1,
        inverse_gamma_epsilon: 1.0 / (gamma * epsilon1),
        max_leakage: curve.max_leakage(),
        warning,
    })
}

/// One sweep entry; failures are kept instead of aborting the sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub report: Option<SearchReport>,
    pub error: Option<String>,
    /// `t_star * sqrt(n)`.
    pub t_star_sqrt_n: Option<f64>,
    /// `(x_plus - 1/n) n^{3/2}`, tends to `+1`.
    pub x_plus_scaled: Option<f64>,
    /// `(x_minus - 1/n) n^{3/2}`, tends to `-1`.
    pub x_minus_scaled: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepTable {
    pub experiment: &'static str,
    pub placement: Placement,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let mut out = String::from(
            "n,gamma,placement,t_star,F_star,t_star_sqrt_n,lambda_plus,lambda_minus,x_plus_scaled,x_minus_scaled,overlap_initial,overlap_target,epsilon1,error\n",
        );
        for row in &self.rows {
            match &row.report {
                Some(r) => {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{},{},{},{},{},{},{},",
                        r.n,
                        r.gamma,
                        r.placement,
                        r.t_star,
                        r.f_star,
                        opt(row.t_star_sqrt_n),
                        opt(r.lambda_plus),
                        opt(r.lambda_minus),
                        opt(row.x_plus_scaled),
                        opt(row.x_minus_scaled),
                        r.overlap_initial,
                        r.overlap_target,
                        r.epsilon1
                    );
                }
                None => {
                    let msg = row.error.as_deref().unwrap_or("").replace([',', '\n'], ";");
                    let _ = writeln!(out, "{},,{},,,,,,,,,,,{msg}", row.n, self.placement);
                }
            }
        }
        out
    }
}

/// Environment variable capping sweep parallelism.
pub const THREADS_ENV: &str = "TAILWALK_THREADS";

pub fn sweep(n_list: &[usize], gamma: GammaRule, placement: Placement) -> Result<SweepTable> {
    if n_list.is_empty() {
        return Err(Error::InvalidArgument("sweep needs at least one n".into()));
    }
    if n_list.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::InvalidArgument("sweep orders must be strictly increasing".into()));
    }
    let row = |&n: &usize| -> SweepRow {
        match run_search(n, gamma.resolve(n), placement) {
            Ok(r) => {
                let nf = n as f64;
                let scale = |x: Option<f64>| x.map(|x| (x - 1.0 / nf) * nf.powf(1.5));
                SweepRow {
                    n,
                    t_star_sqrt_n: Some(r.t_star * nf.sqrt()),
                    x_plus_scaled: scale(r.x_plus),
                    x_minus_scaled: scale(r.x_minus),
                    report: Some(r),
                    error: None,
                }
            }
            Err(e) => SweepRow {
                n,
                report: None,
                error: Some(e.to_string()),
                t_star_sqrt_n: None,
                x_plus_scaled: None,
                x_minus_scaled: None,
            },
        }
    };
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::numerical("sweep", e.to_string()))?;
    let rows = pool.install(|| n_list.par_iter().map(row).collect());
    Ok(SweepTable { experiment: "sweep", placement, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_rules() {
        assert_eq!("n".parse::<GammaRule>().unwrap().resolve(64), 64.0);
        assert_eq!("n+1".parse::<GammaRule>().unwrap().resolve(64), 65.0);
        assert_eq!("n - 2.5".parse::<GammaRule>().unwrap().resolve(64), 61.5);
        assert_eq!("12.5".parse::<GammaRule>().unwrap().resolve(64), 12.5);
        assert!("m+1".parse::<GammaRule>().is_err());
        assert!("n*2".parse::<GammaRule>().is_err());
    }

    #[test]
    fn placements_round_trip() {
        for p in Placement::ALL {
            assert_eq!(p.as_str().parse::<Placement>().unwrap(), p);
        }
        assert!("edge".parse::<Placement>().is_err());
    }

    #[test]
    fn finite_clique_search_is_perfect() {
        let r = run_search(4, 4.0, Placement::NoTail).unwrap();
        assert!(r.f_star >= 0.99, "{r:?}");
        assert!((r.epsilon1 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_small_or_invalid_inputs() {
        assert!(run_search(3, 3.0, Placement::CliqueVertex).is_err());
        assert!(run_search(8, 0.0, Placement::CliqueVertex).is_err());
        assert!(run_oblivious(4, 4.0).is_err());
        assert!(sweep(&[], GammaRule::OrderPlus(0.0), Placement::Root).is_err());
        assert!(sweep(&[16, 8], GammaRule::OrderPlus(0.0), Placement::Root).is_err());
        let star = FiniteGraph::new(4, [(1, 2), (1, 3), (1, 4)], []).unwrap();
        assert!(run_lower_bound(&star, 4.0, 2).is_err());
    }
}
