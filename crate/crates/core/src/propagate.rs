//! Unitary evolution on truncated systems, with a leakage monitor guarding
//! the artificial end of the tail.

use std::fmt::Write;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{OracleSpec, TailedSystem};
use crate::operator::{assemble, principal_state, spectral_decompose, Eigen, QuantumState, TruncatedHamiltonian};

/// Probability mass allowed on the guard sites at any reported time.
pub const LEAKAGE_TOL: f64 = 1e-8;
/// Number of trailing tail sites watched by the leakage monitor.
pub const GUARD_SITES: usize = 16;
const MAX_DOUBLINGS: usize = 6;

/// Propagator `exp(-itH)` built from one dense eigendecomposition.
#[derive(Debug, Clone)]
pub struct Propagator {
    graph_order: usize,
    eig: Eigen,
}

impl Propagator {
    pub fn new(h: &TruncatedHamiltonian) -> Result<Self> {
        Ok(Propagator { graph_order: h.graph_order(), eig: spectral_decompose(h)? })
    }

    pub fn size(&self) -> usize {
        self.eig.values.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eig.values
    }

    /// Coefficients of `psi` in the eigenbasis.
    pub fn coefficients(&self, psi: &QuantumState) -> Result<Vec<Complex64>> {
        let n = self.size();
        if psi.len() != n {
            return Err(Error::SizeMismatch { expected: n, got: psi.len() });
        }
        let v = &self.eig.vectors;
        let amps = psi.amplitudes();
        Ok((0..n)
            .map(|j| (0..n).map(|i| amps[i] * v[(i, j)]).sum())
            .collect())
    }

    fn phased(&self, coeffs: &[Complex64], t: f64) -> Vec<Complex64> {
        coeffs
            .iter()
            .zip(&self.eig.values)
            .map(|(c, &l)| c * Complex64::from_polar(1.0, -l * t))
            .collect()
    }

    /// Amplitude on 1-based vertex `u` at time `t`.
    pub fn amplitude(&self, coeffs: &[Complex64], u: usize, t: f64) -> Complex64 {
        let v = &self.eig.vectors;
        self.phased(coeffs, t)
            .iter()
            .enumerate()
            .map(|(j, c)| c * v[(u - 1, j)])
            .sum()
    }

    pub fn state(&self, coeffs: &[Complex64], t: f64) -> QuantumState {
        let n = self.size();
        let v = &self.eig.vectors;
        let phased = self.phased(coeffs, t);
        let amps = (0..n)
            .map(|i| phased.iter().enumerate().map(|(j, c)| c * v[(i, j)]).sum())
            .collect();
        QuantumState::new(amps, self.graph_order)
    }

    /// Leakage at time `t` without materializing the whole state.
    pub fn leakage(&self, coeffs: &[Complex64], t: f64, guard: usize) -> f64 {
        let n = self.size();
        let tail = n - self.graph_order;
        let guard = guard.min(tail);
        let phased = self.phased(coeffs, t);
        let v = &self.eig.vectors;
        (n - guard..n)
            .map(|i| {
                phased
                    .iter()
                    .enumerate()
                    .map(|(j, c)| c * v[(i, j)])
                    .sum::<Complex64>()
                    .norm_sqr()
            })
            .sum()
    }
}

/// `exp(-itH) psi0`.
pub fn evolve(h: &TruncatedHamiltonian, psi0: &QuantumState, t: f64) -> Result<QuantumState> {
    psi0.require_unit()?;
    if t < 0.0 {
        return Err(Error::InvalidArgument(format!("evolution time {t} is negative")));
    }
    if t == 0.0 {
        return Ok(psi0.clone());
    }
    let prop = Propagator::new(h)?;
    let c = prop.coefficients(psi0)?;
    Ok(prop.state(&c, t))
}

/// Tail length for evolutions up to `t_max`: the free front moves at most two
/// sites per unit time, plus a fixed margin.
pub fn min_truncation(t_max: f64) -> usize {
    (4.0 * t_max.max(0.0)).ceil() as usize + 64
}

/// Squared norm on the last `guard` tail sites (all of them if the tail is shorter).
pub fn leakage(psi: &QuantumState, guard: usize) -> f64 {
    let guard = guard.min(psi.tail_len());
    psi.amplitudes()[psi.len() - guard..].iter().map(|a| a.norm_sqr()).sum()
}

/// `F(t) = |<e_w, exp(-itH) psi0>|` sampled on a time grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FidelityCurve {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub leakage: Vec<f64>,
    /// Tail sites used for the evolution (0 without a tail).
    pub tail_len: usize,
}

impl FidelityCurve {
    pub fn max_leakage(&self) -> f64 {
        self.leakage.iter().copied().fold(0.0, f64::max)
    }

    /// CSV with header `t,fidelity,leakage`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,fidelity,leakage\n");
        for ((t, f), l) in self.times.iter().zip(&self.values).zip(&self.leakage) {
            let _ = writeln!(out, "{t},{f},{l}");
        }
        out
    }
}

/// Evolution of one initial state under one Hamiltonian, watched at a target vertex.
#[derive(Debug, Clone)]
pub struct Evolution {
    prop: Propagator,
    coeffs: Vec<Complex64>,
    target: usize,
    tail_len: usize,
}

impl Evolution {
    pub fn new(h: &TruncatedHamiltonian, initial: &QuantumState, target: usize) -> Result<Self> {
        initial.require_unit()?;
        if target == 0 || target > h.size() {
            return Err(Error::InvalidArgument(format!("target {target} outside 1..={}", h.size())));
        }
        let prop = Propagator::new(h)?;
        let coeffs = prop.coefficients(initial)?;
        Ok(Evolution { prop, coeffs, target, tail_len: h.tail_len() })
    }

    pub fn fidelity(&self, t: f64) -> f64 {
        self.prop.amplitude(&self.coeffs, self.target, t).norm()
    }

    pub fn state(&self, t: f64) -> QuantumState {
        self.prop.state(&self.coeffs, t)
    }

    pub fn leakage(&self, t: f64) -> f64 {
        self.prop.leakage(&self.coeffs, t, GUARD_SITES)
    }

    pub fn tail_len(&self) -> usize {
        self.tail_len
    }

    pub fn propagator(&self) -> &Propagator {
        &self.prop
    }

    pub fn curve(&self, grid: &[f64]) -> FidelityCurve {
        FidelityCurve {
            times: grid.to_vec(),
            values: grid.iter().map(|&t| self.fidelity(t)).collect(),
            leakage: grid.iter().map(|&t| self.leakage(t)).collect(),
            tail_len: self.tail_len,
        }
    }
}

/// 512 uniform points over `[0, 2 t_pred]`.
pub fn default_grid(t_pred: f64) -> Vec<f64> {
    uniform_grid(2.0 * t_pred, 512)
}

pub fn uniform_grid(t_max: f64, points: usize) -> Vec<f64> {
    if points < 2 {
        return vec![0.0];
    }
    (0..points).map(|i| t_max * i as f64 / (points - 1) as f64).collect()
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("empty time grid".into()));
    }
    if grid[0] < 0.0 || grid.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::InvalidArgument("time grid must be non-negative and increasing".into()));
    }
    Ok(())
}

/// How [`monitored_curve_with`] picks and grows the tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Starting tail length; `None` uses [`min_truncation`] of the last grid time.
    pub initial_tail: Option<usize>,
    pub leakage_tol: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { initial_tail: None, leakage_tol: LEAKAGE_TOL }
    }
}

/// Runs an evolution over `grid`, doubling the tail until the leakage stays
/// below [`LEAKAGE_TOL`]. `initial` builds the start state for a given tail length.
pub fn monitored_curve(
    sys: &TailedSystem,
    oracle: Option<&OracleSpec>,
    target: usize,
    grid: &[f64],
    initial: &dyn Fn(usize) -> Result<QuantumState>,
) -> Result<(FidelityCurve, Evolution)> {
    monitored_curve_with(sys, oracle, target, grid, initial, &TruncationPolicy::default())
}

pub fn monitored_curve_with(
    sys: &TailedSystem,
    oracle: Option<&OracleSpec>,
    target: usize,
    grid: &[f64],
    initial: &dyn Fn(usize) -> Result<QuantumState>,
    policy: &TruncationPolicy,
) -> Result<(FidelityCurve, Evolution)> {
    check_grid(grid)?;
    if target == 0 || target > sys.order() {
        return Err(Error::InvalidArgument(format!("target {target} outside 1..={}", sys.order())));
    }
    if !(policy.leakage_tol > 0.0) {
        return Err(Error::InvalidArgument("leakage tolerance must be positive".into()));
    }
    let t_max = *grid.last().expect("grid is non-empty");
    let mut tail_len = match (sys.tail_present(), policy.initial_tail) {
        (false, _) => 0,
        (true, Some(0)) => return Err(Error::Truncation("tail length must be positive".into())),
        (true, Some(l)) => l,
        (true, None) => min_truncation(t_max),
    };
    for _ in 0..=MAX_DOUBLINGS {
        let h = assemble(sys, oracle, tail_len)?;
        let evolution = Evolution::new(&h, &initial(tail_len)?, target)?;
        let curve = evolution.curve(grid);
        if curve.max_leakage() <= policy.leakage_tol {
            return Ok((curve, evolution));
        }
        tail_len *= 2;
    }
    Err(Error::Truncation(format!(
        "leakage above {:e} after {MAX_DOUBLINGS} doublings (tail {})",
        policy.leakage_tol,
        tail_len / 2
    )))
}

/// Fidelity of the principal state with `e_w` under `A + gamma P_w`.
pub fn fidelity_curve(
    sys: &TailedSystem,
    oracle: Option<&OracleSpec>,
    w: usize,
    grid: &[f64],
) -> Result<(FidelityCurve, Evolution)> {
    let n = sys.order();
    monitored_curve(sys, oracle, w, grid, &|tail_len| principal_state(sys.graph(), n + tail_len))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Peak {
    pub t_star: f64,
    pub f_star: f64,
}

const PEAK_TOL: f64 = 1e-6;

/// Grid argmax refined by golden-section search over the neighboring cells.
pub fn peak(curve: &FidelityCurve, fidelity: impl Fn(f64) -> f64) -> Result<Peak> {
    if curve.times.is_empty() {
        return Err(Error::InvalidArgument("empty fidelity curve".into()));
    }
    let (i, &f_grid) = curve
        .values
        .iter()
        .enumerate()
        .fold((0, &f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
    if f_grid <= 0.0 {
        return Err(Error::DegeneratePeak);
    }
    let lo = curve.times[i.saturating_sub(1)];
    let hi = curve.times[(i + 1).min(curve.times.len() - 1)];
    let grid_peak = Peak { t_star: curve.times[i], f_star: f_grid };
    if hi <= lo {
        return Ok(grid_peak);
    }
    let refined = golden_max(&fidelity, lo, hi, PEAK_TOL);
    Ok(if refined.f_star >= f_grid { refined } else { grid_peak })
}

fn golden_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Peak {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    let t = 0.5 * (a + b);
    Peak { t_star: t, f_star: f(t) }
}
