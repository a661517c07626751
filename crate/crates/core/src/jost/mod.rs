//! Jost polynomials, point spectrum and bound states of eventually-free
//! Jacobi matrices.
//!
//! For `lambda = x + 1/x` the Jost solution satisfies the eigen-equation row
//! by row and behaves like `x^k` deep in the free region. Its zeroth component
//! `y_0` is a polynomial whose roots in `(-1, 1)` are exactly the `x` values of
//! the eigenvalues outside the band `[-2, 2]`.

mod poly;
mod roots;

pub use poly::LaurentPoly;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::reduction::EventuallyFreeJacobi;

/// Jost polynomials `y_0, y_1, ..., y_{K+1}` (index = position in the result).
///
/// Normalized by `y_{K+1} = x^{K+1}`; `y_0` uses the convention `a_0 = 1`.
pub fn jost_polynomials(jacobi: &EventuallyFreeJacobi) -> Result<Vec<LaurentPoly>> {
    let k_max = jacobi.horizon();
    let mut ys = vec![LaurentPoly::zero(); k_max + 2];
    ys[k_max + 1] = LaurentPoly::monomial(k_max as i32 + 1, 1.0);
    ys[k_max] = LaurentPoly::monomial(k_max as i32, 1.0);
    for k in (2..=k_max).rev() {
        let a_prev = jacobi.a(k - 1);
        if a_prev <= 0.0 {
            return Err(Error::InvalidJacobi(format!("a_{} = {a_prev} is not positive", k - 1)));
        }
        let next = &ys[k].times_spectral(jacobi.b(k)) - &ys[k + 1].scale(jacobi.a(k));
        ys[k - 1] = next.scale(1.0 / a_prev);
    }
    ys[0] = &ys[1].times_spectral(jacobi.b(1)) - &ys[2].scale(jacobi.a(1));
    if ys[0].min_degree() < 0 {
        return Err(Error::InternalConsistency(format!(
            "y_0 has a negative power x^{}",
            ys[0].min_degree()
        )));
    }
    Ok(ys)
}

/// A normalizable eigenvector of the Jacobi matrix with eigenvalue outside the band.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundState {
    /// Root of `y_0` in `(-1, 1)`.
    pub x: f64,
    pub lambda: f64,
    /// Raw Jost components `y_1(x)..y_K(x)`; beyond `K` the entries are `x^k`.
    pub head: Vec<f64>,
    /// Ratio of consecutive components past the horizon (equal to `x`).
    pub tail_ratio: f64,
    /// Norm of the full (infinite) vector.
    pub norm: f64,
}

impl BoundState {
    fn from_root(x: f64, ys: &[LaurentPoly]) -> Self {
        let k_max = ys.len() - 2;
        let head: Vec<f64> = ys[1..=k_max].iter().map(|y| y.eval(x)).collect();
        let tail = x.powi(2 * (k_max as i32 + 1)) / (1.0 - x * x);
        let norm = (head.iter().map(|v| v * v).sum::<f64>() + tail).sqrt();
        BoundState { x, lambda: x + 1.0 / x, head, tail_ratio: x, norm }
    }

    pub fn horizon(&self) -> usize {
        self.head.len()
    }

    /// Unnormalized component `y_k(x)`, 1-based.
    pub fn raw(&self, k: usize) -> f64 {
        if k <= self.head.len() {
            self.head[k - 1]
        } else {
            self.x.powi(k as i32)
        }
    }

    /// Component `k` (1-based) of the unit-norm bound state.
    pub fn component(&self, k: usize) -> f64 {
        self.raw(k) / self.norm
    }

    /// The first `len` components of the unit-norm bound state.
    pub fn normalized(&self, len: usize) -> Vec<f64> {
        (1..=len).map(|k| self.component(k)).collect()
    }

    /// Max-norm residual of the eigen-equation over rows `1..len` of the
    /// Jacobi matrix, applied to the unit-norm state (untruncated neighbors).
    pub fn eigen_residual(&self, jacobi: &EventuallyFreeJacobi, len: usize) -> f64 {
        (1..=len)
            .map(|k| {
                let below = if k > 1 { jacobi.a(k - 1) * self.component(k - 1) } else { 0.0 };
                let row = below + jacobi.b(k) * self.component(k) + jacobi.a(k) * self.component(k + 1);
                (row - self.lambda * self.component(k)).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Bound states sorted by eigenvalue (largest first), plus roots too close to
/// `+-1` to be trusted as point spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSpectrum {
    pub states: Vec<BoundState>,
    pub boundary_roots: Vec<f64>,
}

const BOUNDARY_MARGIN: f64 = 1e-12;

pub fn point_spectrum(jacobi: &EventuallyFreeJacobi) -> Result<PointSpectrum> {
    let ys = jost_polynomials(jacobi)?;
    point_spectrum_from(&ys)
}

fn point_spectrum_from(ys: &[LaurentPoly]) -> Result<PointSpectrum> {
    let y0 = ys[0]
        .to_polynomial()
        .ok_or_else(|| Error::InternalConsistency("y_0 is not a polynomial".into()))?;
    if roots::eval(&y0, 0.0) == 0.0 {
        return Err(Error::InternalConsistency("y_0(0) = 0".into()));
    }
    let degree = ys[0].degree().max(0) as usize;
    let grid = 10 * degree + 64;
    let mut states = Vec::new();
    let mut boundary_roots = Vec::new();
    for x in roots::real_roots(&y0, -1.0, 1.0, grid) {
        if x.abs() >= 1.0 - BOUNDARY_MARGIN {
            boundary_roots.push(x);
        } else {
            states.push(BoundState::from_root(x, ys));
        }
    }
    states.sort_by(|a, b| b.lambda.total_cmp(&a.lambda));
    Ok(PointSpectrum { states, boundary_roots })
}

/// Signs (`-1`, `0`, `1`) of `y_0` at the probe points.
pub fn sign_profile(jacobi: &EventuallyFreeJacobi, probes: &[f64]) -> Result<Vec<i8>> {
    let ys = jost_polynomials(jacobi)?;
    Ok(probes
        .iter()
        .map(|&x| {
            let v = ys[0].eval(x);
            if v > 0.0 {
                1
            } else if v < 0.0 {
                -1
            } else {
                0
            }
        })
        .collect())
}

/// The probe points `(-1, 1/n, 1)` used for lollipop graphs of order `n`.
pub fn lollipop_probes(n: usize) -> [f64; 3] {
    [-1.0, 1.0 / n as f64, 1.0]
}

/// Squared norm of the projection of `coords` (Jacobi basis) onto the span of
/// the bound states, which are mutually orthogonal.
pub fn bound_subspace_overlap(coords: &[Complex64], states: &[BoundState]) -> f64 {
    states
        .iter()
        .map(|s| {
            coords
                .iter()
                .enumerate()
                .map(|(i, c)| c * s.component(i + 1))
                .sum::<Complex64>()
                .norm_sqr()
        })
        .sum()
}

/// JSON shape of a spectrum computation.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumExport {
    pub horizon: usize,
    pub bound_states: Vec<BoundState>,
    pub boundary_roots: Vec<f64>,
    /// `y_0, y_1, ...` with their lowest power.
    pub polynomials: Vec<LaurentPoly>,
}

pub fn export_spectrum(jacobi: &EventuallyFreeJacobi) -> Result<SpectrumExport> {
    let ys = jost_polynomials(jacobi)?;
    let spectrum = point_spectrum_from(&ys)?;
    Ok(SpectrumExport {
        horizon: jacobi.horizon(),
        bound_states: spectrum.states,
        boundary_roots: spectrum.boundary_roots,
        polynomials: ys,
    })
}
