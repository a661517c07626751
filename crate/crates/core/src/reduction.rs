//! Splitting a tailed graph Hamiltonian into a finite complement block and an
//! eventually-free Jacobi matrix.
//!
//! The tail only touches the root, so the cyclic subspace generated by `e_root`
//! under the finite block, together with the tail sites, is invariant. Lanczos
//! from the root builds an orthonormal basis of that Krylov space; its
//! orthogonal complement inside the graph is left alone by the tail and is
//! diagonalized directly.

use faer::Mat;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{OracleSpec, TailedSystem};
use crate::operator::{symmetric_eigen, QuantumState};

/// Semi-infinite symmetric tridiagonal matrix that is free (`b = 0`, `a = 1`)
/// beyond its horizon.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EventuallyFreeJacobi {
    b: Vec<f64>,
    a: Vec<f64>,
}

impl EventuallyFreeJacobi {
    /// `b` holds the diagonal `b_1..b_K`, `a` the off-diagonals `a_1..a_{K-1}`.
    pub fn new(b: Vec<f64>, a: Vec<f64>) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::InvalidJacobi("horizon must be at least 1".into()));
        }
        if a.len() + 1 != b.len() {
            return Err(Error::InvalidJacobi(format!(
                "{} diagonal entries need {} off-diagonals, got {}",
                b.len(),
                b.len() - 1,
                a.len()
            )));
        }
        if let Some(k) = a.iter().position(|&v| !(v > 0.0 && v.is_finite())) {
            return Err(Error::InvalidJacobi(format!("a_{} = {} is not positive", k + 1, a[k])));
        }
        if let Some(k) = b.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidJacobi(format!("b_{} is not finite", k + 1)));
        }
        Ok(EventuallyFreeJacobi { b, a })
    }

    /// The free Jacobi matrix (adjacency of the half-line).
    pub fn free() -> Self {
        EventuallyFreeJacobi { b: vec![0.0], a: vec![] }
    }

    pub fn horizon(&self) -> usize {
        self.b.len()
    }

    /// Diagonal entry `b_k`, 1-based.
    pub fn b(&self, k: usize) -> f64 {
        self.b.get(k - 1).copied().unwrap_or(0.0)
    }

    /// Off-diagonal `a_k` between rows `k` and `k + 1`, 1-based.
    pub fn a(&self, k: usize) -> f64 {
        self.a.get(k - 1).copied().unwrap_or(1.0)
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.b
    }

    pub fn off_diagonal(&self) -> &[f64] {
        &self.a
    }

    /// Leading `size x size` block as a dense matrix (hard wall at the end).
    pub fn truncated(&self, size: usize) -> Mat<f64> {
        Mat::from_fn(size, size, |i, j| {
            if i == j {
                self.b(i + 1)
            } else if i + 1 == j {
                self.a(i + 1)
            } else if j + 1 == i {
                self.a(j + 1)
            } else {
                0.0
            }
        })
    }
}

/// Orthonormal change of basis bringing the truncated Hamiltonian to
/// `blockdiag(complement, jacobi)`.
#[derive(Debug, Clone)]
pub struct GolinskiiDecomposition {
    jacobi: EventuallyFreeJacobi,
    graph_order: usize,
    /// Graph-supported Jacobi basis vectors, in Jacobi index order (the root
    /// vector is last).
    lanczos: Vec<Vec<f64>>,
    complement_values: Vec<f64>,
    complement_vectors: Vec<Vec<f64>>,
}

/// A state written in the decomposition's coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitCoords {
    /// Coefficients on Jacobi basis vectors `1..`.
    pub jacobi: Vec<Complex64>,
    /// Coefficients on the complement eigenvectors.
    pub complement: Vec<Complex64>,
}

impl SplitCoords {
    pub fn jacobi_norm_sqr(&self) -> f64 {
        self.jacobi.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn complement_norm_sqr(&self) -> f64 {
        self.complement.iter().map(|c| c.norm_sqr()).sum()
    }
}

const BREAKDOWN_TOL: f64 = 1e-10;

/// Runs the reduction on a tailed system, with an optional oracle loop.
pub fn reduce(sys: &TailedSystem, oracle: Option<&OracleSpec>) -> Result<GolinskiiDecomposition> {
    if !sys.tail_present() {
        return Err(Error::InvalidArgument("reduction needs a tailed system".into()));
    }
    let n = sys.order();
    if let Some(o) = oracle {
        o.check_against(n)?;
    }
    let g = sys.graph();
    let mut block = Mat::<f64>::zeros(n, n);
    for &(u, v) in g.edges() {
        block[(u - 1, v - 1)] = 1.0;
        block[(v - 1, u - 1)] = 1.0;
    }
    for (&u, &w) in g.loops() {
        block[(u - 1, u - 1)] += w;
    }
    if let Some(o) = oracle {
        block[(o.w - 1, o.w - 1)] += o.gamma;
    }
    let scale = (0..n)
        .map(|i| (0..n).map(|j| block[(i, j)].abs()).sum::<f64>())
        .fold(1.0, f64::max);

    let apply = |x: &[f64]| -> Vec<f64> {
        (0..n).map(|i| (0..n).map(|j| block[(i, j)] * x[j]).sum()).collect()
    };
    let dot = |x: &[f64], y: &[f64]| -> f64 { x.iter().zip(y).map(|(p, q)| p * q).sum() };

    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut alphas = Vec::new();
    let mut betas = Vec::new();
    let mut q = vec![0.0; n];
    q[sys.root() - 1] = 1.0;
    loop {
        let mut r = apply(&q);
        let alpha = dot(&q, &r);
        alphas.push(alpha);
        basis.push(q);
        // Full reorthogonalization, two passes.
        for _ in 0..2 {
            for v in &basis {
                let c = dot(v, &r);
                r.iter_mut().zip(v).for_each(|(ri, vi)| *ri -= c * vi);
            }
        }
        let beta = dot(&r, &r).sqrt();
        if beta < BREAKDOWN_TOL * scale || basis.len() == n {
            break;
        }
        betas.push(beta);
        q = r.into_iter().map(|v| v / beta).collect();
    }
    for (i, u) in basis.iter().enumerate() {
        for v in &basis[..i] {
            if dot(u, v).abs() > 1e-12 {
                return Err(Error::numerical("reduction", "Lanczos reorthogonalization failed"));
            }
        }
    }

    // Reverse so the root vector sits at the tail interface.
    let mut b: Vec<f64> = alphas.iter().rev().copied().collect();
    b.push(0.0);
    let mut a: Vec<f64> = betas.iter().rev().copied().collect();
    a.push(1.0);
    let jacobi = EventuallyFreeJacobi::new(b, a)?;
    let lanczos: Vec<Vec<f64>> = basis.into_iter().rev().collect();

    let (complement_values, complement_vectors) = complement_block(&block, &lanczos)?;
    Ok(GolinskiiDecomposition {
        jacobi,
        graph_order: n,
        lanczos,
        complement_values,
        complement_vectors,
    })
}

fn complement_block(block: &Mat<f64>, lanczos: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = block.nrows();
    let m = lanczos.len();
    if m == n {
        return Ok((Vec::new(), Vec::new()));
    }
    let krylov = Mat::from_fn(n, m, |i, j| lanczos[j][i]);
    let full_q = krylov.qr().compute_Q();
    let comp = full_q.subcols(m, n - m).to_owned();
    let reduced = comp.transpose() * block * &comp;
    let reduced = Mat::from_fn(n - m, n - m, |i, j| 0.5 * (reduced[(i, j)] + reduced[(j, i)]));
    let eig = symmetric_eigen(reduced.as_ref())?;
    let vectors_mat = &comp * &eig.vectors;
    let vectors = (0..n - m)
        .map(|j| {
            let mut v: Vec<f64> = (0..n).map(|i| vectors_mat[(i, j)]).collect();
            if let Some(first) = v.iter().find(|x| x.abs() > 1e-12) {
                if *first < 0.0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
            }
            v
        })
        .collect();
    Ok((eig.values, vectors))
}

impl GolinskiiDecomposition {
    pub fn jacobi(&self) -> &EventuallyFreeJacobi {
        &self.jacobi
    }

    pub fn graph_order(&self) -> usize {
        self.graph_order
    }

    /// Number of Jacobi basis vectors supported on graph vertices.
    pub fn graph_supported_dim(&self) -> usize {
        self.lanczos.len()
    }

    /// Graph-supported Jacobi basis vectors in Jacobi index order.
    pub fn lanczos_vectors(&self) -> &[Vec<f64>] {
        &self.lanczos
    }

    pub fn complement_values(&self) -> &[f64] {
        &self.complement_values
    }

    pub fn complement_vectors(&self) -> &[Vec<f64>] {
        &self.complement_vectors
    }

    /// Number of Jacobi coordinates on a system truncated to `tail_len` sites.
    pub fn jacobi_dim(&self, tail_len: usize) -> usize {
        self.lanczos.len() + tail_len
    }

    /// Jacobi basis vector `k` (1-based) on a system with `size` rows.
    pub fn jacobi_vector(&self, k: usize, size: usize) -> Vec<f64> {
        let m = self.lanczos.len();
        let mut v = vec![0.0; size];
        if k <= m {
            v[..self.graph_order].copy_from_slice(&self.lanczos[k - 1]);
        } else {
            v[self.graph_order + k - m - 1] = 1.0;
        }
        v
    }

    /// Columns: complement eigenvectors, then Jacobi basis vectors `1..m+L`.
    pub fn full_basis(&self, tail_len: usize) -> Mat<f64> {
        let size = self.graph_order + tail_len;
        let c = self.complement_vectors.len();
        let mut q = Mat::<f64>::zeros(size, size);
        for (j, v) in self.complement_vectors.iter().enumerate() {
            for (i, &x) in v.iter().enumerate() {
                q[(i, j)] = x;
            }
        }
        for k in 1..=self.jacobi_dim(tail_len) {
            for (i, x) in self.jacobi_vector(k, size).into_iter().enumerate() {
                if x != 0.0 {
                    q[(i, c + k - 1)] = x;
                }
            }
        }
        q
    }

    /// Expected `Q^T H Q`: diagonal complement block, then the truncated Jacobi matrix.
    pub fn block_form(&self, tail_len: usize) -> Mat<f64> {
        let size = self.graph_order + tail_len;
        let c = self.complement_values.len();
        let jac = self.jacobi.truncated(self.jacobi_dim(tail_len));
        Mat::from_fn(size, size, |i, j| {
            if i < c || j < c {
                if i == j {
                    self.complement_values[i]
                } else {
                    0.0
                }
            } else {
                jac[(i - c, j - c)]
            }
        })
    }

    pub fn to_jacobi_coords(&self, state: &QuantumState) -> Result<SplitCoords> {
        let n = self.graph_order;
        if state.graph_order() != n || state.len() < n {
            return Err(Error::SizeMismatch { expected: n, got: state.graph_order() });
        }
        let amps = state.amplitudes();
        let project = |v: &[f64]| -> Complex64 { v.iter().zip(amps).map(|(x, a)| a * *x).sum() };
        let mut jacobi: Vec<Complex64> = self.lanczos.iter().map(|v| project(v)).collect();
        jacobi.extend_from_slice(&amps[n..]);
        let complement = self.complement_vectors.iter().map(|v| project(v)).collect();
        Ok(SplitCoords { jacobi, complement })
    }

    /// Maps Jacobi coordinates back to vertex amplitudes on a system with
    /// `tail_len` tail sites. Coordinates beyond the truncation are dropped.
    pub fn from_jacobi_coords(&self, coords: &[Complex64], tail_len: usize) -> QuantumState {
        let n = self.graph_order;
        let m = self.lanczos.len();
        let mut amps = vec![Complex64::new(0.0, 0.0); n + tail_len];
        for (c, v) in coords.iter().zip(&self.lanczos) {
            for (a, x) in amps.iter_mut().zip(v) {
                *a += c * *x;
            }
        }
        for (k, c) in coords.iter().enumerate().skip(m).take(tail_len) {
            amps[n + k - m] = *c;
        }
        QuantumState::new(amps, n)
    }

    pub fn export(&self) -> DecompositionExport {
        let support = |v: &[f64]| -> Vec<(usize, f64)> {
            v.iter()
                .enumerate()
                .filter(|(_, x)| x.abs() > 1e-14)
                .map(|(i, &x)| (i + 1, x))
                .collect()
        };
        DecompositionExport {
            horizon: self.jacobi.horizon(),
            b: self.jacobi.diagonal().to_vec(),
            a: self.jacobi.off_diagonal().to_vec(),
            complement_eigenvalues: self.complement_values.clone(),
            basis_supports: self.lanczos.iter().map(|v| support(v)).collect(),
        }
    }
}

/// JSON shape of a decomposition. Basis supports list `(vertex, amplitude)`
/// pairs of each graph-supported Jacobi vector; tail sites map to themselves.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionExport {
    pub horizon: usize,
    pub b: Vec<f64>,
    pub a: Vec<f64>,
    pub complement_eigenvalues: Vec<f64>,
    pub basis_supports: Vec<Vec<(usize, f64)>>,
}
