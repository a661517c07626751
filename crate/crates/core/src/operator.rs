//! Truncated Hamiltonians, quantum states and the dense eigensolver backend.

use faer::{Mat, MatRef, Side};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, OracleSpec, TailedSystem};

/// Dense symmetric matrix of `A + gamma * P_w` on the graph plus the first
/// `L` tail sites. The last tail site is a hard wall.
#[derive(Debug, Clone)]
pub struct TruncatedHamiltonian {
    graph_order: usize,
    tail_len: usize,
    matrix: Mat<f64>,
}

impl TruncatedHamiltonian {
    pub fn size(&self) -> usize {
        self.graph_order + self.tail_len
    }

    pub fn graph_order(&self) -> usize {
        self.graph_order
    }

    pub fn tail_len(&self) -> usize {
        self.tail_len
    }

    /// Vertex label of each row: `1..=n` then tail sites `n+1..=n+L`.
    pub fn labels(&self) -> impl Iterator<Item = usize> {
        1..=self.size()
    }

    pub fn matrix(&self) -> MatRef<'_, f64> {
        self.matrix.as_ref()
    }

    /// Entry at 1-based vertex labels `(u, v)`.
    pub fn entry(&self, u: usize, v: usize) -> f64 {
        self.matrix[(u - 1, v - 1)]
    }

    /// Maximum absolute row sum, an upper bound on the spectral norm.
    pub fn norm_bound(&self) -> f64 {
        (0..self.size())
            .map(|i| (0..self.size()).map(|j| self.matrix[(i, j)].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Applies the matrix to a complex vector.
    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let n = self.size();
        (0..n)
            .map(|i| (0..n).map(|j| psi[j] * self.matrix[(i, j)]).sum())
            .collect()
    }
}

/// Assembles the truncated Hamiltonian of `sys` with an optional oracle loop.
///
/// `tail_len` is ignored for systems without a tail.
pub fn assemble(
    sys: &TailedSystem,
    oracle: Option<&OracleSpec>,
    tail_len: usize,
) -> Result<TruncatedHamiltonian> {
    let n = sys.order();
    let tail_len = if sys.tail_present() { tail_len } else { 0 };
    if sys.tail_present() && tail_len == 0 {
        return Err(Error::Truncation("a tailed system needs at least one tail site".into()));
    }
    if let Some(o) = oracle {
        o.check_against(n)?;
    }
    let size = n + tail_len;
    let g = sys.graph();
    let mut m = Mat::<f64>::zeros(size, size);
    for &(u, v) in g.edges() {
        m[(u - 1, v - 1)] = 1.0;
        m[(v - 1, u - 1)] = 1.0;
    }
    for (&u, &w) in g.loops() {
        m[(u - 1, u - 1)] += w;
    }
    if let Some(o) = oracle {
        m[(o.w - 1, o.w - 1)] += o.gamma;
    }
    if tail_len > 0 {
        let r = sys.root() - 1;
        m[(r, n)] = 1.0;
        m[(n, r)] = 1.0;
        for k in n..size - 1 {
            m[(k, k + 1)] = 1.0;
            m[(k + 1, k)] = 1.0;
        }
    }
    Ok(TruncatedHamiltonian { graph_order: n, tail_len, matrix: m })
}

/// Complex amplitudes over the vertex labels of a truncated system.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: Vec<Complex64>,
    graph_order: usize,
}

impl QuantumState {
    pub fn new(amplitudes: Vec<Complex64>, graph_order: usize) -> Self {
        QuantumState { amplitudes, graph_order }
    }

    pub fn from_real(values: &[f64], graph_order: usize) -> Self {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect(), graph_order)
    }

    /// The standard basis vector `e_u`.
    pub fn basis(u: usize, size: usize, graph_order: usize) -> Result<Self> {
        if u == 0 || u > size {
            return Err(Error::InvalidArgument(format!("vertex {u} outside 1..={size}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); size];
        amps[u - 1] = Complex64::new(1.0, 0.0);
        Ok(Self::new(amps, graph_order))
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, u: usize) -> Complex64 {
        self.amplitudes[u - 1]
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn graph_order(&self) -> usize {
        self.graph_order
    }

    pub fn tail_len(&self) -> usize {
        self.len() - self.graph_order
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self, other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &QuantumState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn normalized(mut self) -> Self {
        let norm = self.norm();
        if norm > 0.0 {
            self.amplitudes.iter_mut().for_each(|a| *a /= norm);
        }
        self
    }

    pub(crate) fn require_unit(&self) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!("state norm {norm} is not 1")));
        }
        Ok(())
    }
}

const POWER_TOL: f64 = 1e-12;
const POWER_MAX_ITERS: usize = 200_000;

/// Principal eigenvector of the graph adjacency, zero-padded to `size`.
///
/// Regular loop-free graphs get the uniform vector; everything else runs a
/// shifted power iteration from the all-ones vector.
pub fn principal_state(g: &FiniteGraph, size: usize) -> Result<QuantumState> {
    let n = g.order();
    if size < n {
        return Err(Error::SizeMismatch { expected: n, got: size });
    }
    let mut values = vec![0.0; size];
    if g.regular_degree().is_some() {
        let c = 1.0 / (n as f64).sqrt();
        values[..n].fill(c);
        return Ok(QuantumState::from_real(&values, n));
    }

    let apply = |x: &[f64]| -> Vec<f64> {
        (1..=n)
            .map(|u| g.loop_weight(u) * x[u - 1] + g.neighbors(u).iter().map(|&v| x[v - 1]).sum::<f64>())
            .collect()
    };
    // Shift makes the spectrum non-negative so the Perron value dominates.
    let shift = (1..=n)
        .map(|u| g.degree(u) as f64 + g.loop_weight(u).abs())
        .fold(0.0, f64::max);
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..POWER_MAX_ITERS {
        let ax = apply(&x);
        let rayleigh: f64 = ax.iter().zip(&x).map(|(a, b)| a * b).sum();
        let residual = ax
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - rayleigh * b).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual <= POWER_TOL * rayleigh.abs().max(1.0) {
            values[..n].copy_from_slice(&x);
            return Ok(QuantumState::from_real(&values, n));
        }
        let mut next: Vec<f64> = ax.iter().zip(&x).map(|(a, b)| a + shift * b).collect();
        let norm = next.iter().map(|v| v * v).sum::<f64>().sqrt();
        next.iter_mut().for_each(|v| *v /= norm);
        x = next;
    }
    Err(Error::numerical(
        "principal_state",
        format!("power iteration did not converge in {POWER_MAX_ITERS} steps"),
    ))
}

/// Eigenpairs of a symmetric matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// Column `j` is the eigenvector of `values[j]`.
    pub vectors: Mat<f64>,
}

pub fn spectral_decompose(h: &TruncatedHamiltonian) -> Result<Eigen> {
    symmetric_eigen(h.matrix())
}

pub fn symmetric_eigen(m: MatRef<'_, f64>) -> Result<Eigen> {
    let evd = m
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::numerical("eigensolver", format!("{e:?}")))?;
    let values = (0..m.nrows()).map(|i| evd.S()[i]).collect();
    Ok(Eigen { values, vectors: evd.U().to_owned() })
}

/// Eigenvalues only, ascending.
pub fn symmetric_eigenvalues(m: MatRef<'_, f64>) -> Result<Vec<f64>> {
    m.self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::numerical("eigensolver", format!("{e:?}")))
}
