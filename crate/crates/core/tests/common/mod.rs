//! Dense reference computations built directly from matrix entries, without
//! going through the library's assembly or reduction.

#![allow(dead_code)]

use faer::{Mat, Side};
use num_complex::Complex64;

/// `K_n` with weight `gamma` on vertex `w` and a path of `tail` sites hanging off vertex `n`.
pub fn dense_lollipop(n: usize, w: Option<(usize, f64)>, tail: usize) -> Mat<f64> {
    let size = n + tail;
    let mut h = Mat::<f64>::zeros(size, size);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                h[(i, j)] = 1.0;
            }
        }
    }
    for k in n - 1..size - 1 {
        h[(k, k + 1)] = 1.0;
        h[(k + 1, k)] = 1.0;
    }
    if let Some((w, gamma)) = w {
        h[(w - 1, w - 1)] += gamma;
    }
    h
}

pub struct DenseEigen {
    pub values: Vec<f64>,
    pub vectors: Mat<f64>,
}

pub fn dense_eigen(h: &Mat<f64>) -> DenseEigen {
    let evd = h.self_adjoint_eigen(Side::Lower).expect("eigensolver");
    DenseEigen {
        values: (0..h.nrows()).map(|i| evd.S()[i]).collect(),
        vectors: evd.U().to_owned(),
    }
}

pub fn dense_eigenvalues(h: &Mat<f64>) -> Vec<f64> {
    h.self_adjoint_eigenvalues(Side::Lower).expect("eigensolver")
}

impl DenseEigen {
    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.vectors.nrows()).map(|i| self.vectors[(i, j)]).collect()
    }

    /// `exp(-itH) psi`.
    pub fn evolve(&self, psi: &[Complex64], t: f64) -> Vec<Complex64> {
        let size = psi.len();
        let coeffs: Vec<Complex64> = (0..size)
            .map(|j| {
                let phase = Complex64::from_polar(1.0, -self.values[j] * t);
                phase * (0..size).map(|i| psi[i] * self.vectors[(i, j)]).sum::<Complex64>()
            })
            .collect();
        (0..size)
            .map(|i| (0..size).map(|j| coeffs[j] * self.vectors[(i, j)]).sum())
            .collect()
    }
}

/// Uniform state on the first `n` of `size` sites.
pub fn uniform(n: usize, size: usize) -> Vec<Complex64> {
    let a = 1.0 / (n as f64).sqrt();
    (0..size).map(|i| Complex64::new(if i < n { a } else { 0.0 }, 0.0)).collect()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}
