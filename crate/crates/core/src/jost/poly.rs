use std::ops::{Add, Mul, Sub};

use serde::Serialize;

/// Real Laurent polynomial: `coeffs[i]` multiplies `x^(min_degree + i)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LaurentPoly {
    min_degree: i32,
    coeffs: Vec<f64>,
}

// Coefficients this small relative to the largest one are rounding residue.
const TRIM_REL: f64 = 64.0 * f64::EPSILON;

impl LaurentPoly {
    pub fn new(min_degree: i32, coeffs: Vec<f64>) -> Self {
        let mut p = LaurentPoly { min_degree, coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        LaurentPoly { min_degree: 0, coeffs: Vec::new() }
    }

    /// The monomial `c * x^k`.
    pub fn monomial(k: i32, c: f64) -> Self {
        Self::new(k, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    pub fn degree(&self) -> i32 {
        self.min_degree + self.coeffs.len() as i32 - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `x^k`.
    pub fn coeff(&self, k: i32) -> f64 {
        let i = k - self.min_degree;
        if i < 0 {
            return 0.0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0.0)
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    /// Ascending coefficients `c_0..c_d` when there is no negative power.
    pub fn to_polynomial(&self) -> Option<Vec<f64>> {
        if self.is_zero() {
            return Some(vec![]);
        }
        if self.min_degree < 0 {
            return None;
        }
        let mut out = vec![0.0; self.min_degree as usize];
        out.extend_from_slice(&self.coeffs);
        Some(out)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let horner = self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c);
        horner * x.powi(self.min_degree)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.min_degree, self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly { min_degree: self.min_degree + k, coeffs: self.coeffs.clone() }
    }

    /// Multiplies by `(x + 1/x - b)`.
    pub fn times_spectral(&self, b: f64) -> Self {
        &(&self.shift(1) + &self.shift(-1)) - &self.scale(b)
    }

    fn trim(&mut self) {
        let max = self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let small = |c: &f64| c.abs() <= TRIM_REL * max;
        while self.coeffs.last().is_some_and(small) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| small(c)).count();
        self.coeffs.drain(..lead);
        self.min_degree += lead as i32;
        if self.coeffs.is_empty() {
            self.min_degree = 0;
        }
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        if self.is_zero() {
            return other.scale(sign);
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.min_degree.min(other.min_degree);
        let hi = self.degree().max(other.degree());
        let coeffs = (lo..=hi).map(|k| self.coeff(k) + sign * other.coeff(k)).collect();
        Self::new(lo, coeffs)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        self.combine(rhs, -1.0)
    }
}

impl Mul<f64> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: f64) -> LaurentPoly {
        self.scale(rhs)
    }
}
