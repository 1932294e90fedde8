//! Tridiagonal Toeplitz matrices `tri(b, a, c)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

const NORMAL_TOL: f64 = 1e-12;

/// `n × n` matrix with `b` on the subdiagonal, `a` on the diagonal and `c` on
/// the superdiagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriToeplitz {
    n: usize,
    pub b: Complex64,
    pub a: Complex64,
    pub c: Complex64,
}

impl TriToeplitz {
    pub fn new(n: usize, b: Complex64, a: Complex64, c: Complex64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "tridiagonal Toeplitz size must be at least 2, got {n}"
            )));
        }
        Ok(Self { n, b, a, c })
    }

    pub fn real(n: usize, b: f64, a: f64, c: f64) -> Result<Self> {
        Self::new(n, b.into(), a.into(), c.into())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn assemble(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, self.n, |i, j| {
            if i == j {
                self.a
            } else if i == j + 1 {
                self.b
            } else if j == i + 1 {
                self.c
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// `e^{i(θ+φ)/2}` with `θ = arg b`, `φ = arg c`; one when `bc = 0`.
    fn phase(&self) -> Complex64 {
        if self.b * self.c == Complex64::new(0.0, 0.0) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::from_polar(1.0, (self.b.arg() + self.c.arg()) / 2.0)
        }
    }

    /// `λ_k = a + 2·sqrt(|bc|)·e^{i(θ+φ)/2}·cos(kπ/(n+1))`, `k = 1..n`.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        let amp = self.phase() * (2.0 * (self.b.norm() * self.c.norm()).sqrt());
        let denom = (self.n + 1) as f64;
        (1..=self.n)
            .map(|k| self.a + amp * (k as f64 * PI / denom).cos())
            .collect()
    }

    /// Larger modulus of the two extreme eigenvalues, `k = 1` and `k = n`.
    pub fn spectral_radius(&self) -> f64 {
        let amp = self.phase() * (2.0 * (self.b.norm() * self.c.norm()).sqrt());
        let cos1 = (PI / (self.n + 1) as f64).cos();
        (self.a + amp * cos1)
            .norm()
            .max((self.a - amp * cos1).norm())
    }

    /// Normal exactly when `|b| = |c|`.
    pub fn is_normal(&self) -> bool {
        (self.b.norm() - self.c.norm()).abs() <= NORMAL_TOL
    }
}

pub fn toeplitz_eigenvalues(t: &TriToeplitz) -> Vec<Complex64> {
    t.eigenvalues()
}

pub fn toeplitz_spectral_radius(t: &TriToeplitz) -> f64 {
    t.spectral_radius()
}

pub fn is_normal(t: &TriToeplitz) -> bool {
    t.is_normal()
}
