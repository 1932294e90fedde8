//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls the solvers under test: determinants come from LU,
//! norms from power iteration, zero counts from the argument principle.
#![allow(dead_code)]

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zerobound::{ComplexMatrix, Polynomial};

pub const SEED: u64 = 0x5eed_2026;

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Monic polynomial with `|a_k| ≤ max_modulus`; real coefficients carry a
/// random sign, complex ones a uniform phase.
pub fn random_poly(
    rng: &mut ChaCha8Rng,
    degree: usize,
    complex: bool,
    max_modulus: f64,
) -> Polynomial {
    let lower: Vec<Complex64> = (0..degree)
        .map(|_| {
            let r = rng.gen_range(0.0..=max_modulus);
            if complex {
                Complex64::from_polar(r, rng.gen_range(0.0..TAU))
            } else if rng.gen_bool(0.5) {
                c(r, 0.0)
            } else {
                c(-r, 0.0)
            }
        })
        .collect();
    Polynomial::from_lower(lower).expect("finite coefficients")
}

/// The seeded validity suite: `count` polynomials cycling through `degrees`,
/// alternating real and complex coefficients, moduli at most 3.
pub fn random_suite(stream: u64, count: usize, degrees: &[usize]) -> Vec<Polynomial> {
    let mut r = rng(stream);
    (0..count)
        .map(|i| {
            let deg = degrees[r.gen_range(0..degrees.len())];
            random_poly(&mut r, deg, i % 2 == 1, 3.0)
        })
        .collect()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, scale: f64) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        c(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
    })
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let x = random_matrix(rng, n, n, 1.0);
    (&x + &x.adjoint()).scale_real(0.5)
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn lu_determinant(m: &ComplexMatrix) -> Complex64 {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut a: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)]).collect())
        .collect();
    let mut det = c(1.0, 0.0);
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))
            .unwrap();
        if a[pivot][k].norm() == 0.0 {
            return c(0.0, 0.0);
        }
        if pivot != k {
            a.swap(pivot, k);
            det = -det;
        }
        det *= a[k][k];
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            let pivot_row = a[k].clone();
            for (x, &y) in a[i].iter_mut().zip(&pivot_row).skip(k) {
                *x -= f * y;
            }
        }
    }
    det
}

fn mat_vec(m: &ComplexMatrix, v: &[Complex64]) -> Vec<Complex64> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)] * v[j]).sum())
        .collect()
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest eigenvalue of a Hermitian matrix by power iteration on `H + σI`,
/// with `σ` the Frobenius norm so the shifted spectrum is nonnegative.
pub fn power_lambda_max(h: &ComplexMatrix, iters: usize) -> f64 {
    let n = h.rows();
    let sigma = h.frobenius_norm();
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| c(1.0 + 0.1 * i as f64, 0.3 - 0.07 * i as f64))
        .collect();
    let mut lambda = 0.0;
    for _ in 0..iters {
        let hv = mat_vec(h, &v);
        let w: Vec<Complex64> = hv.iter().zip(&v).map(|(a, b)| a + b * sigma).collect();
        let nv = norm(&v);
        lambda = hv
            .iter()
            .zip(&v)
            .map(|(a, b)| (b.conj() * a).re)
            .sum::<f64>()
            / (nv * nv);
        let nw = norm(&w);
        if nw == 0.0 {
            return 0.0;
        }
        v = w.iter().map(|z| z / nw).collect();
    }
    lambda
}

/// `‖X‖` as the square root of the top eigenvalue of `X*X`.
pub fn power_operator_norm(x: &ComplexMatrix) -> f64 {
    let g = &x.adjoint() * x;
    power_lambda_max(&g, 3000).max(0.0).sqrt()
}

/// `max_θ λ_max(Re(e^{iθ}X))` on a uniform grid, without refinement.
pub fn grid_numerical_radius(x: &ComplexMatrix, samples: usize) -> f64 {
    (0..samples)
        .map(|k| {
            let rot = x.scale(Complex64::from_polar(1.0, TAU * k as f64 / samples as f64));
            let h = (&rot + &rot.adjoint()).scale_real(0.5);
            power_lambda_max(&h, 2000)
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Number of zeros of `p` strictly inside `|z| = radius`, by the winding of
/// `p` along the circle.
pub fn zeros_inside(p: &Polynomial, radius: f64) -> usize {
    let samples = 4096 * p.degree().max(1);
    let point = |k: usize| {
        p.eval(Complex64::from_polar(
            radius,
            TAU * k as f64 / samples as f64,
        ))
    };
    let mut total = 0.0;
    let mut prev = point(0);
    for k in 1..=samples {
        let next = point(k % samples);
        total += (next / prev).arg();
        prev = next;
    }
    (total / TAU).round() as usize
}

/// Characteristic polynomial of the `n × n` tridiagonal Toeplitz matrix with
/// subdiagonal `b`, diagonal `a`, superdiagonal `c`, from the three-term
/// recurrence `D_k = (z - a)·D_{k-1} - bc·D_{k-2}`.
pub fn tridiagonal_charpoly(n: usize, b: Complex64, a: Complex64, c_: Complex64) -> Polynomial {
    // ascending coefficient vectors, including the leading 1
    let mut prev2 = vec![c(1.0, 0.0)];
    let mut prev = vec![-a, c(1.0, 0.0)];
    for _ in 2..=n {
        let mut next = vec![c(0.0, 0.0); prev.len() + 1];
        for (i, &x) in prev.iter().enumerate() {
            next[i + 1] += x;
            next[i] -= a * x;
        }
        for (i, &x) in prev2.iter().enumerate() {
            next[i] -= b * c_ * x;
        }
        prev2 = prev;
        prev = next;
    }
    prev.pop();
    Polynomial::from_lower(prev).expect("finite coefficients")
}

/// Pairs each element of `a` with its nearest unused element of `b` and
/// returns the largest pairing distance.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for &x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, &y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}
