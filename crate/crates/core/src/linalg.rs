//! Dense complex linear algebra for small matrices.
//!
//! Everything here works on [`ComplexMatrix`], a row-major value type. The
//! Hermitian eigensolver is a cyclic complex Jacobi iteration, which is
//! robust and accurate at the sizes this crate deals with (a few dozen rows
//! at most). Matrix absolute values, operator norms and numerical radii are
//! all derived from it.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const JACOBI_MAX_SWEEPS: usize = 60;
const JACOBI_REL_TOL: f64 = 1e-13;
const HERMITIAN_REL_TOL: f64 = 1e-12;
const CLAMP_REL_TOL: f64 = 1e-12;

/// Default number of uniform angle samples for [`numerical_radius_sweep`].
pub const DEFAULT_THETA_SAMPLES: usize = 512;
/// Default number of golden-section steps for [`numerical_radius_sweep`].
pub const DEFAULT_REFINE_ITERS: usize = 40;
/// Smallest grid accepted by [`numerical_radius_sweep`].
pub const MIN_THETA_SAMPLES: usize = 64;

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// non-finite values.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if let Some(pos) = entries
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite {
                row: pos / cols.max(1),
                col: pos % cols.max(1),
            });
        }
        Ok(Self {
            rows,
            cols,
            data: entries,
        })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        Self::new(r, c, rows.concat())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { one() } else { zero() })
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Real part `(X + X*)/2` of the Cartesian decomposition.
    pub fn real_part(&self) -> Self {
        (self + &self.adjoint()).scale_real(0.5)
    }

    /// Imaginary part `(X - X*)/(2i)` of the Cartesian decomposition.
    pub fn imag_part(&self) -> Self {
        (self - &self.adjoint()).scale(Complex64::new(0.0, -0.5))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Copies the `nrows x ncols` sub-matrix starting at `(row, col)`.
    pub fn block(&self, row: usize, col: usize, nrows: usize, ncols: usize) -> Self {
        assert!(row + nrows <= self.rows && col + ncols <= self.cols);
        Self::from_fn(nrows, ncols, |i, j| self[(row + i, col + j)])
    }

    /// Assembles a block matrix. Every row of blocks must share a height and
    /// every column of blocks a width.
    pub fn from_blocks(grid: &[Vec<ComplexMatrix>]) -> Result<Self> {
        let heights: Vec<usize> = grid
            .iter()
            .map(|row| row.first().map_or(0, |b| b.rows))
            .collect();
        let widths: Vec<usize> = grid
            .first()
            .map(|row| row.iter().map(|b| b.cols).collect())
            .unwrap_or_default();
        for (bi, row) in grid.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(Error::BlockShapeMismatch(format!(
                    "block row {bi} has {} blocks, expected {}",
                    row.len(),
                    widths.len()
                )));
            }
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::BlockShapeMismatch(format!(
                        "block ({bi}, {bj}) is {}x{}",
                        b.rows, b.cols
                    )));
                }
            }
        }
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut out = Self::zeros(rows, cols);
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out[(r0 + i, c0 + j)] = b[(i, j)];
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix dimensions differ"
        );
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>10.5}{:+.5}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Spectrum of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Rebuilds `V f(Λ) V*`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * v[(j, k)].conj() * fl[k]).sum()
        })
    }
}

fn check_hermitian(a: &ComplexMatrix) -> Result<usize> {
    let n = a.ensure_square()?;
    let mut asym = 0.0f64;
    for i in 0..n {
        for j in i..n {
            asym = asym.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    if asym > HERMITIAN_REL_TOL * (1.0 + a.max_abs()) {
        return Err(Error::NotHermitian { asymmetry: asym });
    }
    Ok(n)
}

/// Cyclic complex Jacobi on a Hermitian working copy. Returns the unsorted
/// diagonal and, if requested, the accumulated unitary.
fn jacobi(a: &ComplexMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<ComplexMatrix>)> {
    let n = check_hermitian(a)?;
    // symmetrize so round-off in the input cannot leak into the rotations
    let mut b = a.real_part();
    for i in 0..n {
        b[(i, i)].im = 0.0;
    }
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));
    let threshold = JACOBI_REL_TOL * a.frobenius_norm();

    let off_norm = |m: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_norm(&b) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = b[(p, q)];
                let g = apq.norm();
                if g <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / g;
                let theta = (b[(q, q)].re - b[(p, p)].re) / (2.0 * g);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // J = [[c, s], [-s conj(e), c conj(e)]] in the (p, q) plane
                let jqp = -phase.conj() * s;
                let jqq = phase.conj() * c;

                rotate_columns(&mut b, p, q, c, s, jqp, jqq);
                for k in 0..n {
                    let bpk = b[(p, k)];
                    let bqk = b[(q, k)];
                    b[(p, k)] = bpk * c + bqk * jqp.conj();
                    b[(q, k)] = bpk * s + bqk * jqq.conj();
                }
                b[(p, q)] = zero();
                b[(q, p)] = zero();
                b[(p, p)].im = 0.0;
                b[(q, q)].im = 0.0;
                if let Some(v) = v.as_mut() {
                    rotate_columns(v, p, q, c, s, jqp, jqq);
                }
            }
        }
    }
    if !converged && off_norm(&b) > threshold {
        return Err(Error::EigenNoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }
    Ok(((0..n).map(|i| b[(i, i)].re).collect(), v))
}

fn rotate_columns(
    m: &mut ComplexMatrix,
    p: usize,
    q: usize,
    c: f64,
    s: f64,
    jqp: Complex64,
    jqq: Complex64,
) {
    for k in 0..m.rows() {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * c + mkq * jqp;
        m[(k, q)] = mkp * s + mkq * jqq;
    }
}

/// Full eigendecomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigs(a: &ComplexMatrix) -> Result<HermitianEigen> {
    let (vals, vecs) = jacobi(a, true)?;
    let vecs = vecs.expect("vectors requested");
    let n = vals.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
    Ok(HermitianEigen {
        eigenvalues: order.iter().map(|&k| vals[k]).collect(),
        eigenvectors: ComplexMatrix::from_fn(n, n, |i, j| vecs[(i, order[j])]),
    })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let (mut vals, _) = jacobi(a, false)?;
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// Largest eigenvalue of a Hermitian matrix. For a positive semidefinite
/// matrix this is also its numerical radius and its norm.
pub fn lambda_max(a: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(a)?.last().copied().unwrap_or(0.0))
}

/// Eigendecomposition of `X*X` with eigenvalues clamped at zero.
fn gram_spectrum(x: &ComplexMatrix) -> Result<HermitianEigen> {
    let gram = &x.adjoint() * x;
    let mut eig = hermitian_eigs(&gram)?;
    let floor = -CLAMP_REL_TOL * x.frobenius_norm().powi(2);
    for l in eig.eigenvalues.iter_mut() {
        if *l < 0.0 {
            if *l < floor {
                return Err(Error::Internal(format!(
                    "X*X has eigenvalue {l:e} below the clamping floor {floor:e}"
                )));
            }
            *l = 0.0;
        }
    }
    Ok(eig)
}

/// Matrix absolute value `|X| = (X*X)^{1/2}`.
pub fn psd_abs(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    x.ensure_square()?;
    Ok(gram_spectrum(x)?.map_spectrum(f64::sqrt))
}

/// `|X|^p` for `p > 0`, computed from the spectrum of `X*X`.
pub fn abs_power(x: &ComplexMatrix, p: f64) -> Result<ComplexMatrix> {
    x.ensure_square()?;
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "exponent {p} must be positive"
        )));
    }
    Ok(gram_spectrum(x)?.map_spectrum(|l| l.powf(p / 2.0)))
}

/// Largest singular value.
pub fn operator_norm(x: &ComplexMatrix) -> f64 {
    if x.rows() == 0 || x.cols() == 0 {
        return 0.0;
    }
    let gram = &x.adjoint() * x;
    // X*X is Hermitian by construction, so only non-convergence can fail here
    lambda_max(&gram)
        .expect("Jacobi on a Gram matrix")
        .max(0.0)
        .sqrt()
}

fn rotated_hermitian_max(x: &ComplexMatrix, xa: &ComplexMatrix, theta: f64) -> Result<f64> {
    let e = Complex64::from_polar(1.0, theta);
    let h = &x.scale(e) + &xa.scale(e.conj());
    lambda_max(&h.scale_real(0.5))
}

/// Numerical radius `w(X) = max_θ λ_max((e^{iθ}X + e^{-iθ}X*)/2)`.
///
/// The angle is sampled on a uniform grid of `samples` points, then the best
/// grid peaks are refined by `refine_iters` golden-section steps. The result
/// is the largest value actually evaluated, so it never exceeds `w(X)`.
pub fn numerical_radius_sweep(
    x: &ComplexMatrix,
    samples: usize,
    refine_iters: usize,
) -> Result<f64> {
    let n = x.ensure_square()?;
    if samples < MIN_THETA_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_THETA_SAMPLES} angle samples, got {samples}"
        )));
    }
    if n == 0 {
        return Ok(0.0);
    }
    let xa = x.adjoint();
    let step = TAU / samples as f64;
    let grid: Vec<f64> = (0..samples)
        .map(|k| rotated_hermitian_max(x, &xa, k as f64 * step))
        .collect::<Result<_>>()?;
    let mut best = grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let mut peaks: Vec<usize> = (0..samples)
        .filter(|&k| {
            let prev = grid[(k + samples - 1) % samples];
            let next = grid[(k + 1) % samples];
            grid[k] >= prev && grid[k] >= next
        })
        .collect();
    peaks.sort_by(|&i, &j| grid[j].total_cmp(&grid[i]));
    peaks.truncate(4);

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    for k in peaks {
        let centre = k as f64 * step;
        let (mut lo, mut hi) = (centre - step, centre + step);
        let mut x1 = hi - inv_phi * (hi - lo);
        let mut x2 = lo + inv_phi * (hi - lo);
        let mut f1 = rotated_hermitian_max(x, &xa, x1)?;
        let mut f2 = rotated_hermitian_max(x, &xa, x2)?;
        for _ in 0..refine_iters {
            if f1 >= f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = rotated_hermitian_max(x, &xa, x1)?;
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = rotated_hermitian_max(x, &xa, x2)?;
            }
            best = best.max(f1).max(f2);
        }
        best = best.max(f1).max(f2);
    }
    Ok(best)
}

/// [`numerical_radius_sweep`] with the default grid and refinement.
pub fn numerical_radius(x: &ComplexMatrix) -> Result<f64> {
    numerical_radius_sweep(x, DEFAULT_THETA_SAMPLES, DEFAULT_REFINE_ITERS)
}

/// Numerical radius of a matrix with nonnegative real entries, which equals
/// the largest eigenvalue of its symmetrization `(C + Cᵀ)/2`.
pub fn nonneg_numrad(c: &ComplexMatrix) -> Result<f64> {
    let n = c.ensure_square()?;
    for i in 0..n {
        for j in 0..n {
            let z = c[(i, j)];
            if z.im != 0.0 || z.re < 0.0 {
                return Err(Error::NegativeEntry { row: i, col: j });
            }
        }
    }
    lambda_max(&(c + &c.transpose()).scale_real(0.5))
}

/// `cos(π/(n+1))`, the numerical radius of the `n x n` shift matrix.
pub fn shift_numerical_radius(n: usize) -> f64 {
    (PI / (n as f64 + 1.0)).cos()
}
