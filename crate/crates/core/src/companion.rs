//! Frobenius companion matrix, its even-degree 2×2 block partition and the
//! Cartesian parts of each block.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::poly::Polynomial;

const BLOCK_ROUTE_TOL: f64 = 1e-14;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Companion matrix: first row `(-a_n, …, -a_1)`, ones on the subdiagonal.
pub fn build_companion(p: &Polynomial) -> Result<ComplexMatrix> {
    let n = p.degree();
    if n < 2 {
        return Err(Error::DegreeTooSmall { degree: n, min: 2 });
    }
    Ok(companion_unchecked(p))
}

fn companion_unchecked(p: &Polynomial) -> ComplexMatrix {
    let n = p.degree();
    ComplexMatrix::from_fn(n, n, |i, j| {
        if i == 0 {
            -p.a(n - j)
        } else if i == j + 1 {
            c(1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

/// `Re C = (C + C*)/2` and `Im C = (C - C*)/(2i)` of the companion matrix.
pub fn cartesian_parts(m: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let adj = m.adjoint();
    let re = (m + &adj).scale_real(0.5);
    let im = (m - &adj).scale(c(0.0, -0.5));
    (re, im)
}

/// Companion matrix of an even-degree polynomial cut into four `n × n`
/// blocks, with `P_kj`, `Q_kj` the corresponding blocks of `Re C` and `Im C`.
///
/// `A_kj = P_kj + i·Q_kj` for every block. Diagonal `P_kk`, `Q_kk` are
/// Hermitian; off-diagonal ones satisfy `P_21 = P_12*` and `Q_21 = Q_12*`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockCompanion {
    pub n: usize,
    pub a11: ComplexMatrix,
    pub a12: ComplexMatrix,
    pub a21: ComplexMatrix,
    pub a22: ComplexMatrix,
    pub p11: ComplexMatrix,
    pub p12: ComplexMatrix,
    pub p21: ComplexMatrix,
    pub p22: ComplexMatrix,
    pub q11: ComplexMatrix,
    pub q12: ComplexMatrix,
    pub q21: ComplexMatrix,
    pub q22: ComplexMatrix,
    /// `a_1 == 0`; formulas still evaluate but the polynomial has a zero root.
    pub zero_constant_term: bool,
}

impl BlockCompanion {
    /// Reassembled `C(q)`.
    pub fn assemble(&self) -> ComplexMatrix {
        ComplexMatrix::from_blocks(&[
            vec![self.a11.clone(), self.a12.clone()],
            vec![self.a21.clone(), self.a22.clone()],
        ])
        .expect("blocks share size n")
    }

    pub fn assemble_real_part(&self) -> ComplexMatrix {
        ComplexMatrix::from_blocks(&[
            vec![self.p11.clone(), self.p12.clone()],
            vec![self.p21.clone(), self.p22.clone()],
        ])
        .expect("blocks share size n")
    }

    pub fn assemble_imag_part(&self) -> ComplexMatrix {
        ComplexMatrix::from_blocks(&[
            vec![self.q11.clone(), self.q12.clone()],
            vec![self.q21.clone(), self.q22.clone()],
        ])
        .expect("blocks share size n")
    }

    /// `P_kj` with `k, j ∈ {1, 2}`.
    pub fn p(&self, k: usize, j: usize) -> &ComplexMatrix {
        match (k, j) {
            (1, 1) => &self.p11,
            (1, 2) => &self.p12,
            (2, 1) => &self.p21,
            (2, 2) => &self.p22,
            _ => panic!("block index ({k}, {j}) out of range"),
        }
    }

    /// `Q_kj` with `k, j ∈ {1, 2}`.
    pub fn q(&self, k: usize, j: usize) -> &ComplexMatrix {
        match (k, j) {
            (1, 1) => &self.q11,
            (1, 2) => &self.q12,
            (2, 1) => &self.q21,
            (2, 2) => &self.q22,
            _ => panic!("block index ({k}, {j}) out of range"),
        }
    }
}

/// Splits `C(q)` for `deg q = 2n`, `n ≥ 2`.
///
/// The Cartesian blocks are built entry by entry from the coefficients and
/// then checked against slices of `(C ± C*)/2`; disagreement beyond `1e-14`
/// is an internal error.
pub fn build_block_companion(q: &Polynomial) -> Result<BlockCompanion> {
    let deg = q.degree();
    if deg % 2 == 1 {
        return Err(Error::OddDegree(deg));
    }
    if deg < 4 {
        return Err(Error::DegreeTooSmall {
            degree: deg,
            min: 4,
        });
    }
    let n = deg / 2;
    let full = companion_unchecked(q);
    let blk = |m: &ComplexMatrix, k: usize, j: usize| m.block(k * n, j * n, n, n);

    let a11 = blk(&full, 0, 0);
    let a12 = blk(&full, 0, 1);
    let a21 = blk(&full, 1, 0);
    let a22 = blk(&full, 1, 1);

    let blocks = coefficient_blocks(q, n);

    let (re, im) = cartesian_parts(&full);
    let global = [
        blk(&re, 0, 0),
        blk(&re, 0, 1),
        blk(&re, 1, 0),
        blk(&re, 1, 1),
        blk(&im, 0, 0),
        blk(&im, 0, 1),
        blk(&im, 1, 0),
        blk(&im, 1, 1),
    ];
    const NAMES: [&str; 8] = ["P11", "P12", "P21", "P22", "Q11", "Q12", "Q21", "Q22"];
    let scale = 1.0 + q.max_abs_coefficient();
    for ((local, sliced), name) in blocks.iter().zip(&global).zip(NAMES) {
        let diff = local.max_abs_diff(sliced);
        if diff > BLOCK_ROUTE_TOL * scale {
            return Err(Error::Internal(format!(
                "{name} from coefficients differs from the sliced Cartesian part by {diff:e}"
            )));
        }
    }
    let [p11, p12, p21, p22, q11, q12, q21, q22] = blocks;

    Ok(BlockCompanion {
        n,
        a11,
        a12,
        a21,
        a22,
        p11,
        p12,
        p21,
        p22,
        q11,
        q12,
        q21,
        q22,
        zero_constant_term: q.a(1) == c(0.0, 0.0),
    })
}

/// Closed-form Cartesian blocks of `C(q)`, `deg q = 2n`, in the order
/// `P11, P12, P21, P22, Q11, Q12, Q21, Q22`.
fn coefficient_blocks(q: &Polynomial, n: usize) -> [ComplexMatrix; 8] {
    let half = c(0.5, 0.0);
    // 1/(2i)
    let inv2i = c(0.0, -0.5);
    let a = |k: usize| q.a(k);
    let delta = |j: usize| if j == 1 { 1.0 } else { 0.0 };

    let p11 = ComplexMatrix::from_fn(n, n, |i, j| match (i, j) {
        (0, 0) => c(-a(2 * n).re, 0.0),
        (0, j) => (-a(2 * n - j) + delta(j)) * 0.5,
        (i, 0) => (-a(2 * n - i) + delta(i)).conj() * 0.5,
        (i, j) if i.abs_diff(j) == 1 => half,
        _ => c(0.0, 0.0),
    });
    let p12 = ComplexMatrix::from_fn(n, n, |i, j| {
        let mut v = if i == 0 { -a(n - j) * 0.5 } else { c(0.0, 0.0) };
        if (i, j) == (n - 1, 0) {
            v += half;
        }
        v
    });
    let p21 = p12.adjoint();
    let p22 = ComplexMatrix::from_fn(n, n, |i, j| {
        if i.abs_diff(j) == 1 {
            half
        } else {
            c(0.0, 0.0)
        }
    });

    let q11 = ComplexMatrix::from_fn(n, n, |i, j| match (i, j) {
        (0, 0) => c(-a(2 * n).im, 0.0),
        (0, j) => (-a(2 * n - j) - delta(j)) * inv2i,
        (i, 0) => ((-a(2 * n - i) - delta(i)) * inv2i).conj(),
        (i, j) if i == j + 1 => inv2i,
        (i, j) if j == i + 1 => -inv2i,
        _ => c(0.0, 0.0),
    });
    let q12 = ComplexMatrix::from_fn(n, n, |i, j| {
        let mut v = if i == 0 {
            -a(n - j) * inv2i
        } else {
            c(0.0, 0.0)
        };
        if (i, j) == (n - 1, 0) {
            v -= inv2i;
        }
        v
    });
    let q21 = ComplexMatrix::from_fn(n, n, |i, j| {
        let mut v = if j == 0 {
            a(n - i).conj() * inv2i
        } else {
            c(0.0, 0.0)
        };
        if (i, j) == (0, n - 1) {
            v += inv2i;
        }
        v
    });
    let q22 = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j + 1 {
            inv2i
        } else if j == i + 1 {
            -inv2i
        } else {
            c(0.0, 0.0)
        }
    });
    [p11, p12, p21, p22, q11, q12, q21, q22]
}

/// Characteristic polynomial of `Re C(p)` evaluated at `z`, in the closed
/// form built from the nodes `cos(jπ/n)` and the weights `|v_j|²`.
pub fn real_part_charpoly(p: &Polynomial, z: Complex64) -> Result<Complex64> {
    let n = p.degree();
    if n < 3 {
        return Err(Error::DegreeTooSmall { degree: n, min: 3 });
    }
    let nf = n as f64;
    let nodes: Vec<f64> = (1..n).map(|j| (j as f64 * PI / nf).cos()).collect();
    let norm = 1.0 / (2.0 * nf).sqrt();
    let weight = |j: usize| -> f64 {
        let jf = j as f64;
        let mut v = (c(1.0, 0.0) - p.a(n - 1).conj()) * (jf * PI / nf).sin();
        for k in 2..n {
            v -= p.a(n - k).conj() * (k as f64 * jf * PI / nf).sin();
        }
        (v * norm).norm_sqr()
    };

    let full: Complex64 = nodes.iter().map(|&x| z - x).product();
    let mut value = (z + p.a(n).re) * full;
    for j in 1..n {
        let others: Complex64 = nodes
            .iter()
            .enumerate()
            .filter(|&(idx, _)| idx + 1 != j)
            .map(|(_, &x)| z - x)
            .product();
        value -= others * weight(j);
    }
    Ok(value)
}
