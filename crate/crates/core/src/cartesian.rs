//! Zero bounds built from the Cartesian decomposition `C = P + iQ` of the
//! companion matrix, together with the rectangles that enclose the zeros.
//!
//! The disk bounds estimate the numerical radius `w(C)`, which dominates the
//! spectral radius. For `deg q = 2n` the companion matrix is cut into four
//! `n × n` blocks (see [`BlockCompanion`]).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classical::{Applicability, BoundResult, Method};
use crate::companion::{build_block_companion, build_companion, cartesian_parts, BlockCompanion};
use crate::error::{Error, Result};
use crate::linalg::{
    abs_power, hermitian_eigenvalues, lambda_max, nonneg_numrad, operator_norm, psd_abs,
    ComplexMatrix,
};
use crate::poly::Polynomial;

/// `[re_lo, re_hi] × [im_lo, im_hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub re_lo: f64,
    pub re_hi: f64,
    pub im_lo: f64,
    pub im_hi: f64,
}

impl Rectangle {
    pub fn new(re_lo: f64, re_hi: f64, im_lo: f64, im_hi: f64) -> Result<Self> {
        if !(re_lo <= re_hi && im_lo <= im_hi) {
            return Err(Error::InvalidArgument(format!(
                "empty rectangle [{re_lo}, {re_hi}] x [{im_lo}, {im_hi}]"
            )));
        }
        Ok(Self {
            re_lo,
            re_hi,
            im_lo,
            im_hi,
        })
    }

    /// `[-s, s] × [-t, t]`.
    pub fn centered(s: f64, t: f64) -> Self {
        Self {
            re_lo: -s,
            re_hi: s,
            im_lo: -t,
            im_hi: t,
        }
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        z.re >= self.re_lo - tol
            && z.re <= self.re_hi + tol
            && z.im >= self.im_lo - tol
            && z.im <= self.im_hi + tol
    }

    /// `self ⊆ other` with every edge allowed to overshoot by `tol`.
    pub fn is_inside(&self, other: &Rectangle, tol: f64) -> bool {
        self.re_lo >= other.re_lo - tol
            && self.re_hi <= other.re_hi + tol
            && self.im_lo >= other.im_lo - tol
            && self.im_hi <= other.im_hi + tol
    }

    /// Distance from the origin to the farthest corner.
    pub fn max_modulus(&self) -> f64 {
        let x = self.re_lo.abs().max(self.re_hi.abs());
        let y = self.im_lo.abs().max(self.im_hi.abs());
        x.hypot(y)
    }
}

/// A rectangle-valued method output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RectangleResult {
    pub method: Method,
    pub rect: Rectangle,
    pub applicability: Applicability,
    pub notes: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MwStatus {
    Guaranteed,
    Heuristic,
    Refused,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MwApplicability {
    pub status: MwStatus,
    pub reasons: Vec<String>,
}

fn ensure_nonnegative(values: &[f64]) -> Result<()> {
    match values.iter().find(|&&x| x.is_nan() || x < 0.0) {
        Some(&x) => Err(Error::NegativeInput(x)),
        None => Ok(()),
    }
}

fn two_by_two_estimate(w_a: f64, w_d: f64, coupling: f64) -> f64 {
    0.5 * (w_a + w_d + ((w_a - w_d).powi(2) + coupling * coupling).sqrt())
}

/// `(wA + wD + sqrt((wA - wD)² + (‖B‖ + ‖C‖)²))/2` bounds `w([[A, B], [C, D]])`.
pub fn lemma2_scalar(w_a: f64, w_d: f64, n_b: f64, n_c: f64) -> Result<f64> {
    ensure_nonnegative(&[w_a, w_d, n_b, n_c])?;
    Ok(two_by_two_estimate(w_a, w_d, n_b + n_c))
}

/// `(wA + wD + sqrt((wA - wD)² + (w(B+C) + w(B-C))²))/2` bounds `w([[A, B], [C, D]])`.
pub fn lemma5_scalar(w_a: f64, w_d: f64, w_b_plus_c: f64, w_b_minus_c: f64) -> Result<f64> {
    ensure_nonnegative(&[w_a, w_d, w_b_plus_c, w_b_minus_c])?;
    Ok(two_by_two_estimate(w_a, w_d, w_b_plus_c + w_b_minus_c))
}

/// `w(P² + Q²)` for Hermitian `P`, `Q`; the argument is PSD so this is `λ_max`.
fn psd_square_sum(p: &ComplexMatrix, q: &ComplexMatrix) -> Result<f64> {
    let sum = &(p * p) + &(q * q);
    Ok(lambda_max(&sum)?.max(0.0))
}

/// Block bound on `w(T)` for an `m × m` grid of equal square blocks.
///
/// `P_kj`, `Q_kj` are the blocks of `Re T` and `Im T`. With `f(t) = t^s`,
/// `g(t) = t^{1-s}` the `m × m` nonnegative matrix has
/// `c_kk = m·w(P_kk² + Q_kk²)` and
/// `c_kj = (m/4)·‖f²(|P_kj|) + g²(|P_kj|) + f²(|Q_kj|) + g²(|Q_kj|)‖²`;
/// the bound is `sqrt(w([c_kj]))`.
pub fn theorem1_block_bound(blocks: &[Vec<ComplexMatrix>], s: f64) -> Result<f64> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::ExponentOutOfRange(s));
    }
    let m = blocks.len();
    if m == 0 {
        return Err(Error::BlockShapeMismatch("empty block grid".into()));
    }
    let size = blocks[0][0].rows();
    for (k, row) in blocks.iter().enumerate() {
        if row.len() != m {
            return Err(Error::BlockShapeMismatch(format!(
                "block row {k} has {} blocks, expected {m}",
                row.len()
            )));
        }
        for (j, b) in row.iter().enumerate() {
            if b.rows() != size || b.cols() != size {
                return Err(Error::BlockShapeMismatch(format!(
                    "block ({k}, {j}) is {}x{}, expected {size}x{size}",
                    b.rows(),
                    b.cols()
                )));
            }
        }
    }
    let t = ComplexMatrix::from_blocks(blocks)?;
    let (re, im) = cartesian_parts(&t);
    let blk = |x: &ComplexMatrix, k: usize, j: usize| x.block(k * size, j * size, size, size);
    let mf = m as f64;

    let mut c = ComplexMatrix::zeros(m, m);
    for k in 0..m {
        for j in 0..m {
            let p = blk(&re, k, j);
            let q = blk(&im, k, j);
            let v = if k == j {
                mf * psd_square_sum(&p, &q)?
            } else {
                let sum = &(&abs_power(&p, 2.0 * s)? + &abs_power(&p, 2.0 * (1.0 - s))?)
                    + &(&abs_power(&q, 2.0 * s)? + &abs_power(&q, 2.0 * (1.0 - s))?);
                mf / 4.0 * operator_norm(&sum).powi(2)
            };
            c[(k, j)] = Complex64::new(v, 0.0);
        }
    }
    Ok(nonneg_numrad(&c)?.max(0.0).sqrt())
}

/// [`theorem1_block_bound`] on the 2×2 partition of `C(q)`.
pub fn theorem1_companion(bc: &BlockCompanion, s: f64) -> Result<BoundResult> {
    let grid = vec![
        vec![bc.a11.clone(), bc.a12.clone()],
        vec![bc.a21.clone(), bc.a22.clone()],
    ];
    let v = theorem1_block_bound(&grid, s)?;
    Ok(zero_term_note(
        BoundResult::valid(Method::Theorem1, v).note(format!("s={s}")),
        bc,
    ))
}

fn zero_term_note(r: BoundResult, bc: &BlockCompanion) -> BoundResult {
    if bc.zero_constant_term {
        r.with_applicability(Applicability::Conditional)
            .note("constant term is zero, outside the stated hypothesis a_1 != 0")
    } else {
        r
    }
}

/// `sqrt(w1 + w2 + sqrt((w1 - w2)² + N²))` with `w_k = w(P_kk² + Q_kk²)` and
/// `N = ‖|P12| + |Q12|‖ + ‖|P21| + |Q21|‖`.
pub fn corollary1_bound(bc: &BlockCompanion) -> Result<BoundResult> {
    let w1 = psd_square_sum(&bc.p11, &bc.q11)?;
    let w2 = psd_square_sum(&bc.p22, &bc.q22)?;
    let coupling = |p: &ComplexMatrix, q: &ComplexMatrix| -> Result<f64> {
        Ok(operator_norm(&(&psd_abs(p)? + &psd_abs(q)?)))
    };
    let n = coupling(&bc.p12, &bc.q12)? + coupling(&bc.p21, &bc.q21)?;
    let v = (w1 + w2 + ((w1 - w2).powi(2) + n * n).sqrt()).sqrt();
    Ok(zero_term_note(
        BoundResult::valid(Method::Corollary1, v),
        bc,
    ))
}

/// `max(w(P11² + Q11²), w(P22² + Q22²))` for a block-diagonal operator
/// `diag(A11, A22)`, with `P_kk`, `Q_kk` the Cartesian parts of `A_kk`.
///
/// The value is on the scale of `w²`: it is not square-rooted.
pub fn corollary2_bound(a11: &ComplexMatrix, a22: &ComplexMatrix) -> Result<f64> {
    a11.ensure_square()?;
    a22.ensure_square()?;
    let (p1, q1) = cartesian_parts(a11);
    let (p2, q2) = cartesian_parts(a22);
    Ok(psd_square_sum(&p1, &q1)?.max(psd_square_sum(&p2, &q2)?))
}

fn half_degree(q: &Polynomial) -> Result<usize> {
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
    Ok(deg / 2)
}

/// Theorem 2 rectangle `[-c, c] × [-d, d]`, `n = deg p ≥ 3`:
/// `c = (x + cos(π/n) + sqrt((x - cos(π/n))² + |a_{n-1} - 1|² + Σ_{k≤n-2}|a_k|²))/2`
/// at `x = |Re a_n|`, and `d` the same at `x = |Im a_n|`.
pub fn kittaneh_rectangle(p: &Polynomial) -> Result<Rectangle> {
    let n = p.degree();
    if n < 3 {
        return Err(Error::DegreeTooSmall { degree: n, min: 3 });
    }
    let cn = (PI / n as f64).cos();
    let shared = (p.a(n - 1) - 1.0).norm_sqr() + p.sum_sq(1..=n - 2);
    let side = |x: f64| 0.5 * (x + cn + ((x - cn).powi(2) + shared).sqrt());
    let an = p.a(n);
    Ok(Rectangle::centered(side(an.re.abs()), side(an.im.abs())))
}

/// Theorem 3 rectangle `[-s, s] × [-t, t]` for `deg q = 2n ≥ 4`.
pub fn theorem3_rectangle(q: &Polynomial) -> Result<Rectangle> {
    let n = half_degree(q)?;
    let a = |k: usize| q.a(k);
    let cn = (PI / n as f64).cos();
    let c1 = (PI / (n + 1) as f64).cos();
    let tail = q.sum_sq(n + 1..=2 * n - 2);
    let mid = q.sum_sq(2..=n - 1);
    let top = a(2 * n);
    let f = ((top.re.abs() - cn).powi(2) + (1.0 - a(2 * n - 1)).norm_sqr() + tail).sqrt();
    let j = ((top.im.abs() - cn).powi(2) + (1.0 + a(2 * n - 1)).norm_sqr() + tail).sqrt();
    let an = a(n);
    let g = (an.re.powi(2) + (1.0 - a(1)).norm_sqr() + mid).sqrt();
    let h = (an.im.powi(2) + (1.0 + a(1)).norm_sqr() + mid).sqrt();
    let coupling = 0.5 * (an.re.abs() + g + an.im.abs() + h);
    let side = |x: f64, k: f64| {
        let half = 0.5 * (x + cn + k);
        0.5 * half + 0.5 * c1 + 0.5 * ((half - c1).powi(2) + coupling * coupling).sqrt()
    };
    Ok(Rectangle::centered(
        side(top.re.abs(), f),
        side(top.im.abs(), j),
    ))
}

/// `L` of Theorem 4:
/// `(sqrt(Σ_{k=n+2}^{2n}|a_k|²) + sqrt(Σ_{k=n+2}^{2n}|a_k|² + (|a_{n+1}| + 1)²))/2`.
fn theorem4_l(q: &Polynomial, n: usize) -> f64 {
    let hi = q.sum_sq(n + 2..=2 * n);
    0.5 * (hi.sqrt() + (hi + (q.abs_a(n + 1) + 1.0).powi(2)).sqrt())
}

fn theorem4_shape(l: f64, coupling: f64, n: usize) -> f64 {
    let c1 = (PI / (n + 1) as f64).cos();
    0.5 * (l + c1 + ((l - c1).powi(2) + coupling * coupling).sqrt())
}

/// Theorem 4 for `deg q = 2n ≥ 4`:
/// `(L + cos(π/(n+1)) + sqrt((L - cos(π/(n+1)))² + (D1 + D2)²))/2` with
/// `D_{1,2} = (|a_n| + sqrt(|a_n|² + |1 ∓ a_1|² + Σ_{k=2}^{n-1}|a_k|²))/2`.
pub fn theorem4_bound(q: &Polynomial) -> Result<BoundResult> {
    let n = half_degree(q)?;
    let l = theorem4_l(q, n);
    let an = q.abs_a(n);
    let mid = q.sum_sq(2..=n - 1);
    let d = |shifted: f64| 0.5 * (an + (an * an + shifted + mid).sqrt());
    let d1 = d((1.0 - q.a(1)).norm_sqr());
    let d2 = d((1.0 + q.a(1)).norm_sqr());
    let mut r = BoundResult::valid(Method::Theorem4, theorem4_shape(l, d1 + d2, n));
    if q.a(1) == Complex64::new(0.0, 0.0) {
        r = r
            .with_applicability(Applicability::Conditional)
            .note("constant term is zero, outside the stated hypothesis a_1 != 0");
    }
    Ok(r)
}

/// Theorem 4 specialised to `a_2 = … = a_n = 0`, `a_1 = sign`:
/// `(L + cos(π/(n+1)) + sqrt((L - cos(π/(n+1)))² + 1))/2`.
/// The premise is checked on exact coefficient values.
pub fn corollary3_bound(q: &Polynomial, sign: i8) -> Result<BoundResult> {
    let n = half_degree(q)?;
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument(format!(
            "sign must be +1 or -1, got {sign}"
        )));
    }
    let zero = Complex64::new(0.0, 0.0);
    if let Some(k) = (2..=n).find(|&k| q.a(k) != zero) {
        return Err(Error::HypothesisViolated(format!(
            "a_{k} = {} is not zero",
            q.a(k)
        )));
    }
    if q.a(1) != Complex64::new(sign as f64, 0.0) {
        return Err(Error::HypothesisViolated(format!(
            "a_1 = {} is not {sign}",
            q.a(1)
        )));
    }
    let l = theorem4_l(q, n);
    Ok(
        BoundResult::valid(Method::Corollary3, theorem4_shape(l, 1.0, n))
            .note(format!("a_1={sign}")),
    )
}

/// Premise-free entry for reports: picks the sign from `a_1`.
pub fn corollary3_auto(q: &Polynomial) -> Result<BoundResult> {
    let sign = if q.a(1) == Complex64::new(-1.0, 0.0) {
        -1
    } else {
        1
    };
    corollary3_bound(q, sign)
}

const MW_SUM_THRESHOLD: f64 = 2.0 / 3.0;

/// `MW = (sqrt(S) + sqrt(S + (|c_1| + 1)²))/2` with `S = Σ_{k=2}^{n}|c_k|²`
/// and `c_k = a_k`, plus the guard classifying when it is a proven bound.
///
/// The guard reports `Guaranteed` when some `|c_k| ≥ 1` with `k ≥ 2`, or when
/// every `c_k` is real with `|c_k| < 1`, the moduli increase strictly with `k`
/// and `Σ_{k=2}^{n}|c_k| ≥ 2/3`. Anything else is `Heuristic`, or `Refused`
/// under `strict`. The value is returned in every case.
pub fn mw_bound(g: &Polynomial, strict: bool) -> Result<(BoundResult, MwApplicability)> {
    let n = g.degree();
    if n < 2 {
        return Err(Error::DegreeTooSmall { degree: n, min: 2 });
    }
    let s = g.sum_sq(2..=n);
    let value = 0.5 * (s.sqrt() + (s + (g.abs_a(1) + 1.0).powi(2)).sqrt());

    let mut reasons = Vec::new();
    let big = (2..=n).find(|&k| g.abs_a(k) >= 1.0);
    let guaranteed = if let Some(k) = big {
        reasons.push(format!("|c_{k}| >= 1"));
        true
    } else {
        let real = g.is_real();
        let below_one = (1..=n).all(|k| g.abs_a(k) < 1.0);
        let increasing = (1..n).all(|k| g.abs_a(k + 1) > g.abs_a(k));
        let tail: f64 = (2..=n).map(|k| g.abs_a(k)).sum();
        let enough = tail >= MW_SUM_THRESHOLD;
        if !real {
            reasons.push("coefficients are not all real".into());
        }
        if !below_one {
            reasons.push("some |c_k| >= 1".into());
        }
        if !increasing {
            reasons.push("|c_k| is not strictly increasing in k".into());
        }
        if !enough {
            reasons.push(format!("sum of |c_k| for k >= 2 is {tail:.10} < 2/3"));
        }
        real && below_one && increasing && enough
    };
    let status = match (guaranteed, strict) {
        (true, _) => MwStatus::Guaranteed,
        (false, false) => MwStatus::Heuristic,
        (false, true) => MwStatus::Refused,
    };
    let applicability = match status {
        MwStatus::Guaranteed => Applicability::Valid,
        MwStatus::Heuristic => Applicability::Conditional,
        MwStatus::Refused => Applicability::Refused,
    };
    let mut result = BoundResult::valid(Method::Mw, value).with_applicability(applicability);
    if status != MwStatus::Guaranteed {
        result = result.note(reasons.join("; "));
    }
    Ok((result, MwApplicability { status, reasons }))
}

/// `[λ_min(Re C), λ_max(Re C)] × [λ_min(Im C), λ_max(Im C)]` of the full
/// companion matrix.
pub fn hermitian_rectangle(p: &Polynomial) -> Result<Rectangle> {
    let (re, im) = cartesian_parts(&build_companion(p)?);
    let er = hermitian_eigenvalues(&re)?;
    let ei = hermitian_eigenvalues(&im)?;
    Rectangle::new(er[0], er[er.len() - 1], ei[0], ei[ei.len() - 1])
}

/// Builds the block partition and evaluates Corollary 1.
pub fn corollary1_for(q: &Polynomial) -> Result<BoundResult> {
    corollary1_bound(&build_block_companion(q)?)
}
