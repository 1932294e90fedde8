//! Reference zeros by simultaneous iteration, used to check every bound.

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cartesian::Rectangle;
use crate::classical::BoundResult;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, RootSet};

const MAX_ITERS: usize = 2000;
const STEP_TOL: f64 = 1e-13;
const RESIDUAL_TOL: f64 = 1e-8;
const START_RADIUS: f64 = 0.9;
const START_ANGLE: f64 = 0.4;

/// Slack added to every bound and rectangle edge before a verdict.
pub const VALIDATION_TOL: f64 = 1e-9;

/// All zeros of `p`, sorted by modulus descending then argument ascending.
///
/// Durand–Kerner from a circle of radius `0.9·(1 + max|a_k|)`; if it stalls
/// the best iterate is restarted once with Aberth–Ehrlich steps. A zero `z`
/// is accepted when `|p(z)| ≤ 1e-8·(1 + max|a_k|)·(1 + |z|)^n`.
pub fn find_roots(p: &Polynomial) -> Result<RootSet> {
    let n = p.degree();
    let scale = 1.0 + p.max_abs_coefficient();
    if n == 1 {
        return Ok(RootSet::new(p, vec![-p.a(1)]));
    }
    let radius = START_RADIUS * scale;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius,
                std::f64::consts::TAU * k as f64 / n as f64 + START_ANGLE,
            )
        })
        .collect();

    let step_tol = STEP_TOL * scale;
    if !iterate(p, &mut z, step_tol, durand_kerner_step) {
        iterate(p, &mut z, step_tol, aberth_step);
    }

    let residuals: Vec<f64> = z.iter().map(|&r| p.eval(r).norm()).collect();
    let accepted = z
        .iter()
        .zip(&residuals)
        .all(|(r, &res)| res <= RESIDUAL_TOL * scale * (1.0 + r.norm()).powi(n as i32));
    if !accepted {
        let max_residual = residuals.iter().copied().fold(0.0, f64::max);
        return Err(Error::NoConvergence {
            roots: z,
            residuals,
            max_residual,
        });
    }
    z.sort_by(root_order);
    Ok(RootSet::new(p, z))
}

fn root_order(a: &Complex64, b: &Complex64) -> Ordering {
    b.norm()
        .total_cmp(&a.norm())
        .then_with(|| a.arg().total_cmp(&b.arg()))
}

fn iterate(
    p: &Polynomial,
    z: &mut [Complex64],
    step_tol: f64,
    step: fn(&Polynomial, &[Complex64], usize) -> Complex64,
) -> bool {
    for _ in 0..MAX_ITERS {
        let mut max_step: f64 = 0.0;
        for i in 0..z.len() {
            let delta = step(p, z, i);
            if !(delta.re.is_finite() && delta.im.is_finite()) {
                continue;
            }
            z[i] -= delta;
            max_step = max_step.max(delta.norm());
        }
        if max_step <= step_tol {
            return true;
        }
    }
    false
}

/// Weierstrass correction `p(z_i) / Π_{j≠i}(z_i - z_j)`.
fn durand_kerner_step(p: &Polynomial, z: &[Complex64], i: usize) -> Complex64 {
    let zi = z[i];
    let denom: Complex64 = z
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &zj)| zi - zj)
        .product();
    p.eval(zi) / denom
}

/// Aberth–Ehrlich correction `w / (1 - w·Σ_{j≠i} 1/(z_i - z_j))`, `w = p/p'`.
fn aberth_step(p: &Polynomial, z: &[Complex64], i: usize) -> Complex64 {
    let zi = z[i];
    let w = p.eval(zi) / p.eval_derivative(zi);
    let repulsion: Complex64 = z
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &zj)| (zi - zj).inv())
        .sum();
    w / (1.0 - w * repulsion)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    /// `margin ≥ 0`: how much room the region leaves.
    Holds { margin: f64 },
    /// `margin > 0`: how far the worst zero lies outside.
    Violated { margin: f64 },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }

    /// Signed slack: positive when the bound holds.
    pub fn signed_margin(&self) -> f64 {
        match *self {
            Verdict::Holds { margin } => margin,
            Verdict::Violated { margin } => -margin,
        }
    }
}

/// Compares a disk radius with the largest zero modulus.
pub fn verdict_for_radius(max_modulus: f64, radius: f64) -> Verdict {
    let margin = radius - max_modulus;
    if max_modulus <= radius + VALIDATION_TOL {
        Verdict::Holds {
            margin: margin.max(0.0),
        }
    } else {
        Verdict::Violated { margin: -margin }
    }
}

/// Checks the largest zero modulus against `b.value`.
pub fn validate_bound(p: &Polynomial, b: &BoundResult) -> Result<Verdict> {
    let roots = find_roots(p)?;
    Ok(verdict_for_radius(roots.max_modulus, b.value))
}

/// Worst edge slack of `roots` inside `r`.
pub fn verdict_for_rectangle(roots: &RootSet, r: &Rectangle) -> Verdict {
    let slack = roots
        .roots
        .iter()
        .map(|z| {
            (z.re - r.re_lo)
                .min(r.re_hi - z.re)
                .min(z.im - r.im_lo)
                .min(r.im_hi - z.im)
        })
        .fold(f64::INFINITY, f64::min);
    if slack >= -VALIDATION_TOL {
        Verdict::Holds {
            margin: slack.max(0.0),
        }
    } else {
        Verdict::Violated { margin: -slack }
    }
}

/// Checks that every zero lies in `r` expanded by `1e-9`.
pub fn validate_rectangle(p: &Polynomial, r: &Rectangle) -> Result<Verdict> {
    Ok(verdict_for_rectangle(&find_roots(p)?, r))
}
