//! Monic complex polynomials.
//!
//! A polynomial of degree `n` is stored through its lower coefficients
//! `a_1, …, a_n`, where `a_k` multiplies `z^{k-1}`:
//!
//! ```text
//! p(z) = z^n + a_n z^{n-1} + … + a_2 z + a_1
//! ```
//!
//! Every bound formula in this crate is written against that indexing, so the
//! conversion from the usual degree-descending input happens once, here.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    lower: Vec<Complex64>,
}

impl Polynomial {
    /// Builds `z^n + a_n z^{n-1} + … + a_1` from `[a_1, …, a_n]`.
    pub fn from_lower(lower: Vec<Complex64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::TooFewCoefficients { min: 2, found: 1 });
        }
        if lower
            .iter()
            .any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFiniteCoefficient);
        }
        Ok(Self { lower })
    }

    /// Real lower coefficients, `[a_1, …, a_n]`.
    pub fn from_real_lower(lower: &[f64]) -> Result<Self> {
        Self::from_lower(lower.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Divides degree-descending coefficients by the leading one.
    /// `coeffs_desc[0]` is the leading coefficient.
    pub fn make_monic(coeffs_desc: &[Complex64]) -> Result<Self> {
        if coeffs_desc.len() < 2 {
            return Err(Error::TooFewCoefficients {
                min: 2,
                found: coeffs_desc.len(),
            });
        }
        let leading = coeffs_desc[0];
        if leading == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let lower = coeffs_desc[1..]
            .iter()
            .rev()
            .map(|&c| c / leading)
            .collect();
        Self::from_lower(lower)
    }

    /// Real degree-descending coefficients, leading first.
    pub fn from_real_desc(coeffs_desc: &[f64]) -> Result<Self> {
        let c: Vec<Complex64> = coeffs_desc
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        Self::make_monic(&c)
    }

    /// Parses comma-separated degree-descending coefficients such as
    /// `"1, 5/4, 4/3, 1, 2, 3, 4"` or `"1, 1/4+1/4i, i/9, 0"`.
    pub fn parse(text: &str) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(parse_complex)
            .collect::<Result<Vec<_>>>()?;
        Self::make_monic(&coeffs)
    }

    pub fn degree(&self) -> usize {
        self.lower.len()
    }

    /// `[a_1, …, a_n]`.
    pub fn lower(&self) -> &[Complex64] {
        &self.lower
    }

    /// `a_k` for `1 <= k <= degree`.
    pub fn a(&self, k: usize) -> Complex64 {
        assert!(
            (1..=self.degree()).contains(&k),
            "coefficient index {k} out of range 1..={}",
            self.degree()
        );
        self.lower[k - 1]
    }

    /// `|a_k|`.
    pub fn abs_a(&self, k: usize) -> f64 {
        self.a(k).norm()
    }

    /// `Σ_{k ∈ range} |a_k|²`, empty ranges summing to zero.
    pub fn sum_sq(&self, range: impl IntoIterator<Item = usize>) -> f64 {
        range.into_iter().map(|k| self.a(k).norm_sqr()).sum()
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.lower.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Degree-descending coefficients including the leading 1.
    pub fn coeffs_desc(&self) -> Vec<Complex64> {
        std::iter::once(Complex64::new(1.0, 0.0))
            .chain(self.lower.iter().rev().copied())
            .collect()
    }

    pub fn is_real(&self) -> bool {
        self.lower.iter().all(|z| z.im == 0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.lower
            .iter()
            .rev()
            .fold(Complex64::new(1.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Derivative value `p'(z)`.
    pub fn eval_derivative(&self, z: Complex64) -> Complex64 {
        let n = self.degree();
        let mut acc = Complex64::new(n as f64, 0.0);
        for k in (2..=n).rev() {
            acc = acc * z + self.a(k) * (k - 1) as f64;
        }
        acc
    }

    /// Removes a root at the origin from an odd-degree polynomial.
    ///
    /// When the degree is odd and `a_1` is exactly zero, `p(z) = z·p₁(z)` with
    /// `p₁` of even degree; returns `(p₁, true)`. Otherwise returns a copy of
    /// `p` and `false`.
    pub fn odd_reduce(&self) -> (Polynomial, bool) {
        if self.degree() % 2 == 1 && self.degree() > 1 && self.lower[0] == Complex64::new(0.0, 0.0)
        {
            (
                Polynomial {
                    lower: self.lower[1..].to_vec(),
                },
                true,
            )
        } else {
            (self.clone(), false)
        }
    }

    /// Multiplies every lower coefficient by `factor`.
    pub fn scale_coefficients(&self, factor: f64) -> Polynomial {
        Polynomial {
            lower: self.lower.iter().map(|&c| c * factor).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        write!(f, "z^{n}")?;
        for k in (1..=n).rev() {
            let c = self.a(k);
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let power = k - 1;
            // a real or purely imaginary coefficient carries its own sign
            let (sign, coef) = if c.im == 0.0 {
                (
                    if c.re < 0.0 { '-' } else { '+' },
                    format!("{}", c.re.abs()),
                )
            } else if c.re == 0.0 {
                (
                    if c.im < 0.0 { '-' } else { '+' },
                    format!("{}i", c.im.abs()),
                )
            } else {
                ('+', format!("({}{:+}i)", c.re, c.im))
            };
            match power {
                0 => write!(f, " {sign} {coef}")?,
                1 => write!(f, " {sign} {coef}·z")?,
                _ => write!(f, " {sign} {coef}·z^{power}")?,
            }
        }
        Ok(())
    }
}

/// Zeros of a polynomial together with their residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// `|p(root)|` for each root.
    pub residuals: Vec<f64>,
    pub max_modulus: f64,
}

impl RootSet {
    pub fn new(p: &Polynomial, roots: Vec<Complex64>) -> Self {
        let residuals = roots.iter().map(|&z| p.eval(z).norm()).collect();
        let max_modulus = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
        Self {
            roots,
            residuals,
            max_modulus,
        }
    }
}

/// Parses one complex literal: `a`, `bi`, `a+bi`, `a-bi`, where each part
/// is a decimal or a fraction `p/q`. A bare `i` means one; `j` is accepted
/// for `i`.
pub fn parse_complex(token: &str) -> Result<Complex64> {
    let err = |reason: &str| Error::Parse {
        token: token.trim().to_string(),
        reason: reason.to_string(),
    };
    let compact: String = token.chars().filter(|c| !c.is_whitespace()).collect();
    let compact = strip_parens(&compact);
    if compact.is_empty() {
        return Err(err("empty coefficient"));
    }

    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    let mut depth = 0i32;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if i > 0 && depth == 0 => {
                let prev = bytes[i - 1];
                if prev != b'e' && prev != b'E' && prev != b'/' && prev != b'+' && prev != b'-' {
                    terms.push(&compact[start..i]);
                    start = i;
                }
            }
            _ => {}
        }
    }
    terms.push(&compact[start..]);

    let mut total = Complex64::new(0.0, 0.0);
    for term in terms {
        let (sign, body) = match term.as_bytes().first() {
            Some(b'+') => (1.0, &term[1..]),
            Some(b'-') => (-1.0, &term[1..]),
            _ => (1.0, term),
        };
        let body = strip_parens(body);
        let (imaginary, magnitude) = if let Some(rest) = body.strip_suffix(['i', 'j']) {
            (true, rest.strip_suffix('*').unwrap_or(rest))
        } else if let Some(rest) = body.strip_prefix(['i', 'j']) {
            // forms like `i/9` or `i*2`
            let rest = rest.strip_prefix('*').unwrap_or(rest);
            if let Some(den) = rest.strip_prefix('/') {
                let d = parse_real(den).ok_or_else(|| err("bad denominator"))?;
                if d == 0.0 {
                    return Err(err("division by zero"));
                }
                total += Complex64::new(0.0, sign / d);
                continue;
            }
            (true, rest)
        } else {
            (false, body)
        };
        let magnitude = strip_parens(magnitude);
        let value = if magnitude.is_empty() {
            if imaginary {
                1.0
            } else {
                return Err(err("dangling sign"));
            }
        } else {
            parse_real(magnitude).ok_or_else(|| err("not a number or fraction"))?
        };
        if imaginary {
            total += Complex64::new(0.0, sign * value);
        } else {
            total += Complex64::new(sign * value, 0.0);
        }
    }
    if !(total.re.is_finite() && total.im.is_finite()) {
        return Err(err("not finite"));
    }
    Ok(total)
}

fn strip_parens(s: &str) -> &str {
    let mut s = s;
    while s.len() >= 2 && s.starts_with('(') && s.ends_with(')') {
        s = &s[1..s.len() - 1];
    }
    s
}

fn parse_real(s: &str) -> Option<f64> {
    let s = strip_parens(s);
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_decimal(num)?;
        let d = parse_decimal(den)?;
        if d == 0.0 {
            return None;
        }
        Some(n / d)
    } else {
        parse_decimal(s)
    }
}

fn parse_decimal(s: &str) -> Option<f64> {
    let s = strip_parens(s);
    // reject inf/nan spellings that f64::from_str would accept
    if s.is_empty()
        || !s
            .bytes()
            .all(|b| b.is_ascii_digit() || b".eE+-".contains(&b))
    {
        return None;
    }
    s.parse::<f64>().ok().filter(|x| x.is_finite())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn make_monic_divides_and_reorders() {
        let p = Polynomial::from_real_desc(&[2.0, 0.0, -2.0]).unwrap();
        assert_eq!(p.lower(), &[c(-1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn table_one_indexing() {
        let p = Polynomial::parse("1, 5/4, 4/3, 1, 2, 3, 4").unwrap();
        assert_eq!(p.a(6), c(1.25, 0.0));
        assert_eq!(p.a(1), c(4.0, 0.0));
        assert_eq!(p.a(5), c(4.0 / 3.0, 0.0));
    }

    #[test]
    fn zero_leading_coefficient() {
        assert_eq!(
            Polynomial::from_real_desc(&[0.0, 1.0, 2.0]),
            Err(Error::ZeroLeadingCoefficient)
        );
        assert!(matches!(
            Polynomial::from_real_desc(&[1.0]),
            Err(Error::TooFewCoefficients { .. })
        ));
    }

    #[test]
    fn odd_reduce_cases() {
        // z^5 + z^3
        let p = Polynomial::from_real_desc(&[1.0, 0.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        let (p1, flag) = p.odd_reduce();
        assert!(flag);
        assert_eq!(
            p1,
            Polynomial::from_real_desc(&[1.0, 0.0, 1.0, 0.0, 0.0]).unwrap()
        );

        let even = Polynomial::from_real_desc(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(even.odd_reduce(), (even.clone(), false));

        let odd = Polynomial::from_real_desc(&[1.0, 0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(odd.odd_reduce(), (odd.clone(), false));
    }

    #[test]
    fn evaluation_and_derivative() {
        // z^3 + 2z + 3
        let p = Polynomial::from_real_desc(&[1.0, 0.0, 2.0, 3.0]).unwrap();
        let z = c(0.5, -1.0);
        let direct = z * z * z + z * 2.0 + 3.0;
        assert!((p.eval(z) - direct).norm() < 1e-14);
        let dd = z * z * 3.0 + 2.0;
        assert!((p.eval_derivative(z) - dd).norm() < 1e-14);
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("3").unwrap(), c(3.0, 0.0));
        assert_eq!(parse_complex("-2.5i").unwrap(), c(0.0, -2.5));
        assert_eq!(parse_complex("1/4+1/4i").unwrap(), c(0.25, 0.25));
        assert_eq!(parse_complex(" 1 - 2i ").unwrap(), c(1.0, -2.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("i/9").unwrap(), c(0.0, 1.0 / 9.0));
        assert_eq!(parse_complex("1e-3").unwrap(), c(1e-3, 0.0));
        assert_eq!(parse_complex("(1/16)").unwrap(), c(0.0625, 0.0));
        assert_eq!(parse_complex("2i").unwrap(), c(0.0, 2.0));
    }

    #[test]
    fn malformed_literals_name_the_token() {
        for bad in ["", "abc", "1/0", "inf", "1+", "nan", "3x"] {
            match parse_complex(bad) {
                Err(Error::Parse { token, .. }) => assert_eq!(token, bad.trim()),
                other => panic!("{bad:?} parsed as {other:?}"),
            }
        }
    }

    #[test]
    fn display_is_readable() {
        let p = Polynomial::parse("1, 0, -1").unwrap();
        assert_eq!(p.to_string(), "z^2 - 1");
        let p = Polynomial::parse("1, 2i, -1/4i, 1/2+i").unwrap();
        assert_eq!(p.to_string(), "z^3 + 2i·z^2 - 0.25i·z + (0.5+1i)");
    }
}
