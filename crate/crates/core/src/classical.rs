//! Classical disk bounds on the zeros of a monic polynomial.
//!
//! Each function returns a radius `R` with `|λ| ≤ R` for every zero `λ`.
//! With `n = deg p`, the formulas read the coefficients through
//! [`Polynomial::a`], so `a_n` is the coefficient of `z^{n-1}` and `a_1` the
//! constant term.
//!
//! Two formulas come in two flavours. [`LindenVariant::Table`] and
//! [`KittanehVariant::PlusOne`] are the forms that reproduce the published
//! comparison tables; the `Printed` forms follow the displayed expressions.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Every bound and region this crate can compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Cauchy,
    CarmichaelMason,
    Montel,
    FujiiKubo,
    Abdurakhmanov,
    Linden,
    Kittaneh,
    AbuOmarKittaneh,
    AlDolat,
    Theorem1,
    Corollary1,
    Theorem4,
    Corollary3,
    Mw,
    NumericalRadius,
    HermitianRect,
    KittanehRect,
    Theorem3Rect,
}

impl Method {
    pub const ALL: [Method; 18] = [
        Method::Cauchy,
        Method::CarmichaelMason,
        Method::Montel,
        Method::FujiiKubo,
        Method::Abdurakhmanov,
        Method::Linden,
        Method::Kittaneh,
        Method::AbuOmarKittaneh,
        Method::AlDolat,
        Method::Theorem1,
        Method::Corollary1,
        Method::Theorem4,
        Method::Corollary3,
        Method::Mw,
        Method::NumericalRadius,
        Method::HermitianRect,
        Method::KittanehRect,
        Method::Theorem3Rect,
    ];

    pub const CLASSICAL: [Method; 9] = [
        Method::Cauchy,
        Method::CarmichaelMason,
        Method::Montel,
        Method::FujiiKubo,
        Method::Abdurakhmanov,
        Method::Linden,
        Method::Kittaneh,
        Method::AbuOmarKittaneh,
        Method::AlDolat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Cauchy => "cauchy",
            Method::CarmichaelMason => "carmichael-mason",
            Method::Montel => "montel",
            Method::FujiiKubo => "fujii-kubo",
            Method::Abdurakhmanov => "abdurakhmanov",
            Method::Linden => "linden",
            Method::Kittaneh => "kittaneh",
            Method::AbuOmarKittaneh => "abu-omar-kittaneh",
            Method::AlDolat => "al-dolat",
            Method::Theorem1 => "theorem1",
            Method::Corollary1 => "corollary1",
            Method::Theorem4 => "theorem4",
            Method::Corollary3 => "corollary3",
            Method::Mw => "mw",
            Method::NumericalRadius => "numerical-radius",
            Method::HermitianRect => "hermitian-rect",
            Method::KittanehRect => "kittaneh-rect",
            Method::Theorem3Rect => "theorem3-rect",
        }
    }

    /// Rectangle-valued methods; the rest produce a disk radius.
    pub fn is_rectangle(self) -> bool {
        matches!(
            self,
            Method::HermitianRect | Method::KittanehRect | Method::Theorem3Rect
        )
    }

    /// Methods defined only for even degree `≥ 4`.
    pub fn needs_even_degree(self) -> bool {
        matches!(
            self,
            Method::Theorem1
                | Method::Corollary1
                | Method::Theorem4
                | Method::Corollary3
                | Method::Theorem3Rect
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Method::ALL
            .into_iter()
            .find(|m| m.name() == key)
            .ok_or_else(|| Error::Parse {
                token: s.to_string(),
                reason: "unknown method".into(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LindenVariant {
    #[default]
    Printed,
    /// `|a_n|/n` in place of `|a_n|²/n` inside the radicand.
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KittanehVariant {
    #[default]
    Printed,
    /// `(1 + |a_{n-1}|)²` in place of `(|a_{n-1}| - 1)²`.
    #[serde(rename = "plus_one")]
    PlusOne,
}

/// Formula flavour recorded on a [`BoundResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Printed,
    Table,
    #[serde(rename = "plus_one")]
    PlusOne,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Printed => "printed",
            Variant::Table => "table",
            Variant::PlusOne => "plus_one",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl From<LindenVariant> for Variant {
    fn from(v: LindenVariant) -> Self {
        match v {
            LindenVariant::Printed => Variant::Printed,
            LindenVariant::Table => Variant::Table,
        }
    }
}

impl From<KittanehVariant> for Variant {
    fn from(v: KittanehVariant) -> Self {
        match v {
            KittanehVariant::Printed => Variant::Printed,
            KittanehVariant::PlusOne => Variant::PlusOne,
        }
    }
}

impl FromStr for LindenVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "printed" => Ok(Self::Printed),
            "table" => Ok(Self::Table),
            other => Err(Error::Parse {
                token: other.to_string(),
                reason: "linden variant must be printed or table".into(),
            }),
        }
    }
}

impl FromStr for KittanehVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "printed" => Ok(Self::Printed),
            "plus_one" | "plus-one" => Ok(Self::PlusOne),
            other => Err(Error::Parse {
                token: other.to_string(),
                reason: "kittaneh variant must be printed or plus_one".into(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Applicability {
    /// Hypotheses hold; the value is a proven bound.
    Valid,
    /// The value is computed but a hypothesis is unmet or only heuristic.
    Conditional,
    /// No bound is claimed.
    Refused,
}

impl fmt::Display for Applicability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Applicability::Valid => "valid",
            Applicability::Conditional => "conditional",
            Applicability::Refused => "refused",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub method: Method,
    pub value: f64,
    pub variant: Option<Variant>,
    pub applicability: Applicability,
    pub notes: String,
}

impl BoundResult {
    pub fn valid(method: Method, value: f64) -> Self {
        Self {
            method,
            value,
            variant: None,
            applicability: Applicability::Valid,
            notes: String::new(),
        }
    }

    pub fn with_variant(mut self, variant: impl Into<Variant>) -> Self {
        self.variant = Some(variant.into());
        self
    }

    pub fn with_applicability(mut self, applicability: Applicability) -> Self {
        self.applicability = applicability;
        self
    }

    /// Appends a note, separated from earlier ones by `"; "`.
    pub fn note(mut self, text: impl AsRef<str>) -> Self {
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(text.as_ref());
        self
    }
}

fn sum_abs_sq(p: &Polynomial, range: std::ops::RangeInclusive<usize>) -> f64 {
    p.sum_sq(range)
}

/// `1 + max_k |a_k|`.
pub fn cauchy(p: &Polynomial) -> BoundResult {
    BoundResult::valid(Method::Cauchy, 1.0 + p.max_abs_coefficient())
}

/// `sqrt(1 + Σ|a_k|²)`.
pub fn carmichael_mason(p: &Polynomial) -> BoundResult {
    let s = sum_abs_sq(p, 1..=p.degree());
    BoundResult::valid(Method::CarmichaelMason, (1.0 + s).sqrt())
}

/// `max(1, Σ|a_k|)`.
pub fn montel(p: &Polynomial) -> BoundResult {
    let s: f64 = p.lower().iter().map(|z| z.norm()).sum();
    BoundResult::valid(Method::Montel, s.max(1.0))
}

/// `cos(π/(n+1)) + (|a_n| + Σ|a_k|²)/2`.
pub fn fujii_kubo(p: &Polynomial) -> BoundResult {
    let n = p.degree();
    let v = (PI / (n + 1) as f64).cos() + 0.5 * (p.abs_a(n) + sum_abs_sq(p, 1..=n));
    BoundResult::valid(Method::FujiiKubo, v)
}

/// `(|a_n| + cos(π/n) + sqrt((|a_n| - cos(π/n))² + (1 + Σ_{k<n}|a_k|²)²))/2`.
pub fn abdurakhmanov(p: &Polynomial) -> BoundResult {
    let n = p.degree();
    let an = p.abs_a(n);
    let cn = (PI / n as f64).cos();
    let tail = 1.0 + sum_abs_sq(p, 1..=n - 1);
    let v = 0.5 * (an + cn + ((an - cn).powi(2) + tail * tail).sqrt());
    BoundResult::valid(Method::Abdurakhmanov, v)
}

/// `|a_n|/n + sqrt(((n-1)/n)(n - 1 + Σ|a_k|² - r))` with `r = |a_n|²/n`
/// (printed) or `r = |a_n|/n` (table).
pub fn linden(p: &Polynomial, variant: LindenVariant) -> Result<BoundResult> {
    let n = p.degree();
    if n < 2 {
        return Err(Error::DegreeTooSmall { degree: n, min: 2 });
    }
    let nf = n as f64;
    let an = p.abs_a(n);
    let r = match variant {
        LindenVariant::Printed => an * an / nf,
        LindenVariant::Table => an / nf,
    };
    let radicand = (nf - 1.0) / nf * (nf - 1.0 + sum_abs_sq(p, 1..=n) - r);
    if radicand < 0.0 {
        return Err(Error::NegativeRadicand(radicand));
    }
    Ok(BoundResult::valid(Method::Linden, an / nf + radicand.sqrt()).with_variant(variant))
}

/// `(|a_n| + cos(π/n) + sqrt((|a_n| - cos(π/n))² + (|a_{n-1}| ∓ 1)² + Σ_{j≤n-2}|a_j|²))/2`.
pub fn kittaneh_disk(p: &Polynomial, variant: KittanehVariant) -> Result<BoundResult> {
    let n = p.degree();
    if n < 3 {
        return Err(Error::DegreeTooSmall { degree: n, min: 3 });
    }
    let an = p.abs_a(n);
    let an1 = p.abs_a(n - 1);
    let cn = (PI / n as f64).cos();
    let shifted = match variant {
        KittanehVariant::Printed => an1 - 1.0,
        KittanehVariant::PlusOne => an1 + 1.0,
    };
    let radicand = (an - cn).powi(2) + shifted * shifted + sum_abs_sq(p, 1..=n - 2);
    let v = 0.5 * (an + cn + radicand.sqrt());
    Ok(BoundResult::valid(Method::Kittaneh, v).with_variant(variant))
}

/// With `α² = Σ_{k≤n}|a_k|²`, `β² = Σ_{k<n}|a_k|²`, `x = (|a_n| + α)/2`,
/// `c = cos(π/(n+1))`: `(x + c + sqrt((x - c)² + 4β))/2`.
pub fn abu_omar_kittaneh(p: &Polynomial) -> BoundResult {
    let n = p.degree();
    let alpha = sum_abs_sq(p, 1..=n).sqrt();
    let beta = sum_abs_sq(p, 1..=n - 1).sqrt();
    let x = 0.5 * (p.abs_a(n) + alpha);
    let c = (PI / (n + 1) as f64).cos();
    let v = 0.5 * (x + c + ((x - c).powi(2) + 4.0 * beta).sqrt());
    BoundResult::valid(Method::AbuOmarKittaneh, v)
}

const AL_DOLAT_GRID: usize = 1024;
const AL_DOLAT_TOL: f64 = 1e-10;

/// Minimum over `t ∈ [0, 1]` of
/// `(|a_n| + 2cos(π/n) + sqrt(t²|a_n|² + Σ_{k<n}|a_k|²) + sqrt(1 + (1-t)²|a_n|²))/2`.
///
/// The objective is convex in `t`; the minimizer is located on a uniform grid
/// and polished by golden-section search. The minimizer is reported in the
/// notes as `t*=…`.
pub fn al_dolat(p: &Polynomial) -> Result<BoundResult> {
    let n = p.degree();
    if n < 2 {
        return Err(Error::DegreeTooSmall { degree: n, min: 2 });
    }
    let (t_star, value) = al_dolat_minimize(p);
    Ok(BoundResult::valid(Method::AlDolat, value).note(format!("t*={t_star:.10}")))
}

/// Objective of [`al_dolat`] at a fixed `t`.
pub fn al_dolat_objective(p: &Polynomial, t: f64) -> f64 {
    let n = p.degree();
    let an = p.abs_a(n);
    let lower = sum_abs_sq(p, 1..=n - 1);
    0.5 * (an
        + 2.0 * (PI / n as f64).cos()
        + (t * t * an * an + lower).sqrt()
        + (1.0 + (1.0 - t).powi(2) * an * an).sqrt())
}

fn al_dolat_minimize(p: &Polynomial) -> (f64, f64) {
    let f = |t: f64| al_dolat_objective(p, t);
    let h = 1.0 / AL_DOLAT_GRID as f64;
    let (mut best_t, mut best) = (0.0, f(0.0));
    for i in 1..=AL_DOLAT_GRID {
        let t = i as f64 * h;
        let v = f(t);
        if v < best {
            best = v;
            best_t = t;
        }
    }
    let (mut lo, mut hi) = ((best_t - h).max(0.0), (best_t + h).min(1.0));
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > AL_DOLAT_TOL {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (lo + hi);
    let v = f(mid);
    if v < best {
        (mid, v)
    } else {
        (best_t, best)
    }
}

/// All nine classical bounds with the chosen variants, in table order.
/// Formulas that are undefined for this degree are returned as refused rows.
pub fn all_classical(
    p: &Polynomial,
    linden_v: LindenVariant,
    kittaneh_v: KittanehVariant,
) -> Vec<BoundResult> {
    let refused = |m: Method, e: Error| BoundResult {
        method: m,
        value: f64::NAN,
        variant: None,
        applicability: Applicability::Refused,
        notes: e.to_string(),
    };
    vec![
        cauchy(p),
        carmichael_mason(p),
        montel(p),
        fujii_kubo(p),
        abdurakhmanov(p),
        linden(p, linden_v).unwrap_or_else(|e| refused(Method::Linden, e).with_variant(linden_v)),
        kittaneh_disk(p, kittaneh_v)
            .unwrap_or_else(|e| refused(Method::Kittaneh, e).with_variant(kittaneh_v)),
        abu_omar_kittaneh(p),
        al_dolat(p).unwrap_or_else(|e| refused(Method::AlDolat, e)),
    ]
}
