//! Bundled comparison tables and the three MW probe polynomials.
//!
//! Each expected value carries a status:
//! * `Exact`: the displayed formula reproduces the printed value;
//! * `VariantMatched`: only the table variant of the formula reproduces it;
//! * `Discrepancy`: no formula we evaluate reproduces it. The computed
//!   value is reported next to the printed one and not asserted.

use std::fmt::Write as _;

use serde::Serialize;

use crate::cartesian::{kittaneh_rectangle, mw_bound, theorem3_rectangle, MwStatus};
use crate::classical::{KittanehVariant, LindenVariant, Method, Variant};
use crate::error::{Error, Result};
use crate::oracle::{find_roots, verdict_for_radius};
use crate::poly::Polynomial;
use crate::report::{evaluate_method, format_sig, CompareOptions, MethodOutput, TEXT_DIGITS};

/// Relative tolerance for asserted fixture values.
pub const FIXTURE_REL_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Exact,
    VariantMatched,
    Discrepancy,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Exact => "exact",
            Status::VariantMatched => "variant-matched",
            Status::Discrepancy => "discrepancy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Quantity {
    /// Disk radius of a method; `Linden` and `Kittaneh` use the given variant.
    Bound(Method, Option<Variant>),
    /// Right edge of a centered rectangle.
    RectRe(Method),
    /// Top edge of a centered rectangle.
    RectIm(Method),
    /// Largest zero modulus from the oracle.
    OracleMaxModulus,
    /// `Σ_{k≥2}|a_k|`, the MW guard sum.
    MwTailSum,
}

impl Quantity {
    pub fn label(&self) -> String {
        match self {
            Quantity::Bound(m, Some(v)) => format!("{m}[{v}]"),
            Quantity::Bound(m, None) => m.to_string(),
            Quantity::RectRe(m) => format!("{m}.re"),
            Quantity::RectIm(m) => format!("{m}.im"),
            Quantity::OracleMaxModulus => "max-modulus".into(),
            Quantity::MwTailSum => "mw-tail-sum".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Expected {
    pub quantity: Quantity,
    pub value: f64,
    pub status: Status,
}

/// Qualitative MW claims made alongside the probe polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Claim {
    MwNotGuaranteed,
    MwHolds,
    MwViolated,
}

impl Claim {
    pub fn label(self) -> &'static str {
        match self {
            Claim::MwNotGuaranteed => "mw status is not guaranteed",
            Claim::MwHolds => "mw bound holds",
            Claim::MwViolated => "mw bound is violated",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fixture {
    pub name: &'static str,
    /// Degree-descending coefficients.
    pub coefficients: &'static str,
    pub expected: Vec<Expected>,
    pub claims: Vec<Claim>,
}

impl Fixture {
    pub fn polynomial(&self) -> Polynomial {
        Polynomial::parse(self.coefficients).expect("fixture coefficients parse")
    }
}

pub const FIXTURE_NAMES: [&str; 8] = [
    "table1", "table2", "table3", "table4", "table5", "h1", "h2", "h3",
];

fn e(quantity: Quantity, value: f64, status: Status) -> Expected {
    Expected {
        quantity,
        value,
        status,
    }
}

fn b(m: Method) -> Quantity {
    Quantity::Bound(m, None)
}

const LT: Quantity = Quantity::Bound(Method::Linden, Some(Variant::Table));
const KP: Quantity = Quantity::Bound(Method::Kittaneh, Some(Variant::PlusOne));
const KPR: Quantity = Quantity::Bound(Method::Kittaneh, Some(Variant::Printed));

pub fn fixture(name: &str) -> Result<Fixture> {
    use Method::*;
    use Status::*;
    let f = match name {
        "table1" => Fixture {
            name: "table1",
            coefficients: "1, 5/4, 4/3, 1, 2, 3, 4",
            expected: vec![
                e(b(Cauchy), 5.0, Exact),
                e(b(CarmichaelMason), 5.860057831, Exact),
                e(b(Montel), 12.58333333, Exact),
                e(b(FujiiKubo), 18.19610776, Exact),
                e(b(Abdurakhmanov), 17.44802607, Exact),
                e(LT, 5.845408848, VariantMatched),
                e(KP, 4.040959271, VariantMatched),
                e(b(AbuOmarKittaneh), 4.916052295, Exact),
                e(b(AlDolat), 4.867955746, Exact),
                e(b(Corollary1), 3.941508802, Exact),
            ],
            claims: vec![],
        },
        "table2" => Fixture {
            name: "table2",
            coefficients: "1, 2i, 4i, 0, 0, 1/4, 1/16",
            expected: vec![
                e(Quantity::RectRe(Theorem3Rect), 2.476786336, Exact),
                e(Quantity::RectIm(Theorem3Rect), 2.585204772, Discrepancy),
                e(Quantity::RectRe(KittanehRect), 3.999737494, Discrepancy),
                e(Quantity::RectIm(KittanehRect), 3.576384821, Discrepancy),
            ],
            claims: vec![],
        },
        "table3" => Fixture {
            name: "table3",
            coefficients: "1, 1/2, 0, 0, 1/16, 0, 1",
            expected: vec![
                e(b(Cauchy), 2.0, Exact),
                e(b(CarmichaelMason), 1.501301519, Exact),
                e(b(Montel), 1.5625, Exact),
                e(b(FujiiKubo), 1.777921993, Exact),
                e(b(Abdurakhmanov), 1.701542875, Exact),
                e(LT, 2.350962955, VariantMatched),
                e(KPR, 1.455651176, Discrepancy),
                e(b(AbuOmarKittaneh), 1.857439836, Exact),
                e(b(AlDolat), 2.147748325, Exact),
                e(b(Theorem4), 1.307548659, Exact),
            ],
            claims: vec![],
        },
        "table4" => Fixture {
            name: "table4",
            coefficients: "1, 1/4, 1/9, 1/16, 1/25, 1/36, 1/49",
            expected: vec![
                e(b(Cauchy), 1.25, Exact),
                e(b(CarmichaelMason), 1.039971167, Exact),
                e(b(Montel), 1.0, Exact),
                e(b(FujiiKubo), 1.066738881, Exact),
                e(b(Abdurakhmanov), 1.198213950, Discrepancy),
                e(LT, 2.091031073, VariantMatched),
                e(KPR, 1.152835774, Discrepancy),
                e(b(AbuOmarKittaneh), 1.072449189, Exact),
                e(b(AlDolat), 1.573586825, Exact),
                e(b(Theorem4), 1.219108946, Discrepancy),
                e(b(Mw), 0.6721175730, Exact),
                e(Quantity::OracleMaxModulus, 0.5447544053, Exact),
            ],
            claims: vec![],
        },
        "table5" => Fixture {
            name: "table5",
            coefficients: "1, 0, 1/3, 1/4, 1/9, 0, 1/100",
            expected: vec![
                e(b(Cauchy), 1.333333333, Exact),
                e(b(CarmichaelMason), 1.089062344, Exact),
                e(b(Montel), 1.0, Exact),
                e(b(FujiiKubo), 0.9939972629, Exact),
                e(b(Abdurakhmanov), 1.167303296, Exact),
                e(LT, 2.078873251, VariantMatched),
                e(KPR, 1.325435041, Discrepancy),
                e(b(AbuOmarKittaneh), 1.299097566, Exact),
                e(b(AlDolat), 1.581696908, Exact),
                e(b(Theorem4), 1.351458429, Discrepancy),
                e(b(Mw), 0.7647166222, Exact),
                e(Quantity::OracleMaxModulus, 0.7419983061, Exact),
            ],
            claims: vec![Claim::MwHolds],
        },
        "h1" => Fixture {
            name: "h1",
            coefficients: "1, 0, 1/6, 0, 1/5, 0, 1/4",
            expected: vec![
                e(b(Mw), 0.7685824855, Exact),
                e(Quantity::OracleMaxModulus, 0.8120242973, Exact),
            ],
            claims: vec![Claim::MwNotGuaranteed, Claim::MwViolated],
        },
        "h2" => Fixture {
            name: "h2",
            coefficients: "1, 1/4+1/4i, i/9, i/16, 1/25, 1/36, 1/49",
            expected: vec![
                e(b(Mw), 0.7337440145, Exact),
                e(Quantity::MwTailSum, 0.5949422794, Exact),
                e(Quantity::OracleMaxModulus, 0.6408240287, Discrepancy),
            ],
            claims: vec![Claim::MwNotGuaranteed, Claim::MwHolds],
        },
        "h3" => Fixture {
            name: "h3",
            coefficients: "1, 0, 1/4, 0, 1/3, 0, 1/4",
            expected: vec![
                e(b(Mw), 0.8671411790, Exact),
                e(Quantity::MwTailSum, 0.5833333333, Exact),
                e(Quantity::OracleMaxModulus, 0.8310538215, Exact),
            ],
            claims: vec![Claim::MwNotGuaranteed, Claim::MwHolds],
        },
        other => return Err(Error::UnknownFixture(other.to_string())),
    };
    Ok(f)
}

pub fn all_fixtures() -> Vec<Fixture> {
    FIXTURE_NAMES
        .iter()
        .map(|n| fixture(n).expect("bundled fixture"))
        .collect()
}

/// Evaluates a fixture quantity on `p`.
pub fn evaluate_quantity(p: &Polynomial, q: Quantity) -> Result<f64> {
    match q {
        Quantity::Bound(method, variant) => {
            let mut opts = CompareOptions::default();
            match variant {
                Some(Variant::Table) => opts.linden = LindenVariant::Table,
                Some(Variant::PlusOne) => opts.kittaneh = KittanehVariant::PlusOne,
                _ => {}
            }
            match evaluate_method(p, method, &opts)? {
                MethodOutput::Disk(r) => Ok(r.value),
                MethodOutput::Rect { rect, .. } => Ok(rect.max_modulus()),
            }
        }
        Quantity::RectRe(Method::Theorem3Rect) => Ok(theorem3_rectangle(p)?.re_hi),
        Quantity::RectIm(Method::Theorem3Rect) => Ok(theorem3_rectangle(p)?.im_hi),
        Quantity::RectRe(Method::KittanehRect) => Ok(kittaneh_rectangle(p)?.re_hi),
        Quantity::RectIm(Method::KittanehRect) => Ok(kittaneh_rectangle(p)?.im_hi),
        Quantity::RectRe(m) | Quantity::RectIm(m) => Err(Error::InvalidArgument(format!(
            "{m} is not a centered rectangle"
        ))),
        Quantity::OracleMaxModulus => Ok(find_roots(p)?.max_modulus),
        Quantity::MwTailSum => Ok((2..=p.degree()).map(|k| p.abs_a(k)).sum()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureRow {
    pub label: String,
    pub status: Status,
    pub printed: f64,
    pub computed: Option<f64>,
    pub relative_error: Option<f64>,
    /// `None` for discrepancy rows, which are reported but not asserted.
    pub passed: Option<bool>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimRow {
    pub claim: Claim,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub polynomial: String,
    pub rows: Vec<FixtureRow>,
    pub claims: Vec<ClaimRow>,
}

impl FixtureOutcome {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed != Some(false)) && self.claims.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "fixture {}: {verdict}", self.name);
        let _ = writeln!(out, "  p(z) = {}", self.polynomial);
        for r in &self.rows {
            let mark = match r.passed {
                Some(true) => "ok",
                Some(false) => "FAIL",
                None => "report",
            };
            let computed = match (r.computed, &r.error) {
                (Some(v), _) => format_sig(v, TEXT_DIGITS),
                (None, Some(e)) => format!("error: {e}"),
                (None, None) => "-".into(),
            };
            let _ = writeln!(
                out,
                "  {:<6} {:<30} printed {:>14}  computed {:>14}  [{}]",
                mark,
                r.label,
                format_sig(r.printed, TEXT_DIGITS),
                computed,
                r.status.name()
            );
        }
        for c in &self.claims {
            let mark = if c.passed { "ok" } else { "FAIL" };
            let _ = writeln!(out, "  {:<6} {}: {}", mark, c.claim.label(), c.detail);
        }
        out
    }
}

fn relative_error(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
}

/// Evaluates every expectation and claim of the named fixture.
pub fn run_fixture(name: &str) -> Result<FixtureOutcome> {
    let f = fixture(name)?;
    let p = f.polynomial();
    let rows = f
        .expected
        .iter()
        .map(|ex| {
            let label = ex.quantity.label();
            match evaluate_quantity(&p, ex.quantity) {
                Ok(v) => {
                    let rel = relative_error(v, ex.value);
                    FixtureRow {
                        label,
                        status: ex.status,
                        printed: ex.value,
                        computed: Some(v),
                        relative_error: Some(rel),
                        passed: (ex.status != Status::Discrepancy)
                            .then_some(rel <= FIXTURE_REL_TOL),
                        error: None,
                    }
                }
                Err(err) => FixtureRow {
                    label,
                    status: ex.status,
                    printed: ex.value,
                    computed: None,
                    relative_error: None,
                    passed: (ex.status != Status::Discrepancy).then_some(false),
                    error: Some(err.to_string()),
                },
            }
        })
        .collect();

    let claims = f
        .claims
        .iter()
        .map(|&claim| evaluate_claim(&p, claim))
        .collect();

    Ok(FixtureOutcome {
        name: f.name.to_string(),
        polynomial: p.to_string(),
        rows,
        claims,
    })
}

fn evaluate_claim(p: &Polynomial, claim: Claim) -> ClaimRow {
    let fail = |detail: String| ClaimRow {
        claim,
        passed: false,
        detail,
    };
    let (mw, guard) = match mw_bound(p, false) {
        Ok(x) => x,
        Err(e) => return fail(e.to_string()),
    };
    match claim {
        Claim::MwNotGuaranteed => ClaimRow {
            claim,
            passed: guard.status != MwStatus::Guaranteed,
            detail: format!("status {:?}", guard.status).to_lowercase(),
        },
        Claim::MwHolds | Claim::MwViolated => match find_roots(p) {
            Ok(roots) => {
                let v = verdict_for_radius(roots.max_modulus, mw.value);
                let want_hold = claim == Claim::MwHolds;
                ClaimRow {
                    claim,
                    passed: v.holds() == want_hold,
                    detail: format!(
                        "mw {} vs max modulus {}",
                        format_sig(mw.value, TEXT_DIGITS),
                        format_sig(roots.max_modulus, TEXT_DIGITS)
                    ),
                }
            }
            Err(e) => fail(e.to_string()),
        },
    }
}
