//! Runs a set of bounds on one polynomial, checks them against the oracle and
//! renders the result as text, CSV or JSON.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cartesian::{
    corollary1_bound, corollary3_auto, hermitian_rectangle, kittaneh_rectangle, mw_bound,
    theorem1_companion, theorem3_rectangle, theorem4_bound, MwStatus, Rectangle,
};
use crate::classical::{
    abdurakhmanov, abu_omar_kittaneh, al_dolat, carmichael_mason, cauchy, fujii_kubo,
    kittaneh_disk, linden, montel, Applicability, BoundResult, KittanehVariant, LindenVariant,
    Method, Variant,
};
use crate::companion::{build_block_companion, build_companion};
use crate::error::{Error, Result};
use crate::linalg::{numerical_radius_sweep, DEFAULT_REFINE_ITERS, DEFAULT_THETA_SAMPLES};
use crate::oracle::{find_roots, verdict_for_radius, verdict_for_rectangle, Verdict};
use crate::poly::{Polynomial, RootSet};

pub const TEXT_DIGITS: usize = 10;
pub const MACHINE_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Parse {
                token: other.to_string(),
                reason: "format must be text, csv or json".into(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareOptions {
    pub methods: Vec<Method>,
    pub linden: LindenVariant,
    pub kittaneh: KittanehVariant,
    /// Exponent `s` of the block bound, in `(0, 1)`.
    pub alpha: f64,
    pub theta_samples: usize,
    pub strict_mw: bool,
    pub oracle: bool,
    pub format: Format,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            methods: Method::ALL.to_vec(),
            linden: LindenVariant::default(),
            kittaneh: KittanehVariant::default(),
            alpha: 0.5,
            theta_samples: DEFAULT_THETA_SAMPLES,
            strict_mw: false,
            oracle: false,
            format: Format::Text,
        }
    }
}

/// `m1,m2,…` or `all`.
pub fn parse_methods(list: &str) -> Result<Vec<Method>> {
    if list.trim() == "all" {
        return Ok(Method::ALL.to_vec());
    }
    let mut out = Vec::new();
    for tok in list.split(',').filter(|t| !t.trim().is_empty()) {
        let m: Method = tok.parse()?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    if out.is_empty() {
        return Err(Error::Parse {
            token: list.to_string(),
            reason: "no methods given".into(),
        });
    }
    Ok(out)
}

fn parse_flag(value: &str) -> Result<bool> {
    match value.trim() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => Err(Error::Parse {
            token: other.to_string(),
            reason: "expected true or false".into(),
        }),
    }
}

impl CompareOptions {
    /// Applies one setting. Keys: `methods`, `linden`, `kittaneh`, `alpha`,
    /// `theta_samples`, `strict_mw`, `oracle`, `format`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |reason: &str| Error::Parse {
            token: value.trim().to_string(),
            reason: reason.to_string(),
        };
        match key.trim().replace('-', "_").as_str() {
            "methods" => self.methods = parse_methods(value)?,
            "linden" => self.linden = value.parse()?,
            "kittaneh" => self.kittaneh = value.parse()?,
            "alpha" => {
                let a: f64 = value
                    .trim()
                    .parse()
                    .map_err(|_| bad("alpha must be a number"))?;
                if !(a > 0.0 && a < 1.0) {
                    return Err(bad("alpha must lie in (0, 1)"));
                }
                self.alpha = a;
            }
            "theta_samples" => {
                self.theta_samples = value
                    .trim()
                    .parse()
                    .map_err(|_| bad("theta_samples must be a count"))?;
            }
            "strict_mw" => self.strict_mw = parse_flag(value)?,
            "oracle" => self.oracle = parse_flag(value)?,
            "format" => self.format = value.parse()?,
            other => {
                return Err(Error::Parse {
                    token: other.to_string(),
                    reason: "unknown setting".into(),
                })
            }
        }
        Ok(())
    }

    /// `name=value` assignments such as `linden=table`.
    pub fn set_variant(&mut self, assignment: &str) -> Result<()> {
        let (k, v) = assignment.split_once('=').ok_or_else(|| Error::Parse {
            token: assignment.to_string(),
            reason: "expected name=value".into(),
        })?;
        match k.trim() {
            "linden" | "kittaneh" => self.set(k, v),
            other => Err(Error::Parse {
                token: other.to_string(),
                reason: "variant applies to linden or kittaneh".into(),
            }),
        }
    }

    /// Reads `key=value` lines; blank lines and `#` comments are skipped.
    pub fn apply_config(&mut self, text: &str) -> Result<()> {
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                token: line.to_string(),
                reason: "config lines must be key=value".into(),
            })?;
            self.set(k, v)?;
        }
        Ok(())
    }
}

/// Output of one method.
#[derive(Debug, Clone, PartialEq)]
pub enum MethodOutput {
    Disk(BoundResult),
    Rect {
        method: Method,
        rect: Rectangle,
        applicability: Applicability,
        notes: String,
    },
}

/// Evaluates `method` on `p` exactly as requested, without degree reduction.
pub fn evaluate_method(
    p: &Polynomial,
    method: Method,
    opts: &CompareOptions,
) -> Result<MethodOutput> {
    let disk = |r: BoundResult| Ok(MethodOutput::Disk(r));
    let rect = |rect: Rectangle| {
        Ok(MethodOutput::Rect {
            method,
            rect,
            applicability: Applicability::Valid,
            notes: String::new(),
        })
    };
    match method {
        Method::Cauchy => disk(cauchy(p)),
        Method::CarmichaelMason => disk(carmichael_mason(p)),
        Method::Montel => disk(montel(p)),
        Method::FujiiKubo => disk(fujii_kubo(p)),
        Method::Abdurakhmanov => disk(abdurakhmanov(p)),
        Method::Linden => disk(linden(p, opts.linden)?),
        Method::Kittaneh => disk(kittaneh_disk(p, opts.kittaneh)?),
        Method::AbuOmarKittaneh => disk(abu_omar_kittaneh(p)),
        Method::AlDolat => disk(al_dolat(p)?),
        Method::Theorem1 => disk(theorem1_companion(&build_block_companion(p)?, opts.alpha)?),
        Method::Corollary1 => disk(corollary1_bound(&build_block_companion(p)?)?),
        Method::Theorem4 => disk(theorem4_bound(p)?),
        Method::Corollary3 => disk(corollary3_auto(p)?),
        Method::Mw => disk(mw_bound(p, opts.strict_mw)?.0),
        Method::NumericalRadius => {
            let w = numerical_radius_sweep(
                &build_companion(p)?,
                opts.theta_samples,
                DEFAULT_REFINE_ITERS,
            )?;
            disk(BoundResult::valid(method, w).note(format!("theta grid {}", opts.theta_samples)))
        }
        Method::HermitianRect => rect(hermitian_rectangle(p)?),
        Method::KittanehRect => rect(kittaneh_rectangle(p)?),
        Method::Theorem3Rect => {
            let mut out = rect(theorem3_rectangle(p)?)?;
            if p.a(1) == num_complex::Complex64::new(0.0, 0.0) {
                if let MethodOutput::Rect {
                    applicability,
                    notes,
                    ..
                } = &mut out
                {
                    *applicability = Applicability::Conditional;
                    *notes = "constant term is zero, outside the stated hypothesis a_1 != 0".into();
                }
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub method: Method,
    pub variant: Option<Variant>,
    /// Disk radius; for rectangles, the distance to the farthest corner.
    pub value: Option<f64>,
    pub rect: Option<Rectangle>,
    pub applicability: Applicability,
    pub verdict: Option<Verdict>,
    /// 1 for the smallest radius among disk bounds that are not refused; the
    /// numerical radius reference row is not ranked.
    pub rank: Option<usize>,
    pub notes: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub polynomial: Polynomial,
    pub oracle: Option<RootSet>,
    pub oracle_error: Option<String>,
    pub rows: Vec<ReportRow>,
}

impl Report {
    /// MW was requested under `strict_mw` and refused.
    pub fn mw_refused(&self) -> bool {
        self.rows.iter().any(|r| {
            r.method == Method::Mw && r.applicability == Applicability::Refused && r.value.is_some()
        })
    }

    pub fn row(&self, method: Method) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.method == method)
    }
}

fn variant_of(method: Method, opts: &CompareOptions) -> Option<Variant> {
    match method {
        Method::Linden => Some(opts.linden.into()),
        Method::Kittaneh => Some(opts.kittaneh.into()),
        _ => None,
    }
}

fn refused_row(method: Method, opts: &CompareOptions, reason: String) -> ReportRow {
    ReportRow {
        method,
        variant: variant_of(method, opts),
        value: None,
        rect: None,
        applicability: Applicability::Refused,
        verdict: None,
        rank: None,
        notes: reason,
    }
}

/// Evaluates the requested methods on `p`.
///
/// Methods that need an even degree are applied to `p(z)/z` when `p` has odd
/// degree and a zero constant term; the zero at the origin lies inside every
/// disk and rectangle, so the result bounds `p` as well.
pub fn run_compare(p: &Polynomial, opts: &CompareOptions) -> Report {
    let (reduced, was_reduced) = p.odd_reduce();
    let mut rows = Vec::with_capacity(opts.methods.len());
    for &method in &opts.methods {
        let (target, reduction_note) = if method.needs_even_degree() && was_reduced {
            (&reduced, Some("evaluated on p(z)/z"))
        } else {
            (p, None)
        };
        let mut row = match evaluate_method(target, method, opts) {
            Ok(MethodOutput::Disk(b)) => {
                let finite = b.value.is_finite();
                ReportRow {
                    method,
                    variant: b.variant,
                    value: finite.then_some(b.value),
                    rect: None,
                    applicability: if finite {
                        b.applicability
                    } else {
                        Applicability::Refused
                    },
                    verdict: None,
                    rank: None,
                    notes: b.notes,
                }
            }
            Ok(MethodOutput::Rect {
                rect,
                applicability,
                notes,
                ..
            }) => ReportRow {
                method,
                variant: None,
                value: Some(rect.max_modulus()),
                rect: Some(rect),
                applicability,
                verdict: None,
                rank: None,
                notes,
            },
            Err(e) => refused_row(method, opts, e.to_string()),
        };
        if let (Some(n), true) = (reduction_note, row.value.is_some()) {
            row.notes = if row.notes.is_empty() {
                n.to_string()
            } else {
                format!("{n}; {}", row.notes)
            };
        }
        rows.push(row);
    }

    let mut ranked: Vec<(usize, f64)> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| {
            r.applicability != Applicability::Refused
                && r.rect.is_none()
                && r.method != Method::NumericalRadius
        })
        .filter_map(|(i, r)| r.value.map(|v| (i, v)))
        .collect();
    ranked.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut rank = 0;
    let mut last = f64::NAN;
    for (pos, &(i, v)) in ranked.iter().enumerate() {
        if v != last {
            rank = pos + 1;
            last = v;
        }
        rows[i].rank = Some(rank);
    }

    let (oracle, oracle_error) = if opts.oracle {
        match find_roots(p) {
            Ok(roots) => {
                for row in &mut rows {
                    row.verdict = match (row.rect, row.value) {
                        (Some(r), _) => Some(verdict_for_rectangle(&roots, &r)),
                        (None, Some(v)) => Some(verdict_for_radius(roots.max_modulus, v)),
                        _ => None,
                    };
                }
                (Some(roots), None)
            }
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };

    Report {
        polynomial: p.clone(),
        oracle,
        oracle_error,
        rows,
    }
}

/// `x` with `digits` significant digits, fixed notation for moderate
/// magnitudes and scientific otherwise.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..15).contains(&exp) {
        return format!("{:.*e}", digits - 1, x);
    }
    // rounding can carry into a new leading digit, e.g. 9.99… -> 10.0…
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let digits_used = s
        .chars()
        .filter(|c| c.is_ascii_digit())
        .skip_while(|&c| c == '0')
        .count();
    if digits_used > digits && decimals > 0 {
        format!("{:.*}", decimals - 1, x)
    } else {
        s
    }
}

/// One report row with every number as a fixed-precision decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowRecord {
    pub method: String,
    pub variant: String,
    pub value: String,
    pub applicability: String,
    pub oracle_max_modulus: String,
    pub verdict: String,
    pub margin: String,
    pub rank: String,
    pub re_lo: String,
    pub re_hi: String,
    pub im_lo: String,
    pub im_hi: String,
    pub notes: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub polynomial: String,
    pub degree: usize,
    pub oracle_max_modulus: String,
    pub oracle_error: String,
    pub rows: Vec<RowRecord>,
}

fn opt_num(x: Option<f64>, digits: usize) -> String {
    x.map(|v| format_sig(v, digits)).unwrap_or_default()
}

impl Report {
    pub fn records(&self, digits: usize) -> ReportRecord {
        let max_mod = self.oracle.as_ref().map(|r| r.max_modulus);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let (verdict, margin) = match r.verdict {
                    Some(Verdict::Holds { margin }) => {
                        ("holds".to_string(), format_sig(margin, digits))
                    }
                    Some(Verdict::Violated { margin }) => {
                        ("violated".to_string(), format_sig(margin, digits))
                    }
                    None => (String::new(), String::new()),
                };
                RowRecord {
                    method: r.method.name().to_string(),
                    variant: r.variant.map(|v| v.name().to_string()).unwrap_or_default(),
                    value: opt_num(r.value, digits),
                    applicability: r.applicability.to_string(),
                    oracle_max_modulus: opt_num(max_mod, digits),
                    verdict,
                    margin,
                    rank: r.rank.map(|k| k.to_string()).unwrap_or_default(),
                    re_lo: opt_num(r.rect.map(|x| x.re_lo), digits),
                    re_hi: opt_num(r.rect.map(|x| x.re_hi), digits),
                    im_lo: opt_num(r.rect.map(|x| x.im_lo), digits),
                    im_hi: opt_num(r.rect.map(|x| x.im_hi), digits),
                    notes: r.notes.clone(),
                }
            })
            .collect();
        ReportRecord {
            polynomial: self.polynomial.to_string(),
            degree: self.polynomial.degree(),
            oracle_max_modulus: opt_num(max_mod, digits),
            oracle_error: self.oracle_error.clone().unwrap_or_default(),
            rows,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.records(MACHINE_DIGITS)).expect("records serialize")
    }

    pub const CSV_HEADER: &'static str =
        "method,variant,value,applicability,oracle_max_modulus,verdict,margin,re_lo,re_hi,im_lo,im_hi";

    pub fn to_csv(&self) -> String {
        let rec = self.records(MACHINE_DIGITS);
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &rec.rows {
            let fields = [
                &r.method,
                &r.variant,
                &r.value,
                &r.applicability,
                &r.oracle_max_modulus,
                &r.verdict,
                &r.margin,
                &r.re_lo,
                &r.re_hi,
                &r.im_lo,
                &r.im_hi,
            ];
            out.push_str(&fields.map(|f| f.as_str()).join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let rec = self.records(TEXT_DIGITS);
        let mut out = String::new();
        let _ = writeln!(out, "p(z) = {}", rec.polynomial);
        if !rec.oracle_max_modulus.is_empty() {
            let _ = writeln!(out, "largest zero modulus: {}", rec.oracle_max_modulus);
        }
        if !rec.oracle_error.is_empty() {
            let _ = writeln!(out, "oracle failed: {}", rec.oracle_error);
        }
        let _ = writeln!(
            out,
            "{:<18} {:<9} {:>16} {:<12} {:>4} {:<9} notes",
            "method", "variant", "value", "status", "rank", "verdict"
        );
        for r in &rec.rows {
            let mut notes = r.notes.clone();
            if !r.re_hi.is_empty() {
                let extents = format!("[{}, {}] x [{}, {}]", r.re_lo, r.re_hi, r.im_lo, r.im_hi);
                notes = if notes.is_empty() {
                    extents
                } else {
                    format!("{extents}; {notes}")
                };
            }
            let _ = writeln!(
                out,
                "{:<18} {:<9} {:>16} {:<12} {:>4} {:<9} {}",
                r.method,
                r.variant,
                if r.value.is_empty() { "-" } else { &r.value },
                r.applicability,
                r.rank,
                r.verdict,
                notes
            );
        }
        out
    }
}

/// Parses a JSON report produced by [`Report::to_json`].
pub fn parse_json_report(text: &str) -> Result<ReportRecord> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        token: "report".into(),
        reason: e.to_string(),
    })
}

/// Parses CSV produced by [`Report::to_csv`] into `(header, rows)`.
pub fn parse_csv_report(text: &str) -> Result<Vec<Vec<String>>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == Report::CSV_HEADER => {}
        other => {
            return Err(Error::Parse {
                token: other.unwrap_or("").to_string(),
                reason: "unexpected CSV header".into(),
            })
        }
    }
    Ok(lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect())
}

/// MW status of `p` without computing anything else.
pub fn mw_status(p: &Polynomial, strict: bool) -> Result<MwStatus> {
    Ok(mw_bound(p, strict)?.1.status)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table1() -> Polynomial {
        Polynomial::parse("1, 5/4, 4/3, 1, 2, 3, 4").unwrap()
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(5.0, 10), "5.000000000");
        assert_eq!(format_sig(5.8600578306, 10), "5.860057831");
        assert_eq!(format_sig(12.583333333333, 10), "12.58333333");
        assert_eq!(format_sig(0.67211757299, 10), "0.6721175730");
        assert_eq!(format_sig(9.9999999999, 10), "10.00000000");
        assert_eq!(format_sig(0.0, 12), "0");
        assert_eq!(format_sig(1.5e-7, 3), "1.50e-7");
    }

    #[test]
    fn corollary1_is_tightest_on_table_one() {
        let mut opts = CompareOptions::default();
        opts.methods = parse_methods(
            "cauchy,carmichael-mason,montel,fujii-kubo,abdurakhmanov,linden,kittaneh,abu-omar-kittaneh,al-dolat,corollary1",
        )
        .unwrap();
        opts.linden = LindenVariant::Table;
        opts.kittaneh = KittanehVariant::PlusOne;
        let rep = run_compare(&table1(), &opts);
        assert_eq!(rep.row(Method::Corollary1).unwrap().rank, Some(1));
    }

    #[test]
    fn odd_degree_reduction_and_refusal() {
        let p = Polynomial::parse("1, 0, 1, 0, 1, 0").unwrap();
        let mut opts = CompareOptions::default();
        opts.methods = vec![Method::Corollary1, Method::Cauchy];
        let rep = run_compare(&p, &opts);
        let row = rep.row(Method::Corollary1).unwrap();
        assert!(row.value.is_some());
        assert!(row.notes.contains("p(z)/z"));

        let q = Polynomial::parse("1, 0, 1, 0, 1, 1").unwrap();
        let rep = run_compare(&q, &opts);
        let row = rep.row(Method::Corollary1).unwrap();
        assert_eq!(row.applicability, Applicability::Refused);
        assert!(row.value.is_none());
    }

    #[test]
    fn oracle_verdicts_attach() {
        let mut opts = CompareOptions::default();
        opts.oracle = true;
        let rep = run_compare(&table1(), &opts);
        let roots = rep.oracle.as_ref().unwrap();
        assert!((roots.max_modulus - 1.266_287_017_9).abs() < 1e-9);
        assert!(rep.row(Method::Cauchy).unwrap().verdict.unwrap().holds());
        assert!(rep
            .row(Method::HermitianRect)
            .unwrap()
            .verdict
            .unwrap()
            .holds());
    }

    #[test]
    fn json_round_trip() {
        let mut opts = CompareOptions::default();
        opts.oracle = true;
        let rep = run_compare(&table1(), &opts);
        let json = rep.to_json();
        let back = parse_json_report(&json).unwrap();
        assert_eq!(back, rep.records(MACHINE_DIGITS));
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), json);
    }

    #[test]
    fn csv_shape() {
        let mut opts = CompareOptions::default();
        opts.oracle = true;
        let rep = run_compare(&table1(), &opts);
        let rows = parse_csv_report(&rep.to_csv()).unwrap();
        assert_eq!(rows.len(), rep.rows.len());
        assert!(rows.iter().all(|r| r.len() == 11));
        let cauchy = rows.iter().find(|r| r[0] == "cauchy").unwrap();
        assert_eq!(cauchy[2], "5.00000000000");
    }

    #[test]
    fn config_then_flags() {
        let mut opts = CompareOptions::default();
        opts.apply_config(
            "# defaults\nlinden = table\nkittaneh=plus_one\nalpha=0.25\nstrict_mw=true\n",
        )
        .unwrap();
        assert_eq!(opts.linden, LindenVariant::Table);
        assert_eq!(opts.kittaneh, KittanehVariant::PlusOne);
        assert_eq!(opts.alpha, 0.25);
        assert!(opts.strict_mw);
        opts.set_variant("linden=printed").unwrap();
        assert_eq!(opts.linden, LindenVariant::Printed);
        assert!(opts.apply_config("alpha=2").is_err());
        assert!(opts.apply_config("bogus=1").is_err());
        assert!(opts.set_variant("cauchy=table").is_err());
    }

    #[test]
    fn strict_mw_refusal_is_visible() {
        let h1 = Polynomial::parse("1, 0, 1/6, 0, 1/5, 0, 1/4").unwrap();
        let mut opts = CompareOptions::default();
        opts.methods = vec![Method::Mw];
        opts.strict_mw = true;
        assert!(run_compare(&h1, &opts).mw_refused());
        opts.strict_mw = false;
        assert!(!run_compare(&h1, &opts).mw_refused());
    }
}
