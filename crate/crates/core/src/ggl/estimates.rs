use num_bigint::BigInt;
use num_traits::Signed;

use super::certificate::{b0, defect, lambda_plus_member};
use super::config::GGLConfig;
use super::diagnostics::{b_closed_form, expansion_diagnostics, CoeffKey, CoefficientTable, Series};
use super::intersection::{build_intersection_polynomial, IntersectionPolynomial};
use crate::error::Result;
use crate::exactalg::{DPoly, Rational};
use crate::residue::{IntegralRoute, ResidueMethod};
use crate::Limits;

/// Defect bound for the coefficient lemmas.
pub const LEMMA_DEFECT_CAP: i64 = 4;
/// Defect bound for the closed-form comparison of `B`.
pub const CLOSED_FORM_DEFECT_CAP: i64 = 3;
const MAX_LISTED: usize = 5;

/// One numeric comparison; `holds = false` is a finding, not an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Finding {
    fn new(name: impl Into<String>, holds: bool, detail: impl Into<String>) -> Self {
        Finding {
            name: name.into(),
            holds,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EstimateReport {
    pub config: GGLConfig,
    pub p: DPoly,
    pub b0: BigInt,
    pub findings: Vec<Finding>,
}

impl EstimateReport {
    pub fn all_hold(&self) -> bool {
        self.findings.iter().all(|f| f.holds)
    }

    pub fn finding(&self, name: &str) -> Option<&Finding> {
        self.findings.iter().find(|f| f.name == name)
    }
}

/// Recomputes `p`, `B_0` and the expansion coefficients for the canonical
/// configuration and compares every displayed estimate.
pub fn estimate_checks(n: usize, limits: &Limits) -> Result<EstimateReport> {
    let cfg = GGLConfig::canonical(n)?;
    let poly = build_intersection_polynomial(&cfg, IntegralRoute::Hypersurface, ResidueMethod::Expand, limits)?;
    let table = expansion_diagnostics(&cfg, LEMMA_DEFECT_CAP, limits)?;
    estimate_checks_with(&cfg, &poly, &table)
}

/// [`estimate_checks`] on precomputed data.
pub fn estimate_checks_with(
    cfg: &GGLConfig,
    poly: &IntersectionPolynomial,
    table: &CoefficientTable,
) -> Result<EstimateReport> {
    let n = cfg.n;
    let p = &poly.p;
    let b0_value = b0(n, &cfg.a)?;
    let b0r = Rational::from_integer(b0_value.clone());
    let pn = p.coeff(n);
    let mut findings = Vec::new();

    findings.push(Finding::new(
        "p_n > B0/2",
        pn > &b0r / Rational::from_integer(2.into()),
        format!("p_n = {pn}, B0 = {b0_value}"),
    ));

    let base = BigInt::from(n);
    for l in 1..=n {
        let bound = Rational::from_integer(BigInt::from(3) * base.pow((8 * l * n) as u32)) * &pn;
        let c = p.coeff(n - l);
        findings.push(Finding::new(
            format!("|p_(n-{l})| < 3 n^(8*{l}*n) p_n"),
            c.abs() < bound,
            format!("p_(n-{l}) = {c}, bound = {bound}"),
        ));
    }

    let route = table.coefficient_route();
    findings.push(Finding::new(
        "coefficient route equals residue pipeline",
        &route == p,
        format!("route = {route}, pipeline = {p}"),
    ));

    let zero = CoeffKey::new(vec![0; n], 0, 0);
    let top = CoeffKey::new(vec![-1; n], 0, n as u32);
    let product = table.get(Series::B, &zero) * table.get(Series::A, &top);
    findings.push(Finding::new(
        "B_(z^0) A_((dh)^n / z^1) = B0",
        product == b0r,
        format!("product = {product}, B0 = {b0_value}"),
    ));

    let outside: Vec<&CoeffKey> = table
        .a
        .iter()
        .filter(|(k, _)| k.h == 0 && !lambda_plus_member(&k.z))
        .map(|(k, _)| k)
        .collect();
    findings.push(Finding::new(
        "A support in Lambda+",
        outside.is_empty(),
        listing(&outside, table.a.len()),
    ));

    for (label, name) in [(Series::A1, "A1"), (Series::A2, "A2")] {
        findings.push(lemma_bound(table, label, name, n));
    }
    findings.push(h_lemma_bound(table, n));
    findings.push(closed_form_check(cfg, table));

    Ok(EstimateReport {
        config: cfg.clone(),
        p: p.clone(),
        b0: b0_value,
        findings,
    })
}

fn listing(bad: &[&CoeffKey], total: usize) -> String {
    if bad.is_empty() {
        return format!("{total} entries checked");
    }
    let shown: Vec<String> = bad.iter().take(MAX_LISTED).map(|k| format!("{k:?}")).collect();
    format!("{} of {total} entries violate, e.g. {}", bad.len(), shown.join(", "))
}

fn n_pow(n: usize, e: i64) -> Rational {
    let base = Rational::from_integer(BigInt::from(n));
    if e >= 0 {
        base.pow(e as i32)
    } else {
        base.recip().pow((-e) as i32)
    }
}

/// `|A_i| < n^(3 D(i))` for `sum i = 0`, `0 < D(i) <= 4`, h-free entries.
///
/// At `i = 0` the coefficient is 1 and the bound is 1, so the strict
/// inequality is only meaningful away from the origin.
fn lemma_bound(table: &CoefficientTable, label: Series, name: &str, n: usize) -> Finding {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (k, c) in table.series(label) {
        let d = defect(&k.z);
        if k.h != 0 || k.dh != 0 || k.z.iter().sum::<i64>() != 0 || d <= 0 || d > LEMMA_DEFECT_CAP {
            continue;
        }
        checked += 1;
        if c.abs() >= n_pow(n, 3 * d) {
            bad.push(k);
        }
    }
    Finding::new(
        format!("|{name}_i| < n^(3D(i))"),
        bad.is_empty(),
        listing(&bad, checked),
    )
}

/// `|A2_{z^i h^s}| < n^(3 D(i) + s)` for `sum i = -s`, `s > 0`, `D(i) <= 4`.
fn h_lemma_bound(table: &CoefficientTable, n: usize) -> Finding {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (k, c) in &table.a2 {
        let d = defect(&k.z);
        let s = k.h as i64;
        if s == 0 || k.dh != 0 || k.z.iter().sum::<i64>() != -s || d > LEMMA_DEFECT_CAP {
            continue;
        }
        checked += 1;
        if c.abs() >= n_pow(n, 3 * d + s) {
            bad.push(k);
        }
    }
    Finding::new("|A2_(z^i h^s)| < n^(3D(i)+s)", bad.is_empty(), listing(&bad, checked))
}

/// Every `B_{z^i h^s}` with `|D(i)| <= 3` equals its closed form.
fn closed_form_check(cfg: &GGLConfig, table: &CoefficientTable) -> Finding {
    let n = cfg.n as i64;
    let mut checked = 0;
    let mut bad = Vec::new();
    let keys = exponent_box(cfg.n, -n, n * n);
    for s in 0..=cfg.n as u32 {
        for z in &keys {
            if z.iter().sum::<i64>() != -(s as i64) || defect(z).abs() > CLOSED_FORM_DEFECT_CAP {
                continue;
            }
            checked += 1;
            let key = CoeffKey::new(z.clone(), s, 0);
            if table.get(Series::B, &key) != b_closed_form(cfg, z, s) {
                bad.push(key);
            }
        }
    }
    let bad: Vec<&CoeffKey> = bad.iter().collect();
    Finding::new("B_(z^i h^s) closed form", bad.is_empty(), listing(&bad, checked))
}

/// All integer vectors of length `n` with entries in `lo..=hi`.
fn exponent_box(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}
