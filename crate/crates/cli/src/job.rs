//! Job documents and their execution.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use jetres_core::exactalg::{MultiPoly, Rational, VarContext};
use jetres_core::ggl::{
    ample_condition, b0, build_intersection_polynomial, canonical_bound, estimate_checks_with,
    euler_characteristic_with, expansion_diagnostics, fujiwara_certificate, positive_at, GGLConfig, Series,
    LEMMA_DEFECT_CAP,
};
use jetres_core::localization::fibre_integral_fixed_points;
use jetres_core::residue::{
    fibre_integral_residue, hypersurface_integral_dpoly, residue, tautological_context, IntegralRoute,
    ResidueForm, ResidueMethod,
};
use jetres_core::tower::{enumerate_fixed_points, weight_set_closed, weight_set_recursive, Weight};
use jetres_core::{names, Limits};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::json::{self, Number};
use crate::parse::{parse_form, parse_poly};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    FibreIntegral,
    Integral,
    Ggl,
    Diagnostics,
    EulerChar,
    AmpleCheck,
    Residue,
    FixedPoints,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::FibreIntegral,
        Command::Integral,
        Command::Ggl,
        Command::Diagnostics,
        Command::EulerChar,
        Command::AmpleCheck,
        Command::Residue,
        Command::FixedPoints,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::FibreIntegral => "fibre-integral",
            Command::Integral => "integral",
            Command::Ggl => "ggl",
            Command::Diagnostics => "diagnostics",
            Command::EulerChar => "euler-char",
            Command::AmpleCheck => "ample-check",
            Command::Residue => "residue",
            Command::FixedPoints => "fixed-points",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Job(format!("unknown command `{s}`")))
    }
}

/// One unit of work: a command and its parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Job {
    pub command: Command,
    pub params: Map<String, Value>,
}

impl Job {
    pub fn new(command: Command) -> Self {
        Job {
            command,
            params: Map::new(),
        }
    }

    /// Reads a job document; its `command`, when present, must match `command`.
    ///
    /// Parameters sit under `params`, or beside `schema_version` and `command`
    /// when there is no `params` object.
    pub fn from_json(text: &str, command: Command) -> Result<Self, CliError> {
        let mut doc: Map<String, Value> = serde_json::from_str(text).map_err(|e| CliError::Job(e.to_string()))?;
        match doc.remove("schema_version") {
            Some(Value::Number(v)) if v.as_u64() == Some(u64::from(SCHEMA_VERSION)) => {}
            Some(v) => {
                return Err(CliError::Job(format!(
                    "unsupported schema_version {v}, expected {SCHEMA_VERSION}"
                )))
            }
            None => return Err(CliError::Job("missing field `schema_version`".into())),
        }
        match doc.remove("command") {
            Some(Value::String(c)) if c.parse::<Command>()? == command => {}
            Some(c) => return Err(CliError::Job(format!("job is for {c}, not `{command}`"))),
            None => {}
        }
        let params = match doc.remove("params") {
            Some(Value::Object(p)) if doc.is_empty() => p,
            Some(Value::Object(_)) => {
                let extra: Vec<&String> = doc.keys().collect();
                return Err(CliError::Job(format!("unknown top-level fields {extra:?}")));
            }
            Some(_) => return Err(CliError::Job("`params` must be an object".into())),
            None => doc,
        };
        Ok(Job { command, params })
    }

    /// Reads a job document that names its own command.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Value = serde_json::from_str(text).map_err(|e| CliError::Job(e.to_string()))?;
        let command = doc
            .get("command")
            .and_then(Value::as_str)
            .ok_or_else(|| CliError::Job("missing field `command`".into()))?
            .parse()?;
        Self::from_json(text, command)
    }

    /// Sets `key` from `key=value`; the value is read as JSON when possible, else as a string.
    pub fn set(&mut self, assignment: &str) -> Result<(), CliError> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::Job(format!("expected KEY=VALUE, got `{assignment}`")))?;
        let value = serde_json::from_str(value).unwrap_or_else(|_| Value::String(value.to_string()));
        self.params.insert(key.trim().to_string(), value);
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub verify: bool,
    pub limits: Limits,
    /// Overrides the truncation budget of `euler-char`.
    pub budget: Option<usize>,
}

/// Outcome of a job that ran to completion.
#[derive(Clone, Debug)]
pub struct Output {
    /// Deterministic result document.
    pub document: Value,
    /// False when `--verify` found a disagreement.
    pub verified: bool,
    pub elapsed: Duration,
}

/// Document written when a job fails.
pub fn error_document(command: Command, err: &CliError) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command.name(),
        "error": { "code": err.code(), "message": err.to_string() },
    })
}

struct Verification {
    requested: bool,
    checks: Vec<Value>,
}

impl Verification {
    fn new(requested: bool) -> Self {
        Verification {
            requested,
            checks: Vec::new(),
        }
    }

    fn record(&mut self, name: impl Into<String>, agrees: bool) {
        self.checks.push(json!({ "check": name.into(), "agrees": agrees }));
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c["agrees"] == Value::Bool(true))
    }

    fn to_json(&self) -> Value {
        let status = if !self.requested {
            "not_requested"
        } else if self.passed() {
            "passed"
        } else {
            "failed"
        };
        json!({ "status": status, "checks": self.checks })
    }
}

struct Context<'a> {
    opts: &'a RunOptions,
    verification: Verification,
    budgets: Map<String, Value>,
}

pub fn run_job(job: &Job, opts: &RunOptions) -> Result<Output, CliError> {
    let start = Instant::now();
    let mut cx = Context {
        opts,
        verification: Verification::new(opts.verify),
        budgets: Map::new(),
    };
    cx.budgets.insert("max_points".into(), json!(opts.limits.max_points));
    cx.budgets.insert("max_terms".into(), json!(opts.limits.max_terms));
    let params = Value::Object(job.params.clone());
    let result = match job.command {
        Command::FibreIntegral => fibre_integral(decode(&params)?, &mut cx)?,
        Command::Integral => integral(decode(&params)?, &mut cx)?,
        Command::Ggl => ggl(decode(&params)?, &mut cx)?,
        Command::Diagnostics => diagnostics(decode(&params)?, &mut cx)?,
        Command::EulerChar => euler_char(decode(&params)?, &mut cx)?,
        Command::AmpleCheck => ample_check(decode(&params)?)?,
        Command::Residue => residue_command(decode(&params)?, &mut cx)?,
        Command::FixedPoints => fixed_points(decode(&params)?, &mut cx)?,
    };
    let document = json!({
        "schema_version": SCHEMA_VERSION,
        "command": job.command.name(),
        "params": params,
        "result": result,
        "budgets": cx.budgets,
        "verification": cx.verification.to_json(),
    });
    Ok(Output {
        document,
        verified: cx.verification.passed(),
        elapsed: start.elapsed(),
    })
}

fn decode<T: DeserializeOwned>(params: &Value) -> Result<T, CliError> {
    serde_json::from_value(params.clone()).map_err(|e| CliError::Job(e.to_string()))
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
enum FibreMethod {
    #[default]
    FixedPoint,
    ResidueExpand,
    ResidueStepwise,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
enum Method {
    #[default]
    Expand,
    Stepwise,
}

impl Method {
    fn engine(self) -> ResidueMethod {
        match self {
            Method::Expand => ResidueMethod::Expand,
            Method::Stepwise => ResidueMethod::Stepwise,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
enum Route {
    #[default]
    Hypersurface,
    Segre,
}

impl Route {
    fn engine(self) -> IntegralRoute {
        match self {
            Route::Hypersurface => IntegralRoute::Hypersurface,
            Route::Segre => IntegralRoute::Segre,
        }
    }
}

fn other_route(r: IntegralRoute) -> IntegralRoute {
    match r {
        IntegralRoute::Hypersurface => IntegralRoute::Segre,
        IntegralRoute::Segre => IntegralRoute::Hypersurface,
    }
}

fn rationals(v: &[Number]) -> Result<Vec<Rational>, CliError> {
    v.iter().map(Number::rational).collect()
}

fn integers(v: &[Number]) -> Result<Vec<BigInt>, CliError> {
    v.iter().map(Number::integer).collect()
}

/// `n` distinct rationals drawn from a seeded stream.
fn seeded_lambdas(n: usize, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Rational> = Vec::new();
    while out.len() < n {
        let l = Rational::new(
            BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000)),
            BigInt::from(rng.gen_range(1i64..=97)),
        );
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

fn check_dims(n: usize, k: usize) -> Result<(), CliError> {
    if n < 1 || k < 1 {
        return Err(CliError::Job(format!("need n >= 1 and k >= 1, got n={n}, k={k}")));
    }
    Ok(())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FibreParams {
    n: usize,
    k: usize,
    #[serde(alias = "P")]
    poly: String,
    #[serde(default)]
    method: FibreMethod,
    lambdas: Option<Vec<Number>>,
    #[serde(default)]
    lambda_seed: u64,
}

fn fibre_integral(p: FibreParams, cx: &mut Context) -> Result<Value, CliError> {
    check_dims(p.n, p.k)?;
    let ctx = tautological_context(p.k);
    let poly = parse_poly(&p.poly, &ctx)?;
    let lambdas = match &p.lambdas {
        Some(l) => rationals(l)?,
        None => seeded_lambdas(p.n, p.lambda_seed),
    };
    let limits = &cx.opts.limits;
    let fixed = || fibre_integral_fixed_points(p.n, p.k, &poly, &lambdas, limits);
    let by_residue = |m| fibre_integral_residue(p.n, p.k, &poly, &lambdas, m, limits);
    let (value, degree_matched) = match p.method {
        FibreMethod::FixedPoint => {
            let r = fixed()?;
            (r.value, r.degree_matched)
        }
        FibreMethod::ResidueExpand => (by_residue(ResidueMethod::Expand)?, fixed_degree_matches(&poly, p.n, p.k)),
        FibreMethod::ResidueStepwise => (by_residue(ResidueMethod::Stepwise)?, fixed_degree_matches(&poly, p.n, p.k)),
    };
    if cx.opts.verify {
        let dual: Vec<(&str, MultiPoly)> = vec![
            ("fixed-point", fixed()?.value),
            ("residue-expand", by_residue(ResidueMethod::Expand)?),
            ("residue-stepwise", by_residue(ResidueMethod::Stepwise)?),
        ];
        for (name, v) in dual {
            cx.verification.record(name, v == value);
        }
    }
    Ok(json!({
        "value": json::poly(&value),
        "degree_matched": degree_matched,
        "lambdas": lambdas.iter().map(json::rational).collect::<Vec<_>>(),
    }))
}

fn fixed_degree_matches(poly: &MultiPoly, n: usize, k: usize) -> bool {
    let grading = jetres_core::localization::tautological_grading(poly.ctx(), k);
    poly.is_zero() || poly.homogeneous_degree(&grading) == Some((k * (n - 1)) as u32)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IntegralParams {
    n: usize,
    k: usize,
    #[serde(alias = "P")]
    poly: String,
    #[serde(default)]
    route: Route,
    #[serde(default)]
    method: Method,
    d: Option<Number>,
}

fn integral(p: IntegralParams, cx: &mut Context) -> Result<Value, CliError> {
    check_dims(p.n, p.k)?;
    let ctx = tautological_context(p.k);
    let poly = parse_poly(&p.poly, &ctx)?;
    let limits = &cx.opts.limits;
    let (route, method) = (p.route.engine(), p.method.engine());
    let value = hypersurface_integral_dpoly(p.n, p.k, &poly, route, method, limits)?;
    if cx.opts.verify {
        let other = hypersurface_integral_dpoly(p.n, p.k, &poly, other_route(route), method.other(), limits)?;
        cx.verification.record(format!("{:?} route, {:?} method", other_route(route), method.other()), other == value);
    }
    let mut out = json!({ "integral": json::dpoly(&value) });
    if let Some(d) = symbolic_or(&p.d)? {
        out["at_d"] = json!({ "d": json::rational(&d), "value": json::rational(&value.eval(&d)) });
    }
    Ok(out)
}

fn symbolic_or(d: &Option<Number>) -> Result<Option<Rational>, CliError> {
    match d {
        None => Ok(None),
        Some(Number::Text(s)) if s == "symbolic" => Ok(None),
        Some(n) => n.rational().map(Some),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GglParams {
    n: usize,
    k: Option<usize>,
    a: Option<Vec<Number>>,
    delta: Option<Number>,
    bound: Option<Number>,
    #[serde(default)]
    route: Route,
    #[serde(default)]
    method: Method,
}

fn config(n: usize, k: Option<usize>, a: &Option<Vec<Number>>, delta: &Option<Number>) -> Result<GGLConfig, CliError> {
    let canonical = GGLConfig::canonical(n)?;
    let a = match a {
        Some(a) => integers(a)?,
        None => canonical.a.clone(),
    };
    let k = k.unwrap_or(a.len());
    let delta = match delta {
        Some(d) => d.rational()?,
        None => canonical.delta.clone(),
    };
    Ok(GGLConfig::new(n, k, a, delta)?)
}

fn config_json(cfg: &GGLConfig) -> Value {
    json!({
        "n": cfg.n,
        "k": cfg.k,
        "a": cfg.a.iter().map(json::bigint).collect::<Vec<_>>(),
        "delta": json::rational(&cfg.delta),
    })
}

fn ggl(p: GglParams, cx: &mut Context) -> Result<Value, CliError> {
    let cfg = config(p.n, p.k, &p.a, &p.delta)?;
    let limits = &cx.opts.limits;
    let (route, method) = (p.route.engine(), p.method.engine());
    let poly = build_intersection_polynomial(&cfg, route, method, limits)?;
    if cx.opts.verify {
        let other = build_intersection_polynomial(&cfg, other_route(route), method.other(), limits)?;
        cx.verification.record(format!("{:?} route, {:?} method", other_route(route), method.other()), other.i == poly.i);
    }
    let bound = match &p.bound {
        Some(b) => b.rational()?,
        None => Rational::from_integer(canonical_bound(cfg.n)),
    };
    let certified = fujiwara_certificate(&poly.p, &bound)?;
    let threshold = &bound * Rational::from_integer(2.into());
    let samples: Vec<Value> = [1, 2, 10, 1000]
        .iter()
        .map(|&m| {
            let d = if m == 1 {
                threshold.floor() + Rational::from_integer(1.into())
            } else {
                &threshold * Rational::from_integer(m.into())
            };
            json!({ "d": json::rational(&d), "positive": positive_at(&poly.p, &d) })
        })
        .collect();
    let mut out = json!({
        "config": config_json(&cfg),
        "i": json::dpoly(&poly.i),
        "p": json::dpoly(&poly.p),
        "bound": json::rational(&bound),
        "certified": certified,
        "certified_beyond": json::rational(&threshold),
        "samples": samples,
        "ample": ample_condition(&cfg.a)?.to_string(),
    });
    if cfg.k == cfg.n {
        out["b0"] = json::bigint(&b0(cfg.n, &cfg.a)?);
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagnosticsParams {
    n: usize,
    a: Option<Vec<Number>>,
    delta: Option<Number>,
    defect_cap: Option<i64>,
}

fn diagnostics(p: DiagnosticsParams, cx: &mut Context) -> Result<Value, CliError> {
    let cfg = config(p.n, Some(p.n), &p.a, &p.delta)?;
    let cap = p.defect_cap.unwrap_or(LEMMA_DEFECT_CAP);
    cx.budgets.insert("defect_cap".into(), json!(cap));
    let limits = &cx.opts.limits;
    let poly = build_intersection_polynomial(&cfg, IntegralRoute::Hypersurface, ResidueMethod::Expand, limits)?;
    let table = expansion_diagnostics(&cfg, cap, limits)?;
    let report = estimate_checks_with(&cfg, &poly, &table)?;
    if cx.opts.verify {
        let other = build_intersection_polynomial(&cfg, IntegralRoute::Segre, ResidueMethod::Stepwise, limits)?;
        cx.verification.record("coefficient route against Segre route, Stepwise method", table.coefficient_route() == other.p);
    }
    let sizes: Map<String, Value> = [
        ("A0", Series::A0),
        ("A1", Series::A1),
        ("A2", Series::A2),
        ("A", Series::A),
        ("B", Series::B),
    ]
    .into_iter()
    .map(|(name, s)| (name.to_string(), json!(table.series(s).len())))
    .collect();
    let findings: Vec<Value> = report
        .findings
        .iter()
        .map(|f| json!({ "name": f.name, "holds": f.holds, "detail": f.detail }))
        .collect();
    Ok(json!({
        "config": config_json(&cfg),
        "p": json::dpoly(&report.p),
        "b0": json::bigint(&report.b0),
        "coefficients": sizes,
        "findings": findings,
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EulerParams {
    n: usize,
    a: Vec<Number>,
    budget: Option<usize>,
    #[serde(default)]
    method: Method,
}

fn euler_char(p: EulerParams, cx: &mut Context) -> Result<Value, CliError> {
    let a = integers(&p.a)?;
    let budget = cx.opts.budget.or(p.budget);
    let limits = &cx.opts.limits;
    let method = p.method.engine();
    let chi = euler_characteristic_with(p.n, &a, budget, method, limits)?;
    cx.budgets.insert("truncation".into(), json!(chi.budget));
    cx.budgets.insert("stability_check".into(), json!(chi.budget + jetres_core::ggl::STABILITY_STEP));
    if !chi.stable {
        return Err(CliError::Unstable(format!(
            "value changes between budgets {} and {}",
            chi.budget,
            chi.budget + jetres_core::ggl::STABILITY_STEP
        )));
    }
    if cx.opts.verify {
        let other = euler_characteristic_with(p.n, &a, Some(chi.budget), method.other(), limits)?;
        cx.verification.record(format!("{:?} method", method.other()), other.value == chi.value);
    }
    Ok(json!({ "chi": json::dpoly(&chi.value), "stable": chi.stable }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AmpleParams {
    a: Vec<Number>,
}

fn ample_check(p: AmpleParams) -> Result<Value, CliError> {
    let a = integers(&p.a)?;
    Ok(json!({ "classification": ample_condition(&a)?.to_string() }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ResidueParams {
    form: String,
    k: Option<usize>,
    #[serde(default)]
    method: Method,
    #[serde(default)]
    constants: Vec<String>,
}

/// Largest `i` with `z<i>` or `u<i>` appearing as an identifier.
fn infer_depth(text: &str) -> usize {
    text.split(|c: char| !c.is_ascii_alphanumeric() && c != '_')
        .filter_map(|w| w.strip_prefix(names::Z).or_else(|| w.strip_prefix(names::U)))
        .filter_map(|rest| rest.parse::<usize>().ok())
        .max()
        .unwrap_or(0)
}

fn residue_command(p: ResidueParams, cx: &mut Context) -> Result<Value, CliError> {
    let k = p.k.unwrap_or_else(|| infer_depth(&p.form));
    if k == 0 {
        return Err(CliError::Job("the form uses no residue variables z1..zk".into()));
    }
    let mut list: Vec<String> = (1..=k).map(names::z).collect();
    list.extend(p.constants.iter().cloned());
    let ctx = VarContext::new(list)?;
    let z_vars: Vec<usize> = (0..k).collect();
    let parsed = parse_form(&p.form, &ctx, &z_vars)?;
    let form = ResidueForm::from_polys(parsed.numerator, &parsed.factors, z_vars)?;
    let limits = &cx.opts.limits;
    let method = p.method.engine();
    let value = residue(&form, method, limits)?;
    if cx.opts.verify {
        let other = residue(&form, method.other(), limits)?;
        cx.verification.record(format!("{:?} method", method.other()), other == value);
    }
    Ok(json!({ "k": k, "value": json::poly(&value) }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FixedPointParams {
    n: usize,
    k: usize,
    prefix: Option<Vec<Vec<i64>>>,
}

fn weights_json(ws: &[Weight]) -> Value {
    json!(ws.iter().map(|w| w.coeffs().to_vec()).collect::<Vec<_>>())
}

fn fixed_points(p: FixedPointParams, cx: &mut Context) -> Result<Value, CliError> {
    check_dims(p.n, p.k)?;
    let points = enumerate_fixed_points(p.n, p.k, cx.opts.limits.max_points)?;
    let list: Vec<Value> = points
        .iter()
        .map(|fp| json!({ "weights": weights_json(fp.weights()), "tangent": weights_json(&fp.tangent_weights()) }))
        .collect();
    let mut out = json!({ "count": points.len(), "points": list });
    if let Some(prefix) = &p.prefix {
        let prefix: Vec<Weight> = prefix.iter().map(|w| Weight(w.clone())).collect();
        let recursive = weight_set_recursive(&prefix, p.n)?;
        out["weight_set"] = weights_json(recursive.elements());
        if cx.opts.verify {
            let closed = weight_set_closed(&prefix, p.n)?;
            cx.verification.record("closed form", closed == recursive);
        }
    }
    Ok(out)
}

/// Pretty JSON with a trailing newline.
pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> Result<Value, CliError> {
        let job = Job::parse(text)?;
        let opts = RunOptions {
            verify: true,
            ..RunOptions::default()
        };
        let out = run_job(&job, &opts)?;
        assert!(out.verified);
        Ok(out.document)
    }

    #[test]
    fn nested_and_flat_params_agree() {
        let nested = run(r#"{"schema_version":1,"command":"ample-check","params":{"a":[9,3,1]}}"#).unwrap();
        let flat = run(r#"{"schema_version":1,"command":"ample-check","a":[9,3,1]}"#).unwrap();
        assert_eq!(nested, flat);
        assert_eq!(nested["result"]["classification"], "relatively_ample");
    }

    #[test]
    fn rejects_bad_jobs() {
        for text in [
            r#"{"command":"ample-check","a":[1]}"#,
            r#"{"schema_version":2,"command":"ample-check","a":[1]}"#,
            r#"{"schema_version":1,"command":"nope"}"#,
            r#"{"schema_version":1,"command":"ample-check","a":[1],"b":2}"#,
            r#"{"schema_version":1,"command":"integral","n":2,"k":1,"poly":"u1 + w"}"#,
        ] {
            let err = run(text).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{text}: {err}");
        }
    }

    #[test]
    fn resource_caps_are_reported() {
        let job = Job::parse(r#"{"schema_version":1,"command":"fixed-points","n":3,"k":4}"#).unwrap();
        let opts = RunOptions {
            limits: Limits {
                max_points: 10,
                ..Limits::default()
            },
            ..RunOptions::default()
        };
        let err = run_job(&job, &opts).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert_eq!(err.code(), "resource_limit");
    }

    #[test]
    fn set_overrides() {
        let mut job = Job::new(Command::Integral);
        job.set("n=2").unwrap();
        job.set("poly=u1^2").unwrap();
        assert_eq!(job.params["n"], json!(2));
        assert_eq!(job.params["poly"], json!("u1^2"));
        assert!(job.set("oops").is_err());
    }

    #[test]
    fn depth_is_inferred() {
        assert_eq!(infer_depth("1/((z1-z2)*(2*z1-z3))"), 3);
        assert_eq!(infer_depth("1/u2"), 2);
    }

    #[test]
    fn fibre_integral_methods_agree() {
        let doc = run(r#"{"schema_version":1,"command":"fibre-integral","n":2,"k":3,"poly":"u1*u2*u3","lambda_seed":7}"#).unwrap();
        assert_eq!(doc["result"]["degree_matched"], json!(true));
        assert_eq!(doc["verification"]["checks"].as_array().unwrap().len(), 3);
    }
}
