//! Command-line front end: `params`, `dist` and `verify`.
//!
//! Exit codes: 0 success, 1 a comparison failed, 2 invalid parameters,
//! 3 enumeration budget refused.
//!
//! JSON output is deterministic: object keys are sorted and counts are
//! decimal strings. Timings are only included with `--timings`.

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

use crate::closed;
use crate::code::{self, DistTable, Survey, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::field::{primitive_polys, FieldCtx};
use crate::forms::{CodeParams, Family};
use crate::veq;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "goldcode", version, about = "DC-component and rank distributions of Gold-type codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate parameters and show the derived exponents.
    Params(ParamsCmd),
    /// Compute the distribution tables.
    Dist(DistCmd),
    /// Run every cross-check on a parameter set or preset suite.
    Verify(VerifyCmd),
}

#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    #[arg(short = 'm')]
    pub m: u32,
    #[arg(short = 'd', default_value_t = 1)]
    pub d: u32,
    /// Defaults to gcd(m, d).
    #[arg(short = 'e')]
    pub e: Option<u32>,
    #[arg(short = 'k', default_value_t = 2)]
    pub k: u32,
    #[arg(short = 'f', long = "family", default_value = "A", value_parser = parse_family)]
    pub family: Family,
}

impl ParamArgs {
    fn with_family(&self, family: Family) -> CodeParams {
        let e = self.e.unwrap_or_else(|| num_integer::gcd(self.m, self.d));
        CodeParams {
            m: self.m,
            d: self.d,
            e,
            k: self.k,
            family,
        }
    }

    fn params(&self) -> CodeParams {
        self.with_family(self.family)
    }
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Defining polynomial, bit i = coefficient of x^i (decimal, 0x.. or 0b..).
    #[arg(long, value_parser = parse_uint)]
    pub poly: Option<u32>,
    /// Worker threads; 0 uses the available parallelism.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Maximum enumeration size, as an integer or `2^N`.
    #[arg(long, env = "GOLDCODE_BUDGET", value_parser = parse_budget, default_value = "2^30")]
    pub budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Include per-phase wall times (makes output nondeterministic).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Args, Debug)]
pub struct ParamsCmd {
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Args, Debug)]
pub struct DistCmd {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value_t = Mode::Both)]
    pub mode: Mode,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Args, Debug)]
pub struct VerifyCmd {
    #[arg(short = 'm', required_unless_present = "preset")]
    pub m: Option<u32>,
    #[arg(short = 'd', default_value_t = 1)]
    pub d: u32,
    #[arg(short = 'e')]
    pub e: Option<u32>,
    #[arg(short = 'k', default_value_t = 2)]
    pub k: u32,
    /// Comma-separated families to check against each other.
    #[arg(short = 'f', long = "families", alias = "family", value_delimiter = ',', value_parser = parse_family, default_value = "A,B,C")]
    pub families: Vec<Family>,
    #[arg(long, value_enum, conflicts_with = "m")]
    pub preset: Option<Preset>,
    #[command(flatten)]
    pub run: RunArgs,
    /// Corrupt a closed-form constant; the run must then fail.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Enumerate,
    Closed,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// The four reference parameter sets, all families, plus the identity
    /// and robustness suites.
    Desk,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_uint(s: &str) -> std::result::Result<u32, String> {
    let s = s.trim();
    let r = if let Some(h) = s.strip_prefix("0x") {
        u32::from_str_radix(h, 16)
    } else if let Some(b) = s.strip_prefix("0b") {
        u32::from_str_radix(b, 2)
    } else {
        s.parse()
    };
    r.map_err(|e| format!("{s:?}: {e}"))
}

pub fn parse_budget(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim();
    if let Some(exp) = s.strip_prefix("2^") {
        let n: u32 = exp.parse().map_err(|e| format!("{s:?}: {e}"))?;
        return 1u64.checked_shl(n).filter(|_| n < 64).ok_or_else(|| format!("{s:?} overflows"));
    }
    s.parse().map_err(|e| format!("{s:?}: {e}"))
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(err: &Error) -> Outcome {
        let code = match err {
            Error::Budget { .. } => EXIT_BUDGET,
            _ => EXIT_INVALID,
        };
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => Outcome {
            code: if e.use_stderr() { EXIT_INVALID } else { EXIT_OK },
            stdout: if e.use_stderr() { String::new() } else { e.to_string() },
            stderr: if e.use_stderr() { e.to_string() } else { String::new() },
        },
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Params(c) => cmd_params(&c.params.params()),
        Command::Dist(c) => with_pool(c.run.threads, || cmd_dist(&c)),
        Command::Verify(c) => with_pool(c.run.threads, || cmd_verify(&c)),
    }
}

fn with_pool(threads: usize, f: impl FnOnce() -> Outcome + Send) -> Outcome {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            return Outcome {
                code: EXIT_INVALID,
                stdout: String::new(),
                stderr: format!("error: thread pool: {e}\n"),
            }
        }
    };
    pool.install(f)
}

fn to_json_line(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn params_json(p: &CodeParams, poly: Option<u32>) -> Value {
    let mut v = json!({
        "m": p.m,
        "d": p.d,
        "e": p.e,
        "k": p.k,
        "family": p.family.to_string(),
    });
    if let Some(poly) = poly {
        v["poly"] = json!(poly);
    }
    v
}

pub fn cmd_params(p: &CodeParams) -> Outcome {
    match p.validate() {
        Ok(()) => {
            let v = json!({
                "params": params_json(p, None),
                "valid": true,
                "exponents": p.exponents().iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                "decimation_factors": p.decimation_factors(),
                "rank_lower_bound": p.rank_lower_bound(),
                "dc_support": code::dc_support(p).into_iter().collect::<Vec<_>>(),
            });
            Outcome {
                code: EXIT_OK,
                stdout: to_json_line(&v),
                stderr: String::new(),
            }
        }
        Err(err) => {
            let v = json!({
                "params": params_json(p, None),
                "valid": false,
                "error": err.to_string(),
            });
            Outcome {
                code: EXIT_INVALID,
                stdout: to_json_line(&v),
                stderr: format!("error: {err}\n"),
            }
        }
    }
}

/// `(name, expected, actual, match)` rows.
#[derive(Debug, Clone, Default)]
pub struct Comparisons {
    rows: Vec<(String, String, String, bool)>,
}

impl Comparisons {
    pub fn push(&mut self, name: impl Into<String>, expected: impl ToString, actual: impl ToString) {
        let (e, a) = (expected.to_string(), actual.to_string());
        let ok = e == a;
        self.rows.push((name.into(), e, a, ok));
    }

    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.3)
    }

    pub fn failures(&self) -> impl Iterator<Item = &str> {
        self.rows.iter().filter(|r| !r.3).map(|r| r.0.as_str())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|(n, e, a, m)| json!({"name": n, "expected": e, "actual": a, "match": m}))
                .collect(),
        )
    }

    fn csv(&self) -> String {
        let mut s = String::from("name,expected,actual,match\n");
        for (n, e, a, m) in &self.rows {
            s.push_str(&format!("{n},{e},{a},{m}\n"));
        }
        s
    }

    /// Bin-by-bin comparison of an expected and an actual table.
    pub fn tables(&mut self, prefix: &str, expected: &DistTable, actual: &DistTable) {
        let zero = BigUint::default();
        let mut alpha_keys: Vec<_> = expected.alpha.keys().chain(actual.alpha.keys()).copied().collect();
        alpha_keys.sort();
        alpha_keys.dedup();
        for key in alpha_keys {
            self.push(
                format!("{prefix}alpha[{},{:+}]", key.0, key.1),
                expected.alpha.get(&key).unwrap_or(&zero),
                actual.alpha.get(&key).unwrap_or(&zero),
            );
        }
        let mut beta_keys: Vec<_> = expected.beta.keys().chain(actual.beta.keys()).copied().collect();
        beta_keys.sort();
        beta_keys.dedup();
        for r in beta_keys {
            self.push(
                format!("{prefix}beta[{r}]"),
                expected.beta.get(&r).unwrap_or(&zero),
                actual.beta.get(&r).unwrap_or(&zero),
            );
        }
        if expected.balanced.is_some() || actual.balanced.is_some() {
            self.push(
                format!("{prefix}balanced"),
                expected.balanced.clone().unwrap_or_default(),
                actual.balanced.clone().unwrap_or_default(),
            );
        }
    }
}

#[derive(Default)]
struct Timings(BTreeMap<String, u128>);

impl Timings {
    fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let t0 = Instant::now();
        let out = f();
        *self.0.entry(phase.to_string()).or_default() += t0.elapsed().as_millis();
        out
    }

    fn to_json(&self) -> Value {
        json!(self.0)
    }
}

fn closed_for(params: &CodeParams, fault: bool) -> DistTable {
    if fault {
        closed::closed_table_faulty(params)
    } else {
        closed::closed_table(params)
    }
}

fn approx_json(params: &CodeParams) -> Value {
    let b = closed::balanced_closed(params);
    json!({
        "exact": b.exact.to_string(),
        "approx": b.approx.to_string(),
        "relative_error": b.relative_error(params).to_string(),
    })
}

pub fn cmd_dist(c: &DistCmd) -> Outcome {
    match dist_report(c) {
        Ok(o) => o,
        Err(e) => Outcome::error(&e),
    }
}

fn dist_report(c: &DistCmd) -> Result<Outcome> {
    let params = c.params.params();
    params.validate()?;
    let mut timings = Timings::default();
    let mut comparisons = Comparisons::default();

    let (ctx_poly, enumerated) = if c.mode == Mode::Closed {
        (c.run.poly, None)
    } else {
        let ctx = timings.time("field", || FieldCtx::new(params.m, c.run.poly))?;
        let survey = timings.time("enumerate", || code::survey(&params, &ctx, c.run.budget))?;
        (Some(ctx.poly()), Some(survey))
    };
    let closed = (c.mode != Mode::Enumerate).then(|| timings.time("closed_form", || closed_for(&params, c.inject_fault)));

    if let (Some(s), Some(t)) = (&enumerated, &closed) {
        comparisons.tables("", t, &s.table);
        let b = closed::balanced_closed(&params);
        comparisons.push("balanced_closed", &b.exact, s.table.balanced.clone().unwrap_or_default());
    }
    if let Some(s) = &enumerated {
        survey_checks(&mut comparisons, "", &params, s);
    }

    let shown = enumerated.as_ref().map(|s| &s.table).or(closed.as_ref()).expect("one source");
    let status = if comparisons.all_match() { "pass" } else { "fail" };
    let code = if comparisons.all_match() { EXIT_OK } else { EXIT_MISMATCH };

    let stdout = match c.run.format {
        Format::Json => {
            let mut v = shown.counts_json();
            v["params"] = params_json(&params, ctx_poly);
            v["source"] = json!(match c.mode {
                Mode::Enumerate => "enumeration",
                Mode::Closed => "closed_form",
                Mode::Both => "both",
            });
            v["comparisons"] = comparisons.to_json();
            v["status"] = json!(status);
            if closed.is_some() {
                v["balanced_approx"] = approx_json(&params);
            }
            if c.run.timings {
                v["wall_time_ms"] = timings.to_json();
            }
            to_json_line(&v)
        }
        Format::Csv => {
            let mut s = String::from("r,eps,count,source\n");
            for t in enumerated.iter().map(|s| &s.table).chain(closed.iter()) {
                for row in t.csv_rows() {
                    s.push_str(&row);
                    s.push('\n');
                }
            }
            s
        }
    };
    let mut stderr = String::new();
    for f in comparisons.failures() {
        stderr.push_str(&format!("mismatch: {f}\n"));
    }
    Ok(Outcome { code, stdout, stderr })
}

/// Adds the zero-violation and partition checks of one survey.
fn survey_checks(cmp: &mut Comparisons, prefix: &str, params: &CodeParams, s: &Survey) {
    cmp.push(format!("{prefix}dc_support_violations"), 0, s.dc_support_violations());
    cmp.push(format!("{prefix}unbinned_dc_values"), 0, s.unbinned.values().sum::<u64>());
    cmp.push(format!("{prefix}rank_bound_violations"), 0, s.rank_bound_violations);
    cmp.push(format!("{prefix}odd_ranks"), 0, s.odd_ranks);
    cmp.push(format!("{prefix}magnitude_law_violations"), 0, s.magnitude_violations);
    let nonzero = closed::pow2(params.m as u64 * params.k as u64) - 1;
    cmp.push(format!("{prefix}nonzero_codeword_total"), &nonzero, s.table.nonzero_total());
    let tails = closed::pow2(params.m as u64 * (params.k as u64 - 1)) - 1;
    cmp.push(
        format!("{prefix}nonzero_tail_total"),
        tails,
        s.table.beta.values().sum::<BigUint>(),
    );
    let bad = closed::sign_split_violations(&s.table);
    cmp.push(format!("{prefix}sign_split_violations"), 0, bad.len());
}

/// Accumulates checks and informational notes for `verify`.
#[derive(Default)]
pub struct VerifyReport {
    pub comparisons: Comparisons,
    pub notes: Vec<Value>,
    pub tables: Vec<Value>,
    timings: Timings,
}

fn tag(p: &CodeParams) -> String {
    format!("m{}d{}e{}k{}{}", p.m, p.d, p.e, p.k, p.family)
}

/// All checks for one parameter set across the given families.
pub fn verify_params(
    report: &mut VerifyReport,
    base: &CodeParams,
    families: &[Family],
    poly: Option<u32>,
    budget: u64,
    fault: bool,
) -> Result<()> {
    let ctx = FieldCtx::new(base.m, poly)?;
    let mut reference: Option<(Family, DistTable)> = None;
    for &family in families {
        let params = CodeParams { family, ..*base };
        params.validate()?;
        let pre = format!("{}/", tag(&params));
        let closed = report.timings.time("closed_form", || closed_for(&params, fault));
        let bal = closed::balanced_closed(&params);
        report.comparisons.push(
            format!("{pre}closed_balanced_vs_complement"),
            &bal.exact,
            closed.balanced.clone().unwrap_or_default(),
        );
        report.comparisons.push(
            format!("{pre}closed_sign_split_violations"),
            0,
            closed::sign_split_violations(&closed).len(),
        );
        if params.m >= 7 {
            let rel = bal.relative_error_f64(&params);
            report.comparisons.push(format!("{pre}balanced_approx_within_1pct"), true, rel < 0.01);
        }
        report.notes.push(json!({"name": format!("{pre}balanced_approx"), "value": approx_json(&params)}));

        match report.timings.time("enumerate", || code::survey(&params, &ctx, budget)) {
            Ok(s) => {
                report.comparisons.tables(&format!("{pre}closed_vs_enum/"), &closed, &s.table);
                report.comparisons.push(format!("{pre}balanced_closed_vs_enum"), &bal.exact, s.table.balanced.clone().unwrap_or_default());
                survey_checks(&mut report.comparisons, &pre, &params, &s);
                let mut tv = s.table.counts_json();
                tv["params"] = params_json(&params, Some(ctx.poly()));
                report.tables.push(tv);
                match &reference {
                    None => reference = Some((family, s.table.clone())),
                    Some((f0, t0)) => report.comparisons.push(
                        format!("{pre}family_invariance_vs_{f0}"),
                        t0.counts_json().to_string(),
                        s.table.counts_json().to_string(),
                    ),
                }
            }
            Err(Error::Budget { required, .. }) => report.notes.push(json!({
                "name": format!("{pre}enumeration"),
                "value": format!("skipped: {required} codewords exceed budget {budget}"),
            })),
            Err(e) => return Err(e),
        }
        let t0 = Instant::now();
        verify_v_systems(report, &params, &ctx, budget)?;
        *report.timings.0.entry("v_systems".to_string()).or_default() += t0.elapsed().as_millis();
    }
    Ok(())
}

/// Largest `u` whose tuple space `2^(2mu)` fits the brute-force budget.
fn max_tuple_u(m: u32, budget: u64) -> u32 {
    let cap = budget.min(veq::DEFAULT_TUPLE_BUDGET);
    (1..=12).take_while(|&u| (2 * m * u) < 64 && (1u64 << (2 * m * u)) <= cap).last().unwrap_or(0)
}

fn verify_v_systems(report: &mut VerifyReport, params: &CodeParams, ctx: &FieldCtx, budget: u64) -> Result<()> {
    let pre = format!("{}/", tag(params));
    let umax = max_tuple_u(params.m, budget);
    let smax = params.k - 1;
    let cmp = &mut report.comparisons;
    for u in 1..=smax.min(umax) {
        for s in u..=smax {
            let eq = veq::v_set_equal(params, ctx, s, u, budget)?;
            cmp.push(format!("{pre}V_set_equal(s={s},u={u})"), true, eq);
        }
    }
    for s in 1..=smax {
        for u in 1..=smax.min(umax) {
            let eq = veq::elimination_equiv_check(params, ctx, s, u, budget)?;
            cmp.push(format!("{pre}elimination(s={s},u={u})"), true, eq);
        }
    }
    for u in 0..=smax.min(umax) {
        match veq::moment_identity_check(params, ctx, u, budget) {
            Ok(mc) => cmp.push(format!("{pre}moment(u={u})"), mc.rhs, mc.lhs),
            Err(Error::Budget { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let rmax = ((params.n() - 1) / 2).min(umax);
    for u in 1..=rmax {
        let rc = veq::recursion_check(params, ctx, u, budget)?;
        let reading = rc
            .readings
            .iter()
            .find(|r| r.name == veq::READING_CONSTANT_BASE)
            .expect("reading present");
        cmp.push(format!("{pre}recursion(u={u})[{}]", reading.name), &rc.lhs, &reading.rhs);
        report.notes.push(json!({
            "name": format!("{pre}recursion(u={u})"),
            "value": serde_json::to_value(&rc).expect("serializable"),
        }));
    }
    Ok(())
}

/// q-Pascal, symmetry, q-binomial theorem and Möbius inversion.
pub fn verify_identities(report: &mut VerifyReport) {
    let cmp = &mut report.comparisons;
    let mut pascal_bad = 0;
    let mut symmetry_bad = 0;
    for q in [2i64, 4, 16, 64].map(BigInt::from) {
        for n in 1..=10u64 {
            for i in 0..=n {
                let g = closed::gauss_binom(n, i, &q);
                if g != closed::gauss_binom(n, n - i, &q) {
                    symmetry_bad += 1;
                }
                if i >= 1 {
                    let rhs = closed::gauss_binom(n - 1, i - 1, &q)
                        + num_traits::pow(q.clone(), i as usize) * closed::gauss_binom(n - 1, i, &q);
                    if g != rhs {
                        pascal_bad += 1;
                    }
                }
            }
        }
    }
    cmp.push("identities/q_pascal_violations", 0, pascal_bad);
    cmp.push("identities/symmetry_violations", 0, symmetry_bad);
    for q in [4i64, 16, 64] {
        for u in 0..=5 {
            for t in [1i64, 7, -3] {
                let ok = closed::qbinom_theorem_check(u, &BigInt::from(q), &BigInt::from(t));
                cmp.push(format!("identities/q_binomial_theorem(u={u},q={q},t={t})"), true, ok);
            }
        }
        for n in 1..=6 {
            cmp.push(
                format!("identities/moebius(n={n},q={q})"),
                true,
                closed::moebius_check(n, &BigInt::from(q)),
            );
        }
    }
}

/// Distribution independence from the defining polynomial and worker count.
pub fn verify_robustness(report: &mut VerifyReport, params: &CodeParams, budget: u64) -> Result<()> {
    let polys: Vec<u32> = primitive_polys(params.m).take(2).collect();
    let pre = format!("{}/", tag(params));
    let mut rendered = Vec::new();
    for &p in &polys {
        let ctx = FieldCtx::new(params.m, Some(p))?;
        rendered.push(code::survey(params, &ctx, budget)?.table.counts_json().to_string());
    }
    if polys.len() == 2 {
        report.comparisons.push(
            format!("{pre}poly_independence({:#b}_vs_{:#b})", polys[0], polys[1]),
            &rendered[0],
            &rendered[1],
        );
    }
    let ctx = FieldCtx::new(params.m, None)?;
    let mut by_threads = Vec::new();
    for threads in [1usize, 4] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Param(e.to_string()))?;
        let t = pool.install(|| code::survey(params, &ctx, budget))?;
        by_threads.push(t.table.counts_json().to_string());
    }
    report
        .comparisons
        .push(format!("{pre}thread_independence(1_vs_4)"), &by_threads[0], &by_threads[1]);
    Ok(())
}

/// Reference parameter sets `(m, d, e, k)` for `--preset desk`.
pub const DESK_CASES: [(u32, u32, u32, u32); 4] = [(5, 1, 1, 2), (5, 1, 1, 3), (3, 1, 1, 2), (9, 3, 3, 2)];

pub fn cmd_verify(c: &VerifyCmd) -> Outcome {
    let mut report = VerifyReport::default();
    let result = (|| -> Result<Value> {
        let header = match (c.preset, c.m) {
            (Some(Preset::Desk), _) => {
                for (m, d, e, k) in DESK_CASES {
                    let base = CodeParams::new(m, d, e, k, Family::A)?;
                    verify_params(&mut report, &base, &Family::ALL, None, c.run.budget, c.inject_fault)?;
                }
                verify_identities(&mut report);
                for (m, d, e, k) in [(5, 1, 1, 2), (5, 1, 1, 3)] {
                    let p = CodeParams::new(m, d, e, k, Family::A)?;
                    verify_robustness(&mut report, &p, c.run.budget)?;
                }
                json!({"preset": "desk"})
            }
            (None, Some(m)) => {
                let args = ParamArgs {
                    m,
                    d: c.d,
                    e: c.e,
                    k: c.k,
                    family: c.families.first().copied().unwrap_or(Family::A),
                };
                let base = args.params();
                base.validate()?;
                verify_params(&mut report, &base, &c.families, c.run.poly, c.run.budget, c.inject_fault)?;
                verify_identities(&mut report);
                if c.run.poly.is_none() {
                    match verify_robustness(&mut report, &base, c.run.budget) {
                        Ok(()) | Err(Error::Budget { .. }) => {}
                        Err(e) => return Err(e),
                    }
                }
                json!({"params": params_json(&base, c.run.poly), "families": c.families.iter().map(|f| f.to_string()).collect::<Vec<_>>()})
            }
            (None, None) => unreachable!("clap requires -m or --preset"),
        };
        Ok(header)
    })();
    let header = match result {
        Ok(h) => h,
        Err(e) => return Outcome::error(&e),
    };
    let pass = report.comparisons.all_match();
    let stdout = match c.run.format {
        Format::Json => {
            let mut v = header;
            v["comparisons"] = report.comparisons.to_json();
            v["notes"] = Value::Array(report.notes.clone());
            v["tables"] = Value::Array(report.tables.clone());
            v["status"] = json!(if pass { "pass" } else { "fail" });
            if c.run.timings {
                v["wall_time_ms"] = report.timings.to_json();
            }
            to_json_line(&v)
        }
        Format::Csv => report.comparisons.csv(),
    };
    let mut stderr = format!(
        "{} checks, {} failed\n",
        report.comparisons.len(),
        report.comparisons.failures().count()
    );
    for f in report.comparisons.failures() {
        stderr.push_str(&format!("FAIL {f}\n"));
    }
    Outcome {
        code: if pass { EXIT_OK } else { EXIT_MISMATCH },
        stdout,
        stderr,
    }
}

/// Default budget, exposed for callers that bypass argument parsing.
pub const fn default_budget() -> u64 {
    DEFAULT_BUDGET
}
