//! Command-line jobs: argument model, validation, dispatch and emission.
//!
//! Exit statuses: 0 success, 1 failed invariant or verification, 2 invalid
//! input. A failure record (one JSON object) goes to stderr for 1 and 2.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::asymptotics::{
    alpha_sequence, bivariate_unchecked, condition_h_for, condition_h_sweep, h_polynomials,
    qlemma_report, ratio_table_with, specialization_check, LimitAlgebra, RatioRow, SeedMatrix,
};
use crate::cache::{load_algebra, AlgebraCache};
use crate::error::{Error, Result};
use crate::exactalg::json::{big_to_json, poly_to_json, rational_to_string};
use crate::exactalg::Rational;
use crate::torsion::{tau1_raw, tau1_simple, tau2_raw, tau2_simple, torsion_report};
use crate::twobridge::{make_params, riley};
use crate::verify::{
    pairs_up_to, verify_asymptotics, verify_identities, verify_reciprocity, verify_sums,
    verify_torsion, SuiteReport,
};

#[derive(Parser, Debug, Clone)]
#[command(name = "parabolic", version, about = "Invariants of two-bridge knots K(p,q) from their parabolic representations")]
pub struct JobSpec {
    #[command(subcommand)]
    pub command: Command,

    /// Write the artifact to this file instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Output format; tabular commands default to csv, the rest to json
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads
    #[arg(long, global = true, default_value_t = default_threads(), value_parser = parse_threads)]
    pub threads: usize,

    /// Directory of cached per-(p,q) algebra data (overrides PARABOLIC_CACHE_DIR)
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Formula {
    Raw,
    Simple,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Torsion,
    Sums,
    Reciprocity,
    Asymptotics,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct PqArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub p: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub q: i64,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct SeedArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub a: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub b: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub c: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub d: i64,
}

impl SeedArgs {
    fn seed(&self) -> Result<SeedMatrix> {
        SeedMatrix::new(self.a, self.b, self.c, self.d)
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Riley polynomial and ε-sequence: {p, q, ell, ell_prime, eps, riley}
    Riley(PqArgs),
    /// Frobenius data of V(p,q): {p, q, riley, omega, iota, eta_diagonal}
    Frobenius(PqArgs),
    /// Torsion τ₁ or τ₂ in V: {p, q, rep, formula, tau, match}
    Torsion {
        #[command(flatten)]
        pq: PqArgs,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        rep: u8,
        /// Which representative to emit as `tau`; `match` compares both
        #[arg(long, value_enum, default_value_t = Formula::Raw)]
        formula: Formula,
    },
    /// Inverse torsion sums for 1 < q < p ≤ pmax.
    ///
    /// CSV columns: p,q,sum1,sum2,expected1 (sums as exact rationals "num/den").
    Invsum {
        #[arg(long, allow_negative_numbers = true)]
        pmax: i64,
    },
    /// TQFT signature σ_g(q/p), optionally colored: {p, q, g, colors, sigma}.
    ///
    /// CSV columns: p,q,g,colors,sigma (colors separated by ';').
    Signature {
        #[command(flatten)]
        pq: PqArgs,
        #[arg(long)]
        g: u32,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        colors: Option<Vec<i64>>,
    },
    /// Limit algebra and ratio table along q_n/p_n = (a+bn)/(c+dn).
    ///
    /// JSON: {seed, alpha, H1, H2, H3, conditionH, omegaW, limit_traces, ratio_rows}.
    /// CSV (ratio rows): n,p,q,sigma,dim,ratio,limit,rel_error.
    Asymptotic {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, default_value_t = 2)]
        g: u32,
        /// Largest n of the default list 11, 21, 31, …
        #[arg(long, default_value_t = 51, allow_negative_numbers = true)]
        nmax: i64,
        /// Explicit n values, replacing the default list
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        n_list: Option<Vec<i64>>,
    },
    /// Clause-by-clause report on Q_M, R_M, S_M plus the specialization identities.
    Qlemma {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, value_delimiter = ',', default_value = "3,5,7", allow_negative_numbers = true)]
        n_list: Vec<i64>,
    },
    /// Condition (H) for every enumerated seed with d < dmax.
    ///
    /// CSV columns: b,d,a,c,ok.
    #[command(name = "conditionH-sweep")]
    ConditionHSweep {
        #[arg(long, default_value_t = 100, allow_negative_numbers = true)]
        dmax: i64,
    },
    /// Run a property suite and summarize counts and the first counterexample.
    ///
    /// CSV columns: suite,checked,failed,first_counterexample.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 25, allow_negative_numbers = true)]
        pmax: i64,
        /// Bound for the cheap Riley checks of the identities suite (default: pmax)
        #[arg(long, allow_negative_numbers = true)]
        pmax_riley: Option<i64>,
        /// Seed a,b,c,d for the asymptotics suite
        #[arg(long, value_delimiter = ',', default_value = "3,2,4,3", allow_negative_numbers = true)]
        seed: Vec<i64>,
    },
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn parse_threads(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

/// Result of a job: exit status plus the failure record, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub failure: Option<Value>,
}

impl Outcome {
    fn ok() -> Self {
        Outcome { code: 0, failure: None }
    }

    fn failed(record: Value) -> Self {
        Outcome {
            code: 1,
            failure: Some(record),
        }
    }

    fn from_error(command: &str, e: &Error) -> Self {
        let (code, status) = if e.is_input_error() {
            (2, "invalid_input")
        } else {
            (1, "error")
        };
        Outcome {
            code,
            failure: Some(json!({"status": status, "command": command, "error": e.to_string()})),
        }
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Riley(_) => "riley",
            Command::Frobenius(_) => "frobenius",
            Command::Torsion { .. } => "torsion",
            Command::Invsum { .. } => "invsum",
            Command::Signature { .. } => "signature",
            Command::Asymptotic { .. } => "asymptotic",
            Command::Qlemma { .. } => "qlemma",
            Command::ConditionHSweep { .. } => "conditionH-sweep",
            Command::Verify { .. } => "verify",
        }
    }

    fn default_format(&self) -> Format {
        match self {
            Command::Invsum { .. } | Command::ConditionHSweep { .. } => Format::Csv,
            _ => Format::Json,
        }
    }

    fn supports_csv(&self) -> bool {
        matches!(
            self,
            Command::Invsum { .. }
                | Command::Signature { .. }
                | Command::Asymptotic { .. }
                | Command::ConditionHSweep { .. }
                | Command::Verify { .. }
        )
    }
}

/// n values for a ratio table: the explicit list, or 11, 21, … ≤ nmax
/// restricted to admissible n.
fn ratio_n_list(m: &SeedMatrix, nmax: i64, n_list: &Option<Vec<i64>>) -> Result<Vec<i64>> {
    match n_list {
        Some(ns) => {
            for &n in ns {
                m.check_n(n)?;
            }
            Ok(ns.clone())
        }
        None => Ok((11..=nmax).step_by(10).filter(|&n| m.admissible(n)).collect()),
    }
}

fn verify_seed(seed: &[i64]) -> Result<SeedMatrix> {
    match seed {
        &[a, b, c, d] => SeedMatrix::new(a, b, c, d),
        _ => Err(Error::InvalidParams(format!("--seed needs four integers, got {}", seed.len()))),
    }
}

/// Parameter checks done before any computation starts.
pub fn validate(job: &JobSpec) -> Result<Format> {
    let format = job.format.unwrap_or_else(|| job.command.default_format());
    if format == Format::Csv && !job.command.supports_csv() {
        return Err(Error::InvalidParams(format!("{} has no csv output", job.command.name())));
    }
    match &job.command {
        Command::Riley(pq) | Command::Frobenius(pq) | Command::Torsion { pq, .. } => {
            make_params(pq.p, pq.q)?;
        }
        Command::Invsum { pmax } => {
            if *pmax < 3 {
                return Err(Error::InvalidParams(format!("pmax = {pmax} must be >= 3")));
            }
        }
        Command::Signature { pq, g, colors } => {
            let params = make_params(pq.p, pq.q)?;
            match colors {
                None if *g == 0 => return Err(Error::InvalidParams("genus must be >= 1".into())),
                None => {}
                Some(cs) => {
                    let max = params.p - 2;
                    if let Some(&color) = cs.iter().find(|c| !(0..=max).contains(*c)) {
                        return Err(Error::ColorOutOfRange { color, max });
                    }
                }
            }
        }
        Command::Asymptotic { seed, g, nmax, n_list } => {
            let m = seed.seed()?;
            if *g < 2 {
                return Err(Error::InvalidParams("asymptotic needs g >= 2".into()));
            }
            if n_list.is_none() && *nmax < 1 {
                return Err(Error::InvalidParams(format!("nmax = {nmax} must be positive")));
            }
            ratio_n_list(&m, *nmax, n_list)?;
        }
        Command::Qlemma { seed, n_list } => {
            let m = seed.seed()?;
            for &n in n_list {
                m.check_n(n)?;
            }
        }
        Command::ConditionHSweep { dmax } => {
            if *dmax < 2 {
                return Err(Error::InvalidParams(format!("dmax = {dmax} must be >= 2")));
            }
        }
        Command::Verify {
            suite,
            pmax,
            pmax_riley,
            seed,
        } => {
            if *suite == Suite::Asymptotics {
                verify_seed(seed)?;
            } else if *pmax < 3 || pmax_riley.is_some_and(|r| r < 3) {
                return Err(Error::InvalidParams("bounds must be >= 3".into()));
            }
        }
    }
    Ok(format)
}

/// Runs a job, writing the artifact to `out`.
pub fn run_to(job: &JobSpec, out: &mut (dyn Write + Send)) -> Outcome {
    let name = job.command.name();
    let format = match validate(job) {
        Ok(f) => f,
        Err(e) => return Outcome::from_error(name, &e),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(job.threads).build() {
        Ok(p) => p,
        Err(e) => return Outcome::from_error(name, &Error::InvalidParams(e.to_string())),
    };
    let cache = AlgebraCache::resolve(job.cache_dir.as_deref());
    let ctx = Ctx {
        format,
        cache: cache.as_ref(),
    };
    match pool.install(|| dispatch(&job.command, &ctx, out)) {
        Ok(None) => Outcome::ok(),
        Ok(Some(mut record)) => {
            record["status"] = json!("failure");
            record["command"] = json!(name);
            Outcome::failed(record)
        }
        Err(e) => Outcome::from_error(name, &e),
    }
}

/// Runs a job and returns the artifact bytes alongside the outcome.
pub fn run(job: &JobSpec) -> (Outcome, Vec<u8>) {
    let mut buf = Vec::new();
    let outcome = run_to(job, &mut buf);
    (outcome, buf)
}

/// Entry point for the binary: parses `args`, runs, and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let job = match JobSpec::try_parse_from(args) {
        Ok(job) => job,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match &job.output {
        Some(path) => match File::create(path) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                let o = run_to(&job, &mut w);
                match w.flush() {
                    Ok(()) => o,
                    Err(source) => Outcome::from_error(
                        job.command.name(),
                        &Error::Io {
                            path: path.clone(),
                            source,
                        },
                    ),
                }
            }
            Err(source) => Outcome::from_error(
                job.command.name(),
                &Error::Io {
                    path: path.clone(),
                    source,
                },
            ),
        },
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout);
            let o = run_to(&job, &mut w);
            let _ = w.flush();
            o
        }
    };
    if let Some(record) = &outcome.failure {
        eprintln!("{record}");
    }
    outcome.code
}

struct Ctx<'a> {
    format: Format,
    cache: Option<&'a AlgebraCache>,
}

/// `Ok(Some(record))` signals a failed invariant after the artifact was written.
type Dispatch = Result<Option<Value>>;

fn io_err(e: io::Error) -> Error {
    Error::Io {
        path: PathBuf::from("<output>"),
        source: e,
    }
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => io_err(e),
        k => Error::Malformed(format!("{k:?}")),
    }
}

fn emit_json(out: &mut (dyn Write + Send), v: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| Error::Malformed(e.to_string()))?;
    writeln!(out).map_err(io_err)
}

fn emit_csv<R: Serialize>(out: &mut (dyn Write + Send), header: &[&str], rows: &[R]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush().map_err(io_err)
}

fn dispatch(cmd: &Command, ctx: &Ctx, out: &mut (dyn Write + Send)) -> Dispatch {
    match cmd {
        Command::Riley(pq) => cmd_riley(*pq, out),
        Command::Frobenius(pq) => cmd_frobenius(*pq, ctx, out),
        Command::Torsion { pq, rep, formula } => cmd_torsion(*pq, *rep, *formula, ctx, out),
        Command::Invsum { pmax } => cmd_invsum(*pmax, ctx, out),
        Command::Signature { pq, g, colors } => cmd_signature(*pq, *g, colors.as_deref(), ctx, out),
        Command::Asymptotic { seed, g, nmax, n_list } => {
            let m = seed.seed()?;
            let ns = ratio_n_list(&m, *nmax, n_list)?;
            cmd_asymptotic(&m, *g, &ns, ctx, out)
        }
        Command::Qlemma { seed, n_list } => cmd_qlemma(&seed.seed()?, n_list, out),
        Command::ConditionHSweep { dmax } => cmd_sweep(*dmax, ctx, out),
        Command::Verify {
            suite,
            pmax,
            pmax_riley,
            seed,
        } => cmd_verify(*suite, *pmax, pmax_riley.unwrap_or(*pmax), seed, ctx, out),
    }
}

fn cmd_riley(pq: PqArgs, out: &mut (dyn Write + Send)) -> Dispatch {
    let params = make_params(pq.p, pq.q)?;
    let r = riley(&params)?;
    emit_json(
        out,
        &json!({
            "p": params.p,
            "q": params.q,
            "ell": params.ell,
            "ell_prime": params.ell_prime,
            "eps": params.eps,
            "riley": poly_to_json(&r),
        }),
    )?;
    Ok(None)
}

fn cmd_frobenius(pq: PqArgs, ctx: &Ctx, out: &mut (dyn Write + Send)) -> Dispatch {
    let v = load_algebra(ctx.cache, pq.p, pq.q)?;
    emit_json(
        out,
        &json!({
            "p": pq.p,
            "q": pq.q,
            "riley": poly_to_json(v.riley()),
            "omega": poly_to_json(v.omega().rep()),
            "iota": poly_to_json(v.iota().rep()),
            "eta_diagonal": v.eta_diagonal(),
        }),
    )?;
    Ok(None)
}

fn cmd_torsion(pq: PqArgs, rep: u8, formula: Formula, ctx: &Ctx, out: &mut (dyn Write + Send)) -> Dispatch {
    let v = load_algebra(ctx.cache, pq.p, pq.q)?;
    let (raw, simple) = if rep == 1 {
        (tau1_raw(&v)?, tau1_simple(&v)?)
    } else {
        (tau2_raw(&v)?, tau2_simple(&v)?)
    };
    let matched = raw == simple;
    let (tau, name) = match formula {
        Formula::Raw => (&raw, "raw"),
        Formula::Simple => (&simple, "simple"),
    };
    emit_json(
        out,
        &json!({
            "p": pq.p,
            "q": pq.q,
            "rep": rep,
            "formula": name,
            "tau": poly_to_json(tau.rep()),
            "match": matched,
        }),
    )?;
    Ok((!matched).then(|| {
        json!({
            "reason": format!("tau{rep} raw and simple formulas differ"),
            "p": pq.p,
            "q": pq.q,
            "residual": poly_to_json((&raw - &simple).rep()),
        })
    }))
}

#[derive(Serialize)]
struct InvsumRow {
    p: i64,
    q: i64,
    sum1: String,
    sum2: String,
    expected1: String,
}

fn cmd_invsum(pmax: i64, ctx: &Ctx, out: &mut (dyn Write + Send)) -> Dispatch {
    let zero = Rational::from_integer(0.into());
    let mut first_bad: Option<Value> = None;
    let mut all = Vec::new();
    let mut csv_out = (ctx.format == Format::Csv)
        .then(|| csv::WriterBuilder::new().has_headers(false).from_writer(&mut *out));
    if let Some(w) = csv_out.as_mut() {
        w.write_record(["p", "q", "sum1", "sum2", "expected1"]).map_err(csv_err)?;
    }
    for p in (3..=pmax).step_by(2) {
        let qs: Vec<i64> = (3..p).step_by(2).filter(|&q| num_integer::gcd(p, q) == 1).collect();
        let rows = qs
            .par_iter()
            .map(|&q| {
                let v = load_algebra(ctx.cache, p, q)?;
                let r = torsion_report(&v)?;
                let sum2 = r.invsum_tau2.clone().unwrap_or_else(|| zero.clone());
                let ok = r.invsum_tau1 == r.expected_invsum_tau1 && sum2 == zero;
                Ok((
                    InvsumRow {
                        p,
                        q,
                        sum1: rational_to_string(&r.invsum_tau1),
                        sum2: rational_to_string(&sum2),
                        expected1: rational_to_string(&r.expected_invsum_tau1),
                    },
                    ok,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        for (row, ok) in rows {
            if !ok && first_bad.is_none() {
                first_bad = Some(json!({
                    "reason": "inverse torsion sum differs from the expected value",
                    "p": row.p,
                    "q": row.q,
                    "sum1": row.sum1,
                    "sum2": row.sum2,
                    "expected1": row.expected1,
                }));
            }
            match csv_out.as_mut() {
                Some(w) => w.serialize(&row).map_err(csv_err)?,
                None => all.push(row),
            }
        }
        if let Some(w) = csv_out.as_mut() {
            w.flush().map_err(io_err)?;
        }
    }
    drop(csv_out);
    if ctx.format == Format::Json {
        emit_json(out, &all)?;
    }
    Ok(first_bad)
}

fn cmd_signature(pq: PqArgs, g: u32, colors: Option<&[i64]>, ctx: &Ctx, out: &mut (dyn Write + Send)) -> Dispatch {
    let v = load_algebra(ctx.cache, pq.p, pq.q)?;
    let sigma: Value = match colors {
        None => big_to_json(&v.signature(g)?),
        Some(cs) => {
            let r = v.colored_signature(g, cs)?;
            if r.is_integer() {
                big_to_json(&r.to_integer())
            } else {
                json!(rational_to_string(&r))
            }
        }
    };
    let colors = colors.unwrap_or(&[]);
    match ctx.format {
        Format::Json => emit_json(
            out,
            &json!({"p": pq.p, "q": pq.q, "g": g, "colors": colors, "sigma": sigma}),
        )?,
        Format::Csv => {
            let joined: Vec<String> = colors.iter().map(i64::to_string).collect();
            let sigma = match &sigma {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            emit_csv(
                out,
                &["p", "q", "g", "colors", "sigma"],
                &[(pq.p, pq.q, g, joined.join(";"), sigma)],
            )?
        }
    }
    Ok(None)
}

fn cmd_asymptotic(m: &SeedMatrix, g: u32, ns: &[i64], ctx: &Ctx, out: &mut (dyn Write + Send)) -> Dispatch {
    let h = h_polynomials(m)?;
    let cond = condition_h_for(&h);
    let cache = ctx.cache;
    let direct = move |p: i64, q: i64, g: u32| -> Result<BigInt> { load_algebra(cache, p, q)?.signature(g) };
    let (omega_w, traces, rows): (Value, Value, Vec<RatioRow>) = if cond {
        let w = LimitAlgebra::new(m)?;
        let mut traces = Map::new();
        for gg in 2..=g.max(6) {
            traces.insert(gg.to_string(), json!(rational_to_string(&w.trace(gg)?)));
        }
        let rows = ratio_table_with(m, g, ns, &direct)?;
        (poly_to_json(w.omega_w.rep()), Value::Object(traces), rows)
    } else {
        (Value::Null, Value::Null, Vec::new())
    };
    match ctx.format {
        Format::Json => emit_json(
            out,
            &json!({
                "seed": m,
                "g": g,
                "alpha": alpha_sequence(m),
                "H1": poly_to_json(&h.h1),
                "H2": poly_to_json(&h.h2),
                "H3": poly_to_json(&h.h3),
                "H1_recipe_sign": h.recipe_sign,
                "conditionH": cond,
                "omegaW": omega_w,
                "limit_traces": traces,
                "ratio_rows": rows,
            }),
        )?,
        Format::Csv => {
            let flat: Vec<_> = rows
                .iter()
                .map(|r| {
                    (
                        r.n,
                        r.p,
                        r.q,
                        r.sigma.to_string(),
                        r.dim.to_string(),
                        rational_to_string(&r.ratio),
                        rational_to_string(&r.limit),
                        r.rel_error,
                    )
                })
                .collect();
            emit_csv(
                out,
                &["n", "p", "q", "sigma", "dim", "ratio", "limit", "rel_error"],
                &flat,
            )?
        }
    }
    Ok((!cond).then(|| json!({"reason": "condition (H) fails", "seed": m})))
}

fn cmd_qlemma(m: &SeedMatrix, ns: &[i64], out: &mut (dyn Write + Send)) -> Dispatch {
    let report = qlemma_report(m)?;
    let t = bivariate_unchecked(m);
    let spec: Vec<Value> = ns
        .iter()
        .map(|&n| match specialization_check(m, &t, n) {
            Ok(()) => json!({"n": n, "ok": true, "detail": ""}),
            Err(e) => json!({"n": n, "ok": false, "detail": e.to_string()}),
        })
        .collect();
    let spec_ok = spec.iter().all(|s| s["ok"] == json!(true));
    let ok = report.all_ok() && spec_ok;
    emit_json(
        out,
        &json!({"seed": m, "clauses": report.clauses, "specialization": spec, "ok": ok}),
    )?;
    if ok {
        return Ok(None);
    }
    let first = report
        .clauses
        .iter()
        .find(|c| !c.ok)
        .map(|c| json!({"clause": c.name, "detail": c.detail}))
        .or_else(|| spec.iter().find(|s| s["ok"] != json!(true)).cloned());
    Ok(Some(json!({"reason": "structural lemma check failed", "first": first})))
}

fn cmd_sweep(dmax: i64, ctx: &Ctx, out: &mut (dyn Write + Send)) -> Dispatch {
    let rows = condition_h_sweep(dmax)?;
    match ctx.format {
        Format::Csv => emit_csv(out, &["b", "d", "a", "c", "ok"], &rows)?,
        Format::Json => emit_json(out, &rows)?,
    }
    Ok(rows.iter().find(|r| !r.ok).map(|r| {
        json!({"reason": "condition (H) fails", "b": r.b, "d": r.d, "a": r.a, "c": r.c})
    }))
}

fn cmd_verify(
    suite: Suite,
    pmax: i64,
    pmax_riley: i64,
    seed: &[i64],
    ctx: &Ctx,
    out: &mut (dyn Write + Send),
) -> Dispatch {
    let mut extra = Value::Null;
    let reports: Vec<SuiteReport> = match suite {
        Suite::Identities => verify_identities(pmax_riley, pmax),
        Suite::Torsion => vec![verify_torsion(pmax)],
        Suite::Sums => vec![verify_sums(pmax)],
        Suite::Reciprocity => vec![verify_reciprocity(pmax)],
        Suite::Asymptotics => {
            let r = verify_asymptotics(&verify_seed(seed)?)?;
            extra = json!({
                "seed": r.seed,
                "limit_traces": r.limit_traces.iter().map(rational_to_string).collect::<Vec<_>>(),
            });
            r.suites
        }
    };
    let ok = reports.iter().all(SuiteReport::ok);
    match ctx.format {
        Format::Json => {
            let mut doc = json!({"suite": suite, "ok": ok, "reports": reports});
            if suite != Suite::Asymptotics {
                doc["pairs"] = json!(pairs_up_to(pmax, true).len());
            } else {
                doc["asymptotics"] = extra;
            }
            emit_json(out, &doc)?
        }
        Format::Csv => emit_csv(
            out,
            &["suite", "checked", "failed", "first_counterexample"],
            &reports
                .iter()
                .map(|r| (&r.suite, r.checked, r.failed, r.first_counterexample.as_deref().unwrap_or("")))
                .collect::<Vec<_>>(),
        )?,
    }
    Ok(reports.iter().find(|r| !r.ok()).map(|r| {
        json!({
            "reason": "property suite failed",
            "suite": r.suite,
            "failed": r.failed,
            "first_counterexample": r.first_counterexample,
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(args: &[&str]) -> JobSpec {
        JobSpec::try_parse_from(std::iter::once("parabolic").chain(args.iter().copied())).unwrap()
    }

    fn run_str(args: &[&str]) -> (i32, String) {
        let (o, bytes) = run(&job(args));
        (o.code, String::from_utf8(bytes).unwrap())
    }

    #[test]
    fn riley_five_three() {
        let (code, s) = run_str(&["riley", "--p", "5", "--q", "3"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["riley"], json!(["1/1", "0/1", "-1/1", "0/1", "1/1"]));
        assert_eq!(v["ell"], json!(3));
    }

    #[test]
    fn signature_of_trefoil() {
        let (code, s) = run_str(&["signature", "--p", "3", "--q", "1", "--g", "4"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["sigma"], json!(16));
    }

    #[test]
    fn invalid_input_is_exit_two() {
        assert_eq!(run(&job(&["riley", "--p", "6", "--q", "1"])).0.code, 2);
        assert_eq!(run(&job(&["signature", "--p", "5", "--q", "1", "--g", "0"])).0.code, 2);
        assert_eq!(run(&job(&["signature", "--p", "5", "--q", "1", "--g", "1", "--colors", "4"])).0.code, 2);
        assert_eq!(run(&job(&["riley", "--p", "5", "--q", "1", "--format", "csv"])).0.code, 2);
        assert_eq!(main_with_args(["parabolic", "riley", "--p", "x"]), 2);
    }

    #[test]
    fn sweep_csv_header() {
        let (code, s) = run_str(&["conditionH-sweep", "--dmax", "8"]);
        assert_eq!(code, 0);
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("b,d,a,c,ok"));
        assert_eq!(lines.next(), Some("0,1,1,2,true"));
        assert_eq!(s.lines().count(), 8);
    }
}
