//! Command-line surface: `exact`, `expand`, `approx` and `verify`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{parse_rational, QuadExt, RadicalScalar};
use crate::error::Error;
use crate::exact::{tn_direct_sum, tn_poly_power, tn_recurrence, tn_series, ExactValue, TrinomialParams};
use crate::expansion::{assemble_expansion, eval_expansion, relative_error, AsymptoticExpansion};
use crate::numeric::{Hp, DEFAULT_PRECISION};
use crate::report::{build_report, format_exact, to_json, write_csv, Grid, VerifyOptions};
use crate::singularity::{classify_regime, Regime, DEFAULT_ORDER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

/// Exact comparison in `approx` is skipped above this `n`.
pub const APPROX_EXACT_LIMIT: u64 = 100_000;

#[derive(Parser, Debug)]
#[command(name = "trinomial", version, about = "Generalised central trinomial coefficients and their asymptotics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact T_n(b,c).
    Exact(ExactArgs),
    /// Symbolic asymptotic expansion.
    Expand(ExpandArgs),
    /// High-precision estimate of T_n.
    Approx(ApproxArgs),
    /// Convergence report over a grid of n.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct ParamArgs {
    /// Linear coefficient, e.g. "1", "-3/2", "0.25".
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    /// Constant coefficient.
    #[arg(long, allow_hyphen_values = true)]
    pub c: String,
}

impl ParamArgs {
    fn parse(&self) -> Result<TrinomialParams, Error> {
        Ok(TrinomialParams::new(parse_rational(&self.b)?, parse_rational(&self.c)?))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Sum,
    Power,
    Recurrence,
    Series,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TextFormat {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GridArg {
    Geometric,
    Linear,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("range").required(true).args(["n", "n_max"])))]
pub struct ExactArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Single index.
    #[arg(long)]
    pub n: Option<u64>,
    /// All indices 0..=n_max.
    #[arg(long)]
    pub n_max: Option<u64>,
    #[arg(long, value_enum, default_value_t = Method::Recurrence)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    pub format: TextFormat,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    pub format: TextFormat,
}

#[derive(Args, Debug)]
pub struct ApproxArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    /// Working precision in bits.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: usize,
    /// Significant digits in decimal output.
    #[arg(long, default_value_t = 40)]
    pub digits: usize,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    pub format: TextFormat,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[arg(long, default_value_t = 16)]
    pub n_min: u64,
    #[arg(long, default_value_t = 4096)]
    pub n_max: u64,
    #[arg(long, value_enum, default_value_t = GridArg::Geometric)]
    pub grid: GridArg,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: usize,
    #[arg(long, default_value_t = 40)]
    pub digits: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
    pub format: ReportFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failure carrying the process exit code.
#[derive(Debug)]
pub struct Exit {
    pub code: i32,
    pub message: String,
}

impl Exit {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::PrecisionTooLow { .. }
            | Error::NTooSmall
            | Error::ZeroOrder => EXIT_PARSE,
            Error::UnsupportedRegime(_) => EXIT_UNSUPPORTED,
            _ => EXIT_FAILURE,
        };
        Self::new(code, e.to_string())
    }
}

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Self {
        Self::new(EXIT_FAILURE, e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            if !e.message.is_empty() {
                let _ = writeln!(err, "error: {}", e.message);
            }
            e.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Exit> {
    match cmd {
        Command::Exact(a) => cmd_exact(&a, out, err),
        Command::Expand(a) => cmd_expand(&a, out),
        Command::Approx(a) => cmd_approx(&a, out),
        Command::Verify(a) => cmd_verify(&a, out, err),
    }
}

fn exact_values(params: &TrinomialParams, range: &[u64], method: Method) -> Result<Vec<ExactValue>, Error> {
    let n_max = *range.last().expect("nonempty range");
    Ok(match method {
        Method::Sum => range.iter().map(|&n| tn_direct_sum(params, n)).collect(),
        Method::Power => range.iter().map(|&n| tn_poly_power(params, n)).collect(),
        Method::Recurrence => {
            let all = tn_recurrence(params, n_max)?;
            range.iter().map(|&n| all[n as usize].clone()).collect()
        }
        Method::Series => {
            let all = tn_series(params, n_max);
            range.iter().map(|&n| all[n as usize].clone()).collect()
        }
        Method::All => unreachable!("expanded by caller"),
    })
}

pub fn cmd_exact(a: &ExactArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Exit> {
    let params = a.params.parse()?;
    let range: Vec<u64> = match (a.n, a.n_max) {
        (Some(n), _) => vec![n],
        (None, Some(m)) => (0..=m).collect(),
        (None, None) => unreachable!("required group"),
    };
    let values = if a.method == Method::All {
        let methods = [Method::Sum, Method::Power, Method::Recurrence, Method::Series];
        let results = methods
            .iter()
            .map(|&m| exact_values(&params, &range, m))
            .collect::<Result<Vec<_>, _>>()?;
        for (m, r) in methods.iter().zip(&results).skip(1) {
            for (i, (x, y)) in results[0].iter().zip(r).enumerate() {
                if x != y {
                    writeln!(err, "mismatch at n={}: sum={x} {m:?}={y}", range[i])?;
                    return Err(Exit::new(EXIT_MISMATCH, "cross-check mismatch"));
                }
            }
        }
        results.into_iter().next().expect("four methods")
    } else {
        exact_values(&params, &range, a.method)?
    };
    let strings: Vec<String> = values.iter().map(ToString::to_string).collect();
    match a.format {
        TextFormat::Text => {
            for s in &strings {
                writeln!(out, "{s}")?;
            }
        }
        TextFormat::Json => writeln!(out, "{}", serde_json::to_string(&strings).expect("strings"))?,
    }
    Ok(())
}

#[derive(Serialize)]
pub struct QuadJson {
    pub p: String,
    pub q: String,
    pub c: String,
}

impl From<&QuadExt> for QuadJson {
    fn from(x: &QuadExt) -> Self {
        let x = x.canonical();
        Self {
            p: x.p().to_string(),
            q: x.q().to_string(),
            c: x.radicand().to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct CoeffJson {
    pub p: String,
    pub q: String,
}

#[derive(Serialize)]
pub struct RadicalJson {
    pub base: QuadJson,
    pub exponent: String,
}

impl From<&RadicalScalar> for RadicalJson {
    fn from(x: &RadicalScalar) -> Self {
        Self {
            base: (&x.base).into(),
            exponent: x.exponent.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct OscillationJson {
    pub modulus: RadicalJson,
    pub unit: QuadJson,
    pub amplitude: RadicalJson,
}

/// Expansion schema; the first contribution is shown at the top level and
/// any partner singularity under `conjugate_growth`.
#[derive(Serialize)]
pub struct ExpansionJson {
    pub b: String,
    pub c: String,
    pub regime: String,
    pub growth: QuadJson,
    pub prefactor: RadicalJson,
    pub corrections: Vec<CoeffJson>,
    pub pi_power: String,
    pub poly_exponent: String,
    pub order: usize,
    pub parity: String,
    pub singularities: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjugate_growth: Option<QuadJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oscillation: Option<OscillationJson>,
}

impl From<&AsymptoticExpansion> for ExpansionJson {
    fn from(e: &AsymptoticExpansion) -> Self {
        let first = &e.contributions[0];
        Self {
            b: e.params.b().to_string(),
            c: e.params.c().to_string(),
            regime: e.regime.tag().to_string(),
            growth: (&first.growth).into(),
            prefactor: (&first.prefactor).into(),
            corrections: first
                .corrections
                .iter()
                .map(|g| {
                    let g = g.canonical();
                    CoeffJson {
                        p: g.p().to_string(),
                        q: g.q().to_string(),
                    }
                })
                .collect(),
            pi_power: first.pi_power.to_string(),
            poly_exponent: first.poly_exponent.to_string(),
            order: e.effective_order(),
            parity: e.parity.to_string(),
            singularities: e.contributions.len(),
            conjugate_growth: e.contributions.get(1).map(|c| (&c.growth).into()),
            oscillation: e.oscillation.as_ref().map(|o| OscillationJson {
                modulus: (&o.modulus).into(),
                unit: (&o.unit).into(),
                amplitude: (&o.amplitude).into(),
            }),
        }
    }
}

pub fn render_expansion_text(e: &AsymptoticExpansion) -> String {
    let mut s = String::new();
    let first = &e.contributions[0];
    let mut line = |k: &str, v: String| {
        s.push_str(k);
        s.push_str(": ");
        s.push_str(&v);
        s.push('\n');
    };
    line("b", e.params.b().to_string());
    line("c", e.params.c().to_string());
    line("regime", e.regime.tag().to_string());
    line("parity", e.parity.to_string());
    line("order", e.effective_order().to_string());
    if e.regime == Regime::CZero {
        line("form", format!("T_n = ({})^n", first.growth.canonical()));
    }
    line("growth", first.growth.canonical().to_string());
    if let Some(c) = e.contributions.get(1) {
        line("conjugate_growth", c.growth.canonical().to_string());
    }
    line("prefactor", first.prefactor.to_string());
    line("poly_exponent", first.poly_exponent.to_string());
    line("pi_power", first.pi_power.to_string());
    if let Some(o) = &e.oscillation {
        line("modulus", o.modulus.to_string());
        line("unit", o.unit.canonical().to_string());
        line("amplitude", o.amplitude.to_string());
        line(
            "form",
            "(b^2-4c)^(n/2+1/4) * cos((n+1/2)*phi - pi/4) / ((-c)^(1/4) * sqrt(pi*n))".into(),
        );
    }
    let g: Vec<String> = first.corrections.iter().map(|g| g.canonical().to_string()).collect();
    s.push_str(&format!("g = [{}]\n", g.join(", ")));
    s
}

pub fn cmd_expand(a: &ExpandArgs, out: &mut dyn Write) -> Result<(), Exit> {
    let params = a.params.parse()?;
    let e = assemble_expansion(&params, a.order)?;
    match a.format {
        TextFormat::Text => write!(out, "{}", render_expansion_text(&e))?,
        TextFormat::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&ExpansionJson::from(&e)).expect("serializes")
        )?,
    }
    Ok(())
}

#[derive(Serialize)]
pub struct ApproxJson {
    pub b: String,
    pub c: String,
    pub regime: String,
    pub n: u64,
    pub order: usize,
    pub estimate: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cos_factor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_err: Option<String>,
}

pub fn cmd_approx(a: &ApproxArgs, out: &mut dyn Write) -> Result<(), Exit> {
    let params = a.params.parse()?;
    let mut hp = Hp::new(a.precision)?;
    if a.n == 0 {
        return Err(Error::NTooSmall.into());
    }
    let regime = classify_regime(&params);
    let mut report = ApproxJson {
        b: params.b().to_string(),
        c: params.c().to_string(),
        regime: regime.tag().to_string(),
        n: a.n,
        order: 0,
        estimate: "0".into(),
        cos_factor: None,
        exact: Some("0".into()),
        rel_err: Some("0".into()),
    };
    // T_n(0,0) = 0 for n ≥ 1
    if regime == Regime::Trivial {
        return write_approx(&report, a.format, out);
    }
    let e = assemble_expansion(&params, a.order)?;
    let est = eval_expansion(&e, a.n, a.precision)?;
    report.order = e.effective_order();
    report.estimate = hp.format_sci(&est.value, a.digits);
    report.cos_factor = est.cos_factor.as_ref().map(|c| hp.format_sci(c, a.digits));
    if a.n <= APPROX_EXACT_LIMIT {
        let t = tn_recurrence(&params, a.n)?.pop().expect("n_max entry");
        let rel = relative_error(&mut hp, &t, &est.value);
        report.exact = Some(format_exact(&mut hp, &t, a.digits));
        report.rel_err = Some(hp.format_sci(&rel, a.digits));
    } else {
        report.exact = None;
        report.rel_err = None;
    }
    write_approx(&report, a.format, out)
}

fn write_approx(r: &ApproxJson, format: TextFormat, out: &mut dyn Write) -> Result<(), Exit> {
    match format {
        TextFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(r).expect("serializes"))?,
        TextFormat::Text => {
            writeln!(out, "b: {}", r.b)?;
            writeln!(out, "c: {}", r.c)?;
            writeln!(out, "regime: {}", r.regime)?;
            writeln!(out, "n: {}", r.n)?;
            writeln!(out, "order: {}", r.order)?;
            writeln!(out, "estimate: {}", r.estimate)?;
            if let Some(c) = &r.cos_factor {
                writeln!(out, "cos_factor: {c}")?;
            }
            if let Some(x) = &r.exact {
                writeln!(out, "exact: {x}")?;
            }
            if let Some(x) = &r.rel_err {
                writeln!(out, "rel_err: {x}")?;
            }
        }
    }
    Ok(())
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Exit> {
    let params = a.params.parse()?;
    if a.n_max == 0 || a.n_min > a.n_max {
        return Err(Exit::new(EXIT_PARSE, "need 1 <= n-min <= n-max"));
    }
    let opts = VerifyOptions {
        order: a.order,
        n_min: a.n_min,
        n_max: a.n_max,
        grid: match a.grid {
            GridArg::Geometric => Grid::Geometric,
            GridArg::Linear => Grid::Linear,
        },
        precision: a.precision,
        digits: a.digits,
    };
    let report = build_report(&params, &opts)?;
    let mut sink: Box<dyn Write + '_> = match &a.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(&mut *out),
    };
    match a.format {
        ReportFormat::Csv => write_csv(&report, &mut sink)?,
        ReportFormat::Json => writeln!(sink, "{}", to_json(&report))?,
    }
    sink.flush()?;
    drop(sink);
    writeln!(
        err,
        "regime={} tail_bounded={} elapsed_ms={}",
        report.regime, report.tail_bounded, report.elapsed_ms
    )?;
    if report.tail_bounded {
        Ok(())
    } else {
        Err(Exit::new(EXIT_VERIFY, "verification failed"))
    }
}
