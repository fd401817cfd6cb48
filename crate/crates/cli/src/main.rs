//! Batch front end: each invocation runs one verb over JSON on stdin and
//! prints one report to stdout. All numbers are exact (integers or `p/q`
//! strings), all maps render with sorted keys, and no verb consults any
//! global state — identical input yields byte-identical output.
//!
//! Exit codes: 0 success, 1 verification failure (a well-formed question
//! whose answer could not be certified), 2 malformed input.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dfrat::classify::{support_classify, SupportClass};
use dfrat::error::Error;
use dfrat::json as dj;
use dfrat::poly::parse_poly;
use dfrat::prefix::DensePrefix;
use dfrat::ratfunc::series_expand;
use dfrat::rationality::{detect_szego, main_theorem_d2_with, rational_fit};
use dfrat::scalar::{format_scalar, parse_scalar, ExactScalar};
use dfrat::semilinear::gf_semilinear;
use dfrat::varieties::{
    curve_gf, linear_system_gf, mahler_growth_witness, np3_demo, CurveOutcome, FactorClass,
};
use dfrat::Result;

#[derive(Parser)]
#[command(
    name = "dfrat",
    version,
    about = "Exact rational generating-function toolkit"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Box bounds as `N` (every axis) or `N,M,...` (one per axis). Defaults:
    /// 32 per axis up to two variables, 16 per axis for three.
    #[arg(long, global = true)]
    verify_box: Option<String>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Verb {
    /// Expand a rational function into a coefficient box (stdin: GF JSON).
    Expand,
    /// Reconstruct a rational function from a coefficient prefix
    /// (stdin: prefix JSON).
    Fit {
        /// Numerator degree bounds per axis, e.g. `2,2`.
        #[arg(long)]
        num_box: String,
        /// Denominator degree bounds per axis.
        #[arg(long)]
        den_box: String,
        /// Extra verified shell beyond the fitting region.
        #[arg(long, default_value_t = 2)]
        margin: usize,
    },
    /// Detect an eventually periodic tail (stdin: scalar array).
    Szego {
        #[arg(long, default_value_t = 10)]
        max_preperiod: usize,
        #[arg(long, default_value_t = 12)]
        max_period: usize,
    },
    /// Classify the support of a P-recursive sequence
    /// (stdin: recurrence JSON, optional "init" array).
    ClassifySupport {
        /// How far to unroll when hunting for nonzero terms.
        #[arg(long, default_value_t = 2000)]
        horizon: usize,
    },
    /// Generating function of a semilinear set (stdin: semilinear JSON).
    SemilinearGf,
    /// Generating function of a linear Diophantine system (stdin: system JSON).
    Linsys,
    /// Analyze a factored plane curve (stdin: {"factors": ["x - y", ...]}).
    Curve2,
    /// Reconstruct a two-variable series from a prefix and a recurrence it
    /// satisfies (stdin: {"prefix": ..., "rec": ..., "alphabet"?: [...]}).
    PipelineD2,
    /// Zero set and generating function of x - y + 2z^2 + z*y^2 on a box.
    DemoNp3 {
        #[arg(long, default_value_t = 30)]
        bound: usize,
    },
    /// Least index from which values[m] > (m!)^c keeps holding
    /// (stdin: array of nonnegative values).
    Mahler {
        /// Exponent, an integer or `p/q`.
        #[arg(long, default_value = "1")]
        c: String,
        #[arg(long, default_value_t = 60)]
        horizon: usize,
    },
}

/// A verb's printable result: verification failures still carry a report.
enum Outcome {
    Pass(String),
    VerifyFail(String),
}

fn main() -> ExitCode {
    // Reserved thread-count knob. Every verb is a pure sequential
    // computation, so the value cannot change any output; it is parsed for
    // interface stability only.
    if let Ok(v) = std::env::var("DFRAT_THREADS") {
        let _ = v.trim().parse::<usize>();
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass(report)) => {
            println!("{report}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::VerifyFail(report)) => {
            println!("{report}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 1 = the input was well formed but the requested certificate does not
/// exist or failed its check; 2 = the input itself is unusable.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NoFit
        | Error::NoPeriodFound
        | Error::NotFree
        | Error::RecurrenceUnsatisfied
        | Error::PipelineUnsound(_) => 1,
        _ => 2,
    }
}

fn read_stdin() -> Result<String> {
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
    Ok(buf)
}

fn parse_bounds(spec: &str, d: usize, what: &str) -> Result<Vec<usize>> {
    let nums: std::result::Result<Vec<usize>, _> =
        spec.split(',').map(|p| p.trim().parse::<usize>()).collect();
    let nums = nums.map_err(|_| Error::Parse(format!("{what}: bad bounds '{spec}'")))?;
    match nums.len() {
        1 => Ok(vec![nums[0]; d]),
        n if n == d => Ok(nums),
        n => Err(Error::Parse(format!(
            "{what}: {n} bounds for {d} variables"
        ))),
    }
}

fn box_for(cli: &Cli, d: usize) -> Result<Vec<usize>> {
    match &cli.verify_box {
        Some(spec) => {
            let b = parse_bounds(spec, d, "--verify-box")?;
            if b.iter().any(|&n| n == 0) {
                return Err(Error::Parse("--verify-box: axes must be positive".into()));
            }
            Ok(b)
        }
        None => Ok(vec![if d <= 2 { 32 } else { 16 }; d]),
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.verb {
        Verb::Expand => expand(cli),
        Verb::Fit {
            num_box,
            den_box,
            margin,
        } => fit(cli, num_box, den_box, *margin),
        Verb::Szego {
            max_preperiod,
            max_period,
        } => szego(cli, *max_preperiod, *max_period),
        Verb::ClassifySupport { horizon } => classify_support(cli, *horizon),
        Verb::SemilinearGf => semilinear_gf(cli),
        Verb::Linsys => linsys(cli),
        Verb::Curve2 => curve2(cli),
        Verb::PipelineD2 => pipeline_d2(cli),
        Verb::DemoNp3 { bound } => demo_np3(cli, *bound),
        Verb::Mahler { c, horizon } => mahler(cli, c, *horizon),
    }
}

fn nested_rows(p: &DensePrefix, idx: &mut Vec<usize>) -> String {
    let axis = idx.len();
    if axis == p.dims().len() {
        return format_scalar(p.get(idx));
    }
    let mut parts = Vec::with_capacity(p.dims()[axis]);
    for i in 0..p.dims()[axis] {
        idx.push(i);
        parts.push(nested_rows(p, idx));
        idx.pop();
    }
    format!("[{}]", parts.join(", "))
}

fn expand(cli: &Cli) -> Result<Outcome> {
    let v = dj::parse_json(&read_stdin()?)?;
    let gf = dj::gf_from_value(&v)?;
    let dims = box_for(cli, gf.vars())?;
    let prefix = series_expand(&gf, &dims)?;
    let report = match cli.format {
        Format::Json => dj::prefix_to_value(&prefix).to_string(),
        Format::Text => nested_rows(&prefix, &mut Vec::new()),
    };
    Ok(Outcome::Pass(report))
}

fn parse_degree_bounds(spec: &str, d: usize, what: &str) -> Result<Vec<u32>> {
    Ok(parse_bounds(spec, d, what)?
        .into_iter()
        .map(|n| n as u32)
        .collect())
}

fn fit(cli: &Cli, num_box: &str, den_box: &str, margin: usize) -> Result<Outcome> {
    let v = dj::parse_json(&read_stdin()?)?;
    let prefix = dj::prefix_from_value(&v)?;
    let d = prefix.vars();
    let nb = parse_degree_bounds(num_box, d, "--num-box")?;
    let db = parse_degree_bounds(den_box, d, "--den-box")?;
    let gf = rational_fit(&prefix, &nb, &db, margin)?;
    let report = match cli.format {
        Format::Json => dj::gf_to_value(&gf).to_string(),
        Format::Text => gf.to_text(),
    };
    Ok(Outcome::Pass(report))
}

fn szego(cli: &Cli, max_preperiod: usize, max_period: usize) -> Result<Outcome> {
    let v = dj::parse_json(&read_stdin()?)?;
    let seq = match v.get("seq") {
        Some(inner) => dj::scalar_seq_from_value(inner)?,
        None => dj::scalar_seq_from_value(&v)?,
    };
    let form = detect_szego(&seq, max_preperiod, max_period)?;
    let gf = form.to_gf();
    let report = match cli.format {
        Format::Json => dj::sorted_object(vec![
            ("preperiod", dj::scalar_seq_to_value(form.preperiod())),
            ("period", dj::scalar_seq_to_value(form.period())),
            ("gf", dj::gf_to_value(&gf)),
        ])
        .to_string(),
        Format::Text => format!(
            "preperiod: [{}]\nperiod: [{}]\ngf: {}",
            join_scalars(form.preperiod()),
            join_scalars(form.period()),
            gf.to_text()
        ),
    };
    Ok(Outcome::Pass(report))
}

fn join_scalars(xs: &[ExactScalar]) -> String {
    xs.iter()
        .map(format_scalar)
        .collect::<Vec<_>>()
        .join(", ")
}

fn classify_support(cli: &Cli, horizon: usize) -> Result<Outcome> {
    let v = dj::parse_json(&read_stdin()?)?;
    let rec = dj::unirec_from_value(&v)?;
    let init = match v.get("init") {
        Some(inner) => dj::scalar_seq_from_value(inner)?,
        None => Vec::new(),
    };
    let class = support_classify(&rec, &init, horizon)?;
    let report = match cli.format {
        Format::Json => match &class {
            SupportClass::FiniteCertified { bound } => {
                json!({"class": "finite", "bound": bound})
            }
            SupportClass::SyndeticCertified { from, constant } => {
                json!({"class": "syndetic", "from": from, "constant": constant})
            }
            SupportClass::EmpiricalFinite { horizon } => {
                json!({"class": "empirical-finite", "horizon": horizon})
            }
        }
        .to_string(),
        Format::Text => match &class {
            SupportClass::FiniteCertified { bound } => format!("finite bound={bound}"),
            SupportClass::SyndeticCertified { from, constant } => {
                format!("syndetic from={from} constant={constant}")
            }
            SupportClass::EmpiricalFinite { horizon } => {
                format!("empirical-finite horizon={horizon}")
            }
        },
    };
    Ok(Outcome::Pass(report))
}

fn semilinear_gf(cli: &Cli) -> Result<Outcome> {
    let v = dj::parse_json(&read_stdin()?)?;
    let s = dj::semilinear_from_value(&v)?;
    let d = s
        .parts()
        .first()
        .map(|l| l.dim())
        .or_else(|| s.finite().iter().next().map(|p| p.len()))
        .ok_or_else(|| Error::Parse("empty set: dimension unknown".into()))?;
    let dims = box_for(cli, d)?;
    let (gf, unambiguous) = gf_semilinear(&s, &dims)?;
    let report = match cli.format {
        Format::Json => dj::sorted_object(vec![
            ("gf", dj::gf_to_value(&gf)),
            ("unambiguous", Value::Bool(unambiguous)),
            ("verify_box", json!(dims)),
        ])
        .to_string(),
        Format::Text => format!("gf: {}\nunambiguous: {unambiguous}", gf.to_text()),
    };
    Ok(Outcome::Pass(report))
}

fn linsys(cli: &Cli) -> Result<Outcome> {
    let v = dj::parse_json(&read_stdin()?)?;
    let sys = dj::linsys_from_value(&v)?;
    let dims = box_for(cli, sys.vars())?;
    let gf = linear_system_gf(&sys, &dims)?;
    let report = match cli.format {
        Format::Json => dj::sorted_object(vec![
            ("gf", dj::gf_to_value(&gf)),
            ("verified", Value::Bool(true)),
            ("verify_box", json!(dims)),
        ])
        .to_string(),
        Format::Text => format!("gf: {}\nverified: true", gf.to_text()),
    };
    Ok(Outcome::Pass(report))
}

fn curve2(cli: &Cli) -> Result<Outcome> {
    let v = dj::parse_json(&read_stdin()?)?;
    let list = v
        .get("factors")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("expected {\"factors\": [\"poly\", ...]}".into()))?;
    let mut factors = Vec::with_capacity(list.len());
    for f in list {
        let text = f
            .as_str()
            .ok_or_else(|| Error::Parse("factors must be polynomial strings".into()))?;
        factors.push(parse_poly(text, 2)?);
    }
    let dims = box_for(cli, 2)?;
    let report = curve_gf(&factors, &dims)?;
    let rendered = match cli.format {
        Format::Json => {
            let factors_json: Vec<Value> = report
                .factors
                .iter()
                .map(|f| {
                    let class = match &f.classification {
                        FactorClass::IntegerLinear { a, b, c } => {
                            json!({"kind": "line", "a": a, "b": b, "c": c})
                        }
                        FactorClass::FiniteRoots { points } => {
                            let pts: Vec<Value> =
                                points.iter().map(|(x, y)| json!([x, y])).collect();
                            json!({"kind": "finite-roots", "points": pts})
                        }
                        FactorClass::Unresolved { bound } => {
                            json!({"kind": "unresolved", "search_bound": bound})
                        }
                    };
                    dj::sorted_object(vec![
                        ("poly", dj::poly_to_value(&f.poly)),
                        ("class", class),
                    ])
                })
                .collect();
            let outcome = match &report.outcome {
                CurveOutcome::Rational(gf) => {
                    json!({"kind": "rational", "gf": dj::gf_to_value(gf)})
                }
                CurveOutcome::NotRationalSuspected { witness } => {
                    json!({"kind": "not-rational-suspected", "witness": dj::poly_to_value(witness)})
                }
            };
            dj::sorted_object(vec![
                ("factors", Value::Array(factors_json)),
                ("outcome", outcome),
                ("verified", Value::Bool(report.verified)),
                ("verify_box", json!(report.verify_dims)),
            ])
            .to_string()
        }
        Format::Text => {
            let mut lines = Vec::new();
            for f in &report.factors {
                let class = match &f.classification {
                    FactorClass::IntegerLinear { a, b, c } => {
                        format!("line a={a} b={b} c={c}")
                    }
                    FactorClass::FiniteRoots { points } => format!(
                        "finite-roots {{{}}}",
                        points
                            .iter()
                            .map(|(x, y)| format!("({x},{y})"))
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                    FactorClass::Unresolved { bound } => {
                        format!("unresolved (searched to {bound})")
                    }
                };
                lines.push(format!("factor {}: {class}", f.poly.to_text()));
            }
            match &report.outcome {
                CurveOutcome::Rational(gf) => lines.push(format!("gf: {}", gf.to_text())),
                CurveOutcome::NotRationalSuspected { witness } => {
                    lines.push(format!("not rational (suspected): {}", witness.to_text()))
                }
            }
            lines.push(format!("verified: {}", report.verified));
            lines.join("\n")
        }
    };
    // a rational claim that failed its enumeration check is a verification
    // failure; a suspected-non-rational outcome is a finding, not a failure
    if matches!(report.outcome, CurveOutcome::Rational(_)) && !report.verified {
        return Ok(Outcome::VerifyFail(rendered));
    }
    Ok(Outcome::Pass(rendered))
}

fn pipeline_d2(cli: &Cli) -> Result<Outcome> {
    let v = dj::parse_json(&read_stdin()?)?;
    let prefix = dj::prefix_from_value(
        v.get("prefix")
            .ok_or_else(|| Error::Parse("missing field 'prefix'".into()))?,
    )?;
    let rec = dj::multirec_from_value(
        v.get("rec")
            .ok_or_else(|| Error::Parse("missing field 'rec'".into()))?,
    )?;
    let alphabet = match v.get("alphabet") {
        Some(inner) => Some(dj::scalar_seq_from_value(inner)?),
        None => None,
    };
    let report = main_theorem_d2_with(&prefix, &rec, alphabet.as_deref())?;
    let rendered = match cli.format {
        Format::Json => dj::sorted_object(vec![
            ("gf", dj::gf_to_value(&report.gf)),
            ("axis", json!(report.axis)),
            ("m_bound", json!(report.m_bound)),
            ("gamma", dj::scalar_seq_to_value(report.gamma.values())),
            (
                "primes",
                Value::Array(
                    report
                        .cert
                        .primes()
                        .iter()
                        .map(|p| Value::String(p.to_string()))
                        .collect(),
                ),
            ),
            ("verified", Value::Bool(true)),
        ])
        .to_string(),
        Format::Text => format!(
            "gf: {}\naxis: {}\nm-bound: {}\ngamma: [{}]\nprimes: [{}]\nverified: true",
            report.gf.to_text(),
            report.axis,
            report
                .m_bound
                .map(|m| m.to_string())
                .unwrap_or_else(|| "none".into()),
            join_scalars(report.gamma.values()),
            report
                .cert
                .primes()
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
    };
    Ok(Outcome::Pass(rendered))
}

fn demo_np3(cli: &Cli, bound: usize) -> Result<Outcome> {
    let report = np3_demo(bound)?;
    let verified =
        report.zeros_are_diagonal && report.gf.as_ref().map_or(true, |_| report.gf_matches_diagonal);
    let rendered = match cli.format {
        Format::Json => dj::sorted_object(vec![
            ("bound", json!(bound)),
            (
                "zeros",
                Value::Array(report.zeros.iter().map(|z| json!(z)).collect()),
            ),
            ("zeros_are_diagonal", Value::Bool(report.zeros_are_diagonal)),
            (
                "gf",
                report
                    .gf
                    .as_ref()
                    .map(dj::gf_to_value)
                    .unwrap_or(Value::Null),
            ),
            (
                "gf_matches_diagonal",
                Value::Bool(report.gf_matches_diagonal),
            ),
            ("gf_matches_product", Value::Bool(report.gf_matches_product)),
            ("verified", Value::Bool(verified)),
        ])
        .to_string(),
        Format::Text => {
            let gf_line = match &report.gf {
                Some(gf) => format!("gf: {}", gf.to_text()),
                None => "gf: none (box too small to fit)".into(),
            };
            format!(
                "zeros: {} points\nzeros are the diagonal (n,n,0): {}\n{gf_line}\n\
                 gf matches diagonal sum: {}\ngf matches printed product form: {}\nverified: {verified}",
                report.zeros.len(),
                report.zeros_are_diagonal,
                report.gf_matches_diagonal,
                report.gf_matches_product
            )
        }
    };
    if verified {
        Ok(Outcome::Pass(rendered))
    } else {
        Ok(Outcome::VerifyFail(rendered))
    }
}

fn mahler(cli: &Cli, c: &str, horizon: usize) -> Result<Outcome> {
    let c = parse_scalar(c)?;
    if c <= dfrat::scalar::zero() {
        return Err(Error::Parse("--c must be positive".into()));
    }
    let v = dj::parse_json(&read_stdin()?)?;
    let values = match v.get("values") {
        Some(inner) => dj::scalar_seq_from_value(inner)?,
        None => dj::scalar_seq_from_value(&v)?,
    };
    let witness = mahler_growth_witness(&values, &c, horizon);
    let rendered = match cli.format {
        Format::Json => dj::sorted_object(vec![
            ("c", dj::scalar_to_value(&c)),
            ("horizon", json!(horizon)),
            ("witness", witness.map(|w| json!(w)).unwrap_or(Value::Null)),
        ])
        .to_string(),
        Format::Text => match witness {
            Some(w) => format!("witness: {w}"),
            None => "witness: none".into(),
        },
    };
    Ok(Outcome::Pass(rendered))
}
