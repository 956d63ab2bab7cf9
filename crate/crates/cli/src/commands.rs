use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use zerosector::{
    all_roots, annulus_chart, beta0 as beta0_of, breakpoints, certify_sector, classify,
    critical_base, is_unimodal, kurtz_constant, kurtz_constant_in, max_certified_theta, modes,
    paradox_demo, real_root_chart, sharpness_base, sharpness_family, squeeze_b0,
    theta_branch_formulas, theta_of_beta, CertStatus, CoeffSeq, Complex, Decimal, Error, MaxSector,
    Mp, Real, SharpnessBase,
};

use crate::angle::Angle;
use crate::source::CoeffSource;
use crate::{BaseArg, CliError, OutputFormat, RunConfig, SweepKind};

pub const ARTIFACT_VERSION: &str = "1";

pub struct Output {
    pub text: String,
    pub refused: bool,
}

#[derive(Serialize)]
struct Report {
    artifact_version: &'static str,
    digits: u32,
    inputs: Value,
    result: Value,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn json_output(cfg: RunConfig, inputs: Value, result: Value, refused: bool) -> Output {
    let report = Report {
        artifact_version: ARTIFACT_VERSION,
        digits: cfg.digits,
        inputs,
        result,
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    Output { text, refused }
}

/// JSON unless a table was asked for and `table` can render one.
fn emit(
    cfg: RunConfig,
    inputs: Value,
    result: Value,
    refused: bool,
    table: Option<&dyn Fn() -> String>,
) -> Result<Output, CliError> {
    match (cfg.output, table) {
        (OutputFormat::Json, _) => Ok(json_output(cfg, inputs, result, refused)),
        (OutputFormat::Table, Some(render)) => Ok(Output {
            text: render(),
            refused,
        }),
        (OutputFormat::Table, None) => Err(CliError::Usage(
            "table output is not available for this command".into(),
        )),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn mp(digits: u32, s: &str) -> Result<Mp, CliError> {
    Mp::parse_decimal(Decimal(digits), s).map_err(|e| usage(e.to_string()))
}

/// Double precision at 15 digits, decimal arithmetic above.
fn with_precision<T>(
    digits: u32,
    source: &CoeffSource,
    double: impl FnOnce(CoeffSeq<f64>) -> Result<T, CliError>,
    decimal: impl FnOnce(CoeffSeq<Mp>) -> Result<T, CliError>,
) -> Result<T, CliError> {
    let literals = source.literals().map_err(CliError::Failed)?;
    if digits == 15 {
        double(CoeffSeq::parse_decimals(zerosector::Double, &literals)?)
    } else {
        decimal(CoeffSeq::parse_decimals(Decimal(digits), &literals)?)
    }
}

fn f64_coeffs(source: &CoeffSource) -> Result<CoeffSeq<f64>, CliError> {
    let literals = source.literals().map_err(CliError::Failed)?;
    Ok(CoeffSeq::parse_decimals(zerosector::Double, &literals)?)
}

pub fn beta(cfg: RunConfig, source: &CoeffSource, moduli: bool) -> Result<Output, CliError> {
    fn report<R: Real + Serialize>(
        c: &CoeffSeq<R>,
        moduli: bool,
    ) -> Result<(Value, Vec<String>), CliError> {
        let p = c.beta_profile(moduli)?;
        let mut result = to_value(&p);
        result["modes"] = to_value(&modes(c.coeffs()));
        result["unimodal"] = json!(is_unimodal(c.coeffs()));
        result["degree"] = json!(c.degree());
        let rows = p.betas.iter().map(|b| b.to_decimal_string(17)).collect();
        Ok((result, rows))
    }
    let (result, rows) = with_precision(
        cfg.digits,
        source,
        |c| report(&c, moduli),
        |c| report(&c, moduli),
    )?;
    let inputs = json!({ "coeffs": source.describe(), "moduli": moduli });
    let table = || {
        let mut s = format!("{:>4}  {}\n", "j", "beta_j");
        for (j, b) in rows.iter().enumerate() {
            let _ = writeln!(s, "{:>4}  {b}", j + 1);
        }
        s
    };
    emit(cfg, inputs, result, false, Some(&table))
}

pub fn beta0(cfg: RunConfig, theta: Option<Angle>) -> Result<Output, CliError> {
    let Some(theta) = theta else {
        let bp = breakpoints();
        let result = json!({
            "theta0": Angle::from_radians(bp.theta0),
            "theta1": Angle::from_radians(bp.theta1),
            "beta_at_theta0": bp.beta_at_theta0,
            "beta_at_theta1": bp.beta_at_theta1,
        });
        return emit(cfg, json!({ "breakpoints": true }), result, false, None);
    };
    let t = beta0_of(theta.radians)?;
    let result = json!({
        "theta": theta,
        "beta0": t.beta0,
        "branch": t.branch,
        "candidates": {
            "four_cos2": t.four_cos2,
            "one_minus_2cos": t.one_minus_2cos,
            "r": t.r_val,
            "s": t.s_val,
        },
    });
    emit(cfg, json!({ "theta": theta }), result, false, None)
}

pub fn theta(cfg: RunConfig, beta: f64, probe: bool) -> Result<Output, CliError> {
    let th = theta_of_beta(beta)?;
    let mut result = json!({ "beta": beta, "theta": Angle::from_radians(th) });
    if probe {
        result["probe"] = to_value(&theta_branch_formulas(beta)?);
    }
    emit(
        cfg,
        json!({ "beta": beta, "probe": probe }),
        result,
        false,
        None,
    )
}

pub fn certify(
    cfg: RunConfig,
    source: &CoeffSource,
    theta: Option<Angle>,
) -> Result<Output, CliError> {
    let c = f64_coeffs(source)?;
    match theta {
        Some(theta) => {
            let cert = certify_sector(&c, theta.radians)?;
            let refused = cert.status != CertStatus::Certified;
            let mut result = to_value(&cert);
            result["theta"] = to_value(&theta);
            let inputs = json!({ "coeffs": source.describe(), "theta": theta });
            emit(cfg, inputs, result, refused, None)
        }
        None => {
            let m = max_certified_theta(&c)?;
            let refused = matches!(m, MaxSector::BelowTable { .. });
            let mut result = to_value(&m);
            if let MaxSector::Sector { theta, .. } = m {
                result["theta"] = to_value(&Angle::from_radians(theta));
            }
            let inputs = json!({ "coeffs": source.describe(), "max": true });
            emit(cfg, inputs, result, refused, None)
        }
    }
}

pub fn sharpness(
    cfg: RunConfig,
    theta: Angle,
    base: Option<BaseArg>,
    n: u32,
    degree: usize,
) -> Result<Output, CliError> {
    let t = beta0_of(theta.radians)?;
    let base = match base {
        Some(BaseArg::G) => SharpnessBase::G,
        Some(BaseArg::H) => SharpnessBase::H,
        Some(BaseArg::J) => SharpnessBase::J,
        Some(BaseArg::K) => SharpnessBase::K,
        None => SharpnessBase::for_branch(t.branch),
    };
    let (base_coeffs, base_beta) = sharpness_base(theta.radians, base)?;
    let c = sharpness_family(theta.radians, base, n, degree)?;
    let p = c.beta_profile(false)?;
    let rs = all_roots(&c)?;
    let target = Complex::from_polar(1.0, theta.radians);
    let nearest = rs
        .roots
        .iter()
        .map(|z| (z - target).norm())
        .fold(f64::INFINITY, f64::min);
    let result = json!({
        "theta": theta,
        "base": base,
        "base_coeffs": base_coeffs.coeffs(),
        "base_min_beta": base_beta,
        "coeffs": c.coeffs(),
        "min_beta": p.min_beta,
        "beta0": t.beta0,
        "branch": t.branch,
        "min_beta_minus_beta0": p.min_beta - t.beta0,
        "nearest_root_to_boundary": nearest,
        "min_arg": Angle::from_radians(rs.min_arg),
    });
    let inputs = json!({ "theta": theta, "base": base, "n": n, "degree": degree });
    emit(cfg, inputs, result, false, None)
}

pub fn kurtz(
    cfg: RunConfig,
    source: Option<&CoeffSource>,
    real_chart: bool,
) -> Result<Output, CliError> {
    let Some(source) = source else {
        let k = kurtz_constant();
        let mut result = to_value(&k);
        if cfg.digits > 15 {
            result["value_decimal"] = to_value(&kurtz_constant_in::<Mp>(Decimal(cfg.digits)));
        }
        return emit(cfg, json!({}), result, false, None);
    };
    let c = f64_coeffs(source)?;
    let inputs = json!({
        "coeffs": source.describe(),
        "chart": if real_chart { "real" } else { "annuli" },
    });
    let chart = if real_chart {
        real_root_chart(&c).map(|r| to_value(&r))
    } else {
        annulus_chart(&c).map(|r| to_value(&r))
    };
    match chart {
        Ok(result) => emit(cfg, inputs, result, false, None),
        Err(e @ (Error::ProfileTooSmall { .. } | Error::KurtzConditionFails { .. })) => {
            let result = json!({ "refused": e.to_string() });
            emit(cfg, inputs, result, true, None)
        }
        Err(e) => Err(e.into()),
    }
}

fn modulus<R: Real>(z: &Complex<R>) -> R {
    let (x, y) = (z.re.abs(), z.im.abs());
    let big = x.clone().max_of(y.clone());
    if big.is_zero() {
        return big;
    }
    let q = x.min_of(y) / big.clone();
    big * (R::one() + q.clone() * q).sqrt()
}

struct RootRow {
    re: Value,
    im: Value,
    modulus: f64,
    arg_over_pi: f64,
    residual: f64,
}

fn root_rows<R: Real + Serialize>(c: &CoeffSeq<R>) -> Result<(Vec<RootRow>, Value), CliError> {
    let rs = all_roots(c)?;
    let abs = CoeffSeq::new(c.coeffs().iter().map(|v| v.abs()).collect())?;
    let rows = rs
        .roots
        .iter()
        .map(|z| {
            let m = modulus(z);
            let bound = abs.eval_real(&m);
            let residual = (modulus(&c.eval(z)) / bound).to_f64();
            RootRow {
                re: to_value(&z.re),
                im: to_value(&z.im),
                modulus: m.to_f64(),
                arg_over_pi: z.im.to_f64().atan2(z.re.to_f64()) / PI,
                residual,
            }
        })
        .collect();
    let summary = json!({
        "degree": c.degree(),
        "residual_bound": rs.residual_bound,
        "min_arg": Angle::from_radians(rs.min_arg),
        "iterations": rs.iterations,
    });
    Ok((rows, summary))
}

pub fn roots(cfg: RunConfig, source: &CoeffSource) -> Result<Output, CliError> {
    let (rows, mut result) =
        with_precision(cfg.digits, source, |c| root_rows(&c), |c| root_rows(&c))?;
    result["roots"] = Value::Array(
        rows.iter()
            .map(|r| json!({ "re": r.re, "im": r.im, "residual": r.residual }))
            .collect(),
    );
    let table = || {
        let mut s = format!(
            "{:>4}  {:>24}  {:>24}  {:>12}  {:>10}  {:>9}\n",
            "k", "re", "im", "|z|", "arg/pi", "residual"
        );
        for (k, r) in rows.iter().enumerate() {
            let show = |v: &Value| match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(
                s,
                "{k:>4}  {:>24}  {:>24}  {:>12.6e}  {:>10.6}  {:>9.2e}",
                show(&r.re),
                show(&r.im),
                r.modulus,
                r.arg_over_pi,
                r.residual
            );
        }
        s
    };
    emit(
        cfg,
        json!({ "coeffs": source.describe() }),
        result,
        false,
        Some(&table),
    )
}

/// `decimals` places after the point, cut rather than rounded.
fn truncated(x: &Mp, decimals: usize) -> String {
    let s = x.to_decimal_string(decimals + 12);
    match s.find('.') {
        Some(dot) if !s.contains('e') => s[..(dot + 1 + decimals).min(s.len())].to_string(),
        _ => s,
    }
}

fn critical_table(bases: &[zerosector::CriticalBase]) -> String {
    let mut s = String::new();
    for parity in [1, 0] {
        s.push_str(if parity == 1 { "odd l\n" } else { "even l\n" });
        for cb in bases.iter().filter(|cb| cb.l % 2 == parity) {
            let _ = writeln!(s, "  l = {:<3} b0 = {}", cb.l, truncated(&cb.b0, 25));
        }
    }
    s
}

pub fn constant_ratio(
    cfg: RunConfig,
    critical: Option<usize>,
    squeeze: bool,
    classify_args: Option<Vec<String>>,
    lmax: usize,
) -> Result<Output, CliError> {
    let digits = cfg.digits;
    if let Some(l) = critical {
        let cb = critical_base(l, digits)?;
        let inputs = json!({ "critical": l });
        let row = vec![cb.clone()];
        let table = || critical_table(&row);
        return emit(cfg, inputs, to_value(&cb), false, Some(&table));
    }
    if squeeze {
        if lmax < 3 {
            return Err(usage("--lmax must be at least 3"));
        }
        let br = squeeze_b0(lmax, digits)?;
        let inputs = json!({ "squeeze": true, "lmax": lmax });
        let table = || {
            let shown: Vec<_> = br.bases.iter().filter(|cb| cb.l >= 4).cloned().collect();
            let mid = (br.lower.clone() + br.upper.clone()) / Mp::from_i64(Decimal(digits), 2);
            let half = br.width.clone() / Mp::from_i64(Decimal(digits), 2);
            format!(
                "{}|B0 - {}| < {}\n",
                critical_table(&shown),
                truncated(&mid, 25),
                half.to_decimal_string(2)
            )
        };
        return emit(cfg, inputs, to_value(&br), false, Some(&table));
    }
    if let Some(args) = classify_args {
        let b = mp(digits, &args[0])?;
        let degree: usize = args[1]
            .parse()
            .map_err(|_| usage(format!("degree {:?} is not an integer", args[1])))?;
        let cl = classify(&b, degree, digits)?;
        let inputs = json!({ "b": b, "degree": degree });
        let mut result = to_value(&cl);
        result["b"] = to_value(&b);
        result["beta"] = to_value(&(b.clone() * b));
        return emit(cfg, inputs, result, false, None);
    }
    // No operation flag: the two critical-base tables.
    let br = squeeze_b0(lmax.max(3), digits)?;
    let inputs = json!({ "lmax": lmax });
    let table = || {
        let shown: Vec<_> = br.bases.iter().filter(|cb| cb.l >= 4).cloned().collect();
        critical_table(&shown)
    };
    emit(cfg, inputs, to_value(&br.bases), false, Some(&table))
}

pub fn demo_paradox(cfg: RunConfig) -> Result<Output, CliError> {
    let r = paradox_demo()?;
    let mut result = to_value(&r);
    result["witness_theta"] = to_value(&Angle::from_radians(r.witness_theta));
    emit(cfg, json!({}), result, false, None)
}

pub struct SweepArgs {
    pub kind: SweepKind,
    pub from: Option<String>,
    pub to: Option<String>,
    pub steps: usize,
    pub degree: usize,
    pub theta: Angle,
    pub count: usize,
    pub seed: u64,
    pub csv: Option<PathBuf>,
}

/// Positive sequence of the given degree with every β_j in [floor, 1.06·floor]
/// before a ±0.2% coefficient jitter.
fn random_sequence(rng: &mut ChaCha8Rng, degree: usize, floor: f64) -> Vec<f64> {
    let mode = rng.gen_range(degree / 4..=3 * degree / 4) as f64;
    let log_betas: Vec<f64> = (1..degree)
        .map(|_| floor.ln() + rng.gen_range(0.0..0.06))
        .collect();
    let mean = log_betas.iter().sum::<f64>() / log_betas.len() as f64;
    let mut slope = (mode - 0.5) * mean;
    let mut logc = vec![0.0];
    for lb in &log_betas {
        let next = logc.last().unwrap() + slope;
        logc.push(next);
        slope -= lb;
    }
    let last = logc.last().unwrap() + slope;
    logc.push(last);
    let peak = logc.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    logc.iter()
        .map(|l| (l - peak + rng.gen_range(-0.002..0.002)).exp())
        .collect()
}

fn grid(from: f64, to: f64, steps: usize, i: usize) -> f64 {
    if steps == 1 {
        from
    } else {
        from + (to - from) * i as f64 / (steps - 1) as f64
    }
}

pub fn sweep(cfg: RunConfig, a: SweepArgs) -> Result<Output, CliError> {
    if a.steps == 0 || a.count == 0 {
        return Err(usage("--steps and --count must be positive"));
    }
    let (header, rows, summary, inputs): (Vec<&str>, Vec<Vec<String>>, Value, Value) = match a.kind
    {
        SweepKind::Theta => {
            let parse = |s: &Option<String>, d: &str| -> Result<Angle, CliError> {
                s.as_deref()
                    .unwrap_or(d)
                    .parse()
                    .map_err(|e: crate::angle::AngleError| usage(e.to_string()))
            };
            let (from, to) = (parse(&a.from, "0.5pi")?, parse(&a.to, "0.999pi")?);
            let rows: Vec<Vec<String>> = (0..a.steps)
                .into_par_iter()
                .map(|i| {
                    let th = grid(from.radians, to.radians, a.steps, i);
                    match beta0_of(th) {
                        Ok(t) => vec![
                            i.to_string(),
                            th.to_string(),
                            (th / PI).to_string(),
                            t.beta0.to_string(),
                            format!("{:?}", t.branch),
                        ],
                        Err(e) => vec![
                            i.to_string(),
                            th.to_string(),
                            (th / PI).to_string(),
                            String::new(),
                            e.to_string(),
                        ],
                    }
                })
                .collect();
            let inputs = json!({ "kind": "theta", "from": from, "to": to, "steps": a.steps });
            (
                vec!["index", "theta", "theta_over_pi", "beta0", "branch"],
                rows,
                json!({}),
                inputs,
            )
        }
        SweepKind::B => {
            let digits = cfg.digits;
            let from = mp(digits, a.from.as_deref().unwrap_or("1.79"))?;
            let to = mp(digits, a.to.as_deref().unwrap_or("1.81"))?;
            let degree = a.degree;
            let steps = a.steps;
            let rows: Vec<Vec<String>> = (0..steps)
                .into_par_iter()
                .map(|i| {
                    let t = if steps == 1 {
                        Mp::from_i64(Decimal(digits), 0)
                    } else {
                        Mp::from_i64(Decimal(digits), i as i64)
                            / Mp::from_i64(Decimal(digits), steps as i64 - 1)
                    };
                    let b = from.clone() + (to.clone() - from.clone()) * t;
                    let bs = b.to_decimal_string(20);
                    match classify(&b, degree, digits) {
                        Ok(c) => vec![
                            i.to_string(),
                            bs,
                            format!("{:?}", c.verdict),
                            c.l_witness.map(|l| l.to_string()).unwrap_or_default(),
                        ],
                        Err(e) => vec![i.to_string(), bs, format!("error: {e}"), String::new()],
                    }
                })
                .collect();
            let inputs =
                json!({ "kind": "b", "from": from, "to": to, "steps": steps, "degree": degree });
            (
                vec!["index", "b", "verdict", "l_witness"],
                rows,
                json!({}),
                inputs,
            )
        }
        SweepKind::Soundness => {
            let theta = a.theta.radians;
            let floor = beta0_of(theta)?.beta0;
            let seed = a.seed;
            let outcomes: Vec<Result<Vec<String>, String>> = (0..a.count)
                .into_par_iter()
                .map(|i| {
                    // One stream per index keeps the rows independent of scheduling.
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(i as u64);
                    let degree = rng.gen_range(6..=40);
                    let c = CoeffSeq::new(random_sequence(&mut rng, degree, floor))
                        .map_err(|e| e.to_string())?;
                    let cert = certify_sector(&c, theta).map_err(|e| e.to_string())?;
                    let certified = cert.status == CertStatus::Certified;
                    let rs = all_roots(&c).map_err(|e| e.to_string())?;
                    let sound = !certified || rs.min_arg > theta;
                    Ok(vec![
                        i.to_string(),
                        degree.to_string(),
                        cert.min_beta_found.unwrap_or(f64::NAN).to_string(),
                        certified.to_string(),
                        rs.min_arg.to_string(),
                        sound.to_string(),
                    ])
                })
                .collect();
            let rows: Vec<Vec<String>> = outcomes
                .into_iter()
                .collect::<Result<_, _>>()
                .map_err(CliError::Failed)?;
            let certified = rows.iter().filter(|r| r[3] == "true").count();
            let violations = rows.iter().filter(|r| r[5] == "false").count();
            let summary = json!({
                "beta0": floor,
                "cases": rows.len(),
                "certified": certified,
                "violations": violations,
            });
            let inputs =
                json!({ "kind": "soundness", "theta": a.theta, "count": a.count, "seed": seed });
            (
                vec![
                    "index",
                    "degree",
                    "min_beta",
                    "certified",
                    "min_arg",
                    "sound",
                ],
                rows,
                summary,
                inputs,
            )
        }
    };

    let csv = || {
        let mut s = header.join(",");
        s.push('\n');
        for r in &rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    };
    match &a.csv {
        Some(path) if path.as_os_str() == "-" => {
            return Ok(Output {
                text: csv(),
                refused: false,
            })
        }
        Some(path) => std::fs::write(path, csv())
            .map_err(|e| CliError::Failed(format!("writing {}: {e}", path.display())))?,
        None => {}
    }
    let result = json!({
        "summary": summary,
        "columns": header,
        "rows": rows,
    });
    let table = || {
        let widths: Vec<usize> = (0..header.len())
            .map(|k| {
                rows.iter()
                    .map(|r| r[k].len())
                    .chain([header[k].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: Vec<&str>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let mut s = line(header.clone());
        s.push('\n');
        for r in &rows {
            s.push_str(&line(r.iter().map(String::as_str).collect()));
            s.push('\n');
        }
        s
    };
    emit(cfg, inputs, result, false, Some(&table))
}
