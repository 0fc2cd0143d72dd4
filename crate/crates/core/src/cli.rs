//! The `trifin` command line: argument definitions and subcommand drivers.
//!
//! Every driver writes its payload to `out` and returns whether the checks it
//! performs passed. Output is deterministic for fixed flags.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::algebra::LaurentPoly;
use crate::domain_shape::{
    dds_eval, fds_eval, hilbert_distance, truncated_ball, ConvexBody, Lift, PolygonJson,
};
use crate::error::{Error, Result};
use crate::flat_metric::{finsler_delta_eval, translation_length};
use crate::numfmt::sig12;
use crate::spectral::{self, jordan_projection, lattice_stats, trace_top_degrees};
use crate::triangle_group::{Gen, NumericRep, Param, Presentation, SymbolicRep, Word};

/// Largest word length accepted by `jordan-scan`.
pub const MAX_SCAN_LEN: usize = 20;

#[derive(Debug, Parser)]
#[command(name = "trifin", version, about = "Hitchin triangle group representations and their Finsler limits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print generator matrices, relation checks and the triple ratio.
    RepCheck(RepCheckArgs),
    /// Top t-degrees of tr ρ_t(w) and tr ρ_t(w⁻¹).
    TraceDegrees(WordArgs),
    /// Jordan projections of all even conjugacy classes up to a length.
    JordanScan(ScanArgs),
    /// Translation lengths of w and w⁻¹ in the flat triangular metric.
    FlatLength(WordArgs),
    /// Compare log λ₁(w)/log λ₁(w⁻¹) against the predicted degree ratio.
    VerifyLimit(LimitArgs),
    /// Domain-shape metrics on a polygon read from JSON.
    Funk(FunkArgs),
    /// Gauges of truncated Ţiţeica unit balls against the limiting norm.
    Titeica(TiteicaArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LiftKind {
    Flat,
    Titeica,
}

impl From<LiftKind> for Lift {
    fn from(k: LiftKind) -> Lift {
        match k {
            LiftKind::Flat => Lift::Flat,
            LiftKind::Titeica => Lift::Titeica,
        }
    }
}

#[derive(Debug, Args)]
pub struct RepCheckArgs {
    /// Triangle group orders, e.g. 4,4,4.
    #[arg(long)]
    pub pqr: Presentation,
    /// Emit exact Laurent data as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct WordArgs {
    #[arg(long)]
    pub pqr: Presentation,
    /// Word over the letters a, b, c.
    #[arg(long, default_value = "")]
    pub word: Word,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("param").required(true).args(["t", "t2"])))]
pub struct ScanArgs {
    #[arg(long)]
    pub pqr: Presentation,
    /// Square root of the triple ratio.
    #[arg(long)]
    pub t: Option<f64>,
    /// Triple ratio.
    #[arg(long)]
    pub t2: Option<f64>,
    #[arg(long)]
    pub max_len: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write the table here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Fail unless every point satisfies |x − y| below this tolerance.
    #[arg(long)]
    pub check_diagonal: Option<f64>,
    /// Fail unless the 90th-percentile lattice distance is below this value.
    #[arg(long)]
    pub check_lattice: Option<f64>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("param").required(true).args(["t", "t2"])))]
pub struct LimitArgs {
    #[arg(long)]
    pub pqr: Presentation,
    #[arg(long)]
    pub word: Word,
    /// Comma separated values of t.
    #[arg(long, value_delimiter = ',')]
    pub t: Vec<f64>,
    /// Comma separated values of t².
    #[arg(long, value_delimiter = ',')]
    pub t2: Vec<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct FunkArgs {
    /// JSON file `{"vertices": [[x, y], ...], "base": [x, y]}`.
    #[arg(long)]
    pub polygon: PathBuf,
    #[arg(long, value_enum, default_value = "flat")]
    pub lift: LiftKind,
    /// Interior point, defaults to the base point.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub point: Option<Complex64>,
    /// Tangent vector for F^DS.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub direction: Option<Complex64>,
    /// Second interior point for d^DS and the Hilbert distance.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub to: Option<Complex64>,
}

#[derive(Debug, Args)]
pub struct TiteicaArgs {
    /// Comma separated truncation radii.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
    pub radii: Vec<f64>,
    #[arg(long, default_value_t = 512)]
    pub samples: usize,
    /// Comma separated direction angles in radians.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true,
          default_value = "0,1.5707963267948966,0.4487989505128276")]
    pub angles: Vec<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

fn parse_point(s: &str) -> std::result::Result<Complex64, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y, got `{s}`"))?;
    let parse = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
    Ok(Complex64::new(parse(x)?, parse(y)?))
}

/// Runs a parsed command. `out` receives the payload, `err` receives
/// summaries that would otherwise interleave with a table on stdout.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    match &cli.command {
        Command::RepCheck(a) => cmd_rep_check(a, out),
        Command::TraceDegrees(a) => cmd_trace_degrees(a, out),
        Command::JordanScan(a) => cmd_jordan_scan(a, out, err),
        Command::FlatLength(a) => cmd_flat_length(a, out),
        Command::VerifyLimit(a) => cmd_verify_limit(a, out),
        Command::Funk(a) => cmd_funk(a, out),
        Command::Titeica(a) => cmd_titeica(a, out),
    }
}

fn param_from(t: Option<f64>, t2: Option<f64>) -> Result<Param> {
    match (t, t2) {
        (Some(t), None) => Ok(Param::T(t)),
        (None, Some(t2)) => Ok(Param::T2(t2)),
        _ => Err(Error::InvalidParameter("exactly one of --t or --t2 is required".into())),
    }
}

pub fn cmd_rep_check(args: &RepCheckArgs, out: &mut dyn Write) -> Result<bool> {
    let rep = SymbolicRep::new(args.pqr)?;
    let checks = rep.verify_relations();
    let passed = checks.iter().all(|c| c.passed);
    let triple = rep.triple_ratio().ok();
    if args.json {
        let gens: Vec<_> = Gen::ALL
            .iter()
            .map(|&g| json!({ "generator": g.to_char().to_string(), "matrix": matrix_json(rep.generator(g)) }))
            .collect();
        let relations: Vec<_> = checks
            .iter()
            .map(|c| json!({ "relation": c.name, "passed": c.passed }))
            .collect();
        let payload = json!({
            "presentation": args.pqr.to_string(),
            "field_order": rep.field().order(),
            "min_poly": rep.field().min_poly_string(),
            "generators": gens,
            "relations": relations,
            "triple_ratio": triple,
        });
        serde_json::to_writer_pretty(&mut *out, &payload)?;
        writeln!(out)?;
        return Ok(passed);
    }
    writeln!(out, "presentation {}", args.pqr)?;
    writeln!(
        out,
        "field Q(2cos(pi/{})), minimal polynomial {}",
        rep.field().order(),
        rep.field().min_poly_string()
    )?;
    for g in Gen::ALL {
        writeln!(out, "rho({}) =", g.to_char())?;
        let m = rep.generator(g);
        for i in 0..3 {
            let row: Vec<String> = (0..3).map(|j| m.get(i, j).to_string()).collect();
            writeln!(out, "  {}", row.join(" | "))?;
        }
    }
    for c in &checks {
        writeln!(out, "relation {}: {}", c.name, if c.passed { "pass" } else { "FAIL" })?;
    }
    match &triple {
        Some(tr) => writeln!(out, "triple ratio {tr}")?,
        None => writeln!(out, "triple ratio undefined")?,
    }
    Ok(passed)
}

fn matrix_json(m: &crate::algebra::Mat3<LaurentPoly>) -> serde_json::Value {
    let rows: Vec<Vec<&LaurentPoly>> = (0..3).map(|i| (0..3).map(|j| m.get(i, j)).collect()).collect();
    serde_json::to_value(rows).unwrap_or(serde_json::Value::Null)
}

pub fn cmd_trace_degrees(args: &WordArgs, out: &mut dyn Write) -> Result<bool> {
    if !args.word.is_even() {
        return Err(Error::OddWord(args.word.to_string()));
    }
    let rep = SymbolicRep::new(args.pqr)?;
    let deg = trace_top_degrees(&rep, &args.word)?;
    if args.json {
        let payload = json!({
            "presentation": args.pqr.to_string(),
            "word": args.word.to_string(),
            "d1": deg.d1,
            "d2": deg.d2,
            "trace": rep.evaluate(&args.word).trace(),
            "inverse_trace": rep.evaluate(&args.word.reversed()).trace(),
        });
        serde_json::to_writer_pretty(&mut *out, &payload)?;
        writeln!(out)?;
    } else {
        writeln!(out, "word {}", args.word)?;
        writeln!(out, "d1 {}", deg.d1)?;
        writeln!(out, "d2 {}", deg.d2)?;
    }
    Ok(true)
}

pub fn cmd_jordan_scan(args: &ScanArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    if args.max_len > MAX_SCAN_LEN {
        return Err(Error::InvalidParameter(format!(
            "--max-len {} exceeds the cap of {MAX_SCAN_LEN}",
            args.max_len
        )));
    }
    let rep = NumericRep::new(args.pqr, param_from(args.t, args.t2)?)?;
    let points = spectral::jordan_scan(&rep, args.max_len)?;

    let mut table = Vec::new();
    match args.format {
        Format::Csv => spectral::write_csv(&points, &mut table)?,
        Format::Json => spectral::write_json(&points, &mut table)?,
    }
    let summary_sink: &mut dyn Write = match &args.output {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            f.write_all(&table)?;
            f.flush()?;
            out
        }
        None => {
            out.write_all(&table)?;
            err
        }
    };

    let mut passed = true;
    let diag = points.iter().map(|p| (p.x - p.y).abs()).fold(0.0, f64::max);
    let log_t = rep.t().ln();
    write!(summary_sink, "classes {} max|x-y| {}", points.len(), sig12(diag))?;
    if log_t > 0.0 {
        let stats = lattice_stats(&points, log_t)?;
        write!(summary_sink, " lattice_mean {} lattice_p90 {}", sig12(stats.mean), sig12(stats.p90))?;
        if let Some(limit) = args.check_lattice {
            passed &= stats.p90 < limit;
        }
    } else {
        write!(summary_sink, " lattice undefined")?;
        if args.check_lattice.is_some() {
            passed = false;
        }
    }
    writeln!(summary_sink)?;
    if let Some(tol) = args.check_diagonal {
        passed &= diag < tol;
    }
    Ok(passed)
}

pub fn cmd_flat_length(args: &WordArgs, out: &mut dyn Write) -> Result<bool> {
    let length = translation_length(&args.pqr, &args.word)?;
    let inverse_length = translation_length(&args.pqr, &args.word.reversed())?;
    // Even words also get compared against the trace degrees.
    let degrees = if args.word.is_even() {
        let rep = SymbolicRep::new(args.pqr)?;
        Some(trace_top_degrees(&rep, &args.word)?)
    } else {
        None
    };
    let consistent = degrees
        .map(|d| length as i64 == 3 * d.d1 as i64 && inverse_length as i64 == 3 * d.d2 as i64)
        .unwrap_or(true);
    if args.json {
        let payload = json!({
            "presentation": args.pqr.to_string(),
            "word": args.word.to_string(),
            "length": length,
            "inverse_length": inverse_length,
            "degrees": degrees.map(|d| [d.d1, d.d2]),
            "consistent": consistent,
        });
        serde_json::to_writer_pretty(&mut *out, &payload)?;
        writeln!(out)?;
    } else {
        writeln!(out, "word {}", args.word)?;
        writeln!(out, "length {length}")?;
        writeln!(out, "inverse_length {inverse_length}")?;
        if let Some(d) = degrees {
            writeln!(out, "3*degrees {} {}", 3 * d.d1, 3 * d.d2)?;
            writeln!(out, "consistent {consistent}")?;
        }
    }
    Ok(consistent)
}

/// One row of `verify-limit`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitRow {
    pub t2: f64,
    pub log_l1: f64,
    pub log_l1_inverse: f64,
    pub ratio: Option<f64>,
    pub predicted: Option<f64>,
    pub residual: Option<f64>,
}

/// Rows sorted by increasing parameter, plus whether |residual| strictly
/// decreases along them (vacuously true with fewer than two defined rows).
pub fn limit_table(pres: &Presentation, w: &Word, params: &[Param]) -> Result<(Vec<LimitRow>, bool)> {
    if !w.is_even() {
        return Err(Error::OddWord(w.to_string()));
    }
    let degrees = trace_top_degrees(&SymbolicRep::new(*pres)?, w)?;
    let predicted = (degrees.d2 != 0).then(|| degrees.d1 as f64 / degrees.d2 as f64);
    let mut values: Vec<f64> = params.iter().map(|p| p.t2()).collect();
    values.sort_by(f64::total_cmp);
    values.dedup();
    let mut rows = Vec::with_capacity(values.len());
    for t2 in values {
        let rep = NumericRep::new(*pres, Param::T2(t2))?;
        let p = jordan_projection(&rep, w)?;
        let ratio = (p.x.abs() > 1e-9 && p.y.abs() > 1e-9).then(|| p.x / p.y);
        let residual = match (ratio, predicted) {
            (Some(r), Some(q)) => Some(r - q),
            _ => None,
        };
        rows.push(LimitRow {
            t2,
            log_l1: p.x,
            log_l1_inverse: p.y,
            ratio,
            predicted,
            residual,
        });
    }
    let residuals: Vec<f64> = rows.iter().filter_map(|r| r.residual.map(f64::abs)).collect();
    let shrinking = residuals.windows(2).all(|w| w[1] < w[0]);
    Ok((rows, shrinking))
}

fn opt_sig12(x: Option<f64>) -> String {
    x.map(sig12).unwrap_or_else(|| "undefined".to_string())
}

fn round12(x: f64) -> f64 {
    sig12(x).parse().unwrap_or(x)
}

pub fn cmd_verify_limit(args: &LimitArgs, out: &mut dyn Write) -> Result<bool> {
    let params: Vec<Param> = match (args.t.is_empty(), args.t2.is_empty()) {
        (false, true) => args.t.iter().map(|&t| Param::T(t)).collect(),
        (true, false) => args.t2.iter().map(|&t2| Param::T2(t2)).collect(),
        _ => return Err(Error::InvalidParameter("exactly one of --t or --t2 is required".into())),
    };
    let (rows, shrinking) = limit_table(&args.pqr, &args.word, &params)?;
    match args.format {
        Format::Csv => {
            writeln!(out, "t2,log_l1,log_l1_inverse,ratio,predicted,residual")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    sig12(r.t2),
                    sig12(r.log_l1),
                    sig12(r.log_l1_inverse),
                    opt_sig12(r.ratio),
                    opt_sig12(r.predicted),
                    opt_sig12(r.residual)
                )?;
            }
            writeln!(out, "# residuals strictly decreasing: {shrinking}")?;
        }
        Format::Json => {
            let rounded: Vec<LimitRow> = rows
                .iter()
                .map(|r| LimitRow {
                    t2: r.t2,
                    log_l1: round12(r.log_l1),
                    log_l1_inverse: round12(r.log_l1_inverse),
                    ratio: r.ratio.map(round12),
                    predicted: r.predicted.map(round12),
                    residual: r.residual.map(round12),
                })
                .collect();
            let payload = json!({
                "presentation": args.pqr.to_string(),
                "word": args.word.to_string(),
                "rows": rounded,
                "residuals_decreasing": shrinking,
            });
            serde_json::to_writer_pretty(&mut *out, &payload)?;
            writeln!(out)?;
        }
    }
    Ok(shrinking)
}

pub fn cmd_funk(args: &FunkArgs, out: &mut dyn Write) -> Result<bool> {
    let json: PolygonJson = serde_json::from_reader(File::open(&args.polygon)?)?;
    let body = ConvexBody::from_json(&json)?;
    let lift = Lift::from(args.lift);
    let x = args.point.unwrap_or(body.base());
    writeln!(out, "point {},{}", sig12(x.re), sig12(x.im))?;
    if let Some(v) = args.direction {
        writeln!(out, "fds {}", sig12(fds_eval(&body, lift, x, v)?))?;
    }
    if let Some(y) = args.to {
        writeln!(out, "to {},{}", sig12(y.re), sig12(y.im))?;
        writeln!(out, "dds {}", sig12(dds_eval(&body, lift, x, y)?))?;
        writeln!(out, "dds_reverse {}", sig12(dds_eval(&body, lift, y, x)?))?;
        writeln!(out, "hilbert {}", sig12(hilbert_distance(&body, x, y)?))?;
    }
    Ok(true)
}

/// One row of `titeica`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaugeRow {
    pub radius: f64,
    pub angle: f64,
    pub gauge: f64,
    pub limit: f64,
}

/// Gauges of the truncated balls at unit vectors e^{iθ}, read through the
/// differential v ↦ v̄ of the developing map at the base point. Passes when
/// gauges never increase with the radius and never drop below the limit.
pub fn titeica_table(radii: &[f64], samples: usize, angles: &[f64]) -> Result<(Vec<GaugeRow>, bool)> {
    let mut radii = radii.to_vec();
    radii.sort_by(f64::total_cmp);
    radii.dedup();
    let balls = radii
        .iter()
        .map(|&d| truncated_ball(d, samples))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    let mut passed = true;
    for &angle in angles {
        let v = Complex64::from_polar(1.0, angle);
        let limit = finsler_delta_eval(Complex64::new(1.0, 0.0), v);
        let mut prev = f64::INFINITY;
        for (ball, &radius) in balls.iter().zip(&radii) {
            let gauge = ball.gauge(v.conj());
            passed &= gauge <= prev + 1e-12 && gauge >= limit - 1e-9;
            prev = gauge;
            rows.push(GaugeRow {
                radius,
                angle,
                gauge,
                limit,
            });
        }
    }
    Ok((rows, passed))
}

pub fn cmd_titeica(args: &TiteicaArgs, out: &mut dyn Write) -> Result<bool> {
    let (rows, passed) = titeica_table(&args.radii, args.samples, &args.angles)?;
    match args.format {
        Format::Csv => {
            writeln!(out, "radius,angle,gauge,limit,difference")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    sig12(r.radius),
                    sig12(r.angle),
                    sig12(r.gauge),
                    sig12(r.limit),
                    sig12(r.gauge - r.limit)
                )?;
            }
        }
        Format::Json => {
            let rounded: Vec<GaugeRow> = rows
                .iter()
                .map(|r| GaugeRow {
                    radius: r.radius,
                    angle: r.angle,
                    gauge: round12(r.gauge),
                    limit: round12(r.limit),
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &json!({ "rows": rounded, "passed": passed }))?;
            writeln!(out)?;
        }
    }
    Ok(passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<(bool, String, String)> {
        let cli = Cli::try_parse_from(std::iter::once("trifin").chain(args.iter().copied()))
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let ok = run(&cli, &mut out, &mut err)?;
        Ok((ok, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap()))
    }

    #[test]
    fn rep_check_reports() {
        let (ok, out, _) = run_args(&["rep-check", "--pqr", "4,4,4"]).unwrap();
        assert!(ok);
        assert!(out.contains("triple ratio [1]t^2\n"), "{out}");
        let (ok, out, _) = run_args(&["rep-check", "--pqr", "2,3,7"]).unwrap();
        assert!(ok);
        assert!(out.contains("triple ratio undefined"));
        assert!(run_args(&["rep-check", "--pqr", "2,2,2"]).is_err());
    }

    #[test]
    fn parameter_tag_is_required() {
        assert!(run_args(&["jordan-scan", "--pqr", "4,4,4", "--max-len", "2"]).is_err());
        assert!(run_args(&["jordan-scan", "--pqr", "4,4,4", "--t", "2", "--t2", "4", "--max-len", "2"]).is_err());
        assert!(run_args(&["jordan-scan", "--pqr", "4,4,4", "--t2", "4", "--max-len", "21"]).is_err());
    }

    #[test]
    fn trace_degrees_rejects_odd_words() {
        assert!(matches!(
            run_args(&["trace-degrees", "--pqr", "4,4,4", "--word", "abc"]),
            Err(Error::OddWord(_))
        ));
        let (_, out, _) = run_args(&["trace-degrees", "--pqr", "4,4,4", "--word", "ab"]).unwrap();
        assert_eq!(out, "word ab\nd1 0\nd2 0\n");
    }

    #[test]
    fn points_parse() {
        assert_eq!(parse_point("-0.5, 2").unwrap(), Complex64::new(-0.5, 2.0));
        assert!(parse_point("1").is_err());
    }
}
