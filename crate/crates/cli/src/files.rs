//! Profile, summary and figure CSV formats.
//!
//! Profile CSV (SI units):
//!
//! ```text
//! # name = run-12
//! # nu = 1.5e-5
//! # U_inf = 10
//! # u_tau = 0.36
//! y,u
//! 4.1e-4,5.12
//! ...
//! ```
//!
//! Summary CSV: header `source,re_eff,re_theta,cf`, empty field = absent.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use tbl_drag::{DragSample, FigureTable, LambdaThetaRow, ProfilePoint, VelocityProfile};

use crate::format::{exact, sig9};
use crate::CliError;

/// Identifies an input file in reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDigest {
    pub file_name: String,
    pub rows: usize,
    pub sha256: String,
}

fn digest(path: &Path, bytes: &[u8], rows: usize) -> InputDigest {
    let hash = Sha256::digest(bytes);
    let mut hex = String::with_capacity(64);
    for b in hash.iter() {
        let _ = write!(hex, "{b:02x}");
    }
    InputDigest {
        file_name: path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string()),
        rows,
        sha256: hex,
    }
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn parse_number(text: &str, what: &str, line: u64) -> Result<f64, CliError> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| CliError::Data(format!("line {line}: {what} = {text:?} is not a number")))
}

const PROFILE_KEYS: [&str; 4] = ["name", "nu", "U_inf", "u_tau"];

/// Parses profile CSV text. `fallback_name` is used when the header lacks `name`.
pub fn parse_profile(text: &str, fallback_name: &str) -> Result<VelocityProfile<f64>, CliError> {
    let mut meta: [Option<String>; 4] = Default::default();
    for (i, line) in text.lines().enumerate() {
        let Some(body) = line.trim_start().strip_prefix('#') else {
            if line.trim().is_empty() {
                continue;
            }
            break;
        };
        let Some((k, v)) = body.split_once('=') else {
            continue;
        };
        if let Some(slot) = PROFILE_KEYS.iter().position(|&key| key == k.trim()) {
            if meta[slot].is_some() {
                return Err(CliError::Data(format!(
                    "line {}: duplicate key {}",
                    i + 1,
                    k.trim()
                )));
            }
            meta[slot] = Some(v.trim().to_string());
        }
    }
    let mut scalars = [0.0; 3];
    for (slot, key) in PROFILE_KEYS.iter().enumerate().skip(1) {
        let v = meta[slot]
            .as_deref()
            .ok_or_else(|| CliError::Data(format!("missing header key `{key}`")))?;
        scalars[slot - 1] = v
            .parse()
            .map_err(|_| CliError::Data(format!("header {key} = {v:?} is not a number")))?;
    }
    let name = meta[0].clone().unwrap_or_else(|| fallback_name.to_string());

    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let headers = rdr
        .headers()
        .map_err(|e| CliError::Data(format!("profile header: {e}")))?
        .clone();
    if headers.len() != 2 || &headers[0] != "y" || &headers[1] != "u" {
        return Err(CliError::Data(format!(
            "expected header row `y,u`, found `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut points = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| CliError::Data(format!("profile rows: {e}")))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != 2 {
            return Err(CliError::Data(format!(
                "line {line}: expected 2 fields, found {}",
                rec.len()
            )));
        }
        points.push(ProfilePoint {
            y: parse_number(&rec[0], "y", line)?,
            u: parse_number(&rec[1], "u", line)?,
        });
    }
    VelocityProfile::new(name, scalars[0], scalars[1], scalars[2], points)
        .map_err(|e| CliError::Data(e.to_string()))
}

pub fn read_profile(path: &Path) -> Result<(VelocityProfile<f64>, InputDigest), CliError> {
    let bytes = read_bytes(path)?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| CliError::Data(format!("{}: not UTF-8: {e}", path.display())))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let profile = parse_profile(text, &stem)
        .map_err(|e| CliError::Data(format!("{}: {}", path.display(), e.message())))?;
    let d = digest(path, &bytes, profile.len());
    Ok((profile, d))
}

pub fn write_profile(p: &VelocityProfile<f64>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# name = {}", p.name());
    let _ = writeln!(out, "# nu = {}", exact(p.nu()));
    let _ = writeln!(out, "# U_inf = {}", exact(p.u_inf()));
    let _ = writeln!(out, "# u_tau = {}", exact(p.u_tau()));
    out.push_str("y,u\n");
    for q in p.points() {
        let _ = writeln!(out, "{},{}", exact(q.y), exact(q.u));
    }
    out
}

#[derive(Debug, Deserialize)]
struct SummaryRow {
    source: String,
    re_eff: Option<f64>,
    re_theta: Option<f64>,
    cf: f64,
}

pub fn parse_summary(text: &str) -> Result<Vec<DragSample<f64>>, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr
        .headers()
        .map_err(|e| CliError::Data(format!("summary header: {e}")))?
        .clone();
    for col in ["source", "re_eff", "re_theta", "cf"] {
        if !headers.iter().any(|h| h == col) {
            return Err(CliError::Data(format!(
                "summary CSV missing column `{col}`"
            )));
        }
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| CliError::Data(format!("summary rows: {e}")))?;
        let line = rec.position().map_or(0, |p| p.line());
        let row: SummaryRow = rec
            .deserialize(Some(&headers))
            .map_err(|e| CliError::Data(format!("line {line}: {e}")))?;
        let s = DragSample::new(row.source, row.re_eff, row.re_theta, row.cf)
            .map_err(|e| CliError::Data(format!("line {line}: {e}")))?;
        out.push(s);
    }
    Ok(out)
}

pub fn read_summary(path: &Path) -> Result<(Vec<DragSample<f64>>, InputDigest), CliError> {
    let bytes = read_bytes(path)?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| CliError::Data(format!("{}: not UTF-8: {e}", path.display())))?;
    let samples = parse_summary(text)
        .map_err(|e| CliError::Data(format!("{}: {}", path.display(), e.message())))?;
    let d = digest(path, &bytes, samples.len());
    Ok((samples, d))
}

fn opt(v: Option<f64>, f: fn(f64) -> String) -> String {
    v.map(f).unwrap_or_default()
}

fn csv_text(rows: Vec<Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(&r)
            .map_err(|e| CliError::Data(format!("writing CSV: {e}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Data(format!("writing CSV: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV of UTF-8 fields"))
}

pub fn write_summary(samples: &[DragSample<f64>]) -> Result<String, CliError> {
    let mut rows = vec![vec![
        "source".into(),
        "re_eff".into(),
        "re_theta".into(),
        "cf".into(),
    ]];
    for s in samples {
        rows.push(vec![
            s.source.clone(),
            opt(s.re_eff, exact),
            opt(s.re_theta, exact),
            exact(s.cf),
        ]);
    }
    csv_text(rows)
}

pub fn write_figure(t: &FigureTable<f64>) -> Result<String, CliError> {
    let mut header: Vec<String> = ["source", "re_eff", "re_theta", "cf_obs"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend(t.columns.iter().map(|c| format!("cf_pred_{c}")));
    let mut rows = vec![header];
    for r in &t.rows {
        let mut row = vec![
            r.source.clone(),
            opt(r.re_eff, sig9),
            opt(r.re_theta, sig9),
            sig9(r.cf_obs),
        ];
        row.extend(r.predictions.iter().map(|&p| sig9(p)));
        rows.push(row);
    }
    csv_text(rows)
}

/// Marker for a Λ/θ ratio with θ = 0.
pub const UNDEFINED: &str = "undefined";

pub fn write_lambda_theta(rows: &[LambdaThetaRow<f64>]) -> Result<String, CliError> {
    let mut out = vec![[
        "source",
        "lambda",
        "theta",
        "lambda_over_theta",
        "re_eff",
        "re_theta",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect::<Vec<_>>()];
    for r in rows {
        out.push(vec![
            r.source.clone(),
            sig9(r.length_scale),
            sig9(r.theta),
            r.ratio.map(sig9).unwrap_or_else(|| UNDEFINED.to_string()),
            sig9(r.re_eff),
            sig9(r.re_theta),
        ]);
    }
    csv_text(out)
}
