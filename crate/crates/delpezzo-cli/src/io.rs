//! Input parsing and output serialization. Inputs are JSON objects with
//! exact "p/q" coefficient strings; every map in the output is ordered,
//! so identical inputs produce byte-identical outputs.

use delpezzo::matrix::Mat;
use delpezzo::quadric::{Pencil, QuadraticForm};
use delpezzo::scalar::{fmt_rat, parse_cyc5, Cyc5, Rat};
use delpezzo::{line_from_equations, line_from_points, parse_rat, ProjLine, QMat};
use serde::Deserialize;
use std::collections::BTreeMap;

/// Process exit codes. Verdict-carrying commands exit with the status
/// code; everything else exits 0 on success.
pub mod exit_codes {
    pub const RAN: i32 = 0;
    pub const ERROR: i32 = 2;
    pub const BAD_NUMBER: i32 = 3;
    pub const BAD_MONOMIAL: i32 = 4;
    pub const DEPENDENT_POINTS: i32 = 5;
    pub const BAD_SCHEMA: i32 = 6;
    pub const UNSTABLE: i32 = 10;
    pub const STABLE: i32 = 11;
    pub const SEMISTABLE: i32 = 12;
    pub const UNDETERMINED: i32 = 13;
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<delpezzo::Error> for CliError {
    fn from(e: delpezzo::Error) -> Self {
        let code = match &e {
            delpezzo::Error::BadNumber(_) => exit_codes::BAD_NUMBER,
            delpezzo::Error::BadMonomial(_) => exit_codes::BAD_MONOMIAL,
            delpezzo::Error::DependentPoints => exit_codes::DEPENDENT_POINTS,
            _ => exit_codes::ERROR,
        };
        CliError::new(code, e.to_string())
    }
}

#[derive(Deserialize)]
pub struct InputFile {
    pub schema: u32,
    #[serde(default = "default_field")]
    pub field: String,
    pub quadrics: Vec<BTreeMap<String, String>>,
    #[serde(default)]
    pub line: Option<LineSpec>,
    #[serde(default)]
    pub transform: Option<Vec<Vec<String>>>,
}

fn default_field() -> String {
    "rational".to_string()
}

#[derive(Deserialize)]
pub struct LineSpec {
    #[serde(default)]
    pub points: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub equations: Option<Vec<BTreeMap<String, String>>>,
}

/// Parsed input: a rational pencil with an optional line, or a
/// cyclotomic pencil (transform checks only).
#[allow(clippy::large_enum_variant)]
pub enum ParsedInput {
    Rational {
        pencil: Pencil<Rat>,
        line: Option<ProjLine>,
        transform: Option<QMat>,
    },
    Cyclotomic {
        pencil: Pencil<Cyc5>,
        transform: Option<Mat<Cyc5>>,
    },
}

fn parse_monomial_key(key: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::new(exit_codes::BAD_MONOMIAL, format!("bad monomial key: {key}"));
    let (a, b) = key.split_once('*').ok_or_else(bad)?;
    let idx = |s: &str| -> Result<usize, CliError> {
        let t = s.trim();
        let d = t.strip_prefix('x').ok_or_else(bad)?;
        let k: usize = d.parse().map_err(|_| bad())?;
        if k > 5 {
            return Err(bad());
        }
        Ok(k)
    };
    let (i, j) = (idx(a)?, idx(b)?);
    Ok(if i <= j { (i, j) } else { (j, i) })
}

fn parse_quadric_rational(map: &BTreeMap<String, String>) -> Result<QuadraticForm<Rat>, CliError> {
    let mut coeffs: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
    for (key, value) in map {
        let (i, j) = parse_monomial_key(key)?;
        let c = parse_rat(value)
            .map_err(|_| CliError::new(exit_codes::BAD_NUMBER, format!("malformed number: {value}")))?;
        if coeffs.insert((i, j), c).is_some() {
            return Err(CliError::new(
                exit_codes::BAD_MONOMIAL,
                format!("conflicting coefficients for monomial x{i}*x{j}"),
            ));
        }
    }
    QuadraticForm::from_monomial_coeffs(&coeffs).map_err(CliError::from)
}

fn parse_quadric_cyclotomic(map: &BTreeMap<String, String>) -> Result<QuadraticForm<Cyc5>, CliError> {
    let mut coeffs: BTreeMap<(usize, usize), Cyc5> = BTreeMap::new();
    for (key, value) in map {
        let (i, j) = parse_monomial_key(key)?;
        let c = parse_cyc5(value)
            .map_err(|_| CliError::new(exit_codes::BAD_NUMBER, format!("malformed number: {value}")))?;
        if coeffs.insert((i, j), c).is_some() {
            return Err(CliError::new(
                exit_codes::BAD_MONOMIAL,
                format!("conflicting coefficients for monomial x{i}*x{j}"),
            ));
        }
    }
    QuadraticForm::from_monomial_coeffs(&coeffs).map_err(CliError::from)
}

fn parse_line(spec: &LineSpec) -> Result<ProjLine, CliError> {
    match (&spec.points, &spec.equations) {
        (Some(points), None) => {
            if points.len() != 2 {
                return Err(CliError::new(
                    exit_codes::BAD_SCHEMA,
                    "line.points must contain exactly two 6-vectors",
                ));
            }
            let parse_vec = |v: &Vec<String>| -> Result<Vec<Rat>, CliError> {
                if v.len() != 6 {
                    return Err(CliError::new(
                        exit_codes::BAD_SCHEMA,
                        "line points must have 6 coordinates",
                    ));
                }
                v.iter()
                    .map(|s| {
                        parse_rat(s).map_err(|_| {
                            CliError::new(exit_codes::BAD_NUMBER, format!("malformed number: {s}"))
                        })
                    })
                    .collect()
            };
            let p = parse_vec(&points[0])?;
            let q = parse_vec(&points[1])?;
            line_from_points(&p, &q).map_err(|e| match e {
                delpezzo::Error::DependentPoints => {
                    CliError::new(exit_codes::DEPENDENT_POINTS, "dependent points")
                }
                other => other.into(),
            })
        }
        (None, Some(eqs)) => {
            if eqs.len() != 4 {
                return Err(CliError::new(
                    exit_codes::BAD_SCHEMA,
                    "line.equations must contain exactly four linear forms",
                ));
            }
            let mut rows = Vec::new();
            for eq in eqs {
                let mut row = vec![Rat::from_integer(0.into()); 6];
                for (key, value) in eq {
                    let t = key.trim();
                    let k: usize = t
                        .strip_prefix('x')
                        .and_then(|d| d.parse().ok())
                        .filter(|&k| k <= 5)
                        .ok_or_else(|| {
                            CliError::new(exit_codes::BAD_MONOMIAL, format!("bad variable: {key}"))
                        })?;
                    row[k] = parse_rat(value).map_err(|_| {
                        CliError::new(exit_codes::BAD_NUMBER, format!("malformed number: {value}"))
                    })?;
                }
                rows.push(row);
            }
            line_from_equations(&rows).map_err(CliError::from)
        }
        _ => Err(CliError::new(
            exit_codes::BAD_SCHEMA,
            "line must contain either points or equations",
        )),
    }
}

fn parse_matrix<F, P>(rows: &[Vec<String>], parse: P) -> Result<Mat<F>, CliError>
where
    F: delpezzo::Field,
    P: Fn(&str) -> Result<F, CliError>,
{
    if rows.len() != 6 || rows.iter().any(|r| r.len() != 6) {
        return Err(CliError::new(
            exit_codes::BAD_SCHEMA,
            "transform must be a 6x6 matrix",
        ));
    }
    let mut parsed = Vec::new();
    for r in rows {
        let mut row = Vec::new();
        for s in r {
            row.push(parse(s)?);
        }
        parsed.push(row);
    }
    Mat::from_rows(parsed).map_err(CliError::from)
}

pub fn parse_input(text: &str) -> Result<ParsedInput, CliError> {
    let file: InputFile = serde_json::from_str(text)
        .map_err(|e| CliError::new(exit_codes::BAD_SCHEMA, format!("malformed input: {e}")))?;
    if file.schema != 1 {
        return Err(CliError::new(
            exit_codes::BAD_SCHEMA,
            format!("unsupported schema version {}", file.schema),
        ));
    }
    if file.quadrics.len() != 2 {
        return Err(CliError::new(
            exit_codes::BAD_SCHEMA,
            "quadrics must contain exactly two forms",
        ));
    }
    match file.field.as_str() {
        "rational" => {
            let a = parse_quadric_rational(&file.quadrics[0])?;
            let b = parse_quadric_rational(&file.quadrics[1])?;
            let pencil = Pencil::new(a, b)?;
            let line = file.line.as_ref().map(parse_line).transpose()?;
            let transform = file
                .transform
                .as_ref()
                .map(|rows| {
                    parse_matrix(rows, |s| {
                        parse_rat(s).map_err(|_| {
                            CliError::new(exit_codes::BAD_NUMBER, format!("malformed number: {s}"))
                        })
                    })
                })
                .transpose()?;
            Ok(ParsedInput::Rational {
                pencil,
                line,
                transform,
            })
        }
        "cyclotomic5" => {
            let a = parse_quadric_cyclotomic(&file.quadrics[0])?;
            let b = parse_quadric_cyclotomic(&file.quadrics[1])?;
            let pencil = Pencil::new(a, b)?;
            let transform = file
                .transform
                .as_ref()
                .map(|rows| {
                    parse_matrix(rows, |s| {
                        parse_cyc5(s).map_err(|_| {
                            CliError::new(exit_codes::BAD_NUMBER, format!("malformed number: {s}"))
                        })
                    })
                })
                .transpose()?;
            Ok(ParsedInput::Cyclotomic { pencil, transform })
        }
        other => Err(CliError::new(
            exit_codes::BAD_SCHEMA,
            format!("unsupported field: {other}"),
        )),
    }
}

/// JSON value helpers with deterministic ordering.
pub fn json_rat(r: &Rat) -> serde_json::Value {
    serde_json::Value::String(fmt_rat(r))
}

pub fn json_matrix(m: &QMat) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = (0..m.nrows())
        .map(|i| {
            serde_json::Value::Array((0..m.ncols()).map(|j| json_rat(m.get(i, j))).collect())
        })
        .collect();
    serde_json::Value::Array(rows)
}

pub fn json_certificate(c: &delpezzo::Certificate) -> serde_json::Value {
    use serde_json::{json, Value};
    match c {
        delpezzo::Certificate::Destabilizer {
            one_ps,
            frame,
            weight,
        } => json!({
            "type": "destabilizer",
            "one_ps": one_ps.weights().to_vec(),
            "frame": frame.as_ref().map(json_matrix).unwrap_or(Value::Null),
            "weight": fmt_rat(weight),
        }),
        delpezzo::Certificate::SemistableLp(w) => json!({
            "type": "semistable_lp",
            "pencil_multipliers": w
                .pencil_multipliers
                .iter()
                .map(|(s, c)| json!({"state": s.to_vec(), "coeff": fmt_rat(c)}))
                .collect::<Vec<_>>(),
            "line_multipliers": w
                .line_multipliers
                .iter()
                .map(|((i, j), c)| json!({"state": [i, j], "coeff": fmt_rat(c)}))
                .collect::<Vec<_>>(),
            "level": fmt_rat(&w.level),
        }),
        delpezzo::Certificate::Rule(s) => json!({"type": "rule", "citation": s}),
    }
}

pub fn status_exit(status: delpezzo::Status) -> i32 {
    match status {
        delpezzo::Status::Stable => exit_codes::STABLE,
        delpezzo::Status::Semistable | delpezzo::Status::Polystable => exit_codes::SEMISTABLE,
        delpezzo::Status::Unstable => exit_codes::UNSTABLE,
        delpezzo::Status::Undetermined => exit_codes::UNDETERMINED,
    }
}

pub fn json_verdict(command: &str, v: &delpezzo::Verdict) -> (serde_json::Value, i32) {
    use serde_json::json;
    let code = status_exit(v.status);
    let value = json!({
        "schema": 1,
        "command": command,
        "status": v.status.as_str(),
        "t": fmt_rat(&v.t),
        "certificate": v.certificate.as_ref().map(json_certificate),
        "trail": v.trail,
        "exit_code": code,
    });
    (value, code)
}
