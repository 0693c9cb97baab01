//! Command-line front end for the stability toolkit: exact verdicts with
//! machine-checkable certificates, wall scans, Hilbert-Mumford weights,
//! the Sarkisov curve data and the CM coefficient ledger.

use clap::{Parser, Subcommand};
use delpezzo::scalar::fmt_rat;
use delpezzo::{parse_rat, OnePS, Rat, TorusStatus};
use delpezzo_cli::io::{self, exit_codes, json_verdict, parse_input, CliError, ParsedInput};
use serde_json::json;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "delpezzo",
    about = "Exact stability verdicts for pencils of quadrics in P^5 with a marked line",
    after_help = "Exit codes: 0 ran; 10 Unstable; 11 Stable; 12 Semistable/Polystable; \
                  13 Undetermined; 2 module error; 3 malformed number; 4 bad monomial key; \
                  5 dependent line points; 6 malformed input schema."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report to this path as well as stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Output format: json (default) or text.
    #[arg(long, global = true, default_value = "json")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a pencil of quadrics by discriminant multiplicities.
    ClassifyPencil { input: PathBuf },
    /// Full rule pipeline for a (pencil, line) pair at a parameter t.
    ClassifyPair {
        input: PathBuf,
        #[arg(long)]
        t: String,
    },
    /// Hilbert-Mumford weight of the pair under a diagonal 1-PS.
    Weight {
        input: PathBuf,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        t: String,
    },
    /// Torus (semi)stability at t over the diagonal torus.
    TorusCheck {
        input: PathBuf,
        #[arg(long)]
        t: String,
    },
    /// The minimizing diagonal 1-PS direction and its weight.
    #[command(name = "worst-1ps")]
    Worst1ps {
        input: PathBuf,
        #[arg(long)]
        t: String,
    },
    /// Pair verdicts over a grid of t values.
    WallScan {
        input: PathBuf,
        /// Comma-separated exact rationals, e.g. 1/100,1/50,15/194.
        #[arg(long)]
        grid: String,
    },
    /// The K-stability verdict at the ledger threshold t0 = 15/194.
    KVerdict { input: PathBuf },
    /// The space curve of the pair: minors, degrees, quadric rank,
    /// degree and genus.
    Sarkisov { input: PathBuf },
    /// Hilbert function values of the associated curve ideal.
    Hilbert {
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_degree: usize,
    },
    /// The CM coefficients a = 15, b = 194 and threshold t0 = a/b.
    Cm,
    /// Check whether the transform in the input preserves the pencil.
    Transform { input: PathBuf },
}

fn parse_t(s: &str) -> Result<Rat, CliError> {
    parse_rat(s).map_err(|_| CliError::new(exit_codes::BAD_NUMBER, format!("malformed t: {s}")))
}

fn parse_lambda(s: &str) -> Result<OnePS, CliError> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::new(exit_codes::BAD_NUMBER, format!("malformed lambda: {s}")))?;
    if parts.len() != 6 {
        return Err(CliError::new(
            exit_codes::BAD_SCHEMA,
            "lambda must have six integer weights",
        ));
    }
    OnePS::new([parts[0], parts[1], parts[2], parts[3], parts[4], parts[5]])
        .map_err(CliError::from)
}

fn load(path: &PathBuf) -> Result<ParsedInput, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(exit_codes::ERROR, format!("cannot read {}: {e}", path.display())))?;
    parse_input(&text)
}

fn rational_pair(
    input: ParsedInput,
) -> Result<(delpezzo::Pencil<Rat>, delpezzo::ProjLine), CliError> {
    match input {
        ParsedInput::Rational {
            pencil,
            line: Some(line),
            ..
        } => Ok((pencil, line)),
        ParsedInput::Rational { line: None, .. } => Err(CliError::new(
            exit_codes::BAD_SCHEMA,
            "this command needs a line in the input",
        )),
        ParsedInput::Cyclotomic { .. } => Err(CliError::new(
            exit_codes::ERROR,
            "this command supports the rational field only",
        )),
    }
}

struct Report {
    value: serde_json::Value,
    text: String,
    exit: i32,
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::ClassifyPencil { input } => {
            let parsed = load(input)?;
            let pencil = match parsed {
                ParsedInput::Rational { pencil, .. } => pencil,
                ParsedInput::Cyclotomic { .. } => {
                    return Err(CliError::new(
                        exit_codes::ERROR,
                        "classification needs rational coefficients (factorization over Q)",
                    ))
                }
            };
            let class = delpezzo::classify_pencil(&pencil);
            let exit = match class.verdict {
                delpezzo::PencilVerdict::Stable => exit_codes::STABLE,
                delpezzo::PencilVerdict::Polystable
                | delpezzo::PencilVerdict::SemistableNotStable => exit_codes::SEMISTABLE,
                _ => exit_codes::UNSTABLE,
            };
            let value = json!({
                "schema": 1,
                "command": "classify-pencil",
                "verdict": format!("{:?}", class.verdict),
                "root_profile": class.root_profile,
                "certificate": class.certificate,
                "exit_code": exit,
            });
            let text = format!(
                "{:?} (root profile {:?}): {}",
                class.verdict, class.root_profile, class.certificate
            );
            Ok(Report { value, text, exit })
        }
        Command::ClassifyPair { input, t } => {
            let t = parse_t(t)?;
            let (pencil, line) = rational_pair(load(input)?)?;
            let v = delpezzo::pair_verdict(&pencil, &line, &t)?;
            let (value, exit) = json_verdict("classify-pair", &v);
            let text = format!("{} at t = {}", v.status.as_str(), fmt_rat(&t));
            Ok(Report { value, text, exit })
        }
        Command::Weight { input, lambda, t } => {
            let t = parse_t(t)?;
            let lam = parse_lambda(lambda)?;
            let (pencil, line) = rational_pair(load(input)?)?;
            let mu_p = delpezzo::mu_pencil(&pencil, &lam);
            let mu_l = delpezzo::mu_line(&line, &lam);
            let mu = delpezzo::mu_t(&pencil, &line, &lam, &t);
            let value = json!({
                "schema": 1,
                "command": "weight",
                "lambda": lam.weights().to_vec(),
                "t": fmt_rat(&t),
                "mu_pencil": mu_p,
                "mu_line": mu_l,
                "mu_t": fmt_rat(&mu),
            });
            let text = fmt_rat(&mu);
            Ok(Report {
                value,
                text,
                exit: exit_codes::RAN,
            })
        }
        Command::TorusCheck { input, t } => {
            let t = parse_t(t)?;
            let (pencil, line) = rational_pair(load(input)?)?;
            let v = delpezzo::torus_verdict(&pencil, &line, &t)?;
            let exit = match v.status {
                TorusStatus::Stable => exit_codes::STABLE,
                TorusStatus::Semistable => exit_codes::SEMISTABLE,
                TorusStatus::Unstable => exit_codes::UNSTABLE,
            };
            let value = json!({
                "schema": 1,
                "command": "torus-check",
                "status": format!("{:?}", v.status),
                "t": fmt_rat(&t),
                "min_value": fmt_rat(&v.min_value),
                "direction": v.direction.as_ref().map(|d| d.weights().to_vec()),
                "ss_witness": v
                    .ss_witness
                    .as_ref()
                    .map(|w| io::json_certificate(&delpezzo::Certificate::SemistableLp(w.clone()))),
                "exit_code": exit,
            });
            let text = format!(
                "{:?} at t = {} (minimum {})",
                v.status,
                fmt_rat(&t),
                fmt_rat(&v.min_value)
            );
            Ok(Report { value, text, exit })
        }
        Command::Worst1ps { input, t } => {
            let t = parse_t(t)?;
            let (pencil, line) = rational_pair(load(input)?)?;
            let (dir, val) = delpezzo::worst_torus_1ps(&pencil, &line, &t)?;
            let value = json!({
                "schema": 1,
                "command": "worst-1ps",
                "t": fmt_rat(&t),
                "direction": dir.as_ref().map(|d| d.weights().to_vec()),
                "value": fmt_rat(&val),
            });
            let text = match &dir {
                Some(d) => format!("{:?} with value {}", d.weights(), fmt_rat(&val)),
                None => format!("only the trivial direction attains {}", fmt_rat(&val)),
            };
            Ok(Report {
                value,
                text,
                exit: exit_codes::RAN,
            })
        }
        Command::WallScan { input, grid } => {
            let ts: Vec<Rat> = grid
                .split(',')
                .map(|s| parse_t(s.trim()))
                .collect::<Result<_, _>>()?;
            let (pencil, line) = rational_pair(load(input)?)?;
            let scan = delpezzo::wall_scan(&pencil, &line, &ts)?;
            let rows: Vec<serde_json::Value> = scan
                .rows
                .iter()
                .map(|(t, v)| {
                    json!({
                        "t": fmt_rat(t),
                        "status": v.status.as_str(),
                        "certificate": v.certificate.as_ref().map(io::json_certificate),
                        "trail": v.trail,
                    })
                })
                .collect();
            let value = json!({
                "schema": 1,
                "command": "wall-scan",
                "rows": rows,
                "changes": scan.changes,
            });
            let mut text = String::from("t            status\n");
            for (t, v) in &scan.rows {
                text.push_str(&format!("{:<12} {}\n", fmt_rat(t), v.status.as_str()));
            }
            if scan.changes.is_empty() {
                text.push_str("no status changes\n");
            } else {
                for i in &scan.changes {
                    text.push_str(&format!(
                        "status change between t = {} and t = {}\n",
                        fmt_rat(&scan.rows[*i].0),
                        fmt_rat(&scan.rows[*i + 1].0)
                    ));
                }
            }
            Ok(Report {
                value,
                text,
                exit: exit_codes::RAN,
            })
        }
        Command::KVerdict { input } => {
            let (pencil, line) = rational_pair(load(input)?)?;
            let v = delpezzo::k_stability_verdict(&pencil, &line)?;
            let (value, exit) = json_verdict("k-verdict", &v);
            let k_word = match v.status {
                delpezzo::Status::Stable => "K-stable",
                delpezzo::Status::Semistable => "K-semistable",
                delpezzo::Status::Polystable => "K-polystable",
                delpezzo::Status::Unstable => "K-unstable",
                delpezzo::Status::Undetermined => "undetermined",
            };
            let text = format!("{} at t0 = {}", k_word, fmt_rat(&v.t));
            Ok(Report { value, text, exit })
        }
        Command::Sarkisov { input } => {
            let (pencil, line) = rational_pair(load(input)?)?;
            let sp = delpezzo::standardize_pair(&pencil, &line)?;
            let curve = delpezzo::curve_from_pair(&sp);
            let check = delpezzo::hilbert_polynomial_check(&curve);
            let normality = delpezzo::quadric_normality(&curve);
            let value = json!({
                "schema": 1,
                "command": "sarkisov",
                "m12": curve.m12.to_string(),
                "m13": curve.m13.to_string(),
                "m23": curve.m23.to_string(),
                "generator_degrees": curve.generator_degrees(),
                "quadric": match normality {
                    delpezzo::QuadricNormality::Rank4Smooth => "rank4_smooth",
                    delpezzo::QuadricNormality::Rank3Cone => "rank3_cone",
                    delpezzo::QuadricNormality::Abnormal => "abnormal",
                },
                "degree": check.as_ref().ok().map(|(d, _)| *d),
                "genus": check.as_ref().ok().map(|(_, g)| *g),
                "hilbert_check": match &check {
                    Ok(_) => "curve".to_string(),
                    Err(e) => e.to_string(),
                },
            });
            let text = match check {
                Ok((d, g)) => format!("curve of degree {d} and genus {g}; quadric {normality:?}"),
                Err(e) => format!("{e}; quadric {normality:?}"),
            };
            Ok(Report {
                value,
                text,
                exit: exit_codes::RAN,
            })
        }
        Command::Hilbert { input, max_degree } => {
            let (pencil, line) = rational_pair(load(input)?)?;
            let sp = delpezzo::standardize_pair(&pencil, &line)?;
            let curve = delpezzo::curve_from_pair(&sp);
            let values: Vec<serde_json::Value> = (0..=*max_degree)
                .map(|d| json!([d, delpezzo::hilbert_function(&curve, d)]))
                .collect();
            let value = json!({
                "schema": 1,
                "command": "hilbert",
                "values": values,
            });
            let text = (0..=*max_degree)
                .map(|d| format!("HF({d}) = {}", delpezzo::hilbert_function(&curve, d)))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report {
                value,
                text,
                exit: exit_codes::RAN,
            })
        }
        Command::Cm => {
            let two = delpezzo::testing_curve_two();
            let cm = delpezzo::cm_coefficients();
            let value = json!({
                "schema": 1,
                "command": "cm",
                "a": fmt_rat(&cm.a),
                "b": fmt_rat(&cm.b),
                "t0": fmt_rat(&cm.t0),
                "testing_curve_one": fmt_rat(&delpezzo::testing_curve_one()),
                "testing_curve_two_intermediates": two
                    .intermediates
                    .iter()
                    .map(fmt_rat)
                    .collect::<Vec<_>>(),
                "testing_curve_two_degree": fmt_rat(&two.cm_degree),
            });
            let text = format!(
                "a = {}\nb = {}\nt0 = {}",
                fmt_rat(&cm.a),
                fmt_rat(&cm.b),
                fmt_rat(&cm.t0)
            );
            Ok(Report {
                value,
                text,
                exit: exit_codes::RAN,
            })
        }
        Command::Transform { input } => {
            let parsed = load(input)?;
            let preserved = match parsed {
                ParsedInput::Rational {
                    pencil,
                    transform: Some(g),
                    ..
                } => pencil.preserved_by(&g)?,
                ParsedInput::Cyclotomic {
                    pencil,
                    transform: Some(g),
                } => pencil.preserved_by(&g)?,
                _ => {
                    return Err(CliError::new(
                        exit_codes::BAD_SCHEMA,
                        "transform command needs a transform matrix in the input",
                    ))
                }
            };
            let value = json!({
                "schema": 1,
                "command": "transform",
                "preserved": preserved,
            });
            let text = if preserved {
                "the transform preserves the pencil".to_string()
            } else {
                "the transform does not preserve the pencil".to_string()
            };
            Ok(Report {
                value,
                text,
                exit: exit_codes::RAN,
            })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let rendered = if cli.format == "text" {
                report.text.clone()
            } else {
                serde_json::to_string_pretty(&report.value).expect("serializable")
            };
            println!("{rendered}");
            if let Some(path) = &cli.output {
                let json = serde_json::to_string_pretty(&report.value).expect("serializable");
                if let Err(e) = std::fs::write(path, json + "\n") {
                    eprintln!("cannot write {}: {e}", path.display());
                    std::process::exit(exit_codes::ERROR);
                }
            }
            std::process::exit(report.exit);
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}
