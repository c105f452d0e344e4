//! Command-line front end. `run` is what the binary calls; `run_with` lets
//! tests swap the normalizer and capture output.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::census::{brute_force_census, count_components, CensusResult, BRUTE_FORCE_LIMIT};
use crate::cohomology::{enumerate_classes, ClassLabel, CohomologyClass};
use crate::curve::{make_curve, quotient_data, CurveKind, RealCurve};
use crate::error::{Error, Result};
use crate::group::{center_real_classes, CentralClass, CentralLabel, GroupSpec};
use crate::sequence::verify_exact_sequence;
use crate::stabilizer::stabilizer_form;
use crate::tables::{pi0_table_report, point_table_report, render_tables, Pi0RowReport, PointRowReport};
use crate::types::enumerate_all_types;
use crate::types::enumerate_types;
use crate::verify::{run_all, Normalizer, SuiteReport, DEFAULT_NORMALIZER};

pub const SEED_ENV: &str = "REAL_BUNDLE_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum OutputFormat {
    Table,
    Json,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(
    name = "real-bundles",
    version,
    about = "Real and pseudo-real bundles over real curves"
)]
struct Cli {
    /// Numerical tolerance for cocycle and rank tests.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tolerance: f64,
    /// Seed for sampled checks (overridden by REAL_BUNDLE_SEED).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CentralArg {
    /// Central class, e.g. +1, -1, e(1/4). Defaults to every class.
    #[arg(long = "c", allow_hyphen_values = true)]
    c: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classes of H¹ over a point.
    PointClasses {
        group: String,
        #[command(flatten)]
        c: CentralArg,
    },
    /// Stabilizer real form and its component group.
    Pi0 {
        group: String,
        class: String,
        #[command(flatten)]
        c: CentralArg,
    },
    /// The four-term sequence of pointed sets.
    Sequence { group: String },
    /// Quotient surface of a real curve.
    Curve { genus: usize, kind: CurveKind, r: usize },
    /// Topological types of bundles over a curve.
    Types {
        group: String,
        /// Curve as g,kind,r, e.g. 3,I,2.
        curve: RealCurve,
        #[command(flatten)]
        c: CentralArg,
        /// Degree window a..b (inclusive).
        #[arg(long, default_value = "-4..4", allow_hyphen_values = true)]
        degrees: String,
    },
    /// Component census on a type I curve, closed form and enumeration.
    Census {
        group: String,
        curve: Option<RealCurve>,
        #[arg(allow_hyphen_values = true)]
        degree: Option<i64>,
        #[arg(long = "curve", conflicts_with = "curve")]
        curve_flag: Option<RealCurve>,
        #[arg(long = "degree", allow_hyphen_values = true, conflicts_with = "degree")]
        degree_flag: Option<i64>,
        #[command(flatten)]
        c: CentralArg,
    },
    /// Self-verification suites.
    Verify {
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Both point tables with discrepancy flags.
    Tables,
}

/// Resolved global options.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CliConfig {
    pub tolerance: f64,
    pub seed: u64,
    pub output_format: OutputFormat,
    pub degree_window: (i64, i64),
}

impl Default for CliConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-8,
            seed: 0,
            output_format: OutputFormat::Table,
            degree_window: (-4, 4),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pi0Output {
    pub group: GroupSpec,
    pub c: CentralClass,
    pub class: ClassLabel,
    pub form: String,
    pub descriptor: crate::stabilizer::RealFormDescriptor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusOutput {
    pub closed_form: CensusResult,
    /// `None` when `r` exceeds the enumeration limit.
    pub brute_force: Option<CensusResult>,
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesOutput {
    pub point_classes: Vec<PointRowReport>,
    pub pi0: Vec<Pi0RowReport>,
}

/// Parses `a..b` into an inclusive window.
pub fn parse_window(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parse(format!("degree window must be a..b, got '{s}'"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(Error::Parse(format!("empty degree window {a}..{b}")));
    }
    Ok((a, b))
}

fn resolve_c(group: &GroupSpec, arg: &CentralArg) -> Result<Option<CentralClass>> {
    let Some(text) = &arg.c else { return Ok(None) };
    let label: CentralLabel = text.parse()?;
    crate::group::central_class(group, label).map(Some)
}

fn classes_for(group: &GroupSpec, c: Option<CentralClass>) -> Vec<CentralClass> {
    match c {
        Some(c) => vec![c],
        None => center_real_classes(group),
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))
}

enum Outcome {
    Ok(String),
    VerifyFailed(String),
}

pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, DEFAULT_NORMALIZER, &mut stdout.lock(), &mut stderr.lock())
}

/// Exit codes: 0 success, 1 verification failure, 2 usage or input error.
pub fn run_with<I, S>(argv: I, normalizer: Normalizer, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let seed = match std::env::var(SEED_ENV) {
        Ok(v) => match v.trim().parse() {
            Ok(s) => s,
            Err(_) => {
                let _ = writeln!(err, "error: {SEED_ENV} must be an unsigned integer, got '{v}'");
                return 2;
            }
        },
        Err(_) => cli.seed.unwrap_or(0),
    };
    if cli.tolerance.is_nan() || cli.tolerance <= 0.0 {
        let _ = writeln!(err, "error: --tolerance must be positive");
        return 2;
    }
    let mut config = CliConfig {
        tolerance: cli.tolerance,
        seed,
        output_format: cli.format,
        ..CliConfig::default()
    };
    match execute(cli.command, &mut config, normalizer) {
        Ok(Outcome::Ok(text)) => {
            let _ = writeln!(out, "{}", text.trim_end());
            0
        }
        Ok(Outcome::VerifyFailed(text)) => {
            let _ = writeln!(out, "{}", text.trim_end());
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(command: Command, config: &mut CliConfig, normalizer: Normalizer) -> Result<Outcome> {
    let format = config.output_format;
    let text = match command {
        Command::PointClasses { group, c } => {
            let group: GroupSpec = group.parse()?;
            let selected = resolve_c(&group, &c)?;
            let centrals = classes_for(&group, selected);
            let mut classes: Vec<CohomologyClass> = Vec::new();
            for central in &centrals {
                classes.extend(enumerate_classes(&group, central)?);
            }
            let show_c = centrals.len() > 1;
            match format {
                OutputFormat::Json => json(&classes)?,
                OutputFormat::Tsv => classes
                    .iter()
                    .map(|k| format!("{}\t{}\t{}", group, k.c, k.label))
                    .collect::<Vec<_>>()
                    .join("\n"),
                OutputFormat::Table => classes
                    .iter()
                    .map(|k| {
                        if show_c {
                            format!("c={}\t{}", k.c, k.label)
                        } else {
                            k.label.to_string()
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
            }
        }
        Command::Pi0 { group, class, c } => {
            let group: GroupSpec = group.parse()?;
            let label: ClassLabel = class.parse()?;
            let selected = resolve_c(&group, &c)?;
            let found = classes_for(&group, selected)
                .iter()
                .filter_map(|central| enumerate_classes(&group, central).ok())
                .flatten()
                .find(|k| k.label == label)
                .ok_or_else(|| Error::UnknownClass {
                    label: label.to_string(),
                    group: group.name(),
                    c: c.c.clone().unwrap_or_else(|| "any".into()),
                })?;
            let descriptor = stabilizer_form(&group, &found)?;
            let output = Pi0Output {
                group,
                c: found.c,
                class: found.label,
                form: descriptor.to_string(),
                descriptor,
            };
            match format {
                OutputFormat::Json => json(&output)?,
                OutputFormat::Tsv => format!(
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    output.group,
                    output.c,
                    output.class,
                    output.form,
                    output.descriptor.pi0_size,
                    output.descriptor.pi0_labels.join(",")
                ),
                OutputFormat::Table => {
                    let mut s = format!(
                        "{} c={} {}: Stab = {}, |pi0| = {} {{{}}}",
                        output.group,
                        output.c,
                        output.class,
                        output.form,
                        output.descriptor.pi0_size,
                        output.descriptor.pi0_labels.join(", ")
                    );
                    if !output.descriptor.tabulated {
                        s.push_str("\nwarning: entry derived, not read from the component table");
                    }
                    s
                }
            }
        }
        Command::Sequence { group } => {
            let group: GroupSpec = group.parse()?;
            let report = verify_exact_sequence(&group)?;
            match format {
                OutputFormat::Json => json(&report)?,
                OutputFormat::Tsv => {
                    let names = ["H1(Z)", "H1_c(G)", "H1(G_ad)", "H2(Z)"];
                    let mut rows: Vec<String> = names
                        .iter()
                        .zip(report.sets())
                        .map(|(n, set)| format!("{n}\t{}", set.join(",")))
                        .collect();
                    rows.push(format!("exact\t{}", report.exactness_ok));
                    rows.join("\n")
                }
                OutputFormat::Table => format!("{report}\n{}", report.paper_display()),
            }
        }
        Command::Curve { genus, kind, r } => {
            let curve = make_curve(genus, kind, r)?;
            let data = quotient_data(&curve);
            match format {
                OutputFormat::Json => json(&data)?,
                OutputFormat::Tsv => {
                    let bounds: Vec<String> = data.boundaries.iter().map(|b| b.to_string()).collect();
                    format!(
                        "{}\t{}\t{}\t{}\t{}",
                        data.curve,
                        data.genus,
                        data.boundaries.len(),
                        data.euler_characteristic(),
                        bounds.join(",")
                    )
                }
                OutputFormat::Table => data.to_string(),
            }
        }
        Command::Types {
            group,
            curve,
            c,
            degrees,
        } => {
            let group: GroupSpec = group.parse()?;
            config.degree_window = parse_window(&degrees)?;
            let window = config.degree_window;
            let types = match resolve_c(&group, &c)? {
                Some(central) => enumerate_types(&group, &curve, &central, window)?,
                None => enumerate_all_types(&group, &curve, window)?,
            };
            match format {
                OutputFormat::Json => json(&types)?,
                OutputFormat::Tsv => types
                    .iter()
                    .map(|t| {
                        let a: Vec<String> = t.alphas.iter().map(|x| x.to_string()).collect();
                        let b: Vec<String> = t.betas.iter().map(|x| x.to_string()).collect();
                        format!("{}\t{}\t{}\t{}", t.c, t.degree, a.join(","), b.join(","))
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
                OutputFormat::Table => {
                    let mut lines: Vec<String> = types.iter().map(|t| t.to_string()).collect();
                    lines.push(format!("{} type(s)", types.len()));
                    lines.join("\n")
                }
            }
        }
        Command::Census {
            group,
            curve,
            degree,
            curve_flag,
            degree_flag,
            c,
        } => {
            let group: GroupSpec = group.parse()?;
            let curve = curve
                .or(curve_flag)
                .ok_or_else(|| Error::Parse("census needs a curve (g,I,r)".into()))?;
            let degree = degree
                .or(degree_flag)
                .ok_or_else(|| Error::Parse("census needs a degree".into()))?;
            let central = resolve_c(&group, &c)?;
            let closed_form = count_components(&group, &curve, degree, central.as_ref())?;
            let brute_force = if curve.r <= BRUTE_FORCE_LIMIT {
                Some(brute_force_census(&group, &curve, degree, central.as_ref())?)
            } else {
                None
            };
            let agree = brute_force.as_ref().map(|b| b.count == closed_form.count);
            let output = CensusOutput {
                closed_form,
                brute_force,
                agree,
            };
            let brute_text = output
                .brute_force
                .as_ref()
                .map_or_else(|| format!("skipped (r > {BRUTE_FORCE_LIMIT})"), |b| b.count.to_string());
            let text = match format {
                OutputFormat::Json => json(&output)?,
                OutputFormat::Tsv => format!(
                    "{}\t{}\t{}\t{}\t{}",
                    group, curve, degree, output.closed_form.count, brute_text
                ),
                OutputFormat::Table => {
                    let mut s = format!(
                        "{}\nclosed-form {}\nbrute-force {}",
                        output.closed_form, output.closed_form.count, brute_text
                    );
                    if let Some(printed) = output.closed_form.printed_formula {
                        s.push_str(&format!(
                            "\nwarning: printed signature count r^(n+1) = {printed}, enumeration gives (n+1)^r = {}",
                            output.closed_form.breakdown.iter().map(|(_, k)| k).sum::<u64>()
                        ));
                    }
                    s
                }
            };
            if output.agree == Some(false) {
                return Ok(Outcome::VerifyFailed(text));
            }
            text
        }
        Command::Verify { samples } => {
            let reports: Vec<SuiteReport> = run_all(samples, config.seed, config.tolerance, normalizer);
            let ok = reports.iter().all(SuiteReport::passed);
            let text = match format {
                OutputFormat::Json => json(&reports)?,
                OutputFormat::Tsv => reports
                    .iter()
                    .map(|r| format!("{}\t{}\t{}\t{}", r.name, r.passed(), r.checks, r.failures.len()))
                    .collect::<Vec<_>>()
                    .join("\n"),
                OutputFormat::Table => reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n"),
            };
            if !ok {
                return Ok(Outcome::VerifyFailed(text));
            }
            text
        }
        Command::Tables => match format {
            OutputFormat::Table => render_tables()?,
            OutputFormat::Json => json(&TablesOutput {
                point_classes: point_table_report(),
                pi0: pi0_table_report()?,
            })?,
            OutputFormat::Tsv => {
                let mut rows = Vec::new();
                for row in point_table_report() {
                    for col in &row.columns {
                        rows.push(format!(
                            "point\t{}\t{}\t{}\t{}\t{}",
                            row.group,
                            col.column,
                            col.printed.join(","),
                            col.computed.join(","),
                            row.status
                        ));
                    }
                }
                for row in pi0_table_report()? {
                    rows.push(format!(
                        "pi0\t{}\t{}\t{}\t{}\t{}\t{}",
                        row.group,
                        row.c,
                        row.class,
                        row.printed.as_deref().unwrap_or("-"),
                        row.computed,
                        row.status
                    ));
                }
                rows.join("\n")
            }
        },
    };
    Ok(Outcome::Ok(text))
}
