//! The `toda-mass` command line.
//!
//! Exit codes: 0 on success, 1 on a domain error (the error kind is printed
//! on stderr), 2 on a usage error. The default output format can be set
//! with `TODA_MASS_FORMAT`.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::forbidden::{
    check_compactness, exact_label, gamma_i_with, ForbiddenError, ForbiddenOptions, ForbiddenValue,
    Nearest, Provenance, VortexConfig,
};
use crate::gamma::{enumerate_gamma, is_special};
use crate::liouville::{
    self, format_complex, mass_quantization_check, parse_coefficients, ramification, RationalMap,
};
use crate::mass::{format_rational, parse_rational, CartanMatrix, MassExpr, Rational};
use crate::pohozaev::{pi_residual, reflect, Component, MassPair};
use crate::rigidity::{mk_matrix, mk_nonsingular_certificate, MKInput, MKMatrix};
use crate::Error;

/// Version of the JSON output layout.
pub const SCHEMA_VERSION: u32 = 1;
pub const FORMAT_ENV: &str = "TODA_MASS_FORMAT";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "toda-mass",
    version,
    about = "Local masses, forbidden sets and Liouville checks for rank-2 Toda systems"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = FORMAT_ENV, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

// Parsed once per process, so variant size is irrelevant.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Subcommand)]
enum Command {
    /// List the admissible local-mass pairs of an algebra.
    Gamma {
        #[arg(long, value_parser = parse_algebra)]
        algebra: CartanMatrix,
        /// Evaluate at this mu1 (exact rational or decimal).
        #[arg(long, value_parser = parse_q, requires = "mu2", allow_hyphen_values = true)]
        mu1: Option<Rational>,
        #[arg(long, value_parser = parse_q, requires = "mu1", allow_hyphen_values = true)]
        mu2: Option<Rational>,
    },
    /// Check a pair against the Pohozaev identity and show its reflections.
    PiCheck {
        #[arg(long, value_parser = parse_algebra)]
        algebra: CartanMatrix,
        /// First mass, e.g. "2*mu1 + 2*mu2".
        #[arg(long, allow_hyphen_values = true)]
        s1: MassExpr,
        #[arg(long, allow_hyphen_values = true)]
        s2: MassExpr,
        #[arg(long, value_parser = parse_q, requires = "mu2", allow_hyphen_values = true)]
        mu1: Option<Rational>,
        #[arg(long, value_parser = parse_q, requires = "mu1", allow_hyphen_values = true)]
        mu2: Option<Rational>,
    },
    /// Print the M_K determinants for every admissible pair.
    Mk {
        #[arg(long, value_parser = parse_algebra)]
        algebra: CartanMatrix,
        /// A single tuple "l11,l12,l21,l22" instead of the whole table.
        #[arg(long, value_parser = parse_tuple, allow_hyphen_values = true)]
        tuple: Option<MKInput>,
    },
    /// Enumerate a forbidden set up to a cutoff.
    Forbidden {
        /// Vortex configuration (JSON); "-" reads stdin.
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), default_value_t = 1)]
        component: u8,
        #[arg(long)]
        cutoff: f64,
        #[arg(long, default_value_t = crate::forbidden::DEFAULT_MAX_VORTICES)]
        max_vortices: usize,
        #[arg(long, default_value_t = crate::forbidden::DEFAULT_MAX_PROVENANCE)]
        max_provenance: usize,
    },
    /// Decide the compactness hypotheses for (rho1, rho2).
    Compact {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        rho1: f64,
        #[arg(long)]
        rho2: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Mass, ramification and bookkeeping report for a rational map N/D.
    Liouville {
        /// Numerator coefficients, constant term first: "0,1" is z.
        #[arg(long, allow_hyphen_values = true)]
        num: String,
        /// Denominator coefficients, constant term first.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        den: String,
        #[arg(long, default_value_t = liouville::DEFAULT_REL_TOL)]
        rel_tol: f64,
        #[arg(long, default_value_t = liouville::DEFAULT_CLUSTER_TOL)]
        cluster_tol: f64,
    },
}

fn parse_algebra(s: &str) -> Result<CartanMatrix, String> {
    s.parse::<CartanMatrix>()
        .map_err(|_| format!("expected one of A2, B2, G2 (C2 is accepted as B2), got '{s}'"))
}

fn parse_q(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_tuple(s: &str) -> Result<MKInput, String> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| format!("'{t}' is not an integer"))
        })
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [a, b, c, d] => Ok(MKInput::new(a, b, c, d)),
        _ => Err(format!(
            "expected four integers l11,l12,l21,l22, got {}",
            parts.len()
        )),
    }
}

/// Shortest decimal text of `x` rounded to 12 significant digits.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let e = format!("{x:.11e}");
    let (mantissa, exp) = e.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// `x` as a JSON number carrying 12 significant digits.
fn num(x: f64) -> Value {
    sig12(x)
        .parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

/// A command's result: a JSON document plus the same content as rows.
struct Report {
    json: Value,
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Report {
    fn fields(json: Value, fields: Vec<(&str, String)>) -> Report {
        Report {
            json,
            headers: vec!["field".into(), "value".into()],
            rows: fields
                .into_iter()
                .map(|(k, v)| vec![k.to_string(), v])
                .collect(),
        }
    }

    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.headers).expect("in-memory write");
                for r in &self.rows {
                    w.write_record(r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
            }
            OutputFormat::Table => {
                let widths: Vec<usize> = (0..self.headers.len())
                    .map(|i| {
                        self.rows
                            .iter()
                            .map(|r| r[i].chars().count())
                            .chain([self.headers[i].len()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let line = |cells: &[String]| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, &w)| format!("{c:<w$}"))
                        .collect();
                    padded.join("  ").trim_end().to_string() + "\n"
                };
                let mut out = line(&self.headers);
                out += &line(&widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>());
                for r in &self.rows {
                    out += &line(r);
                }
                out
            }
        }
    }
}

fn pair_json(p: &MassPair) -> Value {
    json!({ "s1": p.s1.to_string(), "s2": p.s2.to_string() })
}

fn matrix_text(m: &MKMatrix) -> String {
    let [[a, b], [c, d]] = m.entries;
    format!("[[{a}, {b}], [{c}, {d}]]")
}

fn cmd_gamma(k: CartanMatrix, mu: Option<(Rational, Rational)>) -> Result<Report, Error> {
    let set = enumerate_gamma(k)?;
    if let Some((mu1, mu2)) = &mu {
        crate::forbidden::local_mass_candidates_exact(mu1, mu2, k)?;
    }
    let mut rows = Vec::new();
    let mut pairs = Vec::new();
    for (i, p) in set.iter().enumerate() {
        let special = is_special(p, k);
        let mut row = vec![
            (i + 1).to_string(),
            p.s1.to_string(),
            p.s2.to_string(),
            special.to_string(),
        ];
        let mut entry =
            json!({ "s1": p.s1.to_string(), "s2": p.s2.to_string(), "special": special });
        if let Some((mu1, mu2)) = &mu {
            let (v1, v2) = p.eval(mu1, mu2);
            row.push(format_rational(&v1));
            row.push(format_rational(&v2));
            entry["value"] = json!([format_rational(&v1), format_rational(&v2)]);
        }
        rows.push(row);
        pairs.push(entry);
    }
    let mut headers: Vec<String> = ["#", "s1", "s2", "special"].map(String::from).to_vec();
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "gamma",
        "algebra": k.label(),
        "pairs": pairs,
    });
    if let Some((mu1, mu2)) = &mu {
        headers.extend(["s1(mu)".to_string(), "s2(mu)".to_string()]);
        doc["mu"] = json!([format_rational(mu1), format_rational(mu2)]);
    }
    Ok(Report {
        json: doc,
        headers,
        rows,
    })
}

fn cmd_pi_check(
    k: CartanMatrix,
    p: MassPair,
    mu: Option<(Rational, Rational)>,
) -> Result<Report, Error> {
    let residual = pi_residual(&p, k);
    let r1 = reflect(&p, k, Component::First);
    let r2 = reflect(&p, k, Component::Second);
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "pi-check",
        "algebra": k.label(),
        "pair": pair_json(&p),
        "residual": residual.to_string(),
        "satisfies": residual.is_zero(),
        "reflections": { "first": pair_json(&r1), "second": pair_json(&r2) },
    });
    let mut fields = vec![
        ("algebra", k.label().to_string()),
        ("pair", p.to_string()),
        ("residual", residual.to_string()),
        ("satisfies", residual.is_zero().to_string()),
        ("reflect_first", r1.to_string()),
        ("reflect_second", r2.to_string()),
    ];
    if let Some((mu1, mu2)) = &mu {
        let v = format_rational(&residual.eval(mu1, mu2));
        doc["mu"] = json!([format_rational(mu1), format_rational(mu2)]);
        doc["residual_at_mu"] = json!(v);
        fields.push(("residual_at_mu", v));
    }
    Ok(Report::fields(doc, fields))
}

fn cmd_mk(k: CartanMatrix, tuple: Option<MKInput>) -> Result<Report, Error> {
    let rows: Vec<(Option<MassPair>, MKInput, MKMatrix, i64)> = match tuple {
        Some(t) => {
            let m = mk_matrix(&t, k);
            vec![(None, t, m, m.determinant())]
        }
        None => mk_nonsingular_certificate(k)?
            .into_iter()
            .map(|r| (Some(r.pair), r.input, r.matrix, r.determinant))
            .collect(),
    };
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "mk",
        "algebra": k.label(),
        "rows": rows.iter().map(|(p, t, m, d)| json!({
            "pair": p.as_ref().map(pair_json),
            "tuple": [t.l11, t.l12, t.l21, t.l22],
            "matrix": m.entries,
            "determinant": d,
        })).collect::<Vec<_>>(),
        "all_nonsingular": rows.iter().all(|r| r.3 != 0),
    });
    Ok(Report {
        json: doc,
        headers: ["pair", "tuple", "matrix", "determinant"]
            .map(String::from)
            .to_vec(),
        rows: rows
            .iter()
            .map(|(p, t, m, d)| {
                vec![
                    p.as_ref().map(|p| p.to_string()).unwrap_or_default(),
                    t.to_string(),
                    matrix_text(m),
                    d.to_string(),
                ]
            })
            .collect(),
    })
}

fn read_config(path: &PathBuf) -> Result<VortexConfig, Error> {
    let mut text = String::new();
    let read = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| ForbiddenError::Config(format!("{}: {e}", path.display())))?;
    Ok(VortexConfig::from_json(&text)?)
}

fn provenance_text(p: &Provenance) -> String {
    let subset: Vec<String> = p.subset.iter().map(|i| i.to_string()).collect();
    let choices: Vec<String> = p
        .choices
        .iter()
        .map(|c| format!("v{}:{}", c.vortex, c.pair))
        .collect();
    if choices.is_empty() {
        format!("J={{}} n={}", p.n)
    } else {
        format!("J={{{}}} n={} {}", subset.join(","), p.n, choices.join(" "))
    }
}

fn provenance_json(p: &Provenance) -> Value {
    json!({
        "subset": p.subset,
        "n": p.n,
        "choices": p.choices.iter().map(|c| json!({
            "vortex": c.vortex,
            "s1": c.pair.s1.to_string(),
            "s2": c.pair.s2.to_string(),
        })).collect::<Vec<_>>(),
    })
}

fn value_json(v: &ForbiddenValue) -> Value {
    json!({
        "value": num(v.value),
        "over_4pi": v.exact_over_4pi.as_ref().map(format_rational),
        "realizations": v.realizations,
        "provenance": v.provenance.iter().map(provenance_json).collect::<Vec<_>>(),
    })
}

fn cmd_forbidden(
    config: &VortexConfig,
    component: u8,
    cutoff: f64,
    options: ForbiddenOptions,
) -> Result<Report, Error> {
    let c = Component::from_index(component).expect("validated by the parser");
    let set = gamma_i_with(config, c, cutoff, options)?;
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "forbidden",
        "algebra": config.algebra.label(),
        "component": component,
        "cutoff": num(cutoff),
        "exact": set.exact,
        "values": set.values.iter().map(value_json).collect::<Vec<_>>(),
    });
    let rows = set
        .values
        .iter()
        .map(|v| {
            vec![
                sig12(v.value),
                exact_label(&v.exact_over_4pi),
                v.realizations.to_string(),
                v.provenance
                    .first()
                    .map(provenance_text)
                    .unwrap_or_default(),
            ]
        })
        .collect();
    Ok(Report {
        json: doc,
        headers: ["value", "over_4pi", "realizations", "example"]
            .map(String::from)
            .to_vec(),
        rows,
    })
}

fn cmd_compact(config: &VortexConfig, rho1: f64, rho2: f64, tol: f64) -> Result<Report, Error> {
    let v = check_compactness(config, rho1, rho2, tol)?;
    let regime = format!("{:?}", v.regime);
    let near_json = |n: &Option<Nearest>| {
        n.map(|n| json!({ "value": num(n.value), "distance": num(n.distance) }))
    };
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "compact",
        "algebra": config.algebra.label(),
        "rho": [num(rho1), num(rho2)],
        "tol": num(tol),
        "regime": regime,
        "compact_criterion_met": v.compact_criterion_met,
        "nearest_forbidden": v.nearest_forbidden.iter().map(near_json).collect::<Vec<_>>(),
    });
    let near_text = |n: &Option<Nearest>| {
        n.map(|n| format!("{} (distance {})", sig12(n.value), sig12(n.distance)))
    };
    let fields = vec![
        ("regime", regime.clone()),
        ("compact_criterion_met", v.compact_criterion_met.to_string()),
        (
            "nearest_forbidden_1",
            near_text(&v.nearest_forbidden[0]).unwrap_or_else(|| "-".into()),
        ),
        (
            "nearest_forbidden_2",
            near_text(&v.nearest_forbidden[1]).unwrap_or_else(|| "-".into()),
        ),
    ];
    Ok(Report::fields(doc, fields))
}

fn cmd_liouville(
    num_text: &str,
    den_text: &str,
    rel_tol: f64,
    cluster_tol: f64,
) -> Result<Report, Error> {
    let f = RationalMap::new(
        &parse_coefficients(num_text)?,
        &parse_coefficients(den_text)?,
    )?;
    let d = liouville::degree(&f);
    let q = mass_quantization_check(&f, rel_tol)?;
    let r = ramification(&f, cluster_tol)?;
    let expected_mass = 8.0 * std::f64::consts::PI * d as f64;
    let mass_matches_degree = (q.estimate.mass / expected_mass - 1.0).abs() <= 10.0 * rel_tol;
    let bookkeeping = r.alpha_sum() + r.alpha_infinity == 2 * d as i64;
    let riemann_hurwitz = r.riemann_hurwitz_total() == 2 * d as i64 - 2;
    let slope_ok = r.slope_deviation() <= 0.05;
    let coeffs =
        |v: Vec<num_complex::Complex64>| v.into_iter().map(format_complex).collect::<Vec<_>>();
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "liouville",
        "numerator": coeffs(f.numerator()),
        "denominator": coeffs(f.denominator()),
        "degree": d,
        "mass": num(q.estimate.mass),
        "mass_over_4pi": num(q.m),
        "error_estimate": num(q.estimate.error_estimate),
        "cells": q.estimate.cells,
        "vortices": r.finite_points.iter().map(|v| json!({
            "re": num(v.location.re),
            "im": num(v.location.im),
            "alpha": v.alpha,
        })).collect::<Vec<_>>(),
        "alpha_infinity": r.alpha_infinity,
        "checks": {
            "is_even_integer": q.is_even_integer,
            "mass_matches_degree": mass_matches_degree,
            "bookkeeping": bookkeeping,
            "riemann_hurwitz": riemann_hurwitz,
            "boundary_log_slope": num(r.boundary_log_slope),
            "expected_log_slope": -2 * r.alpha_infinity,
            "log_slope_matches": slope_ok,
        },
    });
    let vortices: Vec<String> = r
        .finite_points
        .iter()
        .map(|v| {
            let z = num_complex::Complex64::new(
                sig12(v.location.re).parse().unwrap_or(0.0),
                sig12(v.location.im).parse().unwrap_or(0.0),
            );
            format!("{} (alpha {})", format_complex(z), v.alpha)
        })
        .collect();
    let fields = vec![
        ("degree", d.to_string()),
        ("mass", sig12(q.estimate.mass)),
        ("mass_over_4pi", sig12(q.m)),
        ("error_estimate", sig12(q.estimate.error_estimate)),
        (
            "vortices",
            if vortices.is_empty() {
                "-".into()
            } else {
                vortices.join("; ")
            },
        ),
        ("alpha_infinity", r.alpha_infinity.to_string()),
        ("is_even_integer", q.is_even_integer.to_string()),
        ("mass_matches_degree", mass_matches_degree.to_string()),
        ("bookkeeping", bookkeeping.to_string()),
        ("riemann_hurwitz", riemann_hurwitz.to_string()),
        ("boundary_log_slope", sig12(r.boundary_log_slope)),
        ("log_slope_matches", slope_ok.to_string()),
    ];
    Ok(Report::fields(doc, fields))
}

fn execute(command: Command) -> Result<Report, Error> {
    match command {
        Command::Gamma { algebra, mu1, mu2 } => cmd_gamma(algebra, mu1.zip(mu2)),
        Command::PiCheck {
            algebra,
            s1,
            s2,
            mu1,
            mu2,
        } => cmd_pi_check(algebra, MassPair::new(s1, s2), mu1.zip(mu2)),
        Command::Mk { algebra, tuple } => cmd_mk(algebra, tuple),
        Command::Forbidden {
            config,
            component,
            cutoff,
            max_vortices,
            max_provenance,
        } => {
            let config = read_config(&config)?;
            cmd_forbidden(
                &config,
                component,
                cutoff,
                ForbiddenOptions {
                    max_vortices,
                    max_provenance,
                },
            )
        }
        Command::Compact {
            config,
            rho1,
            rho2,
            tol,
        } => cmd_compact(&read_config(&config)?, rho1, rho2, tol),
        Command::Liouville {
            num,
            den,
            rel_tol,
            cluster_tol,
        } => cmd_liouville(&num, &den, rel_tol, cluster_tol),
    }
}

/// Runs the command line with explicit output streams; returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli.command) {
        Ok(report) => {
            let _ = out.write_all(report.render(cli.format).as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Runs the command line against stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
