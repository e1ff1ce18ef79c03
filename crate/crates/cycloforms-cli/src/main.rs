//! Command-line surface for the cycloforms library.
//!
//! Every subcommand prints to stdout in one of three formats (text, json,
//! csv); progress and diagnostics go to stderr only. JSON output is a single
//! object `{command, inputs, result, error_bound, elapsed_ms}`; CSV output
//! is a header row plus one row per element for set-valued results.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use cycloforms::congruence::{confinement_classes, residues_attained_guarded};
use cycloforms::counting::{
    common_represented, common_values_count, count_ad_with_partitions, represented_by_form,
};
use cycloforms::cycloform::{bateman_check, cyclotomic_poly, value_at_minus_one, value_at_one};
use cycloforms::geometry::{area, constant_cd, containment_check, predicted_ad, square_sandwich};
use cycloforms::numtheory::{factorize, next_totient};
use cycloforms::symmetry::{automorphism_group, w_weight, GroupKind};
use cycloforms::verify::run_all;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Defaults, overridable by a `key = value` config file and then by flags.
#[derive(Debug, Clone)]
struct RunConfig {
    precision: u32,
    tol: f64,
    sieve_cap: u64,
    workers: u64,
    format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            precision: 50,
            tol: 1e-10,
            sieve_cap: 1 << 31,
            workers: std::thread::available_parallelism()
                .map(|n| n.get() as u64)
                .unwrap_or(1),
            format: Format::Text,
        }
    }
}

impl RunConfig {
    fn apply_file(&mut self, path: &PathBuf) -> Result<(), String> {
        let body = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        for (lineno, line) in body.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key = value", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: String| format!("config line {}: {e}", lineno + 1);
            match key {
                "precision" => self.precision = value.parse().map_err(|e| bad(format!("{e}")))?,
                "tol" => self.tol = value.parse().map_err(|e| bad(format!("{e}")))?,
                "sieve_cap" => self.sieve_cap = value.parse().map_err(|e| bad(format!("{e}")))?,
                "workers" => self.workers = value.parse().map_err(|e| bad(format!("{e}")))?,
                "format" => {
                    self.format = match value {
                        "text" => Format::Text,
                        "json" => Format::Json,
                        "csv" => Format::Csv,
                        other => return Err(bad(format!("unknown format {other}"))),
                    }
                }
                other => return Err(bad(format!("unknown key {other}"))),
            }
        }
        if self.precision == 0 || self.tol <= 0.0 || self.sieve_cap == 0 || self.workers == 0 {
            return Err("all numeric config fields must be positive".into());
        }
        Ok(())
    }
}

#[derive(Parser)]
#[command(
    name = "cycloforms",
    version,
    about = "Cyclotomic binary forms: evaluation, counting, constants, verification"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Config file (key = value); default taken from $CYCLOFORMS_CONFIG
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Quadrature tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker/partition count for sieves
    #[arg(long, global = true)]
    workers: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients, degree, length and value facts of Phi_n
    Form { n: u64 },
    /// Exact Phi_n(x, y)
    Eval { n: u64, x: i64, y: i64 },
    /// Integers in [1, N] represented by Phi_n
    Represented {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        limit: u64,
        /// Require max(|x|, |y|) >= 2
        #[arg(long)]
        height2: bool,
    },
    /// Exact A_d(N) with the main-term prediction and their ratio
    Count {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        limit: u64,
    },
    /// The constant C_d with contributions, eta_d, beta*_d and d-dagger
    Constants {
        #[arg(long)]
        d: u64,
    },
    /// Area of {Phi_n <= 1} with error bound and square sandwich
    Area {
        #[arg(long)]
        n: u64,
    },
    /// Residues attained by Phi_n modulo M, with confinement verdict
    Congruence {
        #[arg(long)]
        n: u64,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// Obstruction classes (D, a0, b0) for degree d and target index m
    ConfinementClasses {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: u64,
    },
    /// Count of integers in [0, N] represented by both forms
    Common {
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        n2: u64,
        #[arg(long)]
        limit: u64,
    },
    /// Count of lattice quadruples in [-B, B]^4 with equal form values
    CommonLattice {
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        n2: u64,
        #[arg(long = "B")]
        b: u64,
    },
    /// Automorphism group and weight w_n of Phi_n
    Automorphisms {
        #[arg(long)]
        n: u64,
    },
    /// Square-containment sampling for the boundary squares of side 2 -+ n^(-1+eps)
    Containment {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value = "64")]
        grid: u64,
    },
    /// Run the full verification suite; exit 0 iff every criterion passes
    VerifyAll {
        /// Shrink the heaviest scans (reductions are noted in the output)
        #[arg(long)]
        fast: bool,
    },
}

/// Everything a subcommand produces, rendered per format by `emit`.
struct Report {
    command: &'static str,
    inputs: Value,
    result: Value,
    error_bound: Option<f64>,
    text: String,
    /// CSV header and rows; scalar reports fall back to key,value rows.
    csv: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    failed: bool,
}

fn emit(report: &Report, format: Format, elapsed_ms: f64) {
    let mut out = String::new();
    match format {
        Format::Text => {
            out.push_str(&report.text);
            out.push('\n');
        }
        Format::Json => {
            let obj = json!({
                "command": report.command,
                "inputs": report.inputs,
                "result": report.result,
                "error_bound": report.error_bound,
                "elapsed_ms": elapsed_ms,
            });
            out.push_str(&serde_json::to_string_pretty(&obj).expect("serializable"));
            out.push('\n');
        }
        Format::Csv => {
            if let Some((header, rows)) = &report.csv {
                out.push_str(&header.join(","));
                out.push('\n');
                for row in rows {
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
            } else {
                out.push_str("key,value\n");
                if let Value::Object(map) = &report.result {
                    for (k, v) in map {
                        out.push_str(&format!("{k},{v}\n"));
                    }
                } else {
                    out.push_str(&format!("result,{}\n", report.result));
                }
            }
        }
    }
    // Tolerate a closed downstream pipe (e.g. `| head`).
    use std::io::Write;
    let _ = std::io::stdout().write_all(out.as_bytes());
}

fn run(command: &Command, config: &RunConfig) -> Result<Report, cycloforms::Error> {
    match *command {
        Command::Form { n } => {
            let form = cyclotomic_poly(n)?;
            let coeffs: Vec<String> = form
                .form()
                .coefficients()
                .iter()
                .map(BigInt::to_string)
                .collect();
            let bateman = bateman_check(n)?;
            let at_one = value_at_one(n)?;
            let at_minus_one = value_at_minus_one(n)?;
            let text = format!(
                "Phi_{n}: degree {}\n  coefficients (ascending) {}\n  length L = {}\n  length bound holds (L^2 <= n^d(n), d(n) = {}): {}\n  phi_{n}(1) = {at_one}, phi_{n}(-1) = {at_minus_one}",
                form.degree(),
                coeffs.join(" "),
                bateman.length,
                bateman.divisor_count,
                bateman.holds,
            );
            Ok(Report {
                command: "form",
                inputs: json!({ "n": n }),
                result: json!({
                    "degree": form.degree(),
                    "coefficients": coeffs,
                    "length": bateman.length.to_string(),
                    "divisor_count": bateman.divisor_count,
                    "length_bound_holds": bateman.holds,
                    "value_at_one": at_one,
                    "value_at_minus_one": at_minus_one,
                }),
                error_bound: None,
                text,
                csv: Some((
                    vec!["exponent", "coefficient"],
                    coeffs
                        .iter()
                        .enumerate()
                        .map(|(i, c)| vec![i.to_string(), c.clone()])
                        .collect(),
                )),
                failed: false,
            })
        }
        Command::Eval { n, x, y } => {
            let value = cyclotomic_poly(n)?.evaluate_i64(x, y);
            Ok(Report {
                command: "eval",
                inputs: json!({ "n": n, "x": x, "y": y }),
                result: json!({ "value": value.to_string() }),
                error_bound: None,
                text: value.to_string(),
                csv: None,
                failed: false,
            })
        }
        Command::Represented { n, limit, height2 } => {
            if limit > config.sieve_cap {
                return Err(cycloforms::Error::SieveCapExceeded(limit, config.sieve_cap));
            }
            let table = represented_by_form(n, limit, height2)?;
            let text = format!(
                "B_{n}({limit}){}: {} members\n  {}",
                if height2 { " with max(|x|,|y|) >= 2" } else { "" },
                table.count(),
                table
                    .members
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            let rows = table
                .members
                .iter()
                .map(|m| {
                    let w = table.witnesses.as_ref().and_then(|ws| ws.get(m));
                    match w {
                        Some(w) => vec![m.to_string(), w.x.to_string(), w.y.to_string()],
                        None => vec![m.to_string(), String::new(), String::new()],
                    }
                })
                .collect();
            Ok(Report {
                command: "represented",
                inputs: json!({ "n": n, "limit": limit, "height2": height2 }),
                result: json!({
                    "count": table.count(),
                    "members": table.members,
                }),
                error_bound: None,
                text,
                csv: Some((vec!["value", "witness_x", "witness_y"], rows)),
                failed: false,
            })
        }
        Command::Count { d, limit } => {
            if limit > config.sieve_cap {
                return Err(cycloforms::Error::SieveCapExceeded(limit, config.sieve_cap));
            }
            let (count, _) = count_ad_with_partitions(d, limit, config.workers)?;
            let bundle = constant_cd(d, config.tol)?;
            let predicted = predicted_ad(&bundle, limit);
            let ratio = count as f64 / predicted;
            Ok(Report {
                command: "count",
                inputs: json!({ "d": d, "limit": limit }),
                result: json!({
                    "count": count,
                    "predicted": predicted,
                    "ratio": ratio,
                    "c_d": bundle.c_d,
                }),
                error_bound: Some(bundle.abs_error),
                text: format!(
                    "A_{d}({limit}) = {count}\n  predicted C_{d} N^(2/{d}) = {predicted:.4}\n  ratio = {ratio:.4}"
                ),
                csv: None,
                failed: false,
            })
        }
        Command::Constants { d } => {
            let bundle = constant_cd(d, config.tol)?;
            let d_dagger = next_totient(d)?;
            let contributions: Vec<Value> = bundle
                .contributions
                .iter()
                .map(|(n, w, a)| {
                    json!({
                        "n": n,
                        "weight": format!("{}/{}", w.numer(), w.denom()),
                        "area": a.value,
                        "abs_error": a.abs_error,
                    })
                })
                .collect();
            let rows = bundle
                .contributions
                .iter()
                .map(|(n, w, a)| {
                    vec![
                        n.to_string(),
                        format!("{}/{}", w.numer(), w.denom()),
                        format!("{:.12}", a.value),
                        format!("{:.2e}", a.abs_error),
                    ]
                })
                .collect();
            let text = format!(
                "C_{d} = {:.10} +/- {:.2e}\n{}  eta_{d} = {:.6}, beta*_{d} = {:.6}, d-dagger = {d_dagger}",
                bundle.c_d,
                bundle.abs_error,
                bundle
                    .contributions
                    .iter()
                    .map(|(n, w, a)| format!(
                        "  n = {n}: w = {}/{}, area = {:.10}\n",
                        w.numer(),
                        w.denom(),
                        a.value
                    ))
                    .collect::<String>(),
                bundle.eta_d,
                bundle.beta_star_d,
            );
            Ok(Report {
                command: "constants",
                inputs: json!({ "d": d, "tol": config.tol }),
                result: json!({
                    "c_d": bundle.c_d,
                    "contributions": contributions,
                    "eta_d": bundle.eta_d,
                    "beta_star_d": bundle.beta_star_d,
                    "d_dagger": d_dagger,
                }),
                error_bound: Some(bundle.abs_error),
                text,
                csv: Some((vec!["n", "weight", "area", "abs_error"], rows)),
                failed: false,
            })
        }
        Command::Area { n } => {
            let a = area(n, config.tol)?;
            let (inner, outer) = square_sandwich(n, config.tol)?;
            Ok(Report {
                command: "area",
                inputs: json!({ "n": n, "tol": config.tol }),
                result: json!({
                    "area": a.value,
                    "abs_error": a.abs_error,
                    "evaluations": a.evaluations,
                    "inner_square_side": inner,
                    "outer_square_side": outer,
                }),
                error_bound: Some(a.abs_error),
                text: format!(
                    "A_Phi_{n} = {:.10} +/- {:.1e} ({} evaluations)\n  square sandwich: sides {inner:.6} <= region <= {outer:.6}",
                    a.value, a.abs_error, a.evaluations
                ),
                csv: None,
                failed: false,
            })
        }
        Command::Congruence { n, modulus } => {
            let profile = residues_attained_guarded(n, modulus, 512)?;
            // Confinement verdict where a proposition applies.
            let expected: Option<Vec<u64>> = if modulus != 2 && factorize(n)?.iter().any(|&(p, _)| p == modulus) {
                Some(vec![0, 1])
            } else if modulus == 9 && factorize(n)?.len() == 1 && n % 3 == 0 && n >= 9 {
                Some(vec![0, 1, 3])
            } else if modulus == 4 && n % 4 == 0 {
                Some(vec![0, 1, 2])
            } else {
                None
            };
            let verdict = match &expected {
                Some(allowed) => {
                    if profile.attained.iter().all(|r| allowed.contains(r)) {
                        "PASS"
                    } else {
                        "FAIL"
                    }
                }
                None => "N/A",
            };
            let attained: Vec<u64> = profile.attained.iter().copied().collect();
            Ok(Report {
                command: "congruence",
                inputs: json!({ "n": n, "mod": modulus }),
                result: json!({
                    "attained": attained,
                    "expected": expected,
                    "verdict": verdict,
                }),
                error_bound: None,
                text: format!(
                    "Phi_{n} mod {modulus} attains {{{}}}\n  confinement verdict: {verdict}",
                    attained
                        .iter()
                        .map(u64::to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
                csv: Some((
                    vec!["residue"],
                    attained.iter().map(|r| vec![r.to_string()]).collect(),
                )),
                failed: verdict == "FAIL",
            })
        }
        Command::ConfinementClasses { d, m } => {
            let c = confinement_classes(d, m)?;
            let rows: Vec<Vec<String>> = c
                .per_factor
                .iter()
                .map(|f| {
                    vec![
                        f.index.to_string(),
                        f.varpi.to_string(),
                        f.local_a.to_string(),
                        f.local_b.to_string(),
                        f.obstruction.to_string(),
                    ]
                })
                .collect();
            let per_factor: Vec<Value> = c
                .per_factor
                .iter()
                .map(|f| {
                    json!({
                        "n": f.index,
                        "varpi": f.varpi,
                        "local_a": f.local_a,
                        "local_b": f.local_b,
                        "obstruction": f.obstruction,
                        "attained": f.attained.iter().copied().collect::<Vec<u64>>(),
                    })
                })
                .collect();
            let text = format!(
                "d = {d}, m = {m}: D = {}, a0 = {}, b0 = {}\n{}",
                c.modulus,
                c.a0,
                c.b0,
                c.per_factor
                    .iter()
                    .map(|f| format!(
                        "  n = {}: varpi = {}, Phi_{m}({}, {}) = {} mod {} not attained by Phi_{}\n",
                        f.index, f.varpi, f.local_a, f.local_b, f.obstruction, f.varpi, f.index
                    ))
                    .collect::<String>()
            );
            Ok(Report {
                command: "confinement-classes",
                inputs: json!({ "d": d, "m": m }),
                result: json!({
                    "modulus": c.modulus,
                    "a0": c.a0,
                    "b0": c.b0,
                    "per_factor": per_factor,
                }),
                error_bound: None,
                text,
                csv: Some((vec!["n", "varpi", "local_a", "local_b", "obstruction"], rows)),
                failed: false,
            })
        }
        Command::Common { n1, n2, limit } => {
            let count = common_represented(n1, n2, limit)?;
            Ok(Report {
                command: "common",
                inputs: json!({ "n1": n1, "n2": n2, "limit": limit }),
                result: json!({ "count": count }),
                error_bound: None,
                text: format!("R(Phi_{n1}, Phi_{n2}; {limit}) = {count}"),
                csv: None,
                failed: false,
            })
        }
        Command::CommonLattice { n1, n2, b } => {
            let f1 = cyclotomic_poly(n1)?;
            let f2 = cyclotomic_poly(n2)?;
            let count = common_values_count(f1.form(), f2.form(), b)?;
            Ok(Report {
                command: "common-lattice",
                inputs: json!({ "n1": n1, "n2": n2, "B": b }),
                result: json!({ "count": count }),
                error_bound: None,
                text: format!("N(Phi_{n1}, Phi_{n2}; B = {b}) = {count}"),
                csv: None,
                failed: false,
            })
        }
        Command::Automorphisms { n } => {
            let g = automorphism_group(n)?;
            let w = w_weight(n)?;
            let kind = match g.kind {
                GroupKind::D2 => "D2",
                GroupKind::D4 => "D4",
            };
            let matrices: Vec<Value> = g.elements.iter().map(|m| json!(m)).collect();
            let rows = g
                .elements
                .iter()
                .map(|m| {
                    vec![
                        m[0][0].to_string(),
                        m[0][1].to_string(),
                        m[1][0].to_string(),
                        m[1][1].to_string(),
                    ]
                })
                .collect();
            let text = format!(
                "Aut(Phi_{n}) = {kind} ({} elements), w_{n} = {}/{}\n{}",
                g.elements.len(),
                w.numer(),
                w.denom(),
                g.elements
                    .iter()
                    .map(|m| format!("  [{} {}; {} {}]\n", m[0][0], m[0][1], m[1][0], m[1][1]))
                    .collect::<String>()
            );
            Ok(Report {
                command: "automorphisms",
                inputs: json!({ "n": n }),
                result: json!({
                    "kind": kind,
                    "order": g.elements.len(),
                    "elements": matrices,
                    "w_n": format!("{}/{}", w.numer(), w.denom()),
                }),
                error_bound: None,
                text,
                csv: Some((vec!["a11", "a12", "a21", "a22"], rows)),
                failed: false,
            })
        }
        Command::Containment { n, epsilon, grid } => {
            let r = containment_check(n, epsilon, grid)?;
            let samples: Vec<Value> = r
                .samples
                .iter()
                .map(|s| {
                    json!({
                        "x": s.x,
                        "y": s.y,
                        "boundary": if s.inner { "inner" } else { "outer" },
                        "pass": s.pass,
                    })
                })
                .collect();
            let rows = r
                .samples
                .iter()
                .map(|s| {
                    vec![
                        format!("{:.12}", s.x),
                        format!("{:.12}", s.y),
                        (if s.inner { "inner" } else { "outer" }).to_string(),
                        s.pass.to_string(),
                    ]
                })
                .collect();
            let failures = r.samples.iter().filter(|s| !s.pass).count();
            let text = format!(
                "Phi_{n}, epsilon = {epsilon}: inner side {:.6}, outer side {:.6}\n  {} samples, {failures} failures => {}\n  (failures are expected below the effective index threshold)",
                r.inner_side,
                r.outer_side,
                r.samples.len(),
                if r.all_pass { "ALL PASS" } else { "REPORTED" }
            );
            Ok(Report {
                command: "containment",
                inputs: json!({ "n": n, "epsilon": epsilon, "grid": grid }),
                result: json!({
                    "inner_side": r.inner_side,
                    "outer_side": r.outer_side,
                    "all_pass": r.all_pass,
                    "samples": samples,
                }),
                error_bound: None,
                text,
                csv: Some((vec!["x", "y", "boundary", "pass"], rows)),
                failed: false,
            })
        }
        Command::VerifyAll { fast } => {
            let results = run_all(fast);
            let all = results.iter().all(|r| r.passed);
            let items: Vec<Value> = results
                .iter()
                .map(|r| {
                    json!({
                        "id": r.id,
                        "name": r.name,
                        "passed": r.passed,
                        "detail": r.detail,
                        "elapsed_ms": r.elapsed.as_secs_f64() * 1e3,
                    })
                })
                .collect();
            let rows = results
                .iter()
                .map(|r| {
                    vec![
                        r.id.to_string(),
                        r.name.to_string(),
                        r.passed.to_string(),
                        format!("{:.1}", r.elapsed.as_secs_f64() * 1e3),
                        r.detail.replace(',', ";"),
                    ]
                })
                .collect();
            let text = results
                .iter()
                .map(|r| {
                    format!(
                        "[{}] criterion {:2} {:30} ({:>8.2?}) {}",
                        if r.passed { "PASS" } else { "FAIL" },
                        r.id,
                        r.name,
                        r.elapsed,
                        r.detail
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report {
                command: "verify-all",
                inputs: json!({ "fast": fast }),
                result: json!({ "all_passed": all, "criteria": items }),
                error_bound: None,
                text,
                csv: Some((vec!["id", "name", "passed", "elapsed_ms", "detail"], rows)),
                failed: !all,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut config = RunConfig::default();
    let config_path = cli
        .config
        .clone()
        .or_else(|| std::env::var_os("CYCLOFORMS_CONFIG").map(PathBuf::from));
    if let Some(path) = config_path {
        if let Err(e) = config.apply_file(&path) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if let Some(f) = cli.format {
        config.format = f;
    }
    if let Some(t) = cli.tol {
        config.tol = t;
    }
    if let Some(w) = cli.workers {
        config.workers = w;
    }
    if config.tol <= 0.0 || config.workers == 0 {
        eprintln!("error: tol and workers must be positive");
        return ExitCode::from(2);
    }
    let start = Instant::now();
    match run(&cli.command, &config) {
        Ok(report) => {
            emit(&report, config.format, start.elapsed().as_secs_f64() * 1e3);
            if report.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
