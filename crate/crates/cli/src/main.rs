//! `modsolve`: exact q-expansions of modular forms and of the solutions of
//! the differential equation `L_k f = 0`.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use modsolve::analysis::{check_positivity, decompose_quasimodular, expand_in_inv_j, identity_suite, CfTarget};
use modsolve::forms::{catalog, FormId};
use modsolve::solutions::{
    ascend_ladder, ascend_ladder_with_mu0, descend, frobenius_solve, quasimodular_solution, report_for, verify_family,
    Branch, Family, SolutionReport,
};
use modsolve::qseries::{int, WireQSeries};
use modsolve::{Error, Exponent, QSeries, Weight};

#[derive(Parser, Debug)]
#[command(name = "modsolve", version, about = "Exact modular solutions of L_k f = 0")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Coefficients are exact below q^TERMS.
    #[arg(long, global = true, default_value_t = 100, value_parser = clap::value_parser!(i64).range(1..))]
    terms: i64,
    /// Re-express series output on the grid q^(1/N).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    exp_den: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for --format json.
    #[arg(long, global = true)]
    json: bool,
    /// Check the equation on every series produced.
    #[arg(long, global = true)]
    verify: bool,
    /// Worker threads for independent checks (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
}

impl RunConfig {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Normalized,
    Cuspidal,
    Quasi,
}

impl Kind {
    fn family(self) -> Family {
        match self {
            Kind::Normalized => Family::Normalized,
            Kind::Cuspidal => Family::Cuspidal,
            Kind::Quasi => Family::Quasi,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum BranchArg {
    Zero,
    Cusp,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand a catalog form.
    Expand {
        #[arg(value_parser = parse_with::<FormId>)]
        form: FormId,
    },
    /// Build the solution of a given kind at weight k.
    Solve {
        #[arg(long, value_parser = parse_with::<Weight>)]
        k: Weight,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Build a family member and report on its residual.
    Verify {
        #[arg(long, value_parser = parse_with::<Weight>)]
        k: Weight,
        /// normalized, cuspidal, quasi, frobenius-zero, frobenius-cusp or all.
        #[arg(long, default_value = "all")]
        family: String,
    },
    /// Climb from weight k in steps of 6.
    Ladder {
        #[arg(long, value_parser = parse_with::<Weight>)]
        k: Weight,
        #[arg(long, default_value_t = 4)]
        steps: u32,
        #[arg(long, value_enum, default_value_t = Kind::Normalized)]
        kind: Kind,
    },
    /// Power-series solution from the recurrence, independent of the catalog.
    Oracle {
        #[arg(long, value_parser = parse_with::<Weight>)]
        k: Weight,
        #[arg(long, value_enum)]
        branch: BranchArg,
    },
    /// Scan the Fourier coefficients of a solution for sign.
    Positivity {
        #[arg(long, value_parser = parse_with::<Weight>)]
        k: Weight,
        #[arg(long, value_enum, default_value_t = Kind::Cuspidal)]
        kind: Kind,
    },
    /// Expand a weight-zero target in powers of 1/j.
    Cf {
        #[arg(long, value_parser = parse_with::<CfTarget>)]
        target: CfTarget,
        #[arg(long, default_value_t = 10)]
        depth: u32,
    },
    /// Coordinates of the quasimodular solution at k = 6n+5 in E2, E4, E6.
    Decompose {
        #[arg(long)]
        n: u32,
    },
    /// Check every catalog identity.
    Suite,
}

fn parse_with<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Domain(Error),
    Usage(String),
    Unverified(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Run = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.run.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = String::new();
    let res = dispatch(&cli.run, &cli.cmd, &mut out);
    print!("{out}");
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Unverified(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cfg: &RunConfig, cmd: &Command, out: &mut String) -> Run {
    let prec = cfg.terms;
    match cmd {
        Command::Expand { form } => emit_series(cfg, &catalog(*form, prec), out),
        Command::Solve { k, kind } => {
            let family = kind.family();
            let f = family.build(*k, prec)?;
            emit_series(cfg, &f, out)?;
            if cfg.verify {
                let r = report_for(&f, *k, family, prec);
                if cfg.format() == Format::Text {
                    writeln!(out, "{r}").unwrap();
                } else {
                    eprintln!("{r}");
                }
                if !r.passed() {
                    return Err(Failure::Unverified(format!("{family} solution at k = {k}")));
                }
            }
            Ok(())
        }
        Command::Verify { k, family } => {
            let families = if family == "all" {
                Family::ALL.to_vec()
            } else {
                vec![family.parse::<Family>().map_err(|e| Failure::Usage(format!("--family: {e}")))?]
            };
            let single = families.len() == 1;
            let results: Vec<(Family, Result<SolutionReport, Error>)> =
                families.par_iter().map(|&fam| (fam, verify_family(*k, fam, prec))).collect();
            if single {
                let r = results.into_iter().next().expect("one family").1?;
                emit_report(cfg, &r, out)?;
                return if r.passed() {
                    Ok(())
                } else {
                    Err(Failure::Unverified(format!("{} at k = {k}", r.family)))
                };
            }
            verify_all(cfg, *k, results, out)
        }
        Command::Ladder { k, steps, kind } => ladder(cfg, *k, *steps, *kind, out),
        Command::Oracle { k, branch } => {
            let b = match branch {
                BranchArg::Zero => Branch::Zero,
                BranchArg::Cusp => Branch::Cusp,
            };
            emit_series(cfg, &frobenius_solve(*k, b, prec)?, out)
        }
        Command::Positivity { k, kind } => {
            let f = kind.family().build(*k, prec)?;
            let r = check_positivity(&f, Exponent::from_integer(prec))?;
            emit_report(cfg, &r, out)?;
            if r.is_all_positive() {
                Ok(())
            } else {
                Err(Failure::Unverified(format!("not all coefficients are positive at k = {k}")))
            }
        }
        Command::Cf { target, depth } => {
            let cs = expand_in_inv_j(&target.series(*depth as i64 + 1), *depth)?;
            match cfg.format() {
                Format::Json => {
                    let v: Vec<String> = cs.iter().map(ToString::to_string).collect();
                    writeln!(out, "{}", json(&v)).unwrap();
                }
                Format::Csv => return Err(csv_unsupported()),
                Format::Text => {
                    let v: Vec<String> = cs.iter().map(ToString::to_string).collect();
                    writeln!(out, "{}", v.join(", ")).unwrap();
                }
            }
            Ok(())
        }
        Command::Decompose { n } => {
            let f = quasimodular_solution(*n, prec);
            let d = decompose_quasimodular(&f, 6 * n + 6)?;
            match cfg.format() {
                Format::Text => writeln!(out, "{d}").unwrap(),
                Format::Csv => return Err(csv_unsupported()),
                Format::Json => {
                    let terms: Vec<_> = d
                        .parts
                        .iter()
                        .flat_map(|p| {
                            p.monomials.iter().map(move |((a, b), c)| MonomialOut {
                                e2: p.depth,
                                e4: *a,
                                e6: *b,
                                coeff: c.to_string(),
                            })
                        })
                        .collect();
                    writeln!(out, "{}", json(&DecompositionOut { weight: d.weight, terms })).unwrap();
                }
            }
            Ok(())
        }
        Command::Suite => {
            let r = identity_suite(prec);
            emit_report(cfg, &r, out)?;
            if r.all_passed() {
                Ok(())
            } else {
                let names: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
                Err(Failure::Unverified(names.join(", ")))
            }
        }
    }
}

#[derive(Serialize)]
struct MonomialOut {
    e2: u32,
    e4: u32,
    e6: u32,
    coeff: String,
}

#[derive(Serialize)]
struct DecompositionOut {
    weight: u32,
    terms: Vec<MonomialOut>,
}

#[derive(Serialize)]
struct RungOut {
    weight: String,
    series: WireQSeries,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

#[derive(Serialize)]
struct VerifyOut {
    family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<SolutionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// Every family at one weight. Families with no construction at `k` are
/// listed but do not count as failures; at least one must apply.
fn verify_all(cfg: &RunConfig, k: Weight, results: Vec<(Family, Result<SolutionReport, Error>)>, out: &mut String) -> Run {
    let applicable = results.iter().filter(|(_, r)| r.is_ok()).count();
    let failed: Vec<String> = results
        .iter()
        .filter(|(_, r)| matches!(r, Ok(r) if !r.passed()))
        .map(|(f, _)| f.to_string())
        .collect();
    match cfg.format() {
        Format::Csv => return Err(csv_unsupported()),
        Format::Json => {
            let rows: Vec<VerifyOut> = results
                .into_iter()
                .map(|(f, r)| match r {
                    Ok(r) => VerifyOut {
                        family: f.to_string(),
                        report: Some(r),
                        error: None,
                    },
                    Err(e) => VerifyOut {
                        family: f.to_string(),
                        report: None,
                        error: Some(e.to_string()),
                    },
                })
                .collect();
            writeln!(out, "{}", json(&rows)).unwrap();
        }
        Format::Text => {
            for (f, r) in &results {
                match r {
                    Ok(r) => writeln!(out, "{}: {}", f, if r.passed() { "PASS" } else { "FAIL" }).unwrap(),
                    Err(e) => writeln!(out, "{f}: skipped ({e})").unwrap(),
                }
            }
        }
    }
    if applicable == 0 {
        return Err(Failure::Unverified(format!("no family applies at k = {k}")));
    }
    if !failed.is_empty() {
        return Err(Failure::Unverified(failed.join(", ")));
    }
    Ok(())
}

fn ladder(cfg: &RunConfig, k: Weight, steps: u32, kind: Kind, out: &mut String) -> Run {
    let family = kind.family();
    // two spare orders absorb the loss in the seed check
    let p = cfg.terms + 2;
    let seed = family.build(k, p)?;
    let st = if k == Weight::int(5) {
        ascend_ladder_with_mu0(k, &seed, &QSeries::one(p), int(-1), steps)?
    } else if k == Weight::int(4) {
        ascend_ladder(k, &seed, &QSeries::zero(1, p), steps)?
    } else {
        ascend_ladder(k, &seed, &descend(&seed, k)?, steps)?
    };
    let cut = Exponent::from_integer(cfg.terms);
    let rungs: Vec<(Weight, QSeries)> = st.rungs.iter().map(|(w, f)| (*w, f.truncated(cut))).collect();
    let checks: Option<Vec<bool>> = cfg
        .verify
        .then(|| st.residuals().par_iter().map(|r| r.vanishes_through(cut)).collect());
    match cfg.format() {
        Format::Csv => return Err(csv_unsupported()),
        Format::Json => {
            let mut rows = Vec::with_capacity(rungs.len());
            for (i, (w, f)) in rungs.iter().enumerate() {
                rows.push(RungOut {
                    weight: w.to_string(),
                    series: WireQSeries::from(&regrid(cfg, f)?),
                    verified: checks.as_ref().map(|c| c[i]),
                });
            }
            writeln!(out, "{}", json(&rows)).unwrap();
        }
        Format::Text => {
            for (i, (w, f)) in rungs.iter().enumerate() {
                write!(out, "k = {w}: {}", coefficient_line(f)).unwrap();
                if let Some(c) = &checks {
                    write!(out, " [{}]", if c[i] { "verified" } else { "FAILED" }).unwrap();
                }
                writeln!(out).unwrap();
            }
        }
    }
    if let Some(c) = checks {
        let bad: Vec<String> = rungs.iter().zip(&c).filter(|(_, ok)| !**ok).map(|((w, _), _)| w.to_string()).collect();
        if !bad.is_empty() {
            return Err(Failure::Unverified(format!("rungs at k = {}", bad.join(", "))));
        }
    }
    Ok(())
}

fn csv_unsupported() -> Failure {
    Failure::Usage("--format csv applies only to series output".into())
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn regrid(cfg: &RunConfig, f: &QSeries) -> Result<QSeries, Error> {
    match cfg.exp_den {
        Some(m) => f.on_grid(m),
        None => Ok(f.clone()),
    }
}

fn emit_report<T: Serialize + std::fmt::Display>(cfg: &RunConfig, r: &T, out: &mut String) -> Run {
    match cfg.format() {
        Format::Text => writeln!(out, "{r}").unwrap(),
        Format::Json => writeln!(out, "{}", json(r)).unwrap(),
        Format::Csv => return Err(csv_unsupported()),
    }
    Ok(())
}

/// Coefficients along `lead + Z`, prefixed by the leading power of `q` unless
/// it is `q^0`. Series with terms off that coset list every grid position.
fn coefficient_line(f: &QSeries) -> String {
    let lead = f.lead_exponent();
    let (coeffs, step) = if f.has_off_coset_terms() {
        (f.coeffs(), Some(f.exp_den()))
    } else {
        (f.coset_coeffs(), None)
    };
    let body: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
    let mut s = String::new();
    if lead != Exponent::from_integer(0) || step.is_some() {
        write!(s, "q^{lead}").unwrap();
        if let Some(n) = step {
            write!(s, " step 1/{n}").unwrap();
        }
        s.push_str(": ");
    }
    s.push_str(&body.join(", "));
    s
}

fn emit_series(cfg: &RunConfig, f: &QSeries, out: &mut String) -> Run {
    let f = regrid(cfg, f)?;
    match cfg.format() {
        Format::Text => writeln!(out, "{}", coefficient_line(&f)).unwrap(),
        Format::Json => writeln!(out, "{}", f.to_json()).unwrap(),
        Format::Csv => {
            writeln!(out, "exp_num,exp_den,coeff_num,coeff_den").unwrap();
            for (i, c) in f.coeffs().iter().enumerate() {
                writeln!(out, "{},{},{},{}", f.lead_exp() + i as i64, f.exp_den(), c.numer(), c.denom()).unwrap();
            }
        }
    }
    Ok(())
}
