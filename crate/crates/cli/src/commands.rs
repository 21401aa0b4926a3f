//! Subcommand execution. Each command yields a [`Report`] carrying both
//! renderings; `main` picks one and maps `passed` to the exit code.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use puiseux_core::complexified::{
    coordinate_series, cr_check, diff_quotient_check, ComplexPuiseux, CrEquation, CrReport,
    DiscPoint,
};
use puiseux_core::convergence::{certify_divergence, Divergence, DivergenceCertificate};
use puiseux_core::puiseux::{Comparison, Exponent};
use puiseux_core::{LinearOde, Puiseux, Rational, Series};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use crate::error::CliError;
use crate::eval::{eval, parse_ode, parse_rational, require_positive, Value};
use crate::expr::parse;

#[derive(Debug, Clone)]
pub struct Options {
    pub order: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { order: 20, seed: 0 }
    }
}

#[derive(Debug, Clone)]
pub enum Command {
    Eval {
        expr: String,
    },
    OdeSolve {
        equation: String,
        initial: Option<String>,
    },
    OdeCheck {
        equation: String,
        candidate: Option<String>,
        initial: Option<String>,
    },
    Diverge {
        series: String,
        r: String,
        m: String,
        nmax: usize,
    },
    Compare {
        a: String,
        b: String,
    },
    CrCheck {
        first: String,
        second: Option<String>,
    },
    Counterexample {
        r: String,
        m: String,
        nmax: usize,
        /// Adds `z^k` to the solution after stage 1, so later stages see
        /// a corrupted series.
        tamper: Option<usize>,
    },
}

#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub json: Json,
    pub passed: bool,
}

impl Report {
    fn ok(text: String, json: Json) -> Self {
        Report {
            text,
            json,
            passed: true,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    /// The chosen rendering, newline terminated.
    pub fn output(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("json");
            s.push('\n');
            s
        } else {
            let mut s = self.text.clone();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
    }
}

pub fn execute(cmd: &Command, opts: &Options) -> Result<Report, CliError> {
    match cmd {
        Command::Eval { expr } => run_eval(expr, opts),
        Command::OdeSolve { equation, initial } => ode_solve(equation, initial.as_deref(), opts),
        Command::OdeCheck {
            equation,
            candidate,
            initial,
        } => ode_check(equation, candidate.as_deref(), initial.as_deref(), opts),
        Command::Diverge { series, r, m, nmax } => diverge(series, r, m, *nmax),
        Command::Compare { a, b } => compare(a, b, opts),
        Command::CrCheck { first, second } => run_cr_check(first, second.as_deref(), opts),
        Command::Counterexample { r, m, nmax, tamper } => counterexample(
            &parse_rational(r, "--r")?,
            &parse_rational(m, "--M")?,
            *nmax,
            *tamper,
            opts,
        ),
    }
}

fn join(coeffs: &[Rational]) -> String {
    coeffs
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn run_eval(src: &str, opts: &Options) -> Result<Report, CliError> {
    let v = eval(&parse(src)?)?;
    Ok(Report::ok(v.render(opts.order), v.to_json(opts.order)))
}

fn solve(equation: &str, initial: Option<&str>) -> Result<(LinearOde, Series, String), CliError> {
    let ode = parse_ode(equation)?;
    let init = initial
        .map(|s| parse_rational(s, "--initial"))
        .transpose()?;
    let sol = ode.solve(init)?;
    Ok((ode, sol.series, sol.regime.to_string()))
}

/// Prints `F` and its coefficients `a_0..a_N`.
fn ode_solve(equation: &str, initial: Option<&str>, opts: &Options) -> Result<Report, CliError> {
    let (_, f, regime) = solve(equation, initial)?;
    let n = opts.order;
    let coeffs = f.prefix(n + 1);
    let text = format!(
        "regime: {regime}\nF = {}\na_0..a_{n}: {}",
        f.render("z", n + 1),
        join(&coeffs)
    );
    let json = json!({
        "command": "ode-solve",
        "regime": regime,
        "order": n,
        "coefficients": coeffs,
    });
    Ok(Report::ok(text, json))
}

/// Checks the residual of a candidate (or of the computed solution) at
/// indices `0..N`.
fn ode_check(
    equation: &str,
    candidate: Option<&str>,
    initial: Option<&str>,
    opts: &Options,
) -> Result<Report, CliError> {
    let n = opts.order;
    let (ode, f) = match candidate {
        Some(src) => {
            if initial.is_some() {
                return Err(CliError::Usage(
                    "--initial only applies without a candidate".into(),
                ));
            }
            let f = eval(&parse(src)?)?.into_series()?;
            (parse_ode(equation)?, f)
        }
        None => {
            let (ode, f, _) = solve(equation, initial)?;
            (ode, f)
        }
    };
    let residual = ode.residual(&f, n);
    let first = residual.iter().position(|c| !c.is_zero());
    let (text, passed) = match first {
        None => (format!("residual zero through order {n}"), true),
        Some(i) => (
            format!("residual nonzero at index {i}: {}", residual[i]),
            false,
        ),
    };
    let json = json!({
        "command": "ode-check",
        "order": n,
        "passed": passed,
        "first_nonzero": first,
        "residual": residual,
    });
    Ok(Report { text, json, passed })
}

fn certificate_json(c: &DivergenceCertificate) -> Json {
    serde_json::to_value(c).expect("certificate json")
}

fn certificate_text(c: &DivergenceCertificate) -> String {
    format!(
        "n = {}, |a_n|*r^n = {} (~{:.6e}) > {}",
        c.n,
        c.witness,
        c.witness.to_f64_lossy(),
        c.m
    )
}

fn diverge(series: &str, r: &str, m: &str, nmax: usize) -> Result<Report, CliError> {
    let s = eval(&parse(series)?)?.into_series()?;
    let r = parse_rational(r, "--r")?;
    let m = parse_rational(m, "--M")?;
    require_positive(&r, "--r")?;
    require_positive(&m, "--M")?;
    let d = certify_divergence(&s, &r, &m, nmax)?;
    Ok(match d {
        Divergence::Certified(c) => Report::ok(
            format!("certificate: {}", certificate_text(&c)),
            json!({ "command": "diverge", "found": true, "certificate": certificate_json(&c) }),
        ),
        Divergence::NotFound { nmax } => Report::ok(
            format!("not found: |a_n|*r^n <= {m} for every n <= {nmax}"),
            json!({ "command": "diverge", "found": false, "nmax": nmax, "r": r, "M": m }),
        ),
    })
}

fn compare(a: &str, b: &str, opts: &Options) -> Result<Report, CliError> {
    let x = eval(&parse(a)?)?.into_puiseux()?;
    let y = eval(&parse(b)?)?.into_puiseux()?;
    let c = x.compare(&y, Exponent::from_integer(opts.order as i64));
    let name = match c {
        Comparison::Less => "less",
        Comparison::Greater => "greater",
        Comparison::EqualThrough(_) => "equal_through",
    };
    Ok(Report::ok(
        c.to_string(),
        json!({ "command": "compare", "result": name, "order": opts.order }),
    ))
}

fn monomial_text(m: &[u32]) -> String {
    let part = |v: &str, e: u32| match e {
        0 => None,
        1 => Some(v.to_string()),
        e => Some(format!("{v}^{e}")),
    };
    let parts: Vec<String> = [part("x", m[0]), part("y", m[1])]
        .into_iter()
        .flatten()
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn cr_text(report: &CrReport) -> String {
    match report {
        CrReport::Pass { degree } => {
            format!("Cauchy-Riemann identities hold through degree {degree}")
        }
        CrReport::Fail {
            degree,
            monomial,
            equation,
        } => {
            let eq = match equation {
                CrEquation::First => "dp1/dx = dp2/dy",
                CrEquation::Second => "dp1/dy = -dp2/dx",
            };
            format!(
                "degree {degree}: {eq} breaks at monomial {}",
                monomial_text(monomial)
            )
        }
    }
}

fn cr_json(report: &CrReport) -> Json {
    match report {
        CrReport::Pass { degree } => json!({ "passed": true, "degree": degree }),
        CrReport::Fail {
            degree,
            monomial,
            equation,
        } => json!({
            "passed": false,
            "degree": degree,
            "monomial": monomial,
            "equation": match equation { CrEquation::First => 1, CrEquation::Second => 2 },
        }),
    }
}

fn run_cr_check(first: &str, second: Option<&str>, opts: &Options) -> Result<Report, CliError> {
    let (p1, p2) = match second {
        None => {
            let v = eval(&parse(first)?)?;
            match v {
                Value::Series(_) | Value::Scalar(_) => coordinate_series(&v.into_series()?),
                other => {
                    return Err(CliError::Type(format!(
                        "cr-check with one argument takes a series in z, found a {}",
                        other.kind()
                    )))
                }
            }
        }
        Some(second) => (
            eval(&parse(first)?)?.into_bivariate()?,
            eval(&parse(second)?)?.into_bivariate()?,
        ),
    };
    let report = cr_check(&p1, &p2, opts.order)?;
    let mut json = cr_json(&report);
    json["command"] = json!("cr-check");
    let verdict = if report.passed() { "pass" } else { "fail" };
    Ok(Report {
        text: format!("{verdict}: {}", cr_text(&report)),
        passed: report.passed(),
        json,
    })
}

struct Stage {
    passed: bool,
    detail: String,
}

/// A random difference-quotient instance on the disc: `z₀` has coordinates
/// `a·t`, `b·t` with `|a|, |b| ≤ 1/2`, and `h = c·t^v` with `|c| ≤ 1/4`.
fn spot_check(f: &Series, seed: u64) -> Result<(bool, String), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeff = |lo: i64, hi: i64, den: i64| Rational::frac(rng.gen_range(lo..=hi), den);
    let a = coeff(-6, 6, 12);
    let b = coeff(-6, 6, 12);
    let c = coeff(1, 3, 12);
    let v = rng.gen_range(1..=3i64);
    let z0 = DiscPoint::new(ComplexPuiseux::new(
        Puiseux::monomial(a, Exponent::from_integer(1)),
        Puiseux::monomial(b, Exponent::from_integer(1)),
    ));
    let h = ComplexPuiseux::real(Puiseux::monomial(c, Exponent::from_integer(v)));
    let r = diff_quotient_check(f, &z0, &h, Exponent::from_integer(12))?;
    Ok((
        r.holds,
        format!("difference quotient gap {} >= v(h) = {}", r.gap, r.step),
    ))
}

fn counterexample(
    r: &Rational,
    m: &Rational,
    nmax: usize,
    tamper: Option<usize>,
    opts: &Options,
) -> Result<Report, CliError> {
    require_positive(r, "--r")?;
    require_positive(m, "--M")?;
    let n = opts.order;
    let ode = LinearOde::flagship();
    let solved = ode.solve(None)?.series;
    let shown = solved.prefix(n.min(12) + 1)[1..].to_vec();

    let mut stages: Vec<Stage> = Vec::new();

    // 1. the solver reproduces (n-1)! exactly
    let mut fact = BigInt::one();
    let mut mismatch = None;
    for k in 1..=n {
        if k > 1 {
            fact *= k - 1;
        }
        let a = solved.coeff(k);
        if a != Rational::from(fact.clone()) {
            mismatch = Some((k, a));
            break;
        }
    }
    stages.push(match mismatch {
        None => Stage {
            passed: true,
            detail: format!("a_n = (n-1)! for 1 <= n <= {n}"),
        },
        Some((k, a)) => Stage {
            passed: false,
            detail: format!("a_{k} = {a}, expected (k-1)!"),
        },
    });

    let f = match tamper {
        Some(k) => solved.add(&Series::monomial(Rational::one(), k)),
        None => solved.clone(),
    };

    let mut certificate = None;
    if stages[0].passed {
        // 2. the residual vanishes at indices 0..=N
        let residual = ode.residual(&f, n + 1);
        stages.push(match residual.iter().position(|c| !c.is_zero()) {
            None => Stage {
                passed: true,
                detail: format!("z^2*F' - F + z vanishes through z^{n}"),
            },
            Some(i) => Stage {
                passed: false,
                detail: format!("coefficient of z^{i} is {}", residual[i]),
            },
        });
    }
    if stages.last().is_some_and(|s| s.passed) && stages.len() == 2 {
        // 3. K-differentiability: Cauchy-Riemann, then a seeded spot check
        let degree = n.min(12);
        let (p1, p2) = coordinate_series(&f);
        let report = cr_check(&p1, &p2, degree)?;
        let stage = if report.passed() {
            let (holds, detail) = spot_check(&f, opts.seed)?;
            Stage {
                passed: holds,
                detail: format!("{}; {detail}", cr_text(&report)),
            }
        } else {
            Stage {
                passed: false,
                detail: cr_text(&report),
            }
        };
        stages.push(stage);
    }
    if stages.last().is_some_and(|s| s.passed) && stages.len() == 3 {
        // 4. divergence at radius r
        let stage = match certify_divergence(&f, r, m, nmax)? {
            Divergence::Certified(c) if c.validate(&f) => {
                let s = Stage {
                    passed: true,
                    detail: certificate_text(&c),
                };
                certificate = Some(c);
                s
            }
            Divergence::Certified(c) => Stage {
                passed: false,
                detail: format!("certificate at n = {} does not re-validate", c.n),
            },
            Divergence::NotFound { nmax } => Stage {
                passed: false,
                detail: format!("no n <= {nmax} with |a_n|*r^n > {m}"),
            },
        };
        stages.push(stage);
    }

    let passed = stages.len() == 4 && stages.iter().all(|s| s.passed);
    const NAMES: [&str; 4] = ["solve", "residual", "cauchy-riemann", "divergence"];
    let mut text = format!(
        "equation: F = z^2*F' + z\na_1..a_{}: {}\n",
        n.min(12),
        join(&shown)
    );
    let mut stage_json = Vec::new();
    for (i, name) in NAMES.iter().enumerate() {
        match stages.get(i) {
            Some(s) => {
                let verdict = if s.passed { "pass" } else { "FAIL" };
                text.push_str(&format!(
                    "stage {} ({name}): {verdict}: {}\n",
                    i + 1,
                    s.detail
                ));
                stage_json.push(json!({
                    "stage": i + 1,
                    "name": name,
                    "status": if s.passed { "pass" } else { "fail" },
                    "detail": s.detail,
                }));
            }
            None => {
                text.push_str(&format!("stage {} ({name}): skipped\n", i + 1));
                stage_json.push(json!({ "stage": i + 1, "name": name, "status": "skipped" }));
            }
        }
    }
    match stages.iter().position(|s| !s.passed) {
        None => text.push_str("result: all stages passed"),
        Some(i) => text.push_str(&format!("result: FAIL at stage {} ({})", i + 1, NAMES[i])),
    }
    let json = json!({
        "command": "counterexample",
        "order": n,
        "coefficients": shown,
        "stages": stage_json,
        "certificate": certificate.as_ref().map(certificate_json),
        "passed": passed,
    });
    Ok(Report { text, json, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(order: usize) -> Options {
        Options { order, seed: 7 }
    }

    #[test]
    fn ode_solve_lists_factorials() {
        let cmd = Command::OdeSolve {
            equation: "z^2*F' - F = -z".into(),
            initial: None,
        };
        let r = execute(&cmd, &opts(6)).unwrap();
        assert!(r.text.contains("1, 1, 2, 6, 24, 120"), "{}", r.text);
        assert!(r.passed);
    }

    #[test]
    fn compare_reports_ordering() {
        let cmd = Command::Compare {
            a: "t".into(),
            b: "1/1000".into(),
        };
        assert_eq!(execute(&cmd, &opts(10)).unwrap().text, "less");
        let cmd = Command::Compare {
            a: "t^(1/3)".into(),
            b: "t^(1/2)".into(),
        };
        assert_eq!(execute(&cmd, &opts(10)).unwrap().text, "greater");
        let cmd = Command::Compare {
            a: "t*t".into(),
            b: "t^2".into(),
        };
        assert_eq!(execute(&cmd, &opts(10)).unwrap().text, "equal_through(10)");
    }

    #[test]
    fn counterexample_passes_and_tamper_fails_at_stage_two() {
        let cmd = Command::Counterexample {
            r: "1/10".into(),
            m: "1000000".into(),
            nmax: 100,
            tamper: None,
        };
        let r = execute(&cmd, &opts(50)).unwrap();
        assert!(r.passed, "{}", r.text);
        assert_eq!(r.json["certificate"]["n"], 40);

        let cmd = Command::Counterexample {
            r: "1/10".into(),
            m: "1000000".into(),
            nmax: 100,
            tamper: Some(5),
        };
        let r = execute(&cmd, &opts(50)).unwrap();
        assert!(!r.passed);
        assert!(r.text.contains("FAIL at stage 2 (residual)"), "{}", r.text);
    }

    #[test]
    fn cr_check_conjugation_fails() {
        let cmd = Command::CrCheck {
            first: "x".into(),
            second: Some("-y".into()),
        };
        let r = execute(&cmd, &opts(5)).unwrap();
        assert!(!r.passed);
        assert!(r.text.starts_with("fail: degree 1:"), "{}", r.text);
    }
}
