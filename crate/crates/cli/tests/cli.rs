use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_puiseux"))
        .args(args)
        .output()
        .expect("spawn puiseux")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn eval_renders_series() {
    let out = run(&["eval", "geom", "--order", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1 + z + z^2 + O(z^3)\n");

    let out = run(&["eval", "factorial", "--order", "5"]);
    assert_eq!(stdout(&out), "z + z^2 + 2*z^3 + 6*z^4 + O(z^5)\n");

    assert_eq!(stdout(&run(&["eval", "0"])), "0\n");
    assert_eq!(stdout(&run(&["eval", "z - z"])), "0\n");
    assert_eq!(stdout(&run(&["eval", "-z", "--order", "4"])), "-z\n");
}

#[test]
fn ode_solve_flagship() {
    let out = run(&["ode-solve", "z^2*F' - F = -z", "--order", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("1, 1, 2, 6, 24, 120"), "{text}");
    assert!(text.contains("regime: unique"));
}

#[test]
fn ode_solve_initial_value_problem() {
    let out = run(&["ode-solve", "F' = F", "--initial", "1", "--order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("a_0..a_4: 1, 1, 1/2, 1/6, 1/24"));
    // missing or superfluous initial values are usage errors
    assert_eq!(run(&["ode-solve", "F' = F"]).status.code(), Some(2));
    assert_eq!(
        run(&["ode-solve", "z^2*F' - F = -z", "--initial", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["ode-solve", "z*F' = z*F"]).status.code(), Some(2));
}

#[test]
fn ode_check_exit_codes() {
    let ok = run(&[
        "ode-check",
        "z^2*F' - F = -z",
        "--candidate",
        "factorial",
        "--order",
        "60",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&[
        "ode-check",
        "z^2*F' - F = -z",
        "--candidate",
        "factorial + z^5",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("index 5"));
    let solved = run(&["ode-check", "z^2*F' - F = -z", "--order", "200"]);
    assert_eq!(solved.status.code(), Some(0));
}

#[test]
fn compare_outputs() {
    assert_eq!(
        stdout(&run(&["compare", "t", "1/1000", "--order", "10"])),
        "less\n"
    );
    assert_eq!(
        stdout(&run(&["compare", "t^(1/3)", "t^(1/2)"])),
        "greater\n"
    );
    assert_eq!(
        stdout(&run(&["compare", "t^(1/2)*t^(1/2)", "t", "--order", "7"])),
        "equal_through(7)\n"
    );
    assert_eq!(stdout(&run(&["compare", "-t", "-1/1000000"])), "greater\n");
}

#[test]
fn diverge_reports_both_outcomes_with_exit_zero() {
    let out = run(&[
        "diverge",
        "factorial",
        "--r",
        "1/10",
        "--M",
        "1000000",
        "--nmax",
        "100",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["certificate"]["n"], 40);
    assert_eq!(v["certificate"]["r"]["den"], "10");

    let out = run(&[
        "diverge", "geom", "--r", "1/2", "--M", "1", "--nmax", "10000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("not found"));

    assert_eq!(
        run(&["diverge", "geom", "--r", "0", "--M", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn cr_check_verdicts() {
    let out = run(&["cr-check", "factorial", "--order", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["cr-check", "x^2 - y^2", "2*x*y"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["cr-check", "x", "-y"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("degree 1"));
    assert_eq!(run(&["cr-check", "t"]).status.code(), Some(2));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    for args in [
        vec!["eval", "1 + * z"],
        vec!["eval", "z + t"],
        vec!["eval", "1/z"],
        vec!["frobnicate"],
        vec!["eval", "z", "--order", "many"],
        vec!["counterexample", "--r", "abc"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = run(&["eval", "(z + 1"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:7"));
}

#[test]
fn counterexample_passes() {
    let out = run(&[
        "counterexample",
        "--order",
        "100",
        "--r",
        "1/10",
        "--M",
        "1000000",
        "--nmax",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text
        .contains("a_1..a_12: 1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800, 39916800"));
    assert!(text.contains("n = 40"));
    assert!(text.ends_with("result: all stages passed\n"));
}

#[test]
fn counterexample_fails_without_a_witness() {
    let out = run(&[
        "counterexample",
        "--order",
        "30",
        "--r",
        "1/10",
        "--M",
        "1000000",
        "--nmax",
        "30",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL at stage 4 (divergence)"));
}

#[test]
fn tampered_solution_fails_at_stage_two() {
    let out = run(&["counterexample", "--order", "40", "--tamper", "7", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["stages"][0]["status"], "pass");
    assert_eq!(v["stages"][1]["status"], "fail");
    assert_eq!(v["stages"][1]["name"], "residual");
    assert_eq!(v["stages"][2]["status"], "skipped");
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["counterexample", "--order", "60", "--json", "--seed", "11"],
        vec!["eval", "t^(1/2) + 3*t", "--json"],
        vec!["ode-solve", "z^2*F' - F = -z", "--order", "30"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
