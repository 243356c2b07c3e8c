//! Command-line front end.
//!
//! Parsing is done by hand so usage errors and outputs stay byte-stable:
//! the interval syntax clashes with standard option grammars anyway
//! (`[-8,-8]` starts with a dash).

use crate::exponent::Rational;
use crate::interval::Interval;
use crate::oracle::{check_containment, sample_image, sample_image_exact, GridSpec};
use crate::pow_extended::{pow_exact_with_slack, pow_float_with_slack, ExactExponent};
use crate::pow_nonneg::DEFAULT_SLACK_ULPS;

const USAGE: &str = "\
Usage: xpowy --base INTERVAL (--exp INTERVAL | --exp-rational NUM/DEN | --exp-irrational VALUE) [OPTIONS]

Prints an interval enclosing base^exponent over every real pair in the
operands. Negative bases contribute through exponents whose reduced fraction
has an odd denominator; the exponent flag picks how the exponent is read.

Intervals are written [lo,hi] or 'empty'; bounds accept inf and -inf.

Options:
      --base INTERVAL          base interval (required)
      --exp INTERVAL           exponent as an interval of machine values
      --exp-rational NUM/DEN   exact rational exponent (plain integers too)
      --exp-irrational VALUE   exponent asserted irrational, given by the
                               nearest machine value
      --check                  cross-check the result against brute-force
                               sampling; prints PASS or FAIL, exits 2 on FAIL
      --grid ROWSxCOLS         sampling grid for --check (default 100x100)
      --max-den N              largest fraction denominator searched by
                               --check (default 99)
      --slack N                ulps of widening on power evaluations (default 2)
  -h, --help                   print this help
";

/// How the exponent operand is to be interpreted.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExponentArg {
    Machine(Interval),
    Rational(Rational),
    Irrational(f64),
}

/// A fully parsed invocation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalRequest {
    pub base: Interval,
    pub exp: ExponentArg,
    pub check: bool,
    pub grid: GridSpec,
    pub slack_ulps: u32,
}

/// What the process should print and exit with.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub stdout: String,
    pub status: i32,
}

fn take_value<'a>(it: &mut std::slice::Iter<'a, String>, flag: &str) -> Result<&'a str, String> {
    it.next()
        .map(String::as_str)
        .ok_or_else(|| format!("missing value for {flag}"))
}

fn set_exp(slot: &mut Option<ExponentArg>, value: ExponentArg) -> Result<(), String> {
    if slot.is_some() {
        return Err("conflicting exponent flags".to_string());
    }
    *slot = Some(value);
    Ok(())
}

/// Parses raw arguments (without the program name) into a request.
pub fn parse_args(args: &[String]) -> Result<EvalRequest, String> {
    let mut base = None;
    let mut exp = None;
    let mut check = false;
    let mut dims = (100usize, 100usize);
    let mut dims_raw = "100x100".to_string();
    let mut max_den = 99u32;
    let mut slack_ulps = DEFAULT_SLACK_ULPS;

    let mut it = args.iter();
    while let Some(tok) = it.next() {
        match tok.as_str() {
            "--check" => check = true,
            "--base" => {
                let v = take_value(&mut it, "--base")?;
                base = Some(
                    v.parse::<Interval>()
                        .map_err(|e| format!("invalid interval '{v}': {e}"))?,
                );
            }
            "--exp" => {
                let v = take_value(&mut it, "--exp")?;
                let iv = v
                    .parse::<Interval>()
                    .map_err(|e| format!("invalid interval '{v}': {e}"))?;
                set_exp(&mut exp, ExponentArg::Machine(iv))?;
            }
            "--exp-rational" => {
                let v = take_value(&mut it, "--exp-rational")?;
                let q = v
                    .parse::<Rational>()
                    .map_err(|e| format!("invalid rational '{v}': {e}"))?;
                set_exp(&mut exp, ExponentArg::Rational(q))?;
            }
            "--exp-irrational" => {
                let v = take_value(&mut it, "--exp-irrational")?;
                let a = v
                    .parse::<f64>()
                    .map_err(|_| format!("invalid number '{v}'"))?;
                ExactExponent::irrational(a).map_err(|e| format!("invalid number '{v}': {e}"))?;
                set_exp(&mut exp, ExponentArg::Irrational(a))?;
            }
            "--grid" => {
                let v = take_value(&mut it, "--grid")?;
                let (r, c) = v
                    .split_once('x')
                    .and_then(|(r, c)| Some((r.parse().ok()?, c.parse().ok()?)))
                    .ok_or_else(|| format!("invalid grid '{v}': expected ROWSxCOLS"))?;
                dims = (r, c);
                dims_raw = v.to_string();
            }
            "--max-den" => {
                let v = take_value(&mut it, "--max-den")?;
                max_den = v
                    .parse::<u32>()
                    .ok()
                    .filter(|d| *d >= 1)
                    .ok_or_else(|| format!("invalid denominator bound '{v}'"))?;
            }
            "--slack" => {
                let v = take_value(&mut it, "--slack")?;
                slack_ulps = v
                    .parse::<u32>()
                    .map_err(|_| format!("invalid slack '{v}'"))?;
            }
            t if t.starts_with("--") => return Err(format!("unknown flag '{t}'")),
            t => return Err(format!("unexpected argument '{t}'")),
        }
    }

    let base = base.ok_or("missing required flag --base")?;
    let exp =
        exp.ok_or("missing exponent flag: one of --exp, --exp-rational, --exp-irrational")?;
    let grid = GridSpec::new(dims.0, dims.1, max_den)
        .map_err(|e| format!("invalid grid '{dims_raw}': {e}"))?;

    Ok(EvalRequest {
        base,
        exp,
        check,
        grid,
        slack_ulps,
    })
}

/// Runs one invocation and reports what to print and the exit status.
pub fn run(args: &[String]) -> Result<RunOutput, String> {
    if args.iter().any(|a| a == "--help" || a == "-h") {
        return Ok(RunOutput {
            stdout: USAGE.to_string(),
            status: 0,
        });
    }
    let req = parse_args(args)?;

    let result = match req.exp {
        ExponentArg::Machine(y) => pow_float_with_slack(req.base, y, req.slack_ulps),
        ExponentArg::Rational(q) => {
            pow_exact_with_slack(req.base, &ExactExponent::Rational(q), req.slack_ulps)
        }
        ExponentArg::Irrational(a) => {
            pow_exact_with_slack(req.base, &ExactExponent::Irrational { approx: a }, req.slack_ulps)
        }
    };

    let mut stdout = format!("{result}\n");
    let mut status = 0;
    if req.check {
        let sample = match req.exp {
            ExponentArg::Machine(y) => sample_image(req.base, y, &req.grid),
            ExponentArg::Rational(q) => sample_image_exact(req.base, &q, &req.grid),
            ExponentArg::Irrational(a) => {
                let window = ExactExponent::Irrational { approx: a }.machine_enclosure();
                sample_image(req.base, window, &req.grid)
            }
        };
        let report = check_containment(result, &sample);
        stdout.push_str(&format!("{report}\n"));
        if !report.pass {
            status = 2;
        }
    }
    Ok(RunOutput { stdout, status })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    fn parse(s: &str) -> Result<EvalRequest, String> {
        parse_args(&args(s))
    }

    fn run_str(s: &str) -> Result<RunOutput, String> {
        run(&args(s))
    }

    #[test]
    fn parses_each_exponent_flavor() {
        let r = parse("--base [1,2] --exp [0,1]").unwrap();
        assert_eq!(r.base, Interval::new(1.0, 2.0).unwrap());
        assert_eq!(
            r.exp,
            ExponentArg::Machine(Interval::new(0.0, 1.0).unwrap())
        );
        assert!(!r.check);
        assert_eq!(r.slack_ulps, DEFAULT_SLACK_ULPS);

        let r = parse("--base [1,2] --exp-rational -2/6").unwrap();
        assert_eq!(r.exp, ExponentArg::Rational(Rational::new(-1, 3).unwrap()));

        let r = parse("--base [1,2] --exp-rational 7").unwrap();
        assert_eq!(r.exp, ExponentArg::Rational(Rational::new(7, 1).unwrap()));

        let r = parse("--base [1,2] --exp-irrational 3.141592653589793").unwrap();
        assert_eq!(r.exp, ExponentArg::Irrational(std::f64::consts::PI));
    }

    #[test]
    fn parses_check_options() {
        let r = parse("--base [0,1] --exp [1,2] --check --grid 10x20 --max-den 7 --slack 3").unwrap();
        assert!(r.check);
        assert_eq!(r.grid.base_samples(), 10);
        assert_eq!(r.grid.exp_samples(), 20);
        assert_eq!(r.grid.max_denominator(), 7);
        assert_eq!(r.slack_ulps, 3);
    }

    #[test]
    fn usage_error_messages_are_stable() {
        let cases = [
            ("", "missing required flag --base"),
            ("--base [1,2]", "missing exponent flag: one of --exp, --exp-rational, --exp-irrational"),
            ("--base", "missing value for --base"),
            ("--base [1,2] --exp", "missing value for --exp"),
            ("--base [3,1] --exp [1,2]", "invalid interval '[3,1]': inverted bounds"),
            ("--base zz --exp [1,2]", "invalid interval 'zz': expected '[lo,hi]' or 'empty'"),
            ("--base [1,x] --exp [1,2]", "invalid interval '[1,x]': invalid bound 'x'"),
            ("--base [1,2] --exp-rational 1/0", "invalid rational '1/0': denominator is zero"),
            ("--base [1,2] --exp-rational a/2", "invalid rational 'a/2': invalid integer 'a'"),
            ("--base [1,2] --exp-irrational zz", "invalid number 'zz'"),
            ("--base [1,2] --exp-irrational inf", "invalid number 'inf': exponent is not a finite machine number"),
            ("--base [1,2] --exp [1,2] --exp-rational 1/2", "conflicting exponent flags"),
            ("--base [1,2] --exp [1,2] --grid 9", "invalid grid '9': expected ROWSxCOLS"),
            ("--base [1,2] --exp [1,2] --grid 1x5", "invalid grid '1x5': invalid sampling grid: need at least 2 base samples"),
            ("--base [1,2] --exp [1,2] --max-den 0", "invalid denominator bound '0'"),
            ("--base [1,2] --exp [1,2] --slack -1", "invalid slack '-1'"),
            ("--base [1,2] --exp [1,2] --frobnicate", "unknown flag '--frobnicate'"),
            ("--base [1,2] --exp [1,2] stray", "unexpected argument 'stray'"),
        ];
        for (input, want) in cases {
            assert_eq!(parse(input).unwrap_err(), want, "input: {input}");
        }
    }

    #[test]
    fn evaluates_machine_exponents() {
        let out = run_str("--base [-2,-2] --exp [3,3]").unwrap();
        assert_eq!(out.stdout, "[-8,-8]\n");
        assert_eq!(out.status, 0);

        let out = run_str("--base [-2,3] --exp [2,3]").unwrap();
        assert_eq!(out.stdout, "[-8,27]\n");
    }

    #[test]
    fn evaluates_exact_exponents() {
        let out = run_str("--base [-4,-4] --exp-rational 1/2").unwrap();
        assert_eq!(out.stdout, "empty\n");
        assert_eq!(out.status, 0);

        let out = run_str("--base [0,1] --exp-irrational 3.141592653589793").unwrap();
        assert_eq!(out.stdout, "[0,1]\n");
    }

    #[test]
    fn check_appends_verdict() {
        let out = run_str("--base [-2,3] --exp [2,3] --check").unwrap();
        assert_eq!(out.stdout, "[-8,27]\nPASS\n");
        assert_eq!(out.status, 0);

        let out = run_str("--base [-8,-8] --exp-rational 1/3 --check").unwrap();
        assert!(out.stdout.ends_with("PASS\n"), "{}", out.stdout);
        assert_eq!(out.status, 0);

        let out =
            run_str("--base [2,2] --exp-irrational 3.141592653589793 --check --grid 20x20").unwrap();
        assert!(out.stdout.ends_with("PASS\n"), "{}", out.stdout);
    }

    #[test]
    fn help_prints_usage() {
        let out = run_str("--help").unwrap();
        assert!(out.stdout.starts_with("Usage: xpowy --base INTERVAL"));
        assert_eq!(out.status, 0);
        let out = run_str("--base [1,2] -h").unwrap();
        assert_eq!(out.status, 0);
    }
}
