//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use babylon::cli::OutputRecord;
use babylon::{
    analyze, fixed_point_residual, from_sexagesimal, iterate, mth_root_step, newton_step, to_sexagesimal,
    ExactRational, Polynomial, PrecisionMode, Reference, RootProblem, SexagesimalNumeral, StoppingRule,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const SEED: u64 = 0x5eed_0017;

type Check = Result<String, String>;

fn q(s: &str) -> ExactRational {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_time(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed < budget, || format!("took {elapsed:?}, budget {budget:?}"))
}

/// Value in [1e-6, 1e6] with a log-uniform exponent and 7 significant digits.
fn log_uniform(rng: &mut ChaCha8Rng) -> ExactRational {
    let exp: i64 = rng.gen_range(-6..6);
    let mantissa: u64 = rng.gen_range(1_000_000..10_000_000);
    ExactRational::from(mantissa) * ExactRational::pow10(exp - 6)
}

/// Value uniform on [1e-6, 1e6] at a 1e-6 grid.
fn uniform(rng: &mut ChaCha8Rng) -> ExactRational {
    let k: u64 = rng.gen_range(1..=1_000_000_000_000);
    ExactRational::from(k) * ExactRational::pow10(-6)
}

/// Runs `max_iter = steps` from `x1` and returns the recorded values.
fn first_iterates(r: &str, m: u32, x1: &str, steps: usize) -> Vec<ExactRational> {
    let stop = StoppingRule::new(q("1e-30"), steps, PrecisionMode::Exact).unwrap();
    let problem = RootProblem::new(q(r), m, Some(q(x1)), stop).unwrap();
    let trace = match iterate(&problem) {
        Ok(t) => t,
        Err(e) => e.partial_trace().expect("only non-convergence expected").clone(),
    };
    trace.values().cloned().collect()
}

fn golden(r: &str, m: u32, x1: &str, second: &str, second_dec: &str, third: &str) -> Check {
    let start = Instant::now();
    let values = first_iterates(r, m, x1, 2);
    let elapsed = start.elapsed();
    ensure(values.len() == 3, || format!("expected 3 iterates, got {}", values.len()))?;
    ensure(values[0] == q(x1), || format!("x1 = {}", values[0]))?;
    ensure(values[1] == q(second), || format!("x2 = {}", values[1]))?;
    let dec = values[1].decimal_string(second_dec.split('.').nth(1).map_or(0, str::len));
    ensure(dec == second_dec, || format!("x2 prints as {dec}"))?;
    ensure(values[2] == q(third), || format!("x3 = {}", values[2]))?;
    within_time(elapsed, Duration::from_millis(1))?;
    Ok(format!("[{}, {}, {}] in {elapsed:?}", values[0], values[1], values[2]))
}

fn criterion_1() -> Check {
    // (33/8 + 17*8/33) / 2 = (1089 + 1088) / 528
    golden("17", 2, "4", "33/8", "4.125", "2177/528")
}

fn criterion_2() -> Check {
    // (2*11/4 + 17*16/121) / 3 = (1331 + 544) / 242 / 3
    golden("17", 3, "2", "11/4", "2.75", "625/242")
}

fn criterion_3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let start = Instant::now();
    let cases = 10_000;
    for i in 0..cases {
        let r = log_uniform(&mut rng);
        let x = log_uniform(&mut rng);
        let m: u32 = rng.gen_range(2..=10);
        let mean = mth_root_step(&x, &r, m).map_err(|e| e.to_string())?;
        let newton = newton_step(&Polynomial::power_minus(m, &r), &x).map_err(|e| e.to_string())?;
        ensure(mean == newton, || format!("case {i}: r={r} x={x} m={m}: {mean} vs {newton}"))?;
    }
    let elapsed = start.elapsed();
    within_time(elapsed, Duration::from_secs(30))?;
    Ok(format!("{cases}/{cases} structurally equal in {elapsed:?}"))
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let nudge = ExactRational::pow10(-9);
    let cases = 1_000;
    for i in 0..cases {
        let root = log_uniform(&mut rng);
        let m: u32 = rng.gen_range(2..=10);
        let r = root.pow(m).unwrap();
        let at_root = fixed_point_residual(&root, &r, m).map_err(|e| e.to_string())?;
        ensure(at_root.is_zero(), || format!("case {i}: residual {at_root} at exact root {root}, m={m}"))?;
        let nudged = &root + &nudge;
        let displacement = fixed_point_residual(&nudged, &r, m).map_err(|e| e.to_string())?;
        ensure(displacement.abs().is_positive(), || format!("case {i}: zero displacement off the root"))?;
        ensure(displacement.is_negative(), || format!("case {i}: step above the root did not move down"))?;
    }
    Ok(format!("{cases}/{cases} exact roots fixed, perturbed starts displaced"))
}

struct Criterion5Run {
    traces: Vec<babylon::IterationTrace>,
    elapsed: Duration,
    failures: Vec<String>,
}

fn run_criterion_5_problems() -> Criterion5Run {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let tol = ExactRational::pow10(-20);
    let mode = PrecisionMode::FixedPrecision { digits: 40 };
    let mut traces = Vec::new();
    let mut failures = Vec::new();
    let start = Instant::now();
    for i in 0..1_000 {
        let r = uniform(&mut rng);
        let x1 = uniform(&mut rng);
        let m: u32 = rng.gen_range(2..=10);
        let stop = StoppingRule::new(tol.clone(), 200, mode).unwrap();
        let problem = RootProblem::new(r.clone(), m, Some(x1.clone()), stop).unwrap();
        match iterate(&problem) {
            Ok(trace) => {
                let oracle = babylon::reference_root(&r, m, 30).unwrap();
                let last = &trace.last().value;
                let bound = ExactRational::from(2) * &tol * &oracle;
                if (last - &oracle).abs() > bound {
                    failures.push(format!("case {i}: r={r} m={m} x1={x1}: final off oracle"));
                }
                traces.push(trace);
            }
            Err(e) => failures.push(format!("case {i}: r={r} m={m} x1={x1}: {e}")),
        }
    }
    Criterion5Run {
        traces,
        elapsed: start.elapsed(),
        failures,
    }
}

fn criterion_5(run: &Criterion5Run) -> Check {
    ensure(run.failures.is_empty(), || {
        format!("{} failures, first: {}", run.failures.len(), run.failures[0])
    })?;
    within_time(run.elapsed, Duration::from_secs(60))?;
    let max_steps = run.traces.iter().map(|t| t.len() - 1).max().unwrap_or(0);
    Ok(format!(
        "{}/1000 converged (max {max_steps} steps) and match bisection oracle in {:?}",
        run.traces.len(),
        run.elapsed
    ))
}

fn criterion_6() -> Check {
    let mut details = Vec::new();
    for (m, x1) in [(2u32, "4"), (3, "2")] {
        let trace = iterate(&RootProblem::with_guess(q("17"), m, q(x1)).unwrap()).map_err(|e| e.to_string())?;
        let reference = Reference::bisect(&q("17"), m, 200).map_err(|e| e.to_string())?;
        let report = analyze(&trace, &reference).map_err(|e| e.to_string())?;
        let order = report.order().map_err(|e| e.to_string())?;
        ensure((1.8..=2.2).contains(&order), || format!("m={m}: order {order}"))?;
        let digits = &report.correct_digits_per_step;
        ensure(digits.len() >= 6, || format!("m={m}: only {} iterates", digits.len()))?;
        // iterates 3..=6 are positions 2..=5
        for n in 2..5 {
            ensure(digits[n + 1] >= 2 * digits[n], || {
                format!("m={m}: digits {} -> {} at iterate {}", digits[n], digits[n + 1], n + 1)
            })?;
        }
        details.push(format!("m={m} order {order:.3} digits {:?}", &digits[2..6]));
    }
    Ok(details.join("; "))
}

fn criterion_7(run: &Criterion5Run) -> Check {
    ensure(!run.traces.is_empty(), || "no traces".into())?;
    for (i, trace) in run.traces.iter().enumerate() {
        let its = trace.iterates();
        for it in its.iter().skip(1) {
            ensure(!it.residual.is_negative(), || format!("trace {i}: negative residual at {}", it.index))?;
        }
        for pair in its[1..].windows(2) {
            ensure(pair[1].value <= pair[0].value, || format!("trace {i}: increase at {}", pair[1].index))?;
        }
    }
    Ok(format!("{} traces overshoot and descend monotonically", run.traces.len()))
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let cases = 10_000;
    for i in 0..cases {
        let num: i64 = rng.gen_range(-1_000_000_000..1_000_000_000);
        let den: i64 = rng.gen_range(1..1_000_000);
        let a = ExactRational::new(num, den).unwrap();
        let p: usize = rng.gen_range(0..10);
        let back = from_sexagesimal(&to_sexagesimal(&a, p)).map_err(|e| e.to_string())?;
        let ulp = ExactRational::new(1, 60).unwrap().pow(p as u32).unwrap();
        ensure((&a - &back).abs() < ulp, || format!("case {i}: {a} at {p} places -> {back}"))?;
    }
    let numeral = to_sexagesimal(&q("33/8"), 2);
    ensure(numeral.to_string() == "4;7,30", || format!("33/8 -> {numeral}"))?;
    let parsed: SexagesimalNumeral = "4;7,30".parse().map_err(|e: babylon::Error| e.to_string())?;
    let value = from_sexagesimal(&parsed).map_err(|e| e.to_string())?;
    ensure(value == q("33/8"), || format!("4;7,30 -> {value}"))?;
    Ok(format!("{cases}/{cases} within 60^-p; 33/8 <-> 4;7,30"))
}

fn run_root(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_root")).args(args).output().expect("spawn root");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8(output.stdout).unwrap(),
        String::from_utf8(output.stderr).unwrap(),
    )
}

/// Exact-column values of the table's data rows.
fn table_exact_column(table: &str) -> Vec<String> {
    table
        .lines()
        .skip(1)
        .take_while(|l| !l.is_empty())
        .map(|l| l.split_whitespace().nth(1).unwrap_or("").to_owned())
        .collect()
}

fn table_decimal_column(table: &str) -> Vec<String> {
    table
        .lines()
        .skip(1)
        .take_while(|l| !l.is_empty())
        .map(|l| l.split_whitespace().nth(2).unwrap_or("").to_owned())
        .collect()
}

fn validate_schema(doc: &Value) -> Result<(), String> {
    let obj = doc.as_object().ok_or("top level is not an object")?;
    ensure(obj.len() == 3, || format!("top-level keys {:?}", obj.keys().collect::<Vec<_>>()))?;
    let problem = obj.get("problem").and_then(Value::as_object).ok_or("problem")?;
    ensure(problem.len() == 3, || "problem keys".into())?;
    ensure(problem.get("radicand").is_some_and(Value::is_string), || "problem.radicand".into())?;
    ensure(problem.get("degree").is_some_and(Value::is_u64), || "problem.degree".into())?;
    ensure(problem.get("x0").is_some_and(Value::is_string), || "problem.x0".into())?;
    let steps = obj.get("steps").and_then(Value::as_array).ok_or("steps")?;
    ensure(!steps.is_empty(), || "steps empty".into())?;
    for (i, step) in steps.iter().enumerate() {
        let step = step.as_object().ok_or("step not an object")?;
        ensure(step.len() == 5, || format!("step {i} keys"))?;
        ensure(step.get("n").and_then(Value::as_u64) == Some(i as u64 + 1), || format!("step {i} n"))?;
        for key in ["exact", "decimal", "residual"] {
            ensure(step.get(key).is_some_and(Value::is_string), || format!("step {i} {key}"))?;
        }
        let sex = step.get("sexagesimal").ok_or("sexagesimal missing")?;
        ensure(sex.is_null() || sex.is_string(), || format!("step {i} sexagesimal"))?;
    }
    let report = obj.get("report").and_then(Value::as_object).ok_or("report")?;
    ensure(report.len() == 3, || "report keys".into())?;
    ensure(report.get("converged").is_some_and(Value::is_boolean), || "report.converged".into())?;
    ensure(report.get("iterations").is_some_and(Value::is_u64), || "report.iterations".into())?;
    ensure(report.get("observed_order").is_some_and(Value::is_string), || "report.observed_order".into())?;
    Ok(())
}

/// (arguments, leading exact rows, leading decimal prefixes, exit code)
type CliCase<'a> = (&'a [&'a str], &'a [&'a str], &'a [&'a str], i32);

fn criterion_9() -> Check {
    let cases: [CliCase; 3] = [
        (
            &["17", "--degree", "2", "--x0", "4", "--max-iter", "2", "--output", "table"],
            &["4", "33/8"],
            &["4.000", "4.125"],
            3,
        ),
        (
            &["17", "--degree", "3", "--x0", "2", "--max-iter", "2", "--output", "table"],
            &["2", "11/4"],
            &["2.000", "2.750"],
            3,
        ),
        (&["1", "--degree", "7"], &["1"], &["1.000"], 0),
    ];
    for (args, rows, decimals, code) in cases {
        let (status, out, err) = run_root(args);
        let cmd = args.join(" ");
        ensure(status == code, || format!("`root {cmd}` exited {status}, want {code}; {err}"))?;
        let exact = table_exact_column(&out);
        ensure(exact.len() >= rows.len() && exact[..rows.len()] == *rows, || {
            format!("`root {cmd}` rows {exact:?}")
        })?;
        if code == 0 {
            ensure(exact.len() == rows.len(), || format!("`root {cmd}` extra rows {exact:?}"))?;
        }
        let dec = table_decimal_column(&out);
        for (got, want) in dec.iter().zip(decimals) {
            ensure(got.starts_with(want), || format!("`root {cmd}` decimal {got} vs {want}"))?;
        }
        let again = run_root(args);
        ensure(again == (status, out.clone(), err.clone()), || format!("`root {cmd}` not deterministic"))?;
        ensure(code != 3 || err.lines().count() == 1, || format!("diagnostic not one line: {err:?}"))?;

        let mut json_args = args.to_vec();
        json_args.retain(|a| *a != "table" && *a != "--output");
        json_args.extend(["--output", "json", "--sexagesimal", "3"]);
        let (status, json, _) = run_root(&json_args);
        ensure(status == code, || format!("json run of `{cmd}` exited {status}"))?;
        let doc: Value = serde_json::from_str(&json).map_err(|e| format!("invalid json: {e}"))?;
        validate_schema(&doc)?;
        let record: OutputRecord = serde_json::from_str(&json).map_err(|e| e.to_string())?;
        let x1 = q(&record.problem.x0);
        let r = q(&record.problem.radicand);
        let m = record.problem.degree;
        let mut x = x1;
        for step in &record.steps {
            let parsed = q(&step.exact);
            ensure(parsed == x, || format!("step {} exact {} != engine {}", step.n, step.exact, x))?;
            x = mth_root_step(&x, &r, m).map_err(|e| e.to_string())?;
        }
    }
    Ok("3 invocations: rows, exit codes (3, 3, 0), reruns and JSON schema ok".into())
}

fn main() -> ExitCode {
    let mut results: Vec<(&str, Check)> = vec![
        ("1 golden sqrt(17)", criterion_1()),
        ("2 golden cbrt(17)", criterion_2()),
        ("3 Newton equivalence", criterion_3()),
        ("4 fixed-point characterization", criterion_4()),
    ];
    let run = run_criterion_5_problems();
    results.push(("5 global positive-start convergence", criterion_5(&run)));
    results.push(("6 quadratic behavior", criterion_6()));
    results.push(("7 monotone overshoot", criterion_7(&run)));
    results.push(("8 sexagesimal round-trip", criterion_8()));
    results.push(("9 CLI contract", criterion_9()));

    let mut failed = 0;
    for (name, result) in &results {
        match result {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
