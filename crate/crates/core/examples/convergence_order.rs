// Measures digits gained per step against an independent bisection root,
// in exact mode and in a coarse fixed-precision mode that stalls.
//
// ```bash
// cargo run --example convergence_order
// ```

use babylon::{analyze, iterate, ExactRational, PrecisionMode, Reference, RootProblem, StoppingRule};

fn run() -> babylon::Result<()> {
    let r = ExactRational::from(17);
    for (m, x1) in [(2, 4), (3, 2)] {
        let reference = Reference::bisect(&r, m, 200)?;
        let trace = iterate(&RootProblem::with_guess(r.clone(), m, x1.into())?)?;
        let report = analyze(&trace, &reference)?;
        println!(
            "m = {m}: {} iterates, order {}, correct digits {:?}",
            report.iterations_used, report.observed_order, report.correct_digits_per_step
        );
    }

    let stop = StoppingRule::new("1e-30".parse()?, 50, PrecisionMode::FixedPrecision { digits: 5 })?;
    let problem = RootProblem::new(r.clone(), 2, Some(4.into()), stop)?;
    let trace = match iterate(&problem) {
        Ok(trace) => trace,
        Err(e) => {
            println!("\nfixed precision, 5 digits: {e}");
            e.partial_trace().cloned().expect("non-convergence carries its trace")
        }
    };
    let report = analyze(&trace, &Reference::bisect(&r, 2, 200)?)?;
    println!("values {:?}", trace.values().map(ToString::to_string).collect::<Vec<_>>());
    println!("order {}, converged {}", report.observed_order, report.converged);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("example runs");
}
