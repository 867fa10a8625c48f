// General m-th roots with the default starting guess.
//
// Exact iterates grow by a factor of about m in bit length per step, so
// higher degrees run on a 60-digit grid instead.
//
// ```bash
// cargo run --example mth_root
// ```

use babylon::{default_initial_guess, iterate, ExactRational, PrecisionMode, RootProblem, StoppingRule};

fn run() -> babylon::Result<()> {
    let cases = [("2", 2), ("17", 3), ("1000000", 6), ("3/7", 5), ("0.001", 4), ("123456789", 10)];
    println!("{:>10} {:>3} {:>4} {:>6} {:>6}  root", "r", "m", "x1", "mode", "steps");
    for (r, m) in cases {
        let r: ExactRational = r.parse()?;
        let guess = default_initial_guess(&r, m);
        let (mode, label) = if m <= 3 {
            (PrecisionMode::Exact, "exact")
        } else {
            (PrecisionMode::FixedPrecision { digits: 60 }, "fixed")
        };
        let stop = StoppingRule::new("1e-30".parse()?, 500, mode)?;
        let trace = iterate(&RootProblem::new(r.clone(), m, None, stop)?)?;
        println!(
            "{:>10} {m:>3} {guess:>4} {label:>6} {:>6}  {}",
            r,
            trace.len() - 1,
            trace.last().value.decimal_string(30)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("example runs");
}
