// The Babylonian square root of 17, step by step.
//
// ```bash
// cargo run --example babylonian_sqrt
// ```

use babylon::{iterate, sqrt_step, ExactRational, RootProblem};

fn run() -> babylon::Result<()> {
    let r = ExactRational::from(17);
    let mut x = ExactRational::from(4);

    for n in 1..=4 {
        // x and r/x multiply back to r, so their mean is the next guess.
        let cofactor = r.checked_div(&x)?;
        assert_eq!(&x * &cofactor, r);
        println!("r{n} = {x:<40} ~ {}   (partner r/x = {cofactor})", x.decimal_string(12));
        x = sqrt_step(&x, &r)?;
    }

    let trace = iterate(&RootProblem::with_guess(r, 2, 4.into())?)?;
    let last = trace.last();
    println!();
    println!("converged after {} iterates", trace.len());
    println!("sqrt(17) ~ {}", last.value.decimal_string(50));
    println!("x^2 - 17 = {}", last.residual.decimal_string(60));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("example runs");
}
