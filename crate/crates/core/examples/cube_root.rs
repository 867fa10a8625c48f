// Cube root of 17 from the first guess 2: each new guess is the mean of
// x, x and 17 / x^2.
//
// ```bash
// cargo run --example cube_root
// ```

use babylon::{iterate, mth_root_step, ExactRational, RootProblem};

fn run() -> babylon::Result<()> {
    let r = ExactRational::from(17);
    let x1 = ExactRational::from(2);
    let x2 = mth_root_step(&x1, &r, 3)?;
    let cofactor = r.checked_div(&x2.pow(2)?)?;
    println!("r1 = {x1}");
    println!("r2 = {x2} = {}", x2.decimal_string(2));
    println!("r2 * r2 * 17/r2^2 = {}", &x2 * &x2 * &cofactor);

    let trace = iterate(&RootProblem::with_guess(r, 3, x1)?)?;
    println!();
    for it in trace.iterates() {
        println!("{:>2}  {:>45}  residual {}", it.index, it.value.decimal_string(40), it.residual.decimal_string(12));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("example runs");
}
