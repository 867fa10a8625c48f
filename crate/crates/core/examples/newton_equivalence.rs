// Newton's method on x^m - r produces exactly the averaging step.
//
// ```bash
// cargo run --example newton_equivalence
// ```

use babylon::{mth_root_step, newton_step, ExactRational, Polynomial};

fn run() -> babylon::Result<()> {
    let r = ExactRational::from(17);
    for m in 2..=5 {
        let f = Polynomial::power_minus(m, &r);
        println!("f(x) = {f},  f'(x) = {}", f.derivative());
        let mut x = ExactRational::from(3);
        for _ in 0..3 {
            let newton = newton_step(&f, &x)?;
            let mean = mth_root_step(&x, &r, m)?;
            assert_eq!(newton, mean);
            println!("    x = {x:<30} -> {newton}");
            x = newton;
        }
    }

    // Newton works for any polynomial with a nonzero slope.
    let golden = Polynomial::new(vec![(-1).into(), (-1).into(), 1.into()]);
    let mut x = ExactRational::from(2);
    for _ in 0..5 {
        x = newton_step(&golden, &x)?;
    }
    println!("\n{golden} has a root near {}", x.decimal_string(30));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("example runs");
}
