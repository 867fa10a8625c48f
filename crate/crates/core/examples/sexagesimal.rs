// Base-60 display and input. 1;24,51,10 is the classic tablet value for
// the square root of 2.
//
// ```bash
// cargo run --example sexagesimal
// ```

use babylon::{from_sexagesimal, iterate, to_sexagesimal, ExactRational, RootProblem, SexagesimalNumeral};

fn run() -> babylon::Result<()> {
    let x2: ExactRational = "33/8".parse()?;
    println!("33/8 = {}", to_sexagesimal(&x2, 2));

    let tablet: SexagesimalNumeral = "1;24,51,10".parse()?;
    let tablet_value = from_sexagesimal(&tablet)?;
    println!("{tablet} = {tablet_value} = {}", tablet_value.decimal_string(10));

    let trace = iterate(&RootProblem::with_guess(2.into(), 2, 1.into())?)?;
    for it in trace.iterates().iter().take(5) {
        println!("x{} = {:<28} {}", it.index, it.value.to_string(), to_sexagesimal(&it.value, 4));
    }
    let error = (&trace.iterates()[3].value - &tablet_value).abs();
    println!("x4 - tablet = {}", error.decimal_string(12));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("example runs");
}
