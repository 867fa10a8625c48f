//! Exact-arithmetic m-th roots by the Babylonian averaging procedure.
//!
//! The square-root step `x' = (x + r/x) / 2` and its generalization
//! `x' = ((m - 1) x + r / x^(m-1)) / m` run over [`ExactRational`]s, so every
//! iterate is a reduced fraction (`4`, `33/8`, `2177/528`, ... for the square
//! root of 17). The same steps fall out of Newton's method on `x^m - r`, and
//! [`newton_step`] over exact [`Polynomial`]s lets that be checked
//! structurally.
//!
//! Around the iteration sit a convergence analyzer backed by an independent
//! bisection oracle, a base-60 codec for display and input, and the `root`
//! command-line front end.
//!
//! ```
//! use babylon::{iterate, ExactRational, RootProblem};
//!
//! let problem = RootProblem::with_guess(17.into(), 2, 4.into()).unwrap();
//! let trace = iterate(&problem).unwrap();
//! let second = &trace.iterates()[1].value;
//! assert_eq!(second, &"33/8".parse::<ExactRational>().unwrap());
//! assert_eq!(second.decimal_string(3), "4.125");
//! ```

pub mod cli;
pub mod convergence;
pub mod error;
pub mod iteration;
pub mod poly;
pub mod rational;
pub mod sexagesimal;

pub use convergence::{
    analyze, reference_root, ConvergenceReport, ObservedOrder, PrecisionMode, Reference, StoppingRule,
};
pub use error::{Error, Result};
pub use iteration::{
    default_initial_guess, fixed_point_residual, iterate, mth_root_step, newton_step, sqrt_step, Iterate,
    IterationTrace, RootProblem,
};
pub use poly::Polynomial;
pub use rational::ExactRational;
pub use sexagesimal::{from_sexagesimal, to_sexagesimal, SexagesimalNumeral};
