//! The Babylonian step, its m-th root generalization, the generic Newton step
//! over exact polynomials, and the driver that records full iteration traces.
//!
//! The m-th root step is
//!
//! ```text
//! x' = ((m - 1) x + r / x^(m-1)) / m
//! ```
//!
//! i.e. the arithmetic mean of `m - 1` copies of `x` and `r / x^(m-1)`, whose
//! product is exactly `r`. It coincides with Newton's step on `x^m - r`.

use crate::convergence::{PrecisionMode, StoppingRule};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::ExactRational;

fn require_positive_iterate(x: &ExactRational) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveIterate(x.to_string()))
    }
}

fn require_positive_radicand(r: &ExactRational) -> Result<()> {
    if r.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveRadicand(r.to_string()))
    }
}

fn require_degree(m: u32) -> Result<()> {
    if m >= 1 {
        Ok(())
    } else {
        Err(Error::InvalidDegree(i64::from(m)))
    }
}

/// One Babylonian square-root step: the mean of `x` and `r / x`.
pub fn sqrt_step(x: &ExactRational, r: &ExactRational) -> Result<ExactRational> {
    require_positive_iterate(x)?;
    require_positive_radicand(r)?;
    let cofactor = r.checked_div(x)?;
    (x + cofactor).checked_div(&ExactRational::from(2))
}

/// One m-th root step, `((m - 1) x + r / x^(m-1)) / m`.
///
/// For `m = 1` this returns `r`; for `m = 2` it equals [`sqrt_step`].
pub fn mth_root_step(x: &ExactRational, r: &ExactRational, m: u32) -> Result<ExactRational> {
    require_positive_iterate(x)?;
    require_positive_radicand(r)?;
    require_degree(m)?;
    let cofactor = r.checked_div(&x.pow(m - 1)?)?;
    let sum = x * ExactRational::from(m - 1) + cofactor;
    sum.checked_div(&ExactRational::from(m))
}

/// Newton's step `x - p(x) / p'(x)`.
pub fn newton_step(p: &Polynomial, x: &ExactRational) -> Result<ExactRational> {
    let slope = p.derivative().eval(x);
    if slope.is_zero() {
        return Err(Error::ZeroDerivative(x.to_string()));
    }
    Ok(x - p.eval(x).checked_div(&slope)?)
}

/// Displacement of the step map, `step(x) - x`. Zero exactly when `x^m = r`.
pub fn fixed_point_residual(x: &ExactRational, r: &ExactRational, m: u32) -> Result<ExactRational> {
    Ok(mth_root_step(x, r, m)? - x)
}

/// Starting value used when the caller supplies none.
///
/// For `r >= 1` this is `2^ceil((b - 1) / m)` with `b` the bit length of
/// `floor(r)`, which is within a factor of two of the root and exact for
/// `r = 1`. For `0 < r < 1` it is 1, and for `r = 0` it is 0.
pub fn default_initial_guess(r: &ExactRational, m: u32) -> ExactRational {
    if r.is_zero() {
        return ExactRational::zero();
    }
    let one = ExactRational::one();
    if *r < one || m == 0 {
        return one;
    }
    let bits = r.floor().bits();
    let exponent = (bits - 1).div_ceil(u64::from(m));
    ExactRational::from(2).pow(exponent as u32).expect("2^k is defined")
}

/// What to solve: the `degree`-th root of `radicand`, starting from
/// `initial_guess`, until `stopping` fires.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootProblem {
    radicand: ExactRational,
    degree: u32,
    initial_guess: ExactRational,
    stopping: StoppingRule,
}

impl RootProblem {
    /// Validates and builds a problem. A missing guess falls back to
    /// [`default_initial_guess`].
    ///
    /// A zero radicand is accepted and short-circuits to the root 0; its
    /// initial guess is recorded as 0 whatever the caller passed.
    pub fn new(
        radicand: ExactRational,
        degree: u32,
        initial_guess: Option<ExactRational>,
        stopping: StoppingRule,
    ) -> Result<Self> {
        require_degree(degree)?;
        if radicand.is_negative() {
            return Err(Error::NonPositiveRadicand(radicand.to_string()));
        }
        if let Some(guess) = &initial_guess {
            require_positive_iterate(guess)?;
        }
        let initial_guess = if radicand.is_zero() {
            ExactRational::zero()
        } else {
            initial_guess.unwrap_or_else(|| default_initial_guess(&radicand, degree))
        };
        Ok(RootProblem {
            radicand,
            degree,
            initial_guess,
            stopping,
        })
    }

    pub fn with_guess(radicand: ExactRational, degree: u32, initial_guess: ExactRational) -> Result<Self> {
        Self::new(radicand, degree, Some(initial_guess), StoppingRule::default())
    }

    pub fn radicand(&self) -> &ExactRational {
        &self.radicand
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn initial_guess(&self) -> &ExactRational {
        &self.initial_guess
    }

    pub fn stopping(&self) -> &StoppingRule {
        &self.stopping
    }

    /// `x^m - r`.
    pub fn residual(&self, x: &ExactRational) -> ExactRational {
        x.pow(self.degree).unwrap_or_else(|_| ExactRational::one()) - &self.radicand
    }

    /// The step the driver takes: [`mth_root_step`], followed by rounding
    /// up to the grid when the stopping rule asks for fixed precision.
    pub fn step(&self, x: &ExactRational) -> Result<ExactRational> {
        let next = mth_root_step(x, &self.radicand, self.degree)?;
        Ok(match self.stopping.mode() {
            PrecisionMode::Exact => next,
            PrecisionMode::FixedPrecision { digits } => round_up_decimal(&next, digits),
        })
    }
}

/// Smallest multiple of `10^-digits` that is `>= x`.
///
/// Rounding up keeps every post-first iterate on or above the root, so the
/// overshoot and monotone-descent properties survive in fixed precision.
pub(crate) fn round_up_decimal(x: &ExactRational, digits: u32) -> ExactRational {
    let truncated = x.truncate_decimal(digits);
    if truncated == *x || x.is_negative() {
        truncated
    } else {
        truncated + ExactRational::pow10(-i64::from(digits))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iterate {
    /// 1-based position in the trace.
    pub index: usize,
    pub value: ExactRational,
    /// `value^m - r`.
    pub residual: ExactRational,
}

/// Every iterate `x_1, x_2, ...` produced for a [`RootProblem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationTrace {
    problem: RootProblem,
    iterates: Vec<Iterate>,
    converged: bool,
}

impl IterationTrace {
    pub fn problem(&self) -> &RootProblem {
        &self.problem
    }

    pub fn iterates(&self) -> &[Iterate] {
        &self.iterates
    }

    pub fn len(&self) -> usize {
        self.iterates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.iterates.is_empty()
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    pub fn last(&self) -> &Iterate {
        self.iterates.last().expect("traces hold at least x_1")
    }

    pub fn values(&self) -> impl Iterator<Item = &ExactRational> {
        self.iterates.iter().map(|it| &it.value)
    }

    /// Recomputes every iterate from its predecessor and compares.
    /// Returns the index of the first mismatch.
    pub fn replay(&self) -> std::result::Result<(), usize> {
        let first = &self.iterates[0];
        if first.index != 1 || first.value != self.problem.initial_guess {
            return Err(1);
        }
        for pair in self.iterates.windows(2) {
            let (prev, next) = (&pair[0], &pair[1]);
            let ok = next.index == prev.index + 1
                && self.problem.step(&prev.value).is_ok_and(|v| v == next.value)
                && next.residual == self.problem.residual(&next.value);
            if !ok {
                return Err(next.index);
            }
        }
        Ok(())
    }

    fn push(&mut self, value: ExactRational) {
        let residual = self.problem.residual(&value);
        let index = self.iterates.len() + 1;
        self.iterates.push(Iterate { index, value, residual });
    }

    fn last_satisfies_rule(&self) -> bool {
        let last = self.last();
        self.problem
            .stopping
            .is_satisfied(&last.residual, &self.problem.radicand)
    }
}

/// Runs the step map from the initial guess until the stopping rule fires.
///
/// At most `max_iter` steps are taken, so a trace holds at most
/// `max_iter + 1` iterates. A run that exhausts its budget, or that stalls on
/// a repeated value in fixed precision, fails with
/// [`Error::NonConvergence`] carrying the partial trace.
pub fn iterate(problem: &RootProblem) -> Result<IterationTrace> {
    let mut trace = IterationTrace {
        problem: problem.clone(),
        iterates: Vec::new(),
        converged: false,
    };
    trace.push(problem.initial_guess.clone());
    if problem.radicand.is_zero() || trace.last_satisfies_rule() {
        trace.converged = true;
        return Ok(trace);
    }
    for _ in 0..problem.stopping.max_iter() {
        let next = problem.step(&trace.last().value)?;
        let stalled = next == trace.last().value;
        trace.push(next);
        if trace.last_satisfies_rule() {
            trace.converged = true;
            return Ok(trace);
        }
        if stalled {
            break;
        }
    }
    Err(Error::NonConvergence(Box::new(trace)))
}
