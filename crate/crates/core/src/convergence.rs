//! Stopping rules and post-hoc convergence analysis of iteration traces.
//!
//! Errors are measured against a [`Reference`] root that is computed without
//! the iteration under test: [`reference_root`] bisects over scaled integers.
//! All error quantities stay exact rationals; logarithms are taken only to
//! estimate the order and count digits.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::iteration::IterationTrace;
use crate::rational::ExactRational;

pub const DEFAULT_MAX_ITER: usize = 500;
pub const DEFAULT_TOLERANCE_EXPONENT: i64 = -30;

/// Iterates whose relative error exceeds this are outside the quadratic basin.
const BASIN_RELATIVE_ERROR: i64 = -1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrecisionMode {
    /// Iterates are kept as exact rationals.
    Exact,
    /// Each iterate is rounded up to a multiple of `10^-digits`, which bounds
    /// the growth of numerators and denominators.
    FixedPrecision { digits: u32 },
}

/// Stop once `|x^m - r| <= tolerance * r`, or give up after `max_iter` steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoppingRule {
    tolerance: ExactRational,
    max_iter: usize,
    mode: PrecisionMode,
}

impl StoppingRule {
    pub fn new(tolerance: ExactRational, max_iter: usize, mode: PrecisionMode) -> Result<Self> {
        if !tolerance.is_positive() {
            return Err(Error::InvalidStoppingRule("tolerance must be positive"));
        }
        if max_iter == 0 {
            return Err(Error::InvalidStoppingRule("max_iter must be at least 1"));
        }
        if mode == (PrecisionMode::FixedPrecision { digits: 0 }) {
            return Err(Error::InvalidStoppingRule("fixed precision needs at least 1 digit"));
        }
        Ok(StoppingRule {
            tolerance,
            max_iter,
            mode,
        })
    }

    pub fn tolerance(&self) -> &ExactRational {
        &self.tolerance
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter
    }

    pub fn mode(&self) -> PrecisionMode {
        self.mode
    }

    /// Exact relative-residual test.
    pub fn is_satisfied(&self, residual: &ExactRational, radicand: &ExactRational) -> bool {
        residual.abs() <= &self.tolerance * radicand
    }
}

impl Default for StoppingRule {
    fn default() -> Self {
        StoppingRule {
            tolerance: ExactRational::pow10(DEFAULT_TOLERANCE_EXPONENT),
            max_iter: DEFAULT_MAX_ITER,
            mode: PrecisionMode::Exact,
        }
    }
}

/// A root to measure errors against, with the number of decimal digits it
/// can be trusted to. `digits == None` marks an exact root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reference {
    root: ExactRational,
    digits: Option<u32>,
}

impl Reference {
    pub fn exact(root: ExactRational) -> Self {
        Reference { root, digits: None }
    }

    /// Bisection surrogate for the m-th root of `r`, good to `digits` digits.
    pub fn bisect(r: &ExactRational, m: u32, digits: u32) -> Result<Self> {
        let root = reference_root(r, m, digits)?;
        let digits = if root.pow(m)? == *r { None } else { Some(digits) };
        Ok(Reference { root, digits })
    }

    pub fn root(&self) -> &ExactRational {
        &self.root
    }

    pub fn digits(&self) -> Option<u32> {
        self.digits
    }
}

/// A rational `q` with `|q^m - r| <= 10^-digits * r`.
///
/// Found by integer bisection on `k^m <= floor(r * S^m)` with `S` a power of
/// ten, then `q = k / S` (or `(k + 1) / S`). The Newton iteration is never
/// consulted. Perfect powers come back exact when `S` resolves them.
pub fn reference_root(r: &ExactRational, m: u32, digits: u32) -> Result<ExactRational> {
    if !r.is_positive() {
        return Err(Error::NonPositiveRadicand(r.to_string()));
    }
    if m == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let digits = digits.max(1);
    let bound = r * ExactRational::pow10(-i64::from(digits));
    let within = |q: &ExactRational| -> bool { (q.pow(m).expect("q > 0") - r).abs() <= bound };

    // k ~ q * S must reach about m * 10^digits for the grid to be fine enough.
    let root_log10 = r.log10_abs() / f64::from(m);
    let needed = f64::from(digits) + f64::from(m).log10() + 2.0 - root_log10.floor();
    let mut scale_exp = needed.ceil().max(0.0) as u32;
    loop {
        let scale = BigInt::from(10u32).pow(scale_exp);
        let target = r.numer() * scale.pow(m) / r.denom();
        let k = integer_root_floor(&target, m);
        let lower = ExactRational::new(k.clone(), scale.clone())?;
        if within(&lower) {
            return Ok(lower);
        }
        let upper = ExactRational::new(k + 1, scale)?;
        if within(&upper) {
            return Ok(upper);
        }
        scale_exp += 2;
    }
}

/// Largest `k >= 0` with `k^m <= n`, by bisection.
fn integer_root_floor(n: &BigInt, m: u32) -> BigInt {
    if n.is_zero() {
        return BigInt::zero();
    }
    let mut lo = BigInt::zero();
    let mut hi = BigInt::one() << (n.bits().div_ceil(u64::from(m)) + 1);
    // invariant: lo^m <= n < hi^m
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        if mid.pow(m) <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ObservedOrder {
    Estimated(f64),
    Undetermined,
}

impl ObservedOrder {
    pub fn value(self) -> Option<f64> {
        match self {
            ObservedOrder::Estimated(q) => Some(q),
            ObservedOrder::Undetermined => None,
        }
    }
}

impl fmt::Display for ObservedOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObservedOrder::Estimated(q) => write!(f, "{q:.4}"),
            ObservedOrder::Undetermined => f.write_str("undetermined"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub converged: bool,
    /// Number of iterates in the trace, `x_1` included.
    pub iterations_used: usize,
    /// `|x_N^m - r| / r` for the final iterate.
    pub final_relative_residual: ExactRational,
    pub observed_order: ObservedOrder,
    /// `floor(-log10(|x_n - root| / root))` per iterate, clamped at 0 and
    /// capped by the reference's own accuracy. `u64::MAX` marks an iterate
    /// equal to an exact reference.
    pub correct_digits_per_step: Vec<u64>,
}

impl ConvergenceReport {
    pub fn order(&self) -> Result<f64> {
        self.observed_order.value().ok_or(Error::InsufficientIterates)
    }
}

/// Measures a trace against a reference root.
///
/// The order is `log(e[n+1] / e[n]) / log(e[n] / e[n-1])` over the last
/// triple of consecutive iterates inside the quadratic basin: index at
/// least 2, relative error at most 1/10 and above the reference's noise
/// floor, with `e[n-1] > e[n]`. Without such a triple it is
/// [`ObservedOrder::Undetermined`].
pub fn analyze(trace: &IterationTrace, reference: &Reference) -> Result<ConvergenceReport> {
    let root = reference.root();
    if !root.is_positive() {
        return Err(Error::NonPositiveIterate(root.to_string()));
    }
    let problem = trace.problem();
    let radicand = problem.radicand();
    let final_relative_residual = if radicand.is_zero() {
        trace.last().residual.abs()
    } else {
        trace.last().residual.abs().checked_div(radicand)?
    };
    let converged = final_relative_residual <= *problem.stopping().tolerance();

    let relative_errors: Vec<ExactRational> = trace
        .values()
        .map(|x| (x - root).abs().checked_div(root))
        .collect::<Result<_>>()?;

    let cap = reference.digits().map(|d| u64::from(d.saturating_sub(1)));
    let correct_digits_per_step = relative_errors.iter().map(|e| correct_digits(e, cap)).collect();

    let noise_floor = cap.map(|c| ExactRational::pow10(-(c as i64)));
    let basin_edge = ExactRational::pow10(BASIN_RELATIVE_ERROR);
    let in_basin: Vec<bool> = relative_errors
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let above_floor = match &noise_floor {
                Some(floor) => e > floor,
                None => e.is_positive(),
            };
            i >= 1 && above_floor && *e <= basin_edge
        })
        .collect();

    let mut observed_order = ObservedOrder::Undetermined;
    for n in (1..relative_errors.len().saturating_sub(1)).rev() {
        if !(in_basin[n - 1] && in_basin[n] && in_basin[n + 1]) {
            continue;
        }
        let (prev, cur, next) = (&relative_errors[n - 1], &relative_errors[n], &relative_errors[n + 1]);
        if prev <= cur {
            continue;
        }
        let denominator = cur.log10_abs() - prev.log10_abs();
        if denominator.abs() < 1e-12 {
            continue;
        }
        let q = (next.log10_abs() - cur.log10_abs()) / denominator;
        observed_order = ObservedOrder::Estimated(q + 0.0);
        break;
    }

    Ok(ConvergenceReport {
        converged,
        iterations_used: trace.len(),
        final_relative_residual,
        observed_order,
        correct_digits_per_step,
    })
}

/// `floor(-log10(e))` computed exactly, clamped to `[0, cap]`.
fn correct_digits(e: &ExactRational, cap: Option<u64>) -> u64 {
    if e.is_zero() {
        return cap.unwrap_or(u64::MAX);
    }
    let one = ExactRational::one();
    if *e > one {
        return 0;
    }
    // largest k with e * 10^k <= 1
    let mut k = (-e.log10_abs()).floor().max(0.0) as i64;
    while k > 0 && e * ExactRational::pow10(k) > one {
        k -= 1;
    }
    while e * ExactRational::pow10(k + 1) <= one {
        k += 1;
    }
    let k = k as u64;
    cap.map_or(k, |c| k.min(c))
}
