//! Arbitrary-precision rationals kept in lowest terms.
//!
//! [`ExactRational`] is the only number type the iteration and analysis code
//! touches. Every constructor and operator returns a canonical value
//! (denominator positive, numerator and denominator coprime, zero as `0/1`),
//! so structural equality is numeric equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest decimal exponent accepted by the parser (`1e-30` style input).
pub const MAX_PARSE_EXPONENT: u32 = 100_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    /// `numerator / denominator`, reduced. Fails on a zero denominator.
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self> {
        let den = denominator.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactRational(BigRational::new(numerator.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    /// `10^k` as a rational; negative `k` gives `1/10^|k|`.
    pub fn pow10(k: i64) -> Self {
        let p = BigInt::from(10u32).pow(k.unsigned_abs());
        if k >= 0 {
            Self::from_integer(p)
        } else {
            ExactRational(BigRational::new_raw(BigInt::one(), p))
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactRational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    /// Exact `self^k`. `0^0` is rejected.
    pub fn pow(&self, k: u32) -> Result<Self> {
        if k == 0 && self.is_zero() {
            return Err(Error::UndefinedPower);
        }
        Ok(ExactRational(Pow::pow(&self.0, k)))
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    /// Truncates toward zero at `places` fractional decimal digits.
    pub fn truncate_decimal(&self, places: u32) -> Self {
        let scale = BigInt::from(10u32).pow(places);
        let scaled = (self.0.numer() * &scale) / self.0.denom();
        ExactRational(BigRational::new(scaled, scale))
    }

    /// Decimal expansion truncated toward zero to `digits` fractional digits.
    ///
    /// No rounding is applied. A minus sign is printed only when a nonzero
    /// digit survives truncation, so `-1/1000` at two digits reads `0.00`.
    pub fn decimal_string(&self, digits: usize) -> String {
        let scale = BigUint::from(10u32).pow(digits);
        let scaled = (self.0.numer().magnitude() * scale) / self.0.denom().magnitude();
        let mut body = scaled.to_str_radix(10);
        if digits > 0 {
            if body.len() <= digits {
                body.insert_str(0, &"0".repeat(digits + 1 - body.len()));
            }
            body.insert(body.len() - digits, '.');
        }
        if self.is_negative() && !scaled.is_zero() {
            body.insert(0, '-');
        }
        body
    }

    /// Approximate `log10(|self|)` from the leading bits of numerator and
    /// denominator. Only for display and estimates; `self` must be nonzero.
    pub fn log10_abs(&self) -> f64 {
        debug_assert!(!self.is_zero());
        let log2 = log2_biguint(self.0.numer().magnitude()) - log2_biguint(self.0.denom().magnitude());
        log2 * std::f64::consts::LOG10_2
    }
}

fn log2_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        n.to_u64().map_or(0.0, |v| (v as f64).log2())
    } else {
        let shift = bits - 64;
        let top = (n >> shift).to_u64().unwrap_or(u64::MAX);
        (top as f64).log2() + shift as f64
    }
}

impl Default for ExactRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<BigRational> for ExactRational {
    fn from(value: BigRational) -> Self {
        // Ratio::new keeps values reduced; re-reduce anything built raw.
        let (n, d) = value.into();
        ExactRational(BigRational::new(n, d))
    }
}

impl From<BigInt> for ExactRational {
    fn from(value: BigInt) -> Self {
        Self::from_integer(value)
    }
}

macro_rules! from_primitive {
    ($($t:ty),*) => {$(
        impl From<$t> for ExactRational {
            fn from(value: $t) -> Self {
                Self::from_integer(value)
            }
        }
    )*};
}

from_primitive!(i32, i64, u32, u64, usize);

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }

        impl $tr<ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }

        impl $tr<&ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational(self.0.$method(&rhs.0))
            }
        }

        impl $tr<ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            f.pad(&self.0.numer().to_string())
        } else {
            f.pad(&format!("{}/{}", self.0.numer(), self.0.denom()))
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `17`, `-33/8`, `4.125` and `1e-30` / `2.5E3`. Decimals are read
/// exactly (`4.125` is `33/8`). Mixed numbers like `4 1/8` are rejected.
impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let input = s;
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let value = if let Some((num, den)) = body.split_once('/') {
            let num = parse_digits(input, num)?;
            let den = parse_digits(input, den)?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            ExactRational(BigRational::new(num.into(), den.into()))
        } else {
            parse_decimal(input, body)?
        };
        Ok(if negative { -value } else { value })
    }
}

fn parse_digits(input: &str, digits: &str) -> Result<BigUint> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(input, "expected decimal digits"));
    }
    BigUint::parse_bytes(digits.as_bytes(), 10).ok_or_else(|| Error::parse(input, "expected decimal digits"))
}

fn parse_decimal(input: &str, body: &str) -> Result<ExactRational> {
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(at) => {
            let exp = &body[at + 1..];
            let (exp_negative, exp_digits) = match exp.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, exp.strip_prefix('+').unwrap_or(exp)),
            };
            let magnitude = parse_digits(input, exp_digits)?
                .to_u32()
                .filter(|&e| e <= MAX_PARSE_EXPONENT)
                .ok_or_else(|| Error::parse(input, "exponent too large"))?;
            let exp = i64::from(magnitude);
            (&body[..at], if exp_negative { -exp } else { exp })
        }
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => {
            if f.is_empty() {
                return Err(Error::parse(input, "missing digits after decimal point"));
            }
            (i, f)
        }
        None => (mantissa, ""),
    };
    let mut all = String::with_capacity(int_part.len() + frac_part.len());
    all.push_str(int_part);
    all.push_str(frac_part);
    let digits = parse_digits(input, &all)?;
    if int_part.is_empty() {
        return Err(Error::parse(input, "expected decimal digits"));
    }
    let scale = exponent - frac_part.len() as i64;
    Ok(ExactRational::from_integer(BigInt::from_biguint(Sign::Plus, digits)) * ExactRational::pow10(scale))
}
