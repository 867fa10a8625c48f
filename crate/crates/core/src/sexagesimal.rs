//! Base-60 numerals in the usual modern transcription: integer places joined
//! by commas, a semicolon before the fractional places, e.g. `1;24,51,10`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

pub const BASE: u32 = 60;

/// Sign plus base-60 places, most significant first.
///
/// `integer_digits` has no leading zeros except for the single place `[0]`.
/// A numeral whose places are all zero is never negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SexagesimalNumeral {
    pub negative: bool,
    pub integer_digits: Vec<u32>,
    pub fraction_digits: Vec<u32>,
}

impl SexagesimalNumeral {
    pub fn is_zero(&self) -> bool {
        self.integer_digits.iter().chain(&self.fraction_digits).all(|&d| d == 0)
    }

    pub fn negate(&self) -> Self {
        SexagesimalNumeral {
            negative: !self.negative && !self.is_zero(),
            ..self.clone()
        }
    }
}

/// Truncates `a` toward zero at `places` base-60 fractional places.
pub fn to_sexagesimal(a: &ExactRational, places: usize) -> SexagesimalNumeral {
    let num = a.numer().magnitude();
    let den = a.denom().magnitude();
    let (mut int_part, mut rem) = num.div_rem(den);

    let mut integer_digits = Vec::new();
    let base = BigUint::from(BASE);
    while !int_part.is_zero() {
        let (q, d) = int_part.div_rem(&base);
        integer_digits.push(d.to_u32().expect("digit < 60"));
        int_part = q;
    }
    if integer_digits.is_empty() {
        integer_digits.push(0);
    }
    integer_digits.reverse();

    let mut fraction_digits = Vec::with_capacity(places);
    for _ in 0..places {
        rem *= BASE;
        let (d, r) = rem.div_rem(den);
        fraction_digits.push(d.to_u32().expect("digit < 60"));
        rem = r;
    }

    let mut numeral = SexagesimalNumeral {
        negative: false,
        integer_digits,
        fraction_digits,
    };
    numeral.negative = a.is_negative() && !numeral.is_zero();
    numeral
}

/// Exact value of a numeral. Any place outside `0..=59` is rejected.
pub fn from_sexagesimal(n: &SexagesimalNumeral) -> Result<ExactRational> {
    if let Some(&bad) = n.integer_digits.iter().chain(&n.fraction_digits).find(|&&d| d >= BASE) {
        return Err(Error::InvalidDigit(bad));
    }
    let base = BigUint::from(BASE);
    let int = n
        .integer_digits
        .iter()
        .fold(BigUint::zero(), |acc, &d| acc * &base + d);
    let frac = n
        .fraction_digits
        .iter()
        .fold(BigUint::zero(), |acc, &d| acc * &base + d);
    let scale = base.pow(n.fraction_digits.len() as u32);
    let value = ExactRational::from_integer(int)
        + ExactRational::new(frac, scale).expect("60^k is nonzero");
    Ok(if n.negative { -value } else { value })
}

impl fmt::Display for SexagesimalNumeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        write_places(f, &self.integer_digits)?;
        if !self.fraction_digits.is_empty() {
            f.write_str(";")?;
            write_places(f, &self.fraction_digits)?;
        }
        Ok(())
    }
}

fn write_places(f: &mut fmt::Formatter<'_>, digits: &[u32]) -> fmt::Result {
    for (i, d) in digits.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{d}")?;
    }
    Ok(())
}

/// `['-'] places [';' places]`, `places := int (',' int)*`, each int 0..=59.
impl FromStr for SexagesimalNumeral {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_text, frac_text) = match body.split_once(';') {
            Some((i, f)) => (i, Some(f)),
            None => (body, None),
        };
        let mut integer_digits = parse_places(s, int_text)?;
        let fraction_digits = match frac_text {
            Some(f) => parse_places(s, f)?,
            None => Vec::new(),
        };
        let leading = integer_digits.iter().take_while(|&&d| d == 0).count();
        integer_digits.drain(..leading.min(integer_digits.len() - 1));
        let mut numeral = SexagesimalNumeral {
            negative: false,
            integer_digits,
            fraction_digits,
        };
        numeral.negative = negative && !numeral.is_zero();
        Ok(numeral)
    }
}

fn parse_places(input: &str, text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|place| {
            if place.is_empty() || place.len() > 2 || !place.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::parse(input, "expected base-60 places like 1;24,51,10"));
            }
            let d: u32 = place.parse().expect("1-2 ascii digits");
            if d >= BASE {
                return Err(Error::InvalidDigit(d));
            }
            Ok(d)
        })
        .collect()
}
