//! Exact membership values.
//!
//! Every vertex and edge membership value is a [`Label`]: a rational number in
//! `[0, 1]` held in lowest terms. Sums of labels (edge sums, degrees) may leave
//! that interval and are carried as plain [`Rational`] values instead.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary precision rational used for every exact computation in the crate.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("membership value {0} lies outside [0, 1]")]
    OutOfRange(String),
    #[error("cannot parse {input:?} as an exact rational: {reason}")]
    Parse { input: String, reason: &'static str },
}

/// A membership value in `[0, 1]`, exact and canonical.
#[derive(Clone, Debug)]
pub struct Label(Rational);

// Ratio's own Eq/Ord go through a division loop. Values here are always in
// lowest terms with a positive denominator, so the parts decide equality and
// one cross multiplication decides order.
impl PartialEq for Label {
    fn eq(&self, other: &Self) -> bool {
        same_value(&self.0, &other.0)
    }
}

impl Eq for Label {}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_value(&self.0, &other.0)
    }
}

impl Hash for Label {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.numer().hash(state);
        self.0.denom().hash(state);
    }
}

/// Equality of two reduced rationals.
pub(crate) fn same_value(a: &Rational, b: &Rational) -> bool {
    a.numer() == b.numer() && a.denom() == b.denom()
}

/// Order of two rationals with positive denominators.
pub(crate) fn cmp_value(a: &Rational, b: &Rational) -> Ordering {
    if a.denom() == b.denom() {
        return a.numer().cmp(b.numer());
    }
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

impl Label {
    pub fn new(value: Rational) -> Result<Self, LabelError> {
        if value.is_negative() || value.numer() > value.denom() {
            return Err(LabelError::OutOfRange(format_rational(&value)));
        }
        Ok(Label(value))
    }

    /// `numer / denom` as a label.
    pub fn from_ratio(numer: u64, denom: u64) -> Result<Self, LabelError> {
        if denom == 0 {
            return Err(LabelError::Parse {
                input: format!("{numer}/0"),
                reason: "zero denominator",
            });
        }
        Label::new(Rational::new(numer.into(), denom.into()))
    }

    pub fn zero() -> Self {
        Label(Rational::zero())
    }

    pub fn one() -> Self {
        Label(Rational::one())
    }

    /// `10^-k`.
    pub fn decimal_unit(k: u32) -> Self {
        Label(Rational::new(BigInt::one(), BigInt::from(10u32).pow(k)))
    }

    /// `coefficient * self`, which may exceed one.
    pub fn times(&self, coefficient: u64) -> Rational {
        // reduce against the denominator in machine words when it fits
        if let Some(denom) = self.0.denom().to_u64() {
            let g = coefficient.gcd(&denom);
            return Rational::new_raw(
                self.0.numer() * BigInt::from(coefficient / g),
                BigInt::from(denom / g),
            );
        }
        &self.0 * BigInt::from(coefficient)
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_inner(self) -> Rational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Always-rational rendering, `p/q` (or `p` when the denominator is one).
    pub fn to_fraction_string(&self) -> String {
        format_fraction(&self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl FromStr for Label {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Label::new(parse_rational(s)?)
    }
}

impl TryFrom<Rational> for Label {
    type Error = LabelError;

    fn try_from(value: Rational) -> Result<Self, Self::Error> {
        Label::new(value)
    }
}

impl From<Label> for Rational {
    fn from(label: Label) -> Self {
        label.0
    }
}

/// Parses a finite decimal (`"0.13"`, `"1"`, `".5"`) or a fraction (`"1/15"`).
pub fn parse_rational(input: &str) -> Result<Rational, LabelError> {
    let err = |reason| LabelError::Parse {
        input: input.to_string(),
        reason,
    };
    let s = input.trim();
    if s.is_empty() {
        return Err(err("empty string"));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let value = if let Some((p, q)) = body.split_once('/') {
        let p = parse_digits(p.trim()).ok_or_else(|| err("bad numerator"))?;
        let q = parse_digits(q.trim()).ok_or_else(|| err("bad denominator"))?;
        if q.is_zero() {
            return Err(err("zero denominator"));
        }
        Rational::new(p, q)
    } else {
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err("no digits"));
        }
        let int = if int_part.is_empty() {
            BigInt::zero()
        } else {
            parse_digits(int_part).ok_or_else(|| err("bad integer part"))?
        };
        let frac = if frac_part.is_empty() {
            BigInt::zero()
        } else {
            parse_digits(frac_part).ok_or_else(|| err("bad fractional part"))?
        };
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        Rational::new(int * &scale + frac, scale)
    };
    Ok(if negative { -value } else { value })
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Decimal rendering when the value has a finite decimal expansion, else `p/q`.
pub fn format_rational(value: &Rational) -> String {
    to_decimal_string(value).unwrap_or_else(|| format_fraction(value))
}

pub fn format_fraction(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Finite decimal expansion with trailing zeros trimmed, if one exists.
pub fn to_decimal_string(value: &Rational) -> Option<String> {
    let digits = decimal_places(value.denom())?;
    let scaled = value.numer() * BigInt::from(10u32).pow(digits) / value.denom();
    let negative = scaled.is_negative();
    let mut text = scaled.abs().to_string();
    if digits > 0 {
        let width = digits as usize + 1;
        if text.len() < width {
            text = format!("{}{}", "0".repeat(width - text.len()), text);
        }
        text.insert(text.len() - digits as usize, '.');
        let trimmed = text.trim_end_matches('0').trim_end_matches('.');
        text = trimmed.to_string();
    }
    if negative {
        text.insert(0, '-');
    }
    Some(text)
}

/// Number of decimal places needed for `1/denom`, or `None` when the
/// expansion repeats.
fn decimal_places(denom: &BigInt) -> Option<u32> {
    let mut rest = denom.clone();
    let (two, five) = (BigInt::from(2u32), BigInt::from(5u32));
    let mut twos = 0u32;
    let mut fives = 0u32;
    while rest.is_even() && !rest.is_zero() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() && !rest.is_zero() {
        rest /= &five;
        fives += 1;
    }
    rest.is_one().then_some(twos.max(fives))
}

/// Percentage with two decimals, rounded half up, trailing zero cents dropped.
///
/// `1/15` renders as `"6.67%"`, `2/5` as `"40%"`.
pub fn render_percent(value: &Rational) -> String {
    let basis_points = value * Rational::from_integer(BigInt::from(10_000u32));
    let half = Rational::new(BigInt::one(), BigInt::from(2u32));
    let rounded = (basis_points + half).floor().to_integer();
    let (whole, cents) = rounded.div_mod_floor(&BigInt::from(100u32));
    let cents = cents.to_u32().unwrap_or(0);
    if cents == 0 {
        format!("{whole}%")
    } else if cents % 10 == 0 {
        format!("{whole}.{}%", cents / 10)
    } else {
        format!("{whole}.{cents:02}%")
    }
}
