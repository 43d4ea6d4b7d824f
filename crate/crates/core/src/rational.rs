//! Exact rational numbers for margins, interval endpoints and candidate points.
//!
//! Candidate membership tests such as `l/n + eps ∈ (a, b)` are discontinuous in
//! their inputs, so every value that feeds a floor, ceiling or open-interval test
//! is kept as an exact fraction. Conversion to `f64` happens only when a
//! probability is evaluated.

use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};

use crate::error::ParseRationalError;

/// Largest number of fractional digits accepted when parsing a decimal.
pub const MAX_FRACTION_DIGITS: usize = 9;

/// Largest magnitude accepted when parsing user input.
pub const MAX_INPUT_MAGNITUDE: i128 = 1_000_000_000;

/// A fraction in lowest terms with a positive denominator.
///
/// Arithmetic operators panic on `i128` overflow. Inputs parsed through
/// [`FromStr`] are bounded by [`MAX_FRACTION_DIGITS`] and
/// [`MAX_INPUT_MAGNITUDE`], which keeps every quantity built by this crate far
/// inside the representable range.
#[derive(Clone, Copy)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    /// Builds `numer / denom` reduced to lowest terms.
    ///
    /// # Panics
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: i128, denom: i128) -> Self {
        assert!(denom != 0, "rational with zero denominator");
        Rational(Ratio::new(numer, denom))
    }

    pub fn from_integer(value: i128) -> Self {
        Rational(Ratio::from_integer(value))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
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

    /// Largest integer not greater than `self`.
    pub fn floor(&self) -> i128 {
        *self.0.floor().numer()
    }

    /// Smallest integer not less than `self`.
    pub fn ceil(&self) -> i128 {
        *self.0.ceil().numer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    pub fn min(self, other: Self) -> Self {
        core::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        core::cmp::max(self, other)
    }

    pub fn checked_add(&self, rhs: &Self) -> Option<Self> {
        self.0.checked_add(&rhs.0).map(Rational)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        self.0.checked_sub(&rhs.0).map(Rational)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        self.0.checked_mul(&rhs.0).map(Rational)
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        self.0.checked_div(&rhs.0).map(Rational)
    }

    /// Nearest `f64`, ties to even.
    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(self.numer(), self.denom())
    }

    /// Compares `self` with the integer `k` without allocating a new fraction.
    pub fn cmp_integer(&self, k: i128) -> Ordering {
        // numer/denom vs k  <=>  numer vs k*denom (denom > 0)
        match k.checked_mul(self.denom()) {
            Some(scaled) => self.numer().cmp(&scaled),
            None => self.0.cmp(&Ratio::from_integer(k)),
        }
    }
}

// Always in lowest terms with a positive denominator, so equality is
// componentwise. `Ratio`'s own `eq` goes through its division-based `cmp`.
impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        self.numer() == other.numer() && self.denom() == other.denom()
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.numer().hash(state);
        self.denom().hash(state);
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Cross-multiplication is exact when it fits; `Ratio`'s own comparison
        // is overflow-free but division-heavy.
        let (a, b) = (self.numer(), self.denom());
        let (c, d) = (other.numer(), other.denom());
        match (a.checked_mul(d), c.checked_mul(b)) {
            (Some(x), Some(y)) => x.cmp(&y),
            _ => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Correctly rounded `numer / denom` for `denom > 0`.
fn ratio_to_f64(numer: i128, denom: i128) -> f64 {
    debug_assert!(denom > 0);
    if numer == 0 {
        return 0.0;
    }
    const EXACT: u128 = 1 << 53;
    if numer.unsigned_abs() <= EXACT && (denom as u128) <= EXACT {
        // both operands are exact, and IEEE division rounds correctly
        return numer as f64 / denom as f64;
    }
    let negative = numer < 0;
    let n = numer.unsigned_abs();
    let d = denom as u128;
    let mut q = n / d;
    let mut r = n % d;
    let mut exp: i32 = 0;
    // Long division until the quotient carries at least 57 significant bits.
    // `r < d < 2^127`, so doubling never overflows.
    while q < (1u128 << 56) && r != 0 {
        r <<= 1;
        q <<= 1;
        if r >= d {
            r -= d;
            q |= 1;
        }
        exp -= 1;
    }
    let sticky = u128::from(r != 0);
    let value = libm::ldexp(((q << 1) | sticky) as f64, exp - 1);
    if negative {
        -value
    } else {
        value
    }
}

macro_rules! checked_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$checked(&rhs).expect("rational arithmetic overflow")
            }
        }

        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                self.$checked(rhs).expect("rational arithmetic overflow")
            }
        }
    };
}

checked_op!(Add, add, checked_add);
checked_op!(Sub, sub, checked_sub);
checked_op!(Mul, mul, checked_mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        self.checked_div(&rhs).expect("rational arithmetic overflow")
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value.into())
    }
}

impl From<u64> for Rational {
    fn from(value: u64) -> Self {
        Rational::from_integer(value.into())
    }
}

impl From<i32> for Rational {
    fn from(value: i32) -> Self {
        Rational::from_integer(value.into())
    }
}

/// Always `num/den`, including integers (`3/1`).
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"0.125"`, `"-2"`, `".5"`, `"3/8"` exactly.
///
/// Decimal input is limited to [`MAX_FRACTION_DIGITS`] fractional digits and
/// both parts of a fraction to [`MAX_INPUT_MAGNITUDE`].
impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        if let Some((num, den)) = s.split_once('/') {
            let num = parse_integer(num)?;
            let den = parse_integer(den)?;
            if den == 0 {
                return Err(ParseRationalError::ZeroDenominator);
            }
            return Ok(Rational::new(num, den));
        }

        let (negative, body) = match s.as_bytes()[0] {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(ParseRationalError::Invalid);
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|c| c.is_ascii_digit()) {
            return Err(ParseRationalError::Invalid);
        }
        if frac_part.len() > MAX_FRACTION_DIGITS {
            return Err(ParseRationalError::TooPrecise);
        }
        let int_value = if int_part.is_empty() {
            0
        } else {
            parse_integer(int_part)?
        };
        let mut frac_value: i128 = 0;
        let mut scale: i128 = 1;
        for c in frac_part.bytes() {
            frac_value = frac_value * 10 + i128::from(c - b'0');
            scale *= 10;
        }
        let magnitude = Rational::new(int_value * scale + frac_value, scale);
        Ok(if negative { -magnitude } else { magnitude })
    }
}

fn parse_integer(s: &str) -> Result<i128, ParseRationalError> {
    let s = s.trim();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return Err(ParseRationalError::Invalid);
    }
    // Leading zeros are harmless; anything past 10 significant digits is out of range.
    let significant = digits.trim_start_matches('0');
    if significant.len() > 10 {
        return Err(ParseRationalError::OutOfRange);
    }
    let value: i128 = s.parse().map_err(|_| ParseRationalError::Invalid)?;
    if value.abs() > MAX_INPUT_MAGNITUDE {
        return Err(ParseRationalError::OutOfRange);
    }
    Ok(value)
}
