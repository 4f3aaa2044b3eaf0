//! Exact rational scalar used for every weight and LP value.
//!
//! Backed by `num_rational::Ratio<i128>`. Every arithmetic operation is
//! checked; an overflow panics instead of wrapping, so a wrong answer is never
//! produced silently.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};

use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rational(Ratio<i128>);

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.denom() == other.denom() {
            self.numer().cmp(&other.numer())
        } else {
            self.0.cmp(&other.0)
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));
    pub const HALF: Rational = Rational(Ratio::new_raw(1, 2));

    /// Builds `num / den` in lowest terms. Panics if `den == 0`.
    pub fn new(num: i128, den: i128) -> Self {
        Rational(Ratio::new(num, den))
    }

    pub fn integer(n: i128) -> Self {
        Rational(Ratio::from_integer(n))
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

    /// Smallest integer not below `self`.
    pub fn ceil(&self) -> i128 {
        self.0.ceil().to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n as i128)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::integer(n as i128)
    }
}

/// Accepts integers (`"7"`), fractions (`"3/4"`, `"-1/2"`) and plain decimals
/// (`"0.5"`, `"2.125"`). Decimals are converted exactly.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("not an exact number: {s:?}"));
        let s = s.trim();
        if s.is_empty() {
            return Err(bad());
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            return Ok(Rational::new(n, d));
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            let (negative, int_digits) = match int_part.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
            };
            let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
            if !all_digits(int_digits) || !all_digits(frac_part) {
                return Err(bad());
            }
            if int_digits.is_empty() && frac_part.is_empty() {
                return Err(bad());
            }
            if frac_part.len() > 30 {
                return Err(bad());
            }
            let den = 10i128.checked_pow(frac_part.len() as u32).ok_or_else(bad)?;
            let int_val: i128 = if int_digits.is_empty() {
                0
            } else {
                int_digits.parse().map_err(|_| bad())?
            };
            let frac_val: i128 = if frac_part.is_empty() {
                0
            } else {
                frac_part.parse().map_err(|_| bad())?
            };
            let num = int_val
                .checked_mul(den)
                .and_then(|v| v.checked_add(frac_val))
                .ok_or_else(bad)?;
            let num = if negative { -num } else { num };
            return Ok(Rational::new(num, den));
        }
        let n: i128 = s.parse().map_err(|_| bad())?;
        Ok(Rational::integer(n))
    }
}

macro_rules! checked_binop {
    ($trait:ident, $method:ident, $checked:ident, $what:literal) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(
                    self.$checked(&rhs)
                        .unwrap_or_else(|| panic!(concat!("rational overflow in ", $what))),
                )
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                $trait::$method(self, *rhs)
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $trait::$method(*self, rhs)
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                $trait::$method(*self, *rhs)
            }
        }
    };
}

impl Rational {
    fn checked_add(&self, rhs: &Rational) -> Option<Ratio<i128>> {
        // integers skip the gcd
        if self.denom() == 1 && rhs.denom() == 1 {
            return Some(Ratio::new_raw(self.numer().checked_add(rhs.numer())?, 1));
        }
        self.0.checked_add(&rhs.0)
    }

    fn checked_sub(&self, rhs: &Rational) -> Option<Ratio<i128>> {
        if self.denom() == 1 && rhs.denom() == 1 {
            return Some(Ratio::new_raw(self.numer().checked_sub(rhs.numer())?, 1));
        }
        self.0.checked_sub(&rhs.0)
    }

    fn checked_mul(&self, rhs: &Rational) -> Option<Ratio<i128>> {
        if self.denom() == 1 && rhs.denom() == 1 {
            return Some(Ratio::new_raw(self.numer().checked_mul(rhs.numer())?, 1));
        }
        self.0.checked_mul(&rhs.0)
    }

    fn checked_div(&self, rhs: &Rational) -> Option<Ratio<i128>> {
        self.0.checked_div(&rhs.0)
    }
}

checked_binop!(Add, add, checked_add, "addition");
checked_binop!(Sub, sub, checked_sub, "subtraction");
checked_binop!(Mul, mul, checked_mul, "multiplication");
checked_binop!(Div, div, checked_div, "division");

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self = *self + rhs;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        *self = *self - rhs;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        let n = self.numer().checked_neg().expect("rational overflow in negation");
        Rational(Ratio::new_raw(n, self.denom()))
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::ZERO, |acc, x| acc + *x)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.denom() == 1 && self.numer() == *other as i128
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Rational::from(*other)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exact_forms() {
        assert_eq!("0.5".parse::<Rational>().unwrap(), Rational::new(1, 2));
        assert_eq!("3/4".parse::<Rational>().unwrap(), Rational::new(3, 4));
        assert_eq!("6/8".parse::<Rational>().unwrap(), Rational::new(3, 4));
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::integer(7));
        assert_eq!("-2.25".parse::<Rational>().unwrap(), Rational::new(-9, 4));
        assert_eq!(".5".parse::<Rational>().unwrap(), Rational::HALF);
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!("1.2.3".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn display_uses_integer_form_when_possible() {
        assert_eq!(Rational::integer(5).to_string(), "5");
        assert_eq!(Rational::new(13, 2).to_string(), "13/2");
        assert_eq!(Rational::new(-3, 6).to_string(), "-1/2");
    }

    #[test]
    fn lowest_terms_and_ceil() {
        let r = Rational::new(10, 4);
        assert_eq!((r.numer(), r.denom()), (5, 2));
        assert_eq!(r.ceil(), 3);
        assert_eq!(Rational::integer(2).ceil(), 2);
    }

    #[test]
    #[should_panic(expected = "rational overflow")]
    fn overflow_panics() {
        let big = Rational::integer(i128::MAX);
        let _ = big + Rational::ONE;
    }
}
