//! Thin helpers around `num-rational`'s `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

pub fn ratio(num: &BigInt, den: &BigInt) -> Rational {
    Rational::new(num.clone(), den.clone())
}

/// Least common multiple of the reduced denominators; 1 for an empty or
/// integral input.
pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// `"n"` for integers, `"n/d"` otherwise, always in lowest terms.
pub fn to_string(v: &Rational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn is_positive(v: &Rational) -> bool {
    v.is_positive()
}
