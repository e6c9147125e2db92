//! Exact rational helpers shared by the closed-form pipeline.
//!
//! Everything here stays in [`Rational`] except the `*_f64` / `log2_*`
//! functions, which are the only places a closed-form quantity becomes a
//! float.

use std::f64::consts::LN_2;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k).into()
}

pub fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `log2 |n|` for a nonzero big integer, accurate far outside the f64 range.
fn log2_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    let top: BigInt = n.abs() >> shift;
    top.to_f64().unwrap().log2() + shift as f64
}

/// Base-2 logarithm of a strictly positive rational.
pub fn log2(x: &Rational) -> f64 {
    debug_assert!(x.is_positive());
    let direct = to_f64(x);
    if direct.is_normal() {
        direct.log2()
    } else {
        log2_bigint(x.numer()) - log2_bigint(x.denom())
    }
}

/// `log2(1 + delta)` for an exact `delta > -1`, keeping full relative
/// precision when `delta` is tiny.
pub fn log2_1p(delta: &Rational) -> f64 {
    let d = to_f64(delta);
    if d.abs() < 0.5 {
        d.ln_1p() / LN_2
    } else {
        log2(&(Rational::one() + delta))
    }
}

/// Render `num/den` (or just `num` for integers).
pub fn display(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_nonnegative(x: &Rational) -> bool {
    !x.is_negative() || x.is_zero()
}
