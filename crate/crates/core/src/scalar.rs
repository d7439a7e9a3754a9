//! Scalar abstractions shared by the exact and floating-point code paths.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive};

use crate::Rational;

/// A field element: exact rationals and IEEE floats both qualify.
pub trait Scalar: Num + Clone + PartialOrd + Debug + Neg<Output = Self> + Signed + FromPrimitive {
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer is representable")
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// `self` raised to a non-negative integer power.
    fn powi_exact(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

impl<T> Scalar for T where T: Num + Clone + PartialOrd + Debug + Neg<Output = T> + Signed + FromPrimitive {}

/// Real scalars support transcendental functions on top of field operations.
pub trait RealScalar: Scalar + Float {}

impl<T> RealScalar for T where T: Scalar + Float {}

/// Integer scalars for matrix kernels.
pub trait IntScalar: Copy + Num + Ord + Debug + Send + Sync + std::ops::AddAssign + std::iter::Sum {}

impl<T> IntScalar for T where T: Copy + Num + Ord + Debug + Send + Sync + std::ops::AddAssign + std::iter::Sum {}

/// Converts an exact rational into the nearest `f64`.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Numerator or denominator too large for direct conversion.
        let (n, d) = (r.numer(), r.denom());
        let shift = n.bits().max(d.bits()).saturating_sub(1000) as usize;
        let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Best rational approximation of a finite float (exact binary expansion).
pub fn f64_to_rational(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, an integer, or a decimal like `"0.875"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q == BigInt::from(0) {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches('-'), frac);
        let mut num: BigInt = if digits.is_empty() { return None } else { digits.parse().ok()? };
        if neg {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Some(Rational::new(num, den));
    }
    let v: BigInt = text.parse().ok()?;
    Some(Rational::from_integer(v))
}
