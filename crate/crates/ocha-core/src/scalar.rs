//! Exact rational scalars and explicit signs.
//!
//! The ground field is fixed to the rationals.  Every identity the engine
//! verifies is sign-critical, so no floating point appears anywhere; scalars
//! are arbitrary-precision rationals kept in lowest terms with positive
//! denominator.

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::CoreError;

/// A sign, kept as an explicit `+1`/`−1` value at API boundaries.
///
/// Parity exponents live only inside sign computations; everything that
/// crosses a function boundary is a [`Sign`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// Sign of `(−1)^parity`.
    pub fn from_parity(parity: i64) -> Self {
        if parity & 1 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn scalar(self) -> Scalar {
        match self {
            Sign::Plus => Scalar::one(),
            Sign::Minus => -Scalar::one(),
        }
    }

    pub fn apply(self, s: &Scalar) -> Scalar {
        match self {
            Sign::Plus => s.clone(),
            Sign::Minus => -s.clone(),
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// An exact rational number.
///
/// Invariants (maintained by `num-rational`): stored in lowest terms, and the
/// denominator is always positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `num/den`.  Fails when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Result<Self, CoreError> {
        if den == 0 {
            return Err(CoreError::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self, CoreError> {
        if den.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(num, den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Scalar {
        Scalar(self.0.abs())
    }

    pub fn recip(&self) -> Result<Scalar, CoreError> {
        if self.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        Ok(Scalar(self.0.recip()))
    }

    /// Canonical `"num/den"` rendering with the denominator always written,
    /// e.g. `-3/2` or `1/1`.  Used by the file format.
    pub fn to_fraction_string(&self) -> String {
        let mut s = self.0.numer().to_string();
        s.push('/');
        s.push_str(&self.0.denom().to_string());
        s
    }

    /// Parses the canonical `"num/den"` form; a bare integer is also
    /// accepted.
    pub fn parse_fraction(text: &str) -> Option<Scalar> {
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n, d),
            None => (text, "1"),
        };
        let num: BigInt = num.parse().ok()?;
        let den: BigInt = den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Scalar(BigRational::new(num, den)))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        Scalar(self.0 + &rhs.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 - rhs.0)
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        Scalar(&self.0 * &rhs.0)
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 / rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let s = Scalar::ratio(4, -6).unwrap();
        assert_eq!(s.to_fraction_string(), "-2/3");
        let t = Scalar::ratio(0, 5).unwrap();
        assert!(t.is_zero());
        assert_eq!(t.to_fraction_string(), "0/1");
    }

    #[test]
    fn fraction_round_trip() {
        for text in ["1/1", "-3/2", "0/1", "7/12"] {
            let s = Scalar::parse_fraction(text).unwrap();
            assert_eq!(s.to_fraction_string(), text);
        }
        assert!(Scalar::parse_fraction("1/0").is_none());
        assert_eq!(Scalar::parse_fraction("5").unwrap(), Scalar::from_int(5));
    }

    #[test]
    fn sign_algebra() {
        assert_eq!(Sign::from_parity(3), Sign::Minus);
        assert_eq!(Sign::from_parity(-2), Sign::Plus);
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!((-Sign::Plus).scalar(), Scalar::from_int(-1));
    }
}
