//! Exact rational scalars.
//!
//! Every computation in this crate runs over ℚ with arbitrary-precision
//! integers, so certification checks are exact equalities rather than
//! tolerance comparisons. Scalars serialize as `"p/q"` (or `"p"` when the
//! denominator is 1) in all file formats.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CoreError;

/// An exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
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

    /// Builds `p/q`. Panics on `q == 0`; reduction and sign normalization are
    /// handled by the underlying rational type.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(p), BigInt::from(q)))
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

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Scalar(self.0.recip())
    }

    /// Parses the wire format: an optionally signed integer, or `p/q`.
    pub fn parse(s: &str) -> Result<Self, CoreError> {
        let s = s.trim();
        let mk_err = || CoreError::Scalar(format!("malformed rational {s:?}"));
        if let Some((p, q)) = s.split_once('/') {
            let p = BigInt::from_str(p.trim()).map_err(|_| mk_err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| mk_err())?;
            if q.is_zero() {
                return Err(CoreError::Scalar(format!("zero denominator in {s:?}")));
            }
            Ok(Scalar(BigRational::new(p, q)))
        } else {
            let p = BigInt::from_str(s).map_err(|_| mk_err())?;
            Ok(Scalar(BigRational::from_integer(p)))
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl FromStr for Scalar {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scalar::parse(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Scalar::parse(&s).map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        (&self).div(&rhs)
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
        Scalar(-&self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

/// `(-1)^n`, the Koszul sign for transposing elements whose degrees multiply
/// to `n`. Negative exponents are fine since `(-1)^{-1} = -1`.
pub fn sign(n: i64) -> Scalar {
    if n.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_reduces() {
        let a = Scalar::ratio(1, 2);
        let b = Scalar::ratio(1, 3);
        assert_eq!(&a + &b, Scalar::ratio(5, 6));
        assert_eq!(&a * &b, Scalar::ratio(1, 6));
        assert_eq!(Scalar::ratio(2, 4), Scalar::ratio(1, 2));
        assert_eq!(Scalar::ratio(1, -2), Scalar::ratio(-1, 2));
    }

    #[test]
    fn wire_format_round_trips() {
        for s in ["0", "7", "-3", "1/2", "-22/7"] {
            let v = Scalar::parse(s).unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!(Scalar::parse("2/4").unwrap().to_string(), "1/2");
        assert_eq!(Scalar::parse("3/-6").unwrap().to_string(), "-1/2");
        assert!(Scalar::parse("1/0").is_err());
        assert!(Scalar::parse("x").is_err());
    }

    #[test]
    fn koszul_sign() {
        assert_eq!(sign(0), Scalar::one());
        assert_eq!(sign(-1), -Scalar::one());
        assert_eq!(sign(2), Scalar::one());
        assert_eq!(sign(-3), -Scalar::one());
    }
}
