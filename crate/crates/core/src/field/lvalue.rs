use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::laurent::BiLaurentPoly;
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

/// A specialization `l := coeff · r^power`, ordered by power, then coefficient.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LValue {
    power: i32,
    coeff: BigRational,
}

impl LValue {
    pub fn new(coeff: BigRational, power: i32) -> Result<Self> {
        if coeff.is_zero() {
            return Err(Error::InvalidArgument("l must be non-zero".into()));
        }
        Ok(LValue { coeff, power })
    }

    /// `sign · r^power`.
    pub fn signed(sign: i64, power: i32) -> Self {
        LValue { coeff: BigRational::from_integer(sign.into()), power }
    }

    pub fn r_pow(power: i32) -> Self {
        Self::signed(1, power)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn power(&self) -> i32 {
        self.power
    }

    pub fn as_poly(&self) -> BiLaurentPoly {
        BiLaurentPoly::monomial(self.coeff.clone(), 0, self.power)
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        RationalFunction::from_poly(self.as_poly())
    }

    /// Value at a rational `r`.
    pub fn eval(&self, r: &BigRational) -> Result<BigRational> {
        Ok(&self.coeff * super::laurent::rpow(r, self.power)?)
    }
}

impl FromStr for LValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let x: RationalFunction = s.parse()?;
        let bad = || Error::InvalidArgument(format!("'{s}' is not of the form c*r^k"));
        if !x.is_polynomial() || !x.numer().is_monomial() {
            return Err(bad());
        }
        let ((a, b), c) = x.numer().leading().ok_or_else(bad)?;
        if a != 0 {
            return Err(bad());
        }
        LValue::new(c.clone(), b)
    }
}

impl fmt::Display for LValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_poly())
    }
}

impl fmt::Debug for LValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LValue({self})")
    }
}

impl Serialize for LValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
