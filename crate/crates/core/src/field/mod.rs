//! Exact scalar fields: Q(l, r), its specializations, and Q itself.

pub mod factor;
pub mod identity;
pub mod laurent;
pub mod lvalue;
mod parse;
pub mod modp;
pub mod ratfunc;
mod zpoly;

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use factor::{default_family, trial_factor, FactoredForm};
pub use identity::{is_admissible_r, probabilistic_identity, PointSampler};
pub use laurent::BiLaurentPoly;
pub use lvalue::LValue;
pub use ratfunc::{specialize, RationalFunction};

/// Exact rationals.
pub type Q = BigRational;

/// `p/q` as a rational.
pub fn q(p: i64, d: i64) -> Q {
    BigRational::new(p.into(), d.into())
}

/// The operations the linear algebra needs from a scalar type.
pub trait Field:
    Clone + PartialEq + Debug + Display + Send + Sync + Zero + One + Neg<Output = Self> + 'static
{
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn try_inv(&self) -> Result<Self>;
    fn from_rational(q: Q) -> Self;

    fn from_i64(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(k.into()))
    }

    fn try_div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_ref(&o.try_inv()?))
    }

    fn pow_i(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.try_inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul_ref(&base);
        }
        Ok(acc)
    }

    /// Rough size measure used for pivot selection.
    fn weight(&self) -> usize {
        1
    }
}

impl Field for BigRational {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero("inverse of zero".into()))
        } else {
            Ok(self.recip())
        }
    }
    fn from_rational(q: Q) -> Self {
        q
    }
    fn weight(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

impl Field for RationalFunction {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }
    fn from_rational(q: Q) -> Self {
        RationalFunction::constant(q)
    }
    fn pow_i(&self, k: i32) -> Result<Self> {
        self.pow(k)
    }
    fn weight(&self) -> usize {
        self.numer().num_terms() + self.denom().num_terms()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RationalFunction {
        s.parse().unwrap()
    }

    #[test]
    fn inverse_pair() {
        assert!((rf("l/r") * rf("r/l")).is_one());
    }

    #[test]
    fn m_at_two() {
        let m = rf("1/r - r");
        assert_eq!(m.eval(&q(7, 1), &q(2, 1)).unwrap(), q(-3, 2));
    }

    #[test]
    fn loop_value_vanishes_at_inverse_r() {
        let loop_value = rf("1 - (l - 1/l)/(1/r - r)");
        let at = loop_value.specialize_l(&"r^-1".parse().unwrap()).unwrap();
        assert!(at.is_zero());
    }

    #[test]
    fn specialization_examples() {
        let x = rf("l*r^3");
        assert_eq!(x.specialize_l(&"r^-21".parse().unwrap()).unwrap(), rf("r^-18"));
        let y = rf("1/(r^2 - 1)");
        let e = y.specialize_r(&q(1, 1)).unwrap_err();
        assert!(e.to_string().contains("denominator vanishes"));
    }

    #[test]
    fn identity_examples() {
        assert!(probabilistic_identity(&rf("l + r"), &rf("l + r"), 5, 1));
        assert!(probabilistic_identity(&rf("(l^2 - r^2)/(l - r)"), &rf("l + r"), 5, 2));
        assert!(!probabilistic_identity(&rf("l"), &rf("r"), 1, 3));
    }

    #[test]
    fn canonical_sign_of_denominator() {
        let x = rf("1/(1 - l)");
        assert_eq!(x.to_string(), "-1/(l - 1)");
        assert_eq!(x.denom().leading().unwrap().1, &q(1, 1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(rf("l").div(&RationalFunction::zero()).is_err());
        assert!(RationalFunction::zero().inv().is_err());
    }
}
