//! Elements of Q(l, r) in canonical reduced form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::BiLaurentPoly;
use super::lvalue::LValue;
use crate::error::{Error, Result};

/// A reduced fraction `num / den` of Laurent polynomials.
///
/// Canonical form: `den` is an integer polynomial with no monomial factor,
/// coprime integer coefficients and a positive lex-leading coefficient, and
/// shares no non-unit factor with `num`. Every value therefore has exactly
/// one representation and structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: BiLaurentPoly,
    den: BiLaurentPoly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self::from_poly(BiLaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(BiLaurentPoly::one())
    }

    pub fn l() -> Self {
        Self::from_poly(BiLaurentPoly::l())
    }

    pub fn r() -> Self {
        Self::from_poly(BiLaurentPoly::r())
    }

    pub fn r_pow(k: i32) -> Self {
        Self::from_poly(BiLaurentPoly::r_pow(k))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(BiLaurentPoly::from_int(c))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(BiLaurentPoly::constant(c))
    }

    pub fn from_poly(p: BiLaurentPoly) -> Self {
        RationalFunction { num: p, den: BiLaurentPoly::one() }
    }

    /// Build and fully reduce `num / den`.
    pub fn new(num: BiLaurentPoly, den: BiLaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let ((a, b), den) = den.strip_monomial();
        let mut num = num.shift(-a, -b);
        let mut den = den;
        if !den.is_monomial() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        Ok(Self::from_coprime(num, den))
    }

    /// Normalize sign, content and monomial factor of an already coprime pair.
    fn from_coprime(num: BiLaurentPoly, den: BiLaurentPoly) -> Self {
        let ((a, b), den) = den.strip_monomial();
        let num = num.shift(-a, -b);
        let (c, den) = den.integer_primitive();
        let num = if c.is_one() { num } else { num.scale(&c.recip()) };
        if den.is_one() || num.is_zero() {
            return Self::from_poly(num);
        }
        RationalFunction { num, den }
    }

    pub fn numer(&self) -> &BiLaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &BiLaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// True if `l` does not occur.
    pub fn is_univariate_r(&self) -> bool {
        !self.num.has_l() && !self.den.has_l()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("inverse of zero".into()));
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero(format!("({self}) / 0")));
        }
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs();
        Ok(RationalFunction {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Evaluate at rational `l`, `r`.
    pub fn eval(&self, l: &BigRational, r: &BigRational) -> Result<BigRational> {
        let d = self
            .den
            .eval(l, r)
            .map_err(|_| Error::VanishingDenominator("l or r is zero".into()))?;
        if d.is_zero() {
            return Err(Error::VanishingDenominator(format!(
                "{} at l = {l}, r = {r}",
                self.den
            )));
        }
        let n = self
            .num
            .eval(l, r)
            .map_err(|_| Error::VanishingDenominator("l or r is zero".into()))?;
        Ok(n / d)
    }

    /// Substitute `l := c·r^k`.
    pub fn specialize_l(&self, lv: &LValue) -> Result<Self> {
        let d = self.den.substitute_l(lv.coeff(), lv.power());
        if d.is_zero() {
            return Err(Error::VanishingDenominator(format!(
                "{} at l = {lv}",
                self.den
            )));
        }
        let n = self.num.substitute_l(lv.coeff(), lv.power());
        Self::new(n, d)
    }

    /// Substitute a rational value for `r`.
    pub fn specialize_r(&self, r: &BigRational) -> Result<Self> {
        let err = || Error::VanishingDenominator(format!("{} at r = {r}", self.den));
        let d = self.den.substitute_r(r).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        let n = self.num.substitute_r(r).map_err(|_| err())?;
        Self::new(n, d)
    }
}

/// Substitute `l` and/or `r`. With both given the result is a constant.
pub fn specialize(
    x: &RationalFunction,
    l: Option<&LValue>,
    r: Option<&BigRational>,
) -> Result<RationalFunction> {
    let mut out = x.clone();
    if let Some(lv) = l {
        out = out.specialize_l(lv)?;
    }
    if let Some(r) = r {
        out = out.specialize_r(r)?;
    }
    Ok(out)
}

fn add_impl(a: &RationalFunction, b: &RationalFunction, negate_b: bool) -> RationalFunction {
    let bn = if negate_b { b.num.neg() } else { b.num.clone() };
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return RationalFunction { num: bn, den: b.den.clone() };
    }
    if a.den.is_one() && b.den.is_one() {
        return RationalFunction::from_poly(a.num.add(&bn));
    }
    if a.den == b.den {
        return RationalFunction::new(a.num.add(&bn), a.den.clone()).expect("non-zero denominator");
    }
    let g = a.den.gcd(&b.den);
    if g.is_one() {
        let num = a.num.mul(&b.den).add(&bn.mul(&a.den));
        return RationalFunction::from_coprime(num, a.den.mul(&b.den));
    }
    let ad = a.den.div_exact(&g).expect("gcd divides");
    let bd = b.den.div_exact(&g).expect("gcd divides");
    let num = a.num.mul(&bd).add(&bn.mul(&ad));
    RationalFunction::new(num, a.den.mul(&bd)).expect("non-zero denominator")
}

fn mul_impl(a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
    if a.is_zero() || b.is_zero() {
        return RationalFunction::zero();
    }
    if a.den.is_one() && b.den.is_one() {
        return RationalFunction::from_poly(a.num.mul(&b.num));
    }
    if let Some(c) = a.as_constant() {
        return b.scale(&c);
    }
    if let Some(c) = b.as_constant() {
        return a.scale(&c);
    }
    let reduce = |n: &BiLaurentPoly, d: &BiLaurentPoly| {
        if d.is_one() {
            return (n.clone(), d.clone());
        }
        let g = n.gcd(d);
        if g.is_one() {
            (n.clone(), d.clone())
        } else {
            (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
        }
    };
    let (an, bd) = reduce(&a.num, &b.den);
    let (bn, ad) = reduce(&b.num, &a.den);
    RationalFunction::from_coprime(an.mul(&bn), ad.mul(&bd))
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        add_impl(self, o, false)
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        add_impl(self, o, true)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        mul_impl(self, o)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: RationalFunction) -> RationalFunction {
                (&self).$m(&o)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: &RationalFunction) -> RationalFunction {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

impl From<BiLaurentPoly> for RationalFunction {
    fn from(p: BiLaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() == 1 {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        if self.den.num_terms() == 1 {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl std::str::FromStr for RationalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_rational_function(s)
    }
}
