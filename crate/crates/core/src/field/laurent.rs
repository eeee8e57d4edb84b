//! Laurent polynomials in `l` and `r` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::modp::{large_primes, poly_gcd, Fp};
use super::zpoly::{ZBiPoly, ZPoly};
use crate::error::{Error, Result};

/// Exponent pair `(a, b)` for the monomial `l^a r^b`.
pub type Exponent = (i32, i32);

/// A Laurent polynomial in `l` and `r`.
///
/// Terms are kept in a `BTreeMap` keyed by `(l-exponent, r-exponent)`, so the
/// last entry is the lex-leading term. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiLaurentPoly {
    terms: BTreeMap<Exponent, BigRational>,
}

impl BiLaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// `c · l^a · r^b`.
    pub fn monomial(c: BigRational, a: i32, b: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        BiLaurentPoly { terms }
    }

    pub fn l() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn r() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    /// `r^k` with unit coefficient.
    pub fn r_pow(k: i32) -> Self {
        Self::monomial(BigRational::one(), 0, k)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, BigRational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exponent) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The constant value if the polynomial has no non-trivial monomials.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Lex-leading term.
    pub fn leading(&self) -> Option<(Exponent, &BigRational)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Componentwise minimum of the exponents (`(0,0)` for zero).
    pub fn min_exponents(&self) -> Exponent {
        let mut it = self.terms.keys();
        let Some(&(a0, b0)) = it.next() else {
            return (0, 0);
        };
        it.fold((a0, b0), |(a, b), &(x, y)| (a.min(x), b.min(y)))
    }

    pub fn max_exponents(&self) -> Exponent {
        let mut it = self.terms.keys();
        let Some(&(a0, b0)) = it.next() else {
            return (0, 0);
        };
        it.fold((a0, b0), |(a, b), &(x, y)| (a.max(x), b.max(y)))
    }

    /// True if `l` occurs with a non-zero exponent in some term.
    pub fn has_l(&self) -> bool {
        self.terms.keys().any(|&(a, _)| a != 0)
    }

    /// Multiply by `l^a r^b`.
    pub fn shift(&self, a: i32, b: i32) -> Self {
        if a == 0 && b == 0 {
            return self.clone();
        }
        BiLaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(x, y), c)| ((x + a, y + b), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        BiLaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    fn add_term(&mut self, e: Exponent, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, o: &Self) {
        for (e, c) in &o.terms {
            self.add_term(*e, c);
        }
    }

    pub fn sub_assign_ref(&mut self, o: &Self) {
        for (e, c) in &o.terms {
            self.add_term(*e, &-c);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(o);
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign_ref(o);
        out
    }

    pub fn neg(&self) -> Self {
        BiLaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.terms.len() > o.terms.len() {
            return o.mul(self);
        }
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &o.terms {
                out.add_term((a + x, b + y), &(c * d));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Evaluate at rational `l` and `r`.
    pub fn eval(&self, l: &BigRational, r: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (&(a, b), c) in &self.terms {
            acc += c * rpow(l, a)? * rpow(r, b)?;
        }
        Ok(acc)
    }

    /// Substitute `l := c·r^k`, giving a Laurent polynomial in `r` alone.
    pub fn substitute_l(&self, c: &BigRational, k: i32) -> Self {
        let mut out = Self::zero();
        for (&(a, b), d) in &self.terms {
            let coeff = d * rpow(c, a).expect("non-zero substitution coefficient");
            out.add_term((0, b + k * a), &coeff);
        }
        out
    }

    /// Substitute a rational value for `r`, leaving a Laurent polynomial in `l`.
    pub fn substitute_r(&self, r: &BigRational) -> Result<Self> {
        let mut out = Self::zero();
        for (&(a, b), d) in &self.terms {
            out.add_term((a, 0), &(d * rpow(r, b)?));
        }
        Ok(out)
    }

    /// Split into a positive rational content and a primitive polynomial
    /// with integer coefficients whose lex-leading coefficient is positive.
    pub fn integer_primitive(&self) -> (BigRational, Self) {
        if self.is_zero() {
            return (BigRational::one(), Self::zero());
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&(c.numer() * (&den_lcm / c.denom())));
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.leading().unwrap().1.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// Divide out the monomial `l^a r^b` with `(a,b) = min_exponents`.
    pub fn strip_monomial(&self) -> (Exponent, Self) {
        let (a, b) = self.min_exponents();
        ((a, b), self.shift(-a, -b))
    }

    /// Exact quotient in the Laurent ring, if `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (sa, a0) = self.strip_monomial();
        let (sd, d0) = d.strip_monomial();
        if d0.is_monomial() {
            let c = d0.leading().unwrap().1.recip();
            return Some(self.shift(-sd.0, -sd.1).scale(&c));
        }
        let q0 = poly_div_exact(&a0, &d0)?;
        Some(q0.shift(sa.0 - sd.0, sa.1 - sd.1))
    }

    pub(crate) fn to_zbipoly(&self) -> ZBiPoly {
        // caller guarantees non-negative exponents and integer coefficients
        let (la, ra) = self.max_exponents();
        let mut rows = vec![vec![BigInt::zero(); ra as usize + 1]; la as usize + 1];
        for (&(a, b), c) in &self.terms {
            debug_assert!(c.is_integer());
            rows[a as usize][b as usize] = c.to_integer();
        }
        ZBiPoly::new(rows.into_iter().map(ZPoly::new).collect())
    }

    pub(crate) fn from_zbipoly(p: &ZBiPoly) -> Self {
        let mut out = Self::zero();
        for (a, row) in p.0.iter().enumerate() {
            for (b, c) in row.0.iter().enumerate() {
                if !c.is_zero() {
                    out.terms
                        .insert((a as i32, b as i32), BigRational::from_integer(c.clone()));
                }
            }
        }
        out
    }

    /// Gcd in the Laurent ring: an integer-primitive polynomial with no
    /// monomial factor and positive lex-leading coefficient.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.strip_monomial().1.integer_primitive().1;
        }
        if o.is_zero() {
            return self.strip_monomial().1.integer_primitive().1;
        }
        let a = self.strip_monomial().1;
        let b = o.strip_monomial().1;
        if a.is_monomial() || b.is_monomial() {
            return Self::one();
        }
        let (_, a) = a.integer_primitive();
        let (_, b) = b.integer_primitive();
        if a == b {
            return a;
        }
        if coprime_by_specialization(&a, &b) {
            return Self::one();
        }
        let g = a.to_zbipoly().gcd(&b.to_zbipoly());
        let g = Self::from_zbipoly(&g);
        g.strip_monomial().1.integer_primitive().1
    }

    /// Degree in `l` of the stripped polynomial.
    pub fn l_degree(&self) -> i32 {
        let (lo, _) = self.min_exponents();
        let (hi, _) = self.max_exponents();
        hi - lo
    }

    pub fn r_degree(&self) -> i32 {
        let (_, lo) = self.min_exponents();
        let (_, hi) = self.max_exponents();
        hi - lo
    }
}

/// Integer power of a rational, failing on `0^k` with `k < 0`.
pub(crate) fn rpow(x: &BigRational, k: i32) -> Result<BigRational> {
    if k >= 0 {
        Ok(num_traits::pow(x.clone(), k as usize))
    } else if x.is_zero() {
        Err(Error::DivisionByZero("zero raised to a negative power".into()))
    } else {
        Ok(num_traits::pow(x.recip(), k.unsigned_abs() as usize))
    }
}

/// Exact division of polynomials with non-negative exponents, lex order.
fn poly_div_exact(a: &BiLaurentPoly, d: &BiLaurentPoly) -> Option<BiLaurentPoly> {
    let ((dl, dr), dc) = d.leading().map(|(e, c)| (e, c.clone()))?;
    let (amax_l, amax_r) = a.max_exponents();
    let (dmax_l, dmax_r) = d.max_exponents();
    let (ql_bound, qr_bound) = (amax_l - dmax_l, amax_r - dmax_r);
    if ql_bound < 0 || qr_bound < 0 {
        return None;
    }
    let mut rem = a.clone();
    let mut q = BiLaurentPoly::zero();
    while let Some(((rl, rr), rc)) = rem.leading().map(|(e, c)| (e, c.clone())) {
        let (el, er) = (rl - dl, rr - dr);
        if el < 0 || er < 0 || el > ql_bound || er > qr_bound {
            return None;
        }
        let c = rc / &dc;
        for (&(x, y), k) in &d.terms {
            rem.add_term((x + el, y + er), &-(k * &c));
        }
        q.add_term((el, er), &c);
    }
    Some(q)
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_var(out: &mut Vec<String>, v: &str, e: i32) {
    match e {
        0 => {}
        1 => out.push(v.to_string()),
        _ => out.push(format!("{v}^{e}")),
    }
}

/// Image mod `p` of a polynomial after substituting `x0` for one variable
/// (`r` when `keep_l`), as coefficients in the other. `None` when the degree
/// in the kept variable drops.
fn specialized_image(p: Fp, f: &BiLaurentPoly, keep_l: bool, x0: u64) -> Option<Vec<u64>> {
    let pick = |e: &Exponent| if keep_l { (e.0, e.1) } else { (e.1, e.0) };
    let deg = f.terms.keys().map(|e| pick(e).0).max()? as usize;
    let mut out = vec![0u64; deg + 1];
    for (e, c) in &f.terms {
        let (kept, other) = pick(e);
        let v = p.mul(p.from_rational(c)?, p.pow(x0, other as u64));
        out[kept as usize] = p.add(out[kept as usize], v);
    }
    (out[deg] != 0).then_some(out)
}

/// Certifies that two polynomials without monomial factors are coprime.
/// A common factor of positive degree in `l` divides both images after
/// substituting a value for `r` that keeps the `l`-degrees, and likewise
/// with the roles swapped, so two trivial image gcds prove coprimality.
/// `false` only means no certificate was found.
fn coprime_by_specialization(a: &BiLaurentPoly, b: &BiLaurentPoly) -> bool {
    let p = large_primes().next().expect("primes exist");
    [(true, 0x9e37_79b9_7f4a_7c15u64), (false, 0x632b_e59b_d9b4_e019u64)].into_iter().all(|(keep_l, x0)| {
        let x0 = x0 % p.0;
        match (specialized_image(p, a, keep_l, x0), specialized_image(p, b, keep_l, x0)) {
            (Some(ia), Some(ib)) => poly_gcd(p, &ia, &ib).len() == 1,
            _ => false,
        }
    })
}

impl fmt::Display for BiLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let abs = c.abs();
            let mut parts = Vec::new();
            fmt_var(&mut parts, "l", a);
            fmt_var(&mut parts, "r", b);
            if parts.is_empty() {
                f.write_str(&fmt_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", fmt_rational(&abs))?;
                }
                f.write_str(&parts.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiLaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn display_order() {
        let p = BiLaurentPoly::from_terms([((1, 21), q(1)), ((0, 0), q(-1))]);
        assert_eq!(p.to_string(), "l*r^21 - 1");
        assert_eq!(BiLaurentPoly::monomial(q(-1), 0, -9).to_string(), "-r^-9");
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(BiLaurentPoly::monomial(half, 2, 1).to_string(), "1/2*l^2*r");
    }

    #[test]
    fn laurent_division() {
        let lr1 = BiLaurentPoly::from_terms([((1, 1), q(1)), ((0, 0), q(-1))]);
        let sq = lr1.mul(&lr1).shift(-1, 3);
        assert_eq!(sq.div_exact(&lr1), Some(lr1.shift(-1, 3)));
        assert_eq!(sq.div_exact(&BiLaurentPoly::l().add(&BiLaurentPoly::r())), None);
    }

    #[test]
    fn gcd_strips_monomials() {
        let a = BiLaurentPoly::from_terms([((2, 0), q(1)), ((0, 2), q(-1))]); // l^2 - r^2
        let b = BiLaurentPoly::from_terms([((1, 3), q(2)), ((0, 4), q(-2))]); // 2 r^3 (l - r)
        let g = a.gcd(&b);
        assert_eq!(g.to_string(), "l - r");
    }
}
