//! Dense integer polynomials used internally for gcd computations.
//!
//! A [`ZPoly`] is univariate in `r`; a [`ZBiPoly`] is a polynomial in `l`
//! whose coefficients are `ZPoly`s. Both are kept trimmed (no trailing zero
//! coefficients), so the zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ZPoly(pub Vec<BigInt>);

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly(c)
    }

    pub fn constant(c: BigInt) -> Self {
        ZPoly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> &BigInt {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    /// Gcd of the coefficients, always non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_scalar(&self, d: &BigInt) -> ZPoly {
        ZPoly(self.0.iter().map(|c| c / d).collect())
    }

    pub fn mul_scalar(&self, k: &BigInt) -> ZPoly {
        if k.is_zero() {
            return ZPoly(vec![]);
        }
        ZPoly(self.0.iter().map(|c| c * k).collect())
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        ZPoly::new(out)
    }

    pub fn sub(&self, o: &ZPoly) -> ZPoly {
        let n = self.0.len().max(o.0.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.0.get(k).cloned().unwrap_or_default();
            let b = o.0.get(k).cloned().unwrap_or_default();
            out.push(a - b);
        }
        ZPoly::new(out)
    }

    /// Pseudo-remainder of `self` by `d`, made primitive.
    fn prem_primitive(&self, d: &ZPoly) -> ZPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lead().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let k = r.lead().clone();
            let g = k.gcd(&lc);
            let (a, b) = (&lc / &g, &k / &g);
            let mut scaled = r.mul_scalar(&a);
            for (i, c) in d.0.iter().enumerate() {
                scaled.0[i + dr - dd] -= &b * c;
            }
            r = ZPoly::new(scaled.0);
        }
        r.primitive()
    }

    /// Exact quotient when `d` divides `self` over Z, otherwise `None`.
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(self.clone());
        }
        let ds = self.degree().unwrap();
        if ds < dd {
            return None;
        }
        let mut r = self.0.clone();
        let mut q = vec![BigInt::zero(); ds - dd + 1];
        let lc = d.lead();
        for k in (0..=ds - dd).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qq, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, c) in d.0.iter().enumerate() {
                r[k + i] -= &qq * c;
            }
            q[k] = qq;
        }
        if r.iter().all(|x| x.is_zero()) {
            Some(ZPoly::new(q))
        } else {
            None
        }
    }

    /// Gcd over Z[r], primitive with positive leading coefficient times the
    /// integer gcd of the contents.
    pub fn gcd(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return o.primitive_with_sign();
        }
        if o.is_zero() {
            return self.primitive_with_sign();
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.is_constant() {
                return ZPoly::constant(c);
            }
            let r = a.prem_primitive(&b);
            a = b;
            b = r;
        }
        a.primitive().mul_scalar(&c)
    }

    fn primitive_with_sign(&self) -> ZPoly {
        if self.is_zero() || !self.lead().is_negative() {
            self.clone()
        } else {
            self.mul_scalar(&-BigInt::one())
        }
    }
}

/// Polynomial in `l` with coefficients in Z[r]; index = degree in `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ZBiPoly(pub Vec<ZPoly>);

impl ZBiPoly {
    pub fn new(mut c: Vec<ZPoly>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZBiPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Gcd of the Z[r] coefficients.
    pub fn content(&self) -> ZPoly {
        let mut g = ZPoly(vec![]);
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_constant() && g.0.first().is_some_and(|x| x.is_one()) {
                break;
            }
        }
        g
    }

    fn div_content(&self, c: &ZPoly) -> ZBiPoly {
        ZBiPoly(
            self.0
                .iter()
                .map(|x| x.div_exact(c).expect("content divides every coefficient"))
                .collect(),
        )
    }

    fn primitive(&self) -> ZBiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        let mut p = self.div_content(&c);
        if p.0.last().unwrap().lead().is_negative() {
            for x in p.0.iter_mut() {
                *x = x.mul_scalar(&-BigInt::one());
            }
        }
        p
    }

    fn prem_primitive(&self, d: &ZBiPoly) -> ZBiPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.0.last().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let k = r.0.last().unwrap().clone();
            let mut out: Vec<ZPoly> = r.0.iter().map(|x| x.mul(&lc)).collect();
            for (i, c) in d.0.iter().enumerate() {
                out[i + dr - dd] = out[i + dr - dd].sub(&c.mul(&k));
            }
            r = ZBiPoly::new(out);
        }
        r.primitive()
    }

    /// Gcd in Z[r][l], up to sign.
    pub fn gcd(&self, o: &ZBiPoly) -> ZBiPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return ZBiPoly(vec![c]);
            }
            let r = a.prem_primitive(&b);
            a = b;
            b = r;
        }
        ZBiPoly(a.primitive().0.iter().map(|x| x.mul(&c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(c: &[i64]) -> ZPoly {
        ZPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn univariate_gcd() {
        // (r-1)(r+2) and (r-1)(r-3)
        let a = zp(&[-2, 1, 1]);
        let b = zp(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), zp(&[-1, 1]));
        assert_eq!(zp(&[2, 4]).gcd(&zp(&[6])), zp(&[2]));
    }

    #[test]
    fn exact_division() {
        let a = zp(&[-1, 0, 0, 1]);
        assert_eq!(a.div_exact(&zp(&[-1, 1])), Some(zp(&[1, 1, 1])));
        assert_eq!(a.div_exact(&zp(&[1, 1])), None);
    }

    #[test]
    fn bivariate_gcd() {
        // (l*r - 1)(l + r) and (l*r - 1)(l - 2)
        let a = ZBiPoly::new(vec![zp(&[0, -1]), zp(&[-1, 0, 1]), zp(&[0, 1])]);
        let b = ZBiPoly::new(vec![zp(&[2]), zp(&[-1, -2]), zp(&[0, 1])]);
        let g = a.gcd(&b);
        assert_eq!(g.degree(), Some(1));
        assert_eq!(g.0[0].0.len() + g.0[1].0.len(), 3);
    }
}
