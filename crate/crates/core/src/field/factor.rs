//! Trial factorization against a fixed family of binomials.

use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use super::laurent::BiLaurentPoly;
use super::lvalue::LValue;
use super::ratfunc::RationalFunction;

/// `unit · Π factorᵉ · cofactor`, with `cofactor = 1` when complete.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredForm {
    pub unit: RationalFunction,
    pub factors: Vec<(BiLaurentPoly, i32)>,
    pub cofactor: RationalFunction,
}

impl FactoredForm {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_one()
    }

    /// Multiply everything back out.
    pub fn expand(&self) -> RationalFunction {
        let mut acc = &self.unit * &self.cofactor;
        for (f, e) in &self.factors {
            let p = RationalFunction::from_poly(f.clone())
                .pow(*e)
                .expect("family members are non-zero");
            acc = acc * p;
        }
        acc
    }

    /// Roots in `l` of the factors that are linear binomials in `l`,
    /// with their multiplicities (negative for poles).
    pub fn l_roots(&self) -> Vec<(LValue, i32)> {
        self.factors
            .iter()
            .filter_map(|(f, e)| l_root(f).map(|v| (v, *e)))
            .collect()
    }
}

/// For `α l r^a + β r^b`, the value `l = -β/α · r^(b-a)`.
pub fn l_root(f: &BiLaurentPoly) -> Option<LValue> {
    if f.num_terms() != 2 || f.l_degree() != 1 {
        return None;
    }
    let mut it = f.terms();
    let ((a0, b0), c0) = it.next()?;
    let ((a1, b1), c1) = it.next()?;
    let ((_, bl), cl, (_, bc), cc) = if a1 > a0 {
        ((a1, b1), c1, (a0, b0), c0)
    } else {
        ((a0, b0), c0, (a1, b1), c1)
    };
    LValue::new(-(cc / cl), bc - bl).ok()
}

/// Canonical representative of a family member up to units.
fn canonical(p: &BiLaurentPoly) -> BiLaurentPoly {
    p.strip_monomial().1.integer_primitive().1
}

/// The candidate family for rank `n`: `l r^k ∓ 1` and `l ∓ r^k` for
/// `|k| ≤ 4n`, then `r^k ∓ 1` for `1 ≤ k ≤ 2n`, deduplicated up to units.
///
/// Members involving `l` come first; the `r`-only members are ordered by
/// decreasing degree so that `r^2 - 1` is removed whole rather than as
/// `(r - 1)(r + 1)`.
pub fn default_family(n: usize) -> Vec<BiLaurentPoly> {
    let one = BigRational::one();
    let kmax = 4 * n as i32;
    let mut out: Vec<BiLaurentPoly> = Vec::new();
    let push = |p: BiLaurentPoly, out: &mut Vec<BiLaurentPoly>| {
        let c = canonical(&p);
        if !out.contains(&c) {
            out.push(c);
        }
    };
    for k in -kmax..=kmax {
        for s in [-1i64, 1] {
            let sq = BigRational::from_integer(s.into());
            push(
                BiLaurentPoly::from_terms([((1, k), one.clone()), ((0, 0), sq.clone())]),
                &mut out,
            );
            push(
                BiLaurentPoly::from_terms([((1, 0), one.clone()), ((0, k), sq.clone())]),
                &mut out,
            );
        }
    }
    for k in (1..=2 * n as i32).rev() {
        for s in [-1i64, 1] {
            let sq = BigRational::from_integer(s.into());
            push(
                BiLaurentPoly::from_terms([((0, k), one.clone()), ((0, 0), sq)]),
                &mut out,
            );
        }
    }
    out
}

fn divides_fast(p: &BiLaurentPoly, f: &BiLaurentPoly) -> Option<bool> {
    // a binomial linear in l divides p iff p vanishes on l = root
    let root = l_root(f)?;
    Some(p.substitute_l(root.coeff(), root.power()).is_zero())
}

fn strip_member(p: &mut BiLaurentPoly, f: &BiLaurentPoly) -> i32 {
    let mut k = 0;
    loop {
        if p.is_monomial() {
            return k;
        }
        if divides_fast(p, f) == Some(false) {
            return k;
        }
        match p.div_exact(f) {
            Some(q) => {
                *p = q;
                k += 1;
            }
            None => return k,
        }
    }
}

/// Repeatedly divide numerator and denominator of `x` by family members.
pub fn trial_factor(x: &RationalFunction, family: &[BiLaurentPoly]) -> FactoredForm {
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let mut factors = Vec::new();
    for f in family {
        let f = canonical(f);
        if f.is_monomial() {
            continue;
        }
        let e = strip_member(&mut num, &f) - strip_member(&mut den, &f);
        if e != 0 {
            factors.push((f, e));
        }
    }
    let split = |p: &BiLaurentPoly| {
        let ((a, b), rest) = p.strip_monomial();
        let (c, rest) = rest.integer_primitive();
        (BiLaurentPoly::monomial(c, a, b), rest)
    };
    let (nu, nrest) = split(&num);
    let (du, drest) = split(&den);
    let unit = RationalFunction::new(nu, du).expect("non-zero denominator");
    let cofactor = RationalFunction::new(nrest, drest).expect("non-zero denominator");
    FactoredForm { unit, factors, cofactor }
}

impl fmt::Display for FactoredForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = &self.unit;
        let unit_str = if u.is_polynomial() && u.numer().is_monomial() {
            u.to_string()
        } else {
            format!("({u})")
        };
        f.write_str(&unit_str)?;
        for (p, e) in &self.factors {
            if *e == 1 {
                write!(f, " * ({p})")?;
            } else {
                write!(f, " * ({p})^{e}")?;
            }
        }
        if !self.is_complete() {
            write!(f, " * [{}]", self.cofactor)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_is_deduplicated() {
        let fam = default_family(4);
        let mut seen = std::collections::HashSet::new();
        for f in &fam {
            assert!(seen.insert(f.clone()));
        }
        // l r^k - 1 and l - r^-k coincide up to a unit
        assert!(fam.iter().any(|f| f.to_string() == "l*r - 1"));
        assert!(fam.iter().any(|f| f.to_string() == "r^2 - 1"));
    }

    #[test]
    fn simple_factorization() {
        let x: RationalFunction = "(l*r - 1)^2 / l".parse().unwrap();
        let ff = trial_factor(&x, &default_family(4));
        assert!(ff.is_complete());
        assert_eq!(ff.unit.to_string(), "l^-1");
        assert_eq!(ff.factors.len(), 1);
        assert_eq!(ff.factors[0].0.to_string(), "l*r - 1");
        assert_eq!(ff.factors[0].1, 2);
        assert_eq!(ff.expand(), x);
    }

    #[test]
    fn monomial_has_no_factors() {
        let x: RationalFunction = "r^5".parse().unwrap();
        let ff = trial_factor(&x, &default_family(4));
        assert!(ff.factors.is_empty());
        assert_eq!(ff.unit.to_string(), "r^5");
    }
}
