//! Arithmetic modulo word-sized primes, univariate rational reconstruction
//! over F_p, and lifting of residues back to Q.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A prime below 2^63 and its field operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp(pub u64);

impl Fp {
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.0 as u128) as u64
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.0 - (b - a)
        }
    }

    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a non-zero residue.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.0 - 2)
    }

    pub fn from_i64(self, k: i64) -> u64 {
        let r = (k as i128).rem_euclid(self.0 as i128);
        r as u64
    }

    pub fn from_bigint(self, k: &BigInt) -> u64 {
        let m = BigInt::from(self.0);
        let r = k.mod_floor(&m);
        r.to_u64_digits().1.first().copied().unwrap_or(0)
    }

    /// Image of a rational, or `None` when `p` divides its denominator.
    pub fn from_rational(self, q: &BigRational) -> Option<u64> {
        let d = self.from_bigint(q.denom());
        if d == 0 {
            return None;
        }
        Some(self.mul(self.from_bigint(q.numer()), self.inv(d)))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let f = Fp(n);
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for b in BASES {
        let mut x = f.pow(b, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below 2^62 in decreasing order.
pub fn large_primes() -> impl Iterator<Item = Fp> {
    ((1u64 << 61)..(1u64 << 62)).rev().step_by(2).filter(|&n| is_prime(n)).map(Fp)
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_mul(f: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

fn poly_sub(f: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|k| f.sub(a.get(k).copied().unwrap_or(0), b.get(k).copied().unwrap_or(0)))
            .collect(),
    )
}

fn poly_div_rem(f: Fp, a: &[u64], d: &[u64]) -> (Vec<u64>, Vec<u64>) {
    if a.len() < d.len() {
        return (vec![], a.to_vec());
    }
    let mut r = a.to_vec();
    let dd = d.len() - 1;
    let inv = f.inv(d[dd]);
    let mut q = vec![0u64; r.len() - dd];
    for k in (0..q.len()).rev() {
        let c = f.mul(r[k + dd], inv);
        if c == 0 {
            continue;
        }
        for (i, &b) in d.iter().enumerate() {
            r[k + i] = f.sub(r[k + i], f.mul(c, b));
        }
        q[k] = c;
    }
    r.truncate(dd);
    (trim(q), trim(r))
}

pub fn poly_eval(f: Fp, a: &[u64], x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Coefficients, lowest first, of the polynomial of degree below
/// `xs.len()` through the given values; `None` if two `xs` coincide.
pub fn interpolate(f: Fp, xs: &[u64], ys: &[u64]) -> Option<Vec<u64>> {
    let n = xs.len();
    // Newton form, then expand
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(coef[i], coef[i - 1]);
            let den = f.sub(xs[i], xs[i - j]);
            if den == 0 {
                return None;
            }
            coef[i] = f.mul(num, f.inv(den));
        }
    }
    let mut out = vec![0u64; n];
    for i in (0..n).rev() {
        // out = out·(x - xs[i]) + coef[i]
        for k in (1..n).rev() {
            out[k] = f.sub(out[k - 1], f.mul(out[k], xs[i]));
        }
        out[0] = f.sub(coef[i], f.mul(out[0], xs[i]));
    }
    Some(out)
}

/// Numerator and monic denominator over F_p, lowest degree first.
pub type ModRatFn = (Vec<u64>, Vec<u64>);

/// The rational function of total degree below `xs.len()` through the
/// given values, with monic denominator.
pub fn reconstruct_mod(f: Fp, xs: &[u64], ys: &[u64]) -> Option<ModRatFn> {
    let n = xs.len();
    if ys.iter().all(|&y| y == 0) {
        return Some((vec![], vec![1]));
    }
    let interp = trim(interpolate(f, xs, ys)?);
    let mut modulus = vec![1u64];
    for &x in xs {
        modulus = poly_mul(f, &modulus, &[f.neg(x), 1]);
    }
    let bound = (n - 1) / 2;
    let (mut r0, mut r1) = (modulus, interp);
    let (mut t0, mut t1): (Vec<u64>, Vec<u64>) = (vec![], vec![1]);
    while r1.len() > bound + 1 {
        let (q, rem) = poly_div_rem(f, &r0, &r1);
        let t2 = poly_sub(f, &t0, &poly_mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, rem);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_empty() || r1.len() + t1.len() > n + 1 {
        return None;
    }
    if xs.iter().any(|&x| poly_eval(f, &t1, x) == 0) {
        return None;
    }
    // cancel any common factor left over, then make the denominator monic
    let g = poly_gcd(f, &r1, &t1);
    let (num, den) = if g.len() > 1 {
        (poly_div_rem(f, &r1, &g).0, poly_div_rem(f, &t1, &g).0)
    } else {
        (r1, t1)
    };
    let li = f.inv(*den.last().unwrap());
    let scale = |v: Vec<u64>| v.into_iter().map(|c| f.mul(c, li)).collect::<Vec<_>>();
    Some((scale(num), scale(den)))
}

pub(crate) fn poly_gcd(f: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = poly_div_rem(f, &a, &b).1;
        a = std::mem::replace(&mut b, r);
    }
    a
}

/// Rank of a dense matrix over F_p; the rows are reduced in place.
pub fn rank_mod(f: Fp, rows: &mut [Vec<u64>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(k) = (rank..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(rank, k);
        let inv = f.inv(rows[rank][c]);
        for v in rows[rank].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for other in tail.iter_mut() {
            let t = other[c];
            if t != 0 {
                for (o, pv) in other.iter_mut().zip(pivot).skip(c) {
                    *o = f.sub(*o, f.mul(t, *pv));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant of a dense square matrix over F_p, destroying it.
pub fn det_mod(f: Fp, a: &mut [Vec<u64>]) -> u64 {
    let n = a.len();
    let mut d = 1u64;
    for c in 0..n {
        let Some(k) = (c..n).find(|&k| a[k][c] != 0) else { return 0 };
        if k != c {
            a.swap(k, c);
            d = f.neg(d);
        }
        d = f.mul(d, a[c][c]);
        let inv = f.inv(a[c][c]);
        let (head, tail) = a.split_at_mut(c + 1);
        let pivot = &head[c];
        for row in tail.iter_mut() {
            let t = f.mul(row[c], inv);
            if t != 0 {
                for (o, pv) in row.iter_mut().zip(pivot).skip(c) {
                    *o = f.sub(*o, f.mul(t, *pv));
                }
            }
        }
    }
    d
}

/// Combine residues `a mod m` and `b mod p` into one residue mod `m·p`.
pub fn crt(a: &BigInt, m: &BigInt, b: u64, p: Fp) -> BigInt {
    let am = p.from_bigint(a);
    let mm = p.from_bigint(m);
    let k = p.mul(p.sub(b, am), p.inv(mm));
    a + m * BigInt::from(k)
}

/// The rational `x/y` with `|x|, |y| < sqrt(m/2)` congruent to `a` mod `m`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || r1.gcd(&s1) != BigInt::one() {
        return None;
    }
    let (num, den) = if s1.sign() == Sign::Minus { (-r1, -s1) } else { (r1, s1) };
    Some(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = large_primes().take(3).map(|p| p.0).collect();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(is_prime(2_305_843_009_213_693_951));
        assert!(!is_prime(2_305_843_009_213_693_953));
    }

    #[test]
    fn reconstruction_mod_p() {
        let f = large_primes().next().unwrap();
        // (x^2 + 3) / (x - 5)
        let xs: Vec<u64> = (1..=7).filter(|&x| x != 5).collect();
        let ys: Vec<u64> =
            xs.iter().map(|&x| f.mul(f.add(f.mul(x, x), 3), f.inv(f.sub(x, 5)))).collect();
        let (num, den) = reconstruct_mod(f, &xs, &ys).unwrap();
        assert_eq!(num, vec![3, 0, 1]);
        assert_eq!(den, vec![f.neg(5), 1]);
    }

    #[test]
    fn lifting_rationals() {
        let mut primes = large_primes();
        let (p, q) = (primes.next().unwrap(), primes.next().unwrap());
        let x = BigRational::new(BigInt::from(-123456789i64), BigInt::from(987654321i64));
        let a = BigInt::from(p.from_rational(&x).unwrap());
        let m = BigInt::from(p.0);
        let a = crt(&a, &m, q.from_rational(&x).unwrap(), q);
        let m = m * BigInt::from(q.0);
        assert_eq!(rational_reconstruct(&a, &m), Some(x));
    }
}
