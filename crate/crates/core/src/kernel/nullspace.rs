use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::conjugates::{all_conjugates, sum_matrix, sum_of};
use crate::error::{Error, Result};
use crate::field::modp::{crt, large_primes, poly_eval, rational_reconstruct, reconstruct_mod, Fp, ModRatFn};
use crate::field::{BiLaurentPoly, Field, LValue, PointSampler, RationalFunction, Q};
use crate::linalg::{Echelon, SparseMatrix};
use crate::rep::{Representation, RootLabel};

/// Kernel of `S(n)` at `l = c·r^k`, over Q(r).
#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub n: usize,
    pub l: LValue,
    pub rank: usize,
    pub k: usize,
    /// Basis vectors as sparse maps label → polynomial in `r`.
    #[serde(serialize_with = "serialize_basis")]
    pub basis: Vec<Vec<(RootLabel, BiLaurentPoly)>>,
}

fn serialize_basis<S: serde::Serializer>(
    b: &[Vec<(RootLabel, BiLaurentPoly)>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let maps: Vec<BTreeMap<String, String>> = b
        .iter()
        .map(|v| v.iter().map(|(l, p)| (l.to_string(), p.to_string())).collect())
        .collect();
    maps.serialize(s)
}

impl KernelReport {
    /// Basis vectors as dense coordinate vectors over Q(r).
    pub fn dense_basis(&self, rep_dim: usize, basis: &crate::rep::BasisIndex) -> Vec<Vec<RationalFunction>> {
        self.basis
            .iter()
            .map(|v| {
                let mut x = vec![RationalFunction::zero(); rep_dim];
                for (l, p) in v {
                    x[basis.index_of(*l).unwrap()] = RationalFunction::from_poly(p.clone());
                }
                x
            })
            .collect()
    }
}

/// Scale a vector over Q(r) to coprime integer polynomial entries with the
/// first non-zero coordinate having positive leading coefficient.
pub fn normalize_vector(v: &[RationalFunction]) -> Vec<BiLaurentPoly> {
    let mut lcm = BiLaurentPoly::one();
    for x in v {
        let d = x.denom();
        if !d.is_one() {
            let g = lcm.gcd(d);
            lcm = lcm.mul(&d.div_exact(&g).unwrap());
        }
    }
    let mut polys: Vec<BiLaurentPoly> = v
        .iter()
        .map(|x| x.numer().mul(&lcm.div_exact(x.denom()).unwrap()))
        .collect();
    let mut g = BiLaurentPoly::zero();
    for p in &polys {
        if !p.is_zero() {
            g = g.gcd(p);
        }
    }
    let mut min = (i32::MAX, i32::MAX);
    for p in polys.iter().filter(|p| !p.is_zero()) {
        let (a, b) = p.min_exponents();
        min = (min.0.min(a), min.1.min(b));
    }
    for p in polys.iter_mut() {
        if !p.is_zero() {
            *p = p.div_exact(&g).unwrap().shift(-min.0, -min.1);
        }
    }
    // common rational content, sign fixed by the first non-zero entry
    let mut den_lcm = BigInt::one();
    for p in &polys {
        for (_, c) in p.terms() {
            den_lcm = den_lcm.lcm(c.denom());
        }
    }
    let mut num_gcd = BigInt::zero();
    for p in &polys {
        for (_, c) in p.terms() {
            num_gcd = num_gcd.gcd(&(c.numer() * (&den_lcm / c.denom())));
        }
    }
    if num_gcd.is_zero() {
        return polys;
    }
    let mut k = Q::new(num_gcd, den_lcm);
    if polys.iter().find(|p| !p.is_zero()).is_some_and(|p| p.leading().unwrap().1.is_negative()) {
        k = -k;
    }
    let inv = k.recip();
    for p in polys.iter_mut() {
        *p = p.scale(&inv);
    }
    polys
}

/// Kernel of `S(n)` at the specialization `l`, over Q(r).
///
/// The rank is bounded below by exact elimination over Q at a random `r`.
/// Kernel vectors for that pivot pattern are then rebuilt over Q(r) from
/// exact kernels at sample points by rational reconstruction, and each is
/// checked symbolically against every conjugate, which bounds the rank from
/// above. If the two bounds fail to meet after a few attempts, the kernel
/// falls back to elimination directly over Q(r).
pub fn kernel_at(n: usize, l: &LValue) -> Result<KernelReport> {
    kernel_at_seeded(n, l, 0)
}

pub fn kernel_at_seeded(n: usize, l: &LValue, seed: u64) -> Result<KernelReport> {
    let mut sampler = PointSampler::new(seed, n);
    // Full rank at one point already settles a trivial kernel.
    let probe = loop {
        let r = sampler.admissible_r();
        let Ok(lv) = l.eval(&r) else { continue };
        if lv.is_zero() {
            continue;
        }
        if let Ok(rep) = Representation::at_point(n, lv, r) {
            break rep;
        }
    };
    let dim = probe.dim();
    if echelon_of(&sum_matrix(&probe)).rank() == dim {
        return Ok(KernelReport { n, l: l.clone(), rank: dim, k: 0, basis: vec![] });
    }

    let rep = Representation::at_l(n, l)?;
    let conj = all_conjugates(&rep);
    let s = sum_of(&conj, dim);
    for _ in 0..3 {
        let r0 = sampler.admissible_r();
        let Some(ech) = eval_echelon(&s, &r0) else { continue };
        if let Some(raw) = reconstruct_kernel(&s, &ech) {
            if check_annihilated(&conj, &raw).is_ok() {
                return Ok(report(n, l, &rep, ech.rank(), &raw));
            }
        }
    }
    let (rank, raw) = direct_kernel(&s);
    check_annihilated(&conj, &raw)?;
    Ok(report(n, l, &rep, rank, &raw))
}

/// Kernel by elimination directly over Q(r).
pub fn kernel_at_direct(n: usize, l: &LValue) -> Result<KernelReport> {
    let rep = Representation::at_l(n, l)?;
    let conj = all_conjugates(&rep);
    let (rank, raw) = direct_kernel(&sum_of(&conj, rep.dim()));
    check_annihilated(&conj, &raw)?;
    Ok(report(n, l, &rep, rank, &raw))
}

fn direct_kernel(s: &SparseMatrix<RationalFunction>) -> (usize, Vec<Vec<RationalFunction>>) {
    let ech = echelon_of(s);
    (ech.rank(), ech.kernel_basis())
}

fn echelon_of<F: Field>(s: &SparseMatrix<F>) -> Echelon<F> {
    let mut ech = Echelon::new(s.dim());
    for i in 0..s.dim() {
        ech.insert(s.row(i).clone());
    }
    ech
}

fn eval_echelon(s: &SparseMatrix<RationalFunction>, r: &Q) -> Option<Echelon<Q>> {
    let one = Q::one();
    let m = s.try_map(|x| x.eval(&one, r)).ok()?;
    Some(echelon_of(&m))
}

/// Terms `(exponent of r, residue)` of a numerator or denominator.
type ModTerms = Vec<(i32, u64)>;

/// `S` over Q(r) with every entry reduced mod `p`, as `(row, col, num, den)`.
struct ModEntries {
    p: Fp,
    entries: Vec<(usize, usize, ModTerms, ModTerms)>,
    min_exp: i32,
    max_exp: i32,
}

impl ModEntries {
    fn new(s: &SparseMatrix<RationalFunction>, p: Fp) -> Option<Self> {
        let (mut min_exp, mut max_exp) = (0, 0);
        let mut reduce = |x: &BiLaurentPoly| -> Option<Vec<(i32, u64)>> {
            x.terms()
                .map(|((_, e), c)| {
                    min_exp = min_exp.min(*e);
                    max_exp = max_exp.max(*e);
                    Some((*e, p.from_rational(c)?))
                })
                .collect()
        };
        let mut entries = vec![];
        for (i, j, x) in s.entries() {
            entries.push((i, j, reduce(x.numer())?, reduce(x.denom())?));
        }
        Some(ModEntries { p, entries, min_exp, max_exp })
    }

    /// Row-reduced echelon form of `S` at `r = x`.
    fn echelon_at(&self, x: u64, dim: usize) -> Option<(Vec<usize>, Vec<Vec<u64>>)> {
        let f = self.p;
        let xi = f.inv(x);
        let mut pow = std::collections::HashMap::new();
        let mut acc = 1;
        for e in 0..=self.max_exp {
            pow.insert(e, acc);
            acc = f.mul(acc, x);
        }
        acc = xi;
        for e in 1..=-self.min_exp {
            pow.insert(-e, acc);
            acc = f.mul(acc, xi);
        }
        let ev = |t: &[(i32, u64)]| t.iter().fold(0, |a, (e, c)| f.add(a, f.mul(*c, pow[e])));
        let mut m = vec![vec![0u64; dim]; dim];
        for (i, j, num, den) in &self.entries {
            let d = ev(den);
            if d == 0 {
                return None;
            }
            m[*i][*j] = f.mul(ev(num), f.inv(d));
        }
        let mut pivots = vec![];
        let mut row = 0;
        for c in 0..dim {
            let Some(k) = (row..dim).find(|&k| m[k][c] != 0) else { continue };
            m.swap(row, k);
            let inv = f.inv(m[row][c]);
            for v in m[row].iter_mut() {
                *v = f.mul(*v, inv);
            }
            let pivot_row = m[row].clone();
            for (k, other) in m.iter_mut().enumerate() {
                if k != row && other[c] != 0 {
                    let t = other[c];
                    for (o, pv) in other.iter_mut().zip(&pivot_row) {
                        *o = f.sub(*o, f.mul(t, *pv));
                    }
                }
            }
            pivots.push(c);
            row += 1;
        }
        m.truncate(row);
        Some((pivots, m))
    }
}

/// Kernel vectors mod `p` for the given pivot pattern, each pivot coordinate
/// as a rational function in `r` over F_p.
fn kernel_mod_p(
    s: &SparseMatrix<RationalFunction>,
    pivots: &[usize],
    free: &[usize],
    p: Fp,
) -> Option<Vec<Vec<ModRatFn>>> {
    const CHECKS: usize = 3;
    const MAX_POINTS: usize = 2048;
    let dim = s.dim();
    let me = ModEntries::new(s, p)?;
    let mut xs: Vec<u64> = vec![];
    let mut vals: Vec<Vec<u64>> = vec![];
    let mut next = 2u64;
    let mut want = 16;
    while want <= MAX_POINTS {
        while xs.len() < want + CHECKS {
            if next > 8 * MAX_POINTS as u64 {
                return None;
            }
            let x = next;
            next += 1;
            let Some((piv, rref)) = me.echelon_at(x, dim) else { continue };
            if piv != pivots {
                continue;
            }
            // coordinate of pivot row `a` in the vector for free column `f`
            xs.push(x);
            vals.push(
                free.iter()
                    .flat_map(|&fc| rref.iter().map(move |row| p.neg(row[fc])))
                    .collect(),
            );
        }
        let slots = free.len() * pivots.len();
        let fits: Option<Vec<ModRatFn>> = (0..slots)
            .into_par_iter()
            .map(|k| {
                let ys: Vec<u64> = vals.iter().map(|v| v[k]).collect();
                let (num, den) = reconstruct_mod(p, &xs[..want], &ys[..want])?;
                xs[want..]
                    .iter()
                    .zip(&ys[want..])
                    .all(|(&x, &y)| p.mul(poly_eval(p, &num, x), p.inv(poly_eval(p, &den, x))) == y
                        && poly_eval(p, &den, x) != 0)
                    .then_some((num, den))
            })
            .collect();
        if let Some(fits) = fits {
            return Some(fits.chunks(pivots.len()).map(|c| c.to_vec()).collect());
        }
        want *= 2;
    }
    None
}

/// Rebuild the kernel vectors of the pivot pattern of `reference` over Q(r)
/// from their images modulo several primes.
fn reconstruct_kernel(
    s: &SparseMatrix<RationalFunction>,
    reference: &Echelon<Q>,
) -> Option<Vec<Vec<RationalFunction>>> {
    const MAX_PRIMES: usize = 24;
    let dim = s.dim();
    let pivots = reference.pivot_columns();
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let mut modulus = BigInt::one();
    // per slot: lifted numerator and denominator coefficients
    let mut lifted: Vec<Vec<(Vec<BigInt>, Vec<BigInt>)>> = vec![];
    let mut previous: Option<Vec<Vec<RationalFunction>>> = None;
    for p in large_primes().take(MAX_PRIMES) {
        let Some(images) = kernel_mod_p(s, &pivots, &free, p) else { continue };
        let shape_matches = lifted.is_empty()
            || lifted.iter().zip(&images).all(|(a, b)| {
                a.iter().zip(b).all(|((n, d), (n2, d2))| n.len() == n2.len() && d.len() == d2.len())
            });
        if !shape_matches {
            continue;
        }
        if lifted.is_empty() {
            lifted = images
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|(n, d)| {
                            (n.iter().map(|&c| BigInt::from(c)).collect(), d.iter().map(|&c| BigInt::from(c)).collect())
                        })
                        .collect()
                })
                .collect();
        } else {
            for (lv, iv) in lifted.iter_mut().zip(&images) {
                for ((ln, ld), (n, d)) in lv.iter_mut().zip(iv) {
                    for (a, &b) in ln.iter_mut().zip(n).chain(ld.iter_mut().zip(d)) {
                        *a = crt(a, &modulus, b, p);
                    }
                }
            }
        }
        modulus *= BigInt::from(p.0);
        let candidate = lift(&lifted, &modulus, &pivots, &free, dim);
        if candidate.is_some() && candidate == previous {
            return candidate;
        }
        previous = candidate;
    }
    None
}

fn lift(
    lifted: &[Vec<(Vec<BigInt>, Vec<BigInt>)>],
    modulus: &BigInt,
    pivots: &[usize],
    free: &[usize],
    dim: usize,
) -> Option<Vec<Vec<RationalFunction>>> {
    let to_poly = |cs: &[BigInt]| -> Option<BiLaurentPoly> {
        let mut terms = vec![];
        for (k, c) in cs.iter().enumerate() {
            let q = rational_reconstruct(c, modulus)?;
            if !q.is_zero() {
                terms.push(((0, k as i32), q));
            }
        }
        Some(BiLaurentPoly::from_terms(terms))
    };
    lifted
        .iter()
        .zip(free)
        .map(|(slots, &fc)| {
            let mut v = vec![RationalFunction::zero(); dim];
            v[fc] = RationalFunction::one();
            for ((n, d), &pc) in slots.iter().zip(pivots) {
                v[pc] = RationalFunction::new(to_poly(n)?, to_poly(d)?).ok()?;
            }
            Some(v)
        })
        .collect()
}

fn report(
    n: usize,
    l: &LValue,
    rep: &Representation<RationalFunction>,
    rank: usize,
    raw: &[Vec<RationalFunction>],
) -> KernelReport {
    let basis = raw
        .iter()
        .map(|v| {
            normalize_vector(v)
                .into_iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(k, p)| (rep.basis().label(k), p))
                .collect()
        })
        .collect();
    KernelReport { n, l: l.clone(), rank, k: raw.len(), basis }
}

fn check_annihilated<F: Field>(conj: &[SparseMatrix<F>], vecs: &[Vec<F>]) -> Result<()> {
    let bad = vecs.par_iter().enumerate().find_any(|(_, v)| {
        conj.iter().any(|c| c.mul_vec(v).iter().any(|x| !x.is_zero()))
    });
    match bad {
        Some((k, _)) => Err(Error::InvalidArgument(format!(
            "kernel vector {k} is not annihilated by every conjugate"
        ))),
        None => Ok(()),
    }
}

/// Kernel dimension of `S(n)` at a rational point.
pub fn kernel_dim_at_point(n: usize, l: &Q, r: &Q) -> Result<usize> {
    let rep = Representation::at_point(n, l.clone(), r.clone())?;
    Ok(rep.dim() - echelon_of(&sum_matrix(&rep)).rank())
}

/// Check that `S(n)` kills `g_k x` for every kernel basis vector `x`, every
/// `k`, and also for a seeded random combination of the basis vectors.
pub fn verify_kernel_translates(n: usize, l: &LValue, seed: u64) -> Result<bool> {
    let report = kernel_at(n, l)?;
    if report.k == 0 {
        return Err(Error::InvalidArgument(format!("kernel at l = {l} is trivial")));
    }
    let rep = Representation::at_l(n, l)?;
    let mut vecs = report.dense_basis(rep.dim(), rep.basis());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut combo = vec![RationalFunction::zero(); rep.dim()];
    for v in &vecs {
        let c = RationalFunction::from_int(rng.gen_range(-5..=5));
        for (a, b) in combo.iter_mut().zip(v) {
            *a = &*a + &(&c * b);
        }
    }
    vecs.push(combo);
    Ok(translates_stay_in_kernel(&rep, &vecs))
}

/// `S(n)·(g_k·x) = 0` for all given vectors and all generators.
pub fn translates_stay_in_kernel<F: Field>(rep: &Representation<F>, vecs: &[Vec<F>]) -> bool {
    let s = sum_of(&all_conjugates(rep), rep.dim());
    vecs.par_iter().all(|x| {
        (1..=rep.n()).all(|k| {
            let y = rep.g(k).mul_vec(x);
            s.mul_vec(&y).iter().all(|c| c.is_zero())
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(s: &str) -> LValue {
        s.parse().unwrap()
    }

    #[test]
    fn modular_kernel_agrees_with_direct_elimination() {
        for l in ["r^-5", "r^3", "-r^3", "r^-1", "-r^-3"] {
            let fast = kernel_at(5, &lv(l)).unwrap();
            let slow = kernel_at_direct(5, &lv(l)).unwrap();
            assert_eq!((fast.rank, fast.k), (slow.rank, slow.k), "l = {l}");
            assert_eq!(fast.basis, slow.basis, "l = {l}");
        }
    }

    #[test]
    fn kernel_dimensions_for_rank_four() {
        let dims: Vec<usize> = ["r^-9", "r^-1", "-r^-3", "r^3", "-r^3"]
            .iter()
            .map(|l| kernel_at(4, &lv(l)).unwrap().k)
            .collect();
        let direct: Vec<usize> = ["r^-9", "r^-1", "-r^-3", "r^3", "-r^3"]
            .iter()
            .map(|l| kernel_at_direct(4, &lv(l)).unwrap().k)
            .collect();
        assert_eq!(dims, direct);
        assert!(dims.iter().all(|&k| k > 0));
    }

    #[test]
    fn generic_l_has_trivial_kernel() {
        let rep = kernel_at(5, &lv("2*r^3")).unwrap();
        assert_eq!((rep.rank, rep.k), (20, 0));
    }

    #[test]
    fn normalization_is_idempotent() {
        let v: Vec<RationalFunction> =
            ["(2*r)/(r^2 - 1)", "0", "-4/(r - 1)", "6*r^-3"].iter().map(|s| s.parse().unwrap()).collect();
        let once = normalize_vector(&v);
        let again = normalize_vector(&once.iter().cloned().map(RationalFunction::from_poly).collect::<Vec<_>>());
        assert_eq!(once, again);
        assert!(once[0].leading().unwrap().1.is_positive());
    }

    #[test]
    fn kernel_translates_at_inverse_r() {
        assert!(verify_kernel_translates(5, &lv("r^-1"), 3).unwrap());
        assert!(verify_kernel_translates(5, &lv("2*r"), 3).is_err());
    }
}
