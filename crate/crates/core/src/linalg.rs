//! Sparse matrices and exact elimination over any [`Field`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::modp::{crt, det_mod, interpolate, large_primes, Fp};
use crate::field::{BiLaurentPoly, Field};

/// Square sparse matrix acting on column vectors: column `c` holds the image
/// of basis vector `c`. Stored row-major; zeros are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseMatrix<F> {
    dim: usize,
    rows: Vec<BTreeMap<usize, F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zero(dim: usize) -> Self {
        SparseMatrix { dim, rows: vec![BTreeMap::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, F::one())
    }

    pub fn scalar(dim: usize, c: F) -> Self {
        let mut m = Self::zero(dim);
        if !c.is_zero() {
            for i in 0..dim {
                m.rows[i].insert(i, c.clone());
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> F {
        self.rows[row].get(&col).cloned().unwrap_or_else(F::zero)
    }

    pub fn set(&mut self, row: usize, col: usize, v: F) {
        if v.is_zero() {
            self.rows[row].remove(&col);
        } else {
            self.rows[row].insert(col, v);
        }
    }

    /// `self[row][col] += v`.
    pub fn add_to(&mut self, row: usize, col: usize, v: &F) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(row, col);
        self.set(row, col, cur.add_ref(v));
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, F> {
        &self.rows[i]
    }

    /// Non-zero entries of column `c` as `(row, value)`.
    pub fn column(&self, c: usize) -> Vec<(usize, F)> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.get(&c).map(|v| (i, v.clone())))
            .collect()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, v) in o.entries() {
            out.add_to(i, j, v);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, v) in o.entries() {
            out.add_to(i, j, &-v.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        SparseMatrix {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|(j, v)| (*j, v.mul_ref(c))).collect())
                .collect(),
        }
    }

    fn mul_row(&self, row: &BTreeMap<usize, F>, o: &Self) -> BTreeMap<usize, F> {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (k, a) in row {
            for (j, b) in &o.rows[*k] {
                let p = a.mul_ref(b);
                match acc.get_mut(j) {
                    Some(x) => *x = x.add_ref(&p),
                    None => {
                        acc.insert(*j, p);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        acc
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        SparseMatrix {
            dim: self.dim,
            rows: self.rows.iter().map(|r| self.mul_row(r, o)).collect(),
        }
    }

    /// Product with rows computed in parallel.
    pub fn par_mul(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        SparseMatrix {
            dim: self.dim,
            rows: self.rows.par_iter().map(|r| self.mul_row(r, o)).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        self.rows
            .iter()
            .map(|r| {
                let mut acc = F::zero();
                for (j, a) in r {
                    if !v[*j].is_zero() {
                        acc = acc.add_ref(&a.mul_ref(&v[*j]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, r) in self.rows.iter().enumerate() {
            if v[i].is_zero() {
                continue;
            }
            for (j, a) in r {
                out[*j] = out[*j].add_ref(&v[i].mul_ref(a));
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (i, j, v) in self.entries() {
            out.rows[j].insert(i, v.clone());
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![F::zero(); self.dim];
                for (j, v) in r {
                    d[*j] = v.clone();
                }
                d
            })
            .collect()
    }

    pub fn from_dense(d: &[Vec<F>]) -> Self {
        let mut m = Self::zero(d.len());
        for (i, row) in d.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Apply a fallible map to every entry.
    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<SparseMatrix<G>> {
        let mut out = SparseMatrix::zero(self.dim);
        for (i, j, v) in self.entries() {
            out.set(i, j, f(v)?);
        }
        Ok(out)
    }
}

/// Row echelon form built one row at a time. Rows are sparse `(col, value)`
/// lists; each stored row has leading coefficient 1.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ncols: usize,
    pivots: BTreeMap<usize, BTreeMap<usize, F>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Remainder of `row` after reduction by the stored pivots.
    pub fn reduce(&self, row: BTreeMap<usize, F>) -> BTreeMap<usize, F> {
        let mut row = row;
        row.retain(|_, v| !v.is_zero());
        let mut cursor = 0;
        loop {
            let next = row
                .range(cursor..)
                .map(|(c, _)| *c)
                .find(|c| self.pivots.contains_key(c));
            let Some(c) = next else { break };
            let f = row.remove(&c).unwrap();
            for (j, v) in self.pivots[&c].iter().skip(1) {
                let p = f.mul_ref(v);
                match row.get_mut(j) {
                    Some(x) => {
                        *x = x.sub_ref(&p);
                        if x.is_zero() {
                            row.remove(j);
                        }
                    }
                    None => {
                        row.insert(*j, -p);
                    }
                }
            }
            cursor = c + 1;
        }
        row
    }

    /// Insert a row; returns whether it increased the rank.
    pub fn insert(&mut self, row: BTreeMap<usize, F>) -> bool {
        let rem = self.reduce(row);
        let Some((&c, lead)) = rem.iter().next() else {
            return false;
        };
        let inv = lead.try_inv().expect("non-zero leading coefficient");
        let normalized: BTreeMap<usize, F> = rem
            .iter()
            .map(|(j, v)| (*j, if *j == c { F::one() } else { v.mul_ref(&inv) }))
            .collect();
        self.pivots.insert(c, normalized);
        true
    }

    pub fn insert_dense(&mut self, row: &[F]) -> bool {
        self.insert(dense_to_sparse(row))
    }

    pub fn contains(&self, row: &[F]) -> bool {
        self.reduce(dense_to_sparse(row)).is_empty()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Basis of the null space of the inserted rows: one vector per free
    /// column `f`, with a 1 at `f` and zeros at the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![F::zero(); self.ncols];
                x[f] = F::one();
                for (&p, row) in self.pivots.iter().rev() {
                    let mut s = F::zero();
                    for (j, v) in row.iter().skip(1) {
                        if !x[*j].is_zero() {
                            s = s.add_ref(&v.mul_ref(&x[*j]));
                        }
                    }
                    x[p] = -s;
                }
                x
            })
            .collect()
    }
}

pub fn dense_to_sparse<F: Field>(row: &[F]) -> BTreeMap<usize, F> {
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(j, v)| (j, v.clone()))
        .collect()
}

/// Rank of a dense matrix.
pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert_dense(r);
        if e.rank() == ncols {
            break;
        }
    }
    e.rank()
}

/// Null space basis of a dense matrix (see [`Echelon::kernel_basis`]).
pub fn kernel<F: Field>(rows: &[Vec<F>]) -> Vec<Vec<F>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert_dense(r);
    }
    e.kernel_basis()
}

/// Determinant by Gaussian elimination, choosing the lightest pivot.
pub fn det<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut d = F::one();
    for k in 0..n {
        let p = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].weight());
        let Some(p) = p else { return F::zero() };
        if p != k {
            a.swap(p, k);
            d = -d;
        }
        let piv = a[k][k].clone();
        d = d.mul_ref(&piv);
        let inv = piv.try_inv().expect("non-zero pivot");
        let (top, bottom) = a.split_at_mut(k + 1);
        let prow = &top[k];
        for row in bottom.iter_mut() {
            if row[k].is_zero() {
                continue;
            }
            let f = row[k].mul_ref(&inv);
            for j in k..n {
                if !prow[j].is_zero() {
                    row[j] = row[j].sub_ref(&f.mul_ref(&prow[j]));
                }
            }
        }
    }
    d
}

/// Fraction-free (Bareiss) determinant of a matrix of Laurent polynomials.
///
/// Pivots are chosen among the rows with a non-zero entry in the current
/// column by minimal term count. Every division is exact.
pub fn bareiss_det(m: &[Vec<BiLaurentPoly>]) -> Result<BiLaurentPoly> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("matrix must be square".into()));
    }
    let mut a: Vec<Vec<BiLaurentPoly>> = m.to_vec();
    let mut sign = false;
    let mut prev = BiLaurentPoly::one();
    for k in 0..n {
        let p = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].num_terms());
        let Some(p) = p else { return Ok(BiLaurentPoly::zero()) };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let prow = &top[k];
        let piv = &prow[k];
        let prev_ref = &prev;
        bottom.par_iter_mut().for_each(|row| {
            for j in k + 1..n {
                let t = piv.mul(&row[j]).sub(&row[k].mul(&prow[j]));
                row[j] = t
                    .div_exact(prev_ref)
                    .expect("Bareiss division is exact");
            }
            row[k] = BiLaurentPoly::zero();
        });
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { d.neg() } else { d })
}

/// One row of a determinant computation: per column, the terms
/// `(l-exponent, r-exponent, integer coefficient)` of a polynomial.
type IntRow = Vec<(usize, Vec<(usize, usize, BigInt)>)>;

/// Determinant of a matrix of Laurent polynomials by evaluation on a grid
/// of points modulo word-sized primes, interpolation in `l` then `r`, and
/// Chinese remaindering.
///
/// Each row is shifted to a polynomial with integer coefficients. The sums
/// of the row degrees bound the degrees of the determinant, and the product
/// of the rows' coefficient 1-norms bounds its coefficients, so the primes
/// used always suffice and the result is exact.
pub fn modular_det(m: &[Vec<BiLaurentPoly>]) -> Result<BiLaurentPoly> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("matrix must be square".into()));
    }
    let mut rows: Vec<IntRow> = Vec::with_capacity(n);
    let (mut shift_l, mut shift_r) = (0i32, 0i32);
    let (mut deg_l, mut deg_r) = (0usize, 0usize);
    let mut denom = BigInt::one();
    let mut bound = BigInt::one();
    for row in m {
        let nz: Vec<(usize, &BiLaurentPoly)> = row.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        if nz.is_empty() {
            return Ok(BiLaurentPoly::zero());
        }
        let lo = nz.iter().map(|(_, x)| x.min_exponents()).reduce(|a, b| (a.0.min(b.0), a.1.min(b.1))).unwrap();
        let hi = nz.iter().map(|(_, x)| x.max_exponents()).reduce(|a, b| (a.0.max(b.0), a.1.max(b.1))).unwrap();
        let lcm = nz
            .iter()
            .flat_map(|(_, x)| x.terms().map(|(_, c)| c.denom().clone()))
            .fold(BigInt::one(), |a, d| a.lcm(&d));
        let mut norm = BigInt::zero();
        let int_row: IntRow = nz
            .iter()
            .map(|(j, x)| {
                let terms = x
                    .terms()
                    .map(|(&(a, b), c)| {
                        let k = (c * BigRational::from_integer(lcm.clone())).to_integer();
                        norm += k.abs();
                        ((a - lo.0) as usize, (b - lo.1) as usize, k)
                    })
                    .collect();
                (*j, terms)
            })
            .collect();
        rows.push(int_row);
        bound *= norm;
        denom *= lcm;
        shift_l += lo.0;
        shift_r += lo.1;
        deg_l += (hi.0 - lo.0) as usize;
        deg_r += (hi.1 - lo.1) as usize;
    }
    let target = bound * 2;
    let width = deg_r + 1;
    let mut acc = vec![BigInt::zero(); (deg_l + 1) * width];
    let mut modulus = BigInt::one();
    for p in large_primes() {
        if modulus > target {
            break;
        }
        let residues = det_grid_mod(p, &rows, deg_l, deg_r);
        for (a, &b) in acc.iter_mut().zip(&residues) {
            *a = crt(a, &modulus, b, p);
        }
        modulus *= BigInt::from(p.0);
    }
    let half = &modulus / 2;
    let terms = acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| {
        let c = if c > half { c - &modulus } else { c };
        let e = ((k / width) as i32 + shift_l, (k % width) as i32 + shift_r);
        (e, BigRational::new(c, denom.clone()))
    });
    Ok(BiLaurentPoly::from_terms(terms))
}

type ModRow = Vec<(usize, Vec<(usize, usize, u64)>)>;

/// Coefficients mod `p` of the shifted determinant, indexed by
/// `a·(deg_r + 1) + b` for the monomial `l^a r^b`.
fn det_grid_mod(p: Fp, rows: &[IntRow], deg_l: usize, deg_r: usize) -> Vec<u64> {
    let n = rows.len();
    let reduced: Vec<ModRow> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|(j, ts)| (*j, ts.iter().map(|(a, b, c)| (*a, *b, p.from_bigint(c))).collect()))
                .collect()
        })
        .collect();
    let max_b = reduced.iter().flatten().flat_map(|(_, ts)| ts.iter().map(|t| t.1)).max().unwrap_or(0);
    let xs_l: Vec<u64> = (1..=deg_l as u64 + 1).collect();
    let xs_r: Vec<u64> = (1..=deg_r as u64 + 1).collect();
    // for each value of r, the determinant as a polynomial in l
    let by_r: Vec<Vec<u64>> = xs_r
        .par_iter()
        .map(|&rv| {
            let mut rpow = vec![1u64; max_b + 1];
            for b in 1..=max_b {
                rpow[b] = p.mul(rpow[b - 1], rv);
            }
            let in_l: Vec<Vec<(usize, Vec<u64>)>> = reduced
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|(j, ts)| {
                            let da = ts.iter().map(|t| t.0).max().unwrap_or(0);
                            let mut c = vec![0u64; da + 1];
                            for &(a, b, k) in ts {
                                c[a] = p.add(c[a], p.mul(k, rpow[b]));
                            }
                            (*j, c)
                        })
                        .collect()
                })
                .collect();
            let vals: Vec<u64> = xs_l
                .iter()
                .map(|&lv| {
                    let mut a = vec![vec![0u64; n]; n];
                    for (i, row) in in_l.iter().enumerate() {
                        for (j, c) in row {
                            a[i][*j] = c.iter().rev().fold(0, |acc, &x| p.add(p.mul(acc, lv), x));
                        }
                    }
                    det_mod(p, &mut a)
                })
                .collect();
            interpolate(p, &xs_l, &vals).expect("distinct nodes")
        })
        .collect();
    let mut out = vec![0u64; (deg_l + 1) * (deg_r + 1)];
    for a in 0..=deg_l {
        let ys: Vec<u64> = by_r.iter().map(|c| c[a]).collect();
        let cs = interpolate(p, &xs_r, &ys).expect("distinct nodes");
        out[a * (deg_r + 1)..(a + 1) * (deg_r + 1)].copy_from_slice(&cs);
    }
    out
}
