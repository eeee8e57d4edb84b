//! The faithful representation of the BMW algebra of type D_n: basis, generator matrices and the
//! defining relations.

mod basis;
mod relations;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::json;

use crate::error::{Error, Result};
use crate::field::{Field, LValue, RationalFunction, Q};
use crate::linalg::SparseMatrix;

pub use basis::{basis, BasisIndex, RootLabel};
pub use relations::{check_relations, verify_relations, verify_relations_at_points, RelationCheck, RelationReport};

/// Matrix over Q(l, r).
pub type RepMatrix = SparseMatrix<RationalFunction>;

/// The matrices of `g_i`, `g_i^{-1}` and `e_i` for one rank `n`, over a
/// field in which `l` and `r` have been given values.
#[derive(Clone, Debug)]
pub struct Representation<F: Field> {
    basis: BasisIndex,
    l: F,
    r: F,
    m: F,
    loop_value: F,
    g: Vec<SparseMatrix<F>>,
    g_inv: Vec<SparseMatrix<F>>,
    e: Vec<SparseMatrix<F>>,
}

/// Cache of `r^k` for the exponents the formulas need.
struct Powers<F> {
    offset: i32,
    vals: Vec<F>,
}

impl<F: Field> Powers<F> {
    fn new(r: &F, bound: i32) -> Result<Self> {
        let inv = r.try_inv()?;
        let mut vals = vec![F::one(); (2 * bound + 1) as usize];
        for k in 1..=bound as usize {
            vals[bound as usize + k] = vals[bound as usize + k - 1].mul_ref(r);
            vals[bound as usize - k] = vals[bound as usize - k + 1].mul_ref(&inv);
        }
        Ok(Powers { offset: bound, vals })
    }

    fn get(&self, k: i32) -> &F {
        &self.vals[(k + self.offset) as usize]
    }
}

impl<F: Field> Representation<F> {
    /// Build the representation with the given values of `l` and `r`.
    ///
    /// Fails if `l` or `r` is zero or `r² = 1` (then `m = 1/r - r` vanishes
    /// and `e_i` is undefined).
    pub fn new(n: usize, l: F, r: F) -> Result<Self> {
        let basis = BasisIndex::new(n)?;
        if l.is_zero() || r.is_zero() {
            return Err(Error::InvalidArgument("l and r must be non-zero".into()));
        }
        let m = r.try_inv()?.sub_ref(&r);
        if m.is_zero() {
            return Err(Error::InvalidArgument("r^2 = 1 makes m vanish".into()));
        }
        let l_inv = l.try_inv()?;
        let loop_value = F::one().sub_ref(&l.sub_ref(&l_inv).try_div(&m)?);
        let pw = Powers::new(&r, 4 * n as i32)?;
        let mut g = vec![first_generator(&basis, &l_inv, &r, &m, &pw)];
        for k in 2..=n {
            g.push(later_generator(&basis, k, &l_inv, &r, &m, &pw));
        }
        let mut rep = Representation {
            basis,
            l,
            r,
            m,
            loop_value,
            g,
            g_inv: vec![],
            e: vec![],
        };
        rep.derive_all()?;
        Ok(rep)
    }

    fn derive_all(&mut self) -> Result<()> {
        let n = self.n();
        self.e = Vec::with_capacity(n);
        self.g_inv = Vec::with_capacity(n);
        let dim = self.dim();
        let coef = self.l.try_div(&self.m)?;
        let id = SparseMatrix::identity(dim);
        for g in &self.g {
            let quad = g.mul(g).add(&g.scale(&self.m)).sub(&id);
            let e = quad.scale(&coef);
            let gi = g.sub(&e.scale(&self.m)).add(&SparseMatrix::scalar(dim, self.m.clone()));
            self.e.push(e);
            self.g_inv.push(gi);
        }
        Ok(())
    }

    /// Replace `g_i` (1-based) and recompute `e_i` and `g_i^{-1}` from it.
    /// Used to check that the relation suite notices a wrong matrix.
    pub fn replace_generator(&mut self, i: usize, g: SparseMatrix<F>) -> Result<()> {
        self.check_index(i)?;
        self.g[i - 1] = g;
        self.derive_all()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n() {
            return Err(Error::InvalidArgument(format!(
                "generator index {i} outside 1..={}",
                self.n()
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &BasisIndex {
        &self.basis
    }

    pub fn l(&self) -> &F {
        &self.l
    }

    pub fn r(&self) -> &F {
        &self.r
    }

    /// `m = 1/r - r`.
    pub fn m(&self) -> &F {
        &self.m
    }

    /// `δ = 1 - (l - 1/l)/m`.
    pub fn loop_value(&self) -> &F {
        &self.loop_value
    }

    /// Matrix of `g_i`, 1-based.
    pub fn g(&self, i: usize) -> &SparseMatrix<F> {
        &self.g[i - 1]
    }

    pub fn g_inv(&self, i: usize) -> &SparseMatrix<F> {
        &self.g_inv[i - 1]
    }

    pub fn e(&self, i: usize) -> &SparseMatrix<F> {
        &self.e[i - 1]
    }

    pub fn try_g(&self, i: usize) -> Result<&SparseMatrix<F>> {
        self.check_index(i)?;
        Ok(self.g(i))
    }

    pub fn try_g_inv(&self, i: usize) -> Result<&SparseMatrix<F>> {
        self.check_index(i)?;
        Ok(self.g_inv(i))
    }

    pub fn try_e(&self, i: usize) -> Result<&SparseMatrix<F>> {
        self.check_index(i)?;
        Ok(self.e(i))
    }

    /// Unit vector for a label.
    pub fn unit(&self, l: RootLabel) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        v[self.basis.index_of(l).expect("label in range")] = F::one();
        v
    }
}

/// Action of `g_1`.
fn first_generator<F: Field>(
    b: &BasisIndex,
    l_inv: &F,
    r: &F,
    m: &F,
    pw: &Powers<F>,
) -> SparseMatrix<F> {
    let mut g = SparseMatrix::zero(b.len());
    let w = |i, j| b.idx(i, j, false);
    let wh = |i, j| b.idx(i, j, true);
    let m2 = m.mul_ref(m);
    for (c, lab) in b.labels().iter().enumerate() {
        let (i, j, hat) = (lab.i, lab.j, lab.hatted);
        let (ii, jj) = (i as i32, j as i32);
        let mut put = |row: usize, v: F| g.add_to(row, c, &v);
        if hat && i >= 3 {
            // the correction terms all come in pairs ŵ - w
            let pairs = [
                ((1, i), m.mul_ref(pw.get(jj - 5))),
                ((2, i), m.mul_ref(pw.get(jj - 4))),
                ((1, j), m.mul_ref(pw.get(ii - 3))),
                ((2, j), m.mul_ref(pw.get(ii - 2))),
                ((1, 2), m2.mul_ref(&pw.get(ii + jj - 8).add_ref(pw.get(ii + jj - 6)))),
            ];
            for ((a, bb), k) in pairs {
                put(wh(a, bb), k.clone());
                put(w(a, bb), -k);
            }
            put(c, r.clone());
        } else if hat && i == 1 && j >= 3 {
            put(w(2, j), F::one());
        } else if hat && i == 2 {
            put(w(1, j), F::one());
            put(w(1, 2), m.mul_ref(pw.get(jj - 3)));
            put(w(2, j), -m.clone());
        } else if !hat && i == 2 {
            put(wh(1, j), F::one());
            put(wh(1, 2), m.mul_ref(pw.get(jj - 3)));
            put(w(2, j), -m.clone());
        } else if !hat && i == 1 && j >= 3 {
            let k = m.mul_ref(pw.get(jj - 4));
            put(wh(2, j), F::one());
            put(wh(1, 2), k.clone());
            put(w(1, 2), -k);
            put(wh(1, j), m.clone());
            put(w(1, j), -m.clone());
        } else if hat && i == 1 && j == 2 {
            put(c, l_inv.clone());
        } else {
            put(c, r.clone());
        }
    }
    g
}

/// Action of `g_k` for `k ≥ 2`.
fn later_generator<F: Field>(
    b: &BasisIndex,
    k: usize,
    l_inv: &F,
    r: &F,
    m: &F,
    pw: &Powers<F>,
) -> SparseMatrix<F> {
    let mut g = SparseMatrix::zero(b.len());
    let w_prev = b.idx(k - 1, k, false);
    let ml = m.mul_ref(l_inv);
    for (c, lab) in b.labels().iter().enumerate() {
        let (s, t, hat) = (lab.i, lab.j, lab.hatted);
        let (si, ti, ki) = (s as i32, t as i32, k as i32);
        let mut put = |row: usize, v: F| g.add_to(row, c, &v);
        if s == k - 1 && t > k {
            put(b.idx(k, t, hat), F::one());
        } else if t == k - 1 && s < k - 1 {
            put(b.idx(s, k, hat), F::one());
        } else if s == k - 1 && t == k {
            put(c, if hat { r.clone() } else { l_inv.clone() });
        } else if s == k && t > k {
            if hat {
                put(b.idx(k - 1, t, true), F::one());
                put(w_prev, ml.mul_ref(pw.get(ti - ki - 2)));
            } else {
                put(b.idx(k - 1, t, false), F::one());
                put(w_prev, m.mul_ref(pw.get(ti - ki - 1)));
            }
            put(c, -m.clone());
        } else if t == k && s + 2 <= k {
            put(b.idx(s, k - 1, hat), F::one());
            put(w_prev, ml.mul_ref(pw.get(-(ki - si - 2))));
            put(c, -m.clone());
        } else {
            put(c, r.clone());
        }
    }
    g
}

impl Representation<RationalFunction> {
    /// Over Q(l, r) with `l`, `r` indeterminate.
    pub fn generic(n: usize) -> Result<Self> {
        Self::new(n, RationalFunction::l(), RationalFunction::r())
    }

    /// Over Q(r) with `l := c·r^k`.
    pub fn at_l(n: usize, lv: &LValue) -> Result<Self> {
        Self::new(n, lv.to_rational_function(), RationalFunction::r())
    }
}

impl Representation<Q> {
    /// Over Q at a rational point.
    pub fn at_point(n: usize, l: Q, r: Q) -> Result<Self> {
        Self::new(n, l, r)
    }
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<Representation<RationalFunction>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Representation<RationalFunction>>>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The generic representation of rank `n`, built once and shared.
pub fn generic(n: usize) -> Result<Arc<Representation<RationalFunction>>> {
    if let Some(rep) = cache().lock().unwrap().get(&n) {
        return Ok(rep.clone());
    }
    let rep = Arc::new(Representation::generic(n)?);
    Ok(cache().lock().unwrap().entry(n).or_insert(rep).clone())
}

pub fn nu_g(n: usize, i: usize) -> Result<RepMatrix> {
    Ok(generic(n)?.try_g(i)?.clone())
}

pub fn nu_e(n: usize, i: usize) -> Result<RepMatrix> {
    Ok(generic(n)?.try_e(i)?.clone())
}

pub fn nu_g_inv(n: usize, i: usize) -> Result<RepMatrix> {
    Ok(generic(n)?.try_g_inv(i)?.clone())
}

/// `{"n", "labels", "entries": [[row, col, "value"], ...]}`.
pub fn matrix_json<F: Field>(basis: &BasisIndex, m: &SparseMatrix<F>) -> serde_json::Value {
    let labels: Vec<String> = basis.labels().iter().map(|l| l.to_string()).collect();
    let entries: Vec<serde_json::Value> = m
        .entries()
        .map(|(i, j, v)| json!([i, j, v.to_string()]))
        .collect();
    json!({ "n": basis.n(), "labels": labels, "entries": entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    fn rf(s: &str) -> RationalFunction {
        s.parse().unwrap()
    }

    #[test]
    fn documented_columns() {
        let rep = Representation::generic(5).unwrap();
        let b = rep.basis();
        let c = b.idx(1, 2, true);
        assert_eq!(rep.g(1).column(c), vec![(c, rf("l^-1"))]);
        let c = b.idx(2, 3, false);
        assert_eq!(rep.g(3).column(c), vec![(c, rf("l^-1"))]);
        let c = b.idx(1, 2, true);
        assert_eq!(rep.g(4).column(c), vec![(c, rf("r"))]);
    }

    #[test]
    fn e_has_rank_one_with_expected_image() {
        let rep = Representation::generic(4).unwrap();
        let b = rep.basis();
        for i in 1..=4 {
            let e = rep.e(i);
            let rows: Vec<usize> = (0..rep.dim()).filter(|&k| !e.row(k).is_empty()).collect();
            let expect = if i == 1 { b.idx(1, 2, true) } else { b.idx(i - 1, i, false) };
            assert_eq!(rows, vec![expect], "image of e_{i}");
        }
    }

    #[test]
    fn inverse_of_first_generator_on_w12_hat() {
        let rep = Representation::generic(4).unwrap();
        let c = rep.basis().idx(1, 2, true);
        assert_eq!(rep.g_inv(1).column(c), vec![(c, rf("l"))]);
    }

    #[test]
    fn numeric_inverse_is_exact() {
        let rep = Representation::at_point(4, q(3, 1), q(2, 1)).unwrap();
        for i in 1..=4 {
            assert_eq!(rep.g(i).mul(rep.g_inv(i)), SparseMatrix::identity(12));
        }
    }

    #[test]
    fn degenerate_parameters_rejected() {
        assert!(Representation::at_point(4, q(1, 1), q(1, 1)).is_err());
        assert!(Representation::at_point(4, q(0, 1), q(2, 1)).is_err());
        assert!(Representation::generic(3).is_err());
    }

    #[test]
    fn json_shape() {
        let rep = Representation::generic(4).unwrap();
        let j = matrix_json(rep.basis(), rep.g(2));
        assert_eq!(j["n"], 4);
        assert_eq!(j["labels"].as_array().unwrap().len(), 12);
        assert_eq!(j["labels"][1], "wh_1_2");
    }
}
