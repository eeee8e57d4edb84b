use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::SparseMatrix;
use crate::rep::{Representation, RootLabel};

/// Which conjugate of an `e_k`: `C_ij` or, when `hatted`, `Ĉ_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ConjugateSpec {
    pub i: usize,
    pub j: usize,
    pub hatted: bool,
}

impl ConjugateSpec {
    pub fn new(i: usize, j: usize, hatted: bool) -> Self {
        ConjugateSpec { i, j, hatted }
    }

    /// The basis vector spanning the image of this conjugate.
    pub fn label(&self) -> RootLabel {
        RootLabel { i: self.i, j: self.j, hatted: self.hatted }
    }

    /// `(X, k)` with the conjugate equal to `X e_k X⁻¹`, where `X` is the
    /// product of the listed generators from left to right.
    pub fn word(&self) -> (Vec<usize>, usize) {
        let (i, j) = (self.i, self.j);
        match (self.hatted, i) {
            (false, _) if j == i + 1 => (vec![], j),
            (false, _) => (down(j, i + 2), i + 1),
            (true, 1) if j == 2 => (vec![], 1),
            (true, 1) => (down(j, 3), 1),
            (true, _) => {
                let mut w = down(i, 2);
                w.extend(down(j, 3));
                (w, 1)
            }
        }
    }
}

/// `s, s-1, …, t` for `s ≥ t`.
fn down(s: usize, t: usize) -> Vec<usize> {
    (t..=s).rev().collect()
}

/// All conjugates in basis order, so that conjugate `c` has image along
/// basis vector `c`.
pub fn all_specs(n: usize) -> Vec<ConjugateSpec> {
    let mut out = Vec::with_capacity(n * (n - 1));
    for j in 2..=n {
        for i in 1..j {
            out.push(ConjugateSpec::new(i, j, false));
            out.push(ConjugateSpec::new(i, j, true));
        }
    }
    out
}

/// `g_{s,t}`: the product `g_s g_{s∓1} ⋯ g_t`, or with every factor inverted
/// when `starred`.
pub fn g_path<F: Field>(
    rep: &Representation<F>,
    s: usize,
    t: usize,
    starred: bool,
) -> Result<SparseMatrix<F>> {
    let n = rep.n();
    if s == 0 || t == 0 || s > n || t > n {
        return Err(Error::InvalidArgument(format!("path {s}..{t} outside 1..={n}")));
    }
    let idx: Vec<usize> = if s >= t { (t..=s).rev().collect() } else { (s..=t).collect() };
    let mut acc = SparseMatrix::identity(rep.dim());
    for k in idx {
        let g = if starred { rep.g_inv(k) } else { rep.g(k) };
        acc = acc.mul(g);
    }
    Ok(acc)
}

/// The conjugate matrix, built by conjugating `e_k` one generator at a time.
pub fn c_matrix<F: Field>(rep: &Representation<F>, spec: ConjugateSpec) -> Result<SparseMatrix<F>> {
    let n = rep.n();
    if !(1 <= spec.i && spec.i < spec.j && spec.j <= n) {
        return Err(Error::InvalidArgument(format!(
            "conjugate ({}, {}) outside rank {n}",
            spec.i, spec.j
        )));
    }
    let (word, k) = spec.word();
    let mut m = rep.e(k).clone();
    for &g in word.iter().rev() {
        m = rep.g(g).mul(&m).mul(rep.g_inv(g));
    }
    Ok(m)
}

/// Every conjugate, in basis order.
pub fn all_conjugates<F: Field>(rep: &Representation<F>) -> Vec<SparseMatrix<F>> {
    all_specs(rep.n())
        .into_par_iter()
        .map(|s| c_matrix(rep, s).expect("spec in range"))
        .collect()
}

/// Sum of all `n(n-1)` conjugates.
pub fn sum_matrix<F: Field>(rep: &Representation<F>) -> SparseMatrix<F> {
    sum_of(&all_conjugates(rep), rep.dim())
}

pub fn sum_of<F: Field>(conj: &[SparseMatrix<F>], dim: usize) -> SparseMatrix<F> {
    conj.iter().fold(SparseMatrix::zero(dim), |acc, c| acc.add(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, Q};
    use crate::linalg::rank;

    fn rep(n: usize) -> Representation<Q> {
        Representation::at_point(n, q(3, 7), q(5, 3)).unwrap()
    }

    #[test]
    fn words_follow_the_definition() {
        assert_eq!(ConjugateSpec::new(2, 3, false).word(), (vec![], 3));
        assert_eq!(ConjugateSpec::new(1, 5, false).word(), (vec![5, 4, 3], 2));
        assert_eq!(ConjugateSpec::new(1, 2, true).word(), (vec![], 1));
        assert_eq!(ConjugateSpec::new(1, 5, true).word(), (vec![5, 4, 3], 1));
        assert_eq!(ConjugateSpec::new(3, 5, true).word(), (vec![3, 2, 5, 4, 3], 1));
        assert_eq!(ConjugateSpec::new(2, 3, true).word(), (vec![2, 3], 1));
    }

    #[test]
    fn conjugates_match_explicit_products() {
        let r = rep(5);
        for spec in all_specs(5) {
            let c = c_matrix(&r, spec).unwrap();
            let (word, k) = spec.word();
            let mut x = SparseMatrix::identity(r.dim());
            let mut xi = SparseMatrix::identity(r.dim());
            for &g in &word {
                x = x.mul(r.g(g));
            }
            for &g in word.iter().rev() {
                xi = xi.mul(r.g_inv(g));
            }
            assert_eq!(c, x.mul(r.e(k)).mul(&xi));
        }
    }

    #[test]
    fn g_path_orders() {
        let r = rep(5);
        let p = g_path(&r, 5, 3, false).unwrap();
        assert_eq!(p, r.g(5).mul(r.g(4)).mul(r.g(3)));
        let p = g_path(&r, 3, 5, true).unwrap();
        assert_eq!(p, r.g_inv(3).mul(r.g_inv(4)).mul(r.g_inv(5)));
        assert_eq!(g_path(&r, 3, 3, false).unwrap(), *r.g(3));
    }

    #[test]
    fn simple_conjugates_and_ranks() {
        let r = rep(4);
        assert_eq!(c_matrix(&r, ConjugateSpec::new(2, 3, false)).unwrap(), *r.e(3));
        assert_eq!(c_matrix(&r, ConjugateSpec::new(1, 2, true)).unwrap(), *r.e(1));
        for spec in all_specs(4) {
            let c = c_matrix(&r, spec).unwrap();
            assert_eq!(rank(&c.to_dense()), 1);
            // the image is spanned by the matching basis vector
            let k = r.basis().index_of(spec.label()).unwrap();
            assert!((0..r.dim()).all(|row| row == k || c.row(row).is_empty()));
        }
        assert_eq!(sum_matrix(&r).dim(), 12);
    }
}
