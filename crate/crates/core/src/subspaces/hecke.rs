//! Matrix models of irreducible modules of the type-D Hecke algebra of rank
//! four, of degrees 4 and 2.

use serde::Serialize;

use crate::field::RationalFunction;
use crate::linalg::{Echelon, SparseMatrix};

type M = SparseMatrix<RationalFunction>;

fn parse_matrix(rows: &[&[&str]]) -> M {
    let dense: Vec<Vec<RationalFunction>> =
        rows.iter().map(|row| row.iter().map(|s| s.parse().expect("valid entry")).collect()).collect();
    SparseMatrix::from_dense(&dense)
}

/// The four printed 4×4 matrices.
pub fn h_matrices() -> [M; 4] {
    [
        parse_matrix(&[
            &["r", "0", "0", "0"],
            &["-r^2 + r^-2", "r^-3", "-r^-2 - r^-4", "0"],
            &["-r^3 + r^-1", "-r^2 + r^-2", "r - r^-3 - r^-1", "0"],
            &["1 - r^2", "r^-1 - r", "-r^-2", "r"],
        ]),
        parse_matrix(&[
            &["r", "0", "0", "0"],
            &["0", "r", "0", "0"],
            &["0", "0", "r", "0"],
            &["0", "0", "1", "-r^-1"],
        ]),
        parse_matrix(&[
            &["r", "0", "0", "0"],
            &["0", "r", "0", "0"],
            &["0", "1", "-r^-1", "1"],
            &["0", "0", "0", "r"],
        ]),
        parse_matrix(&[
            &["r - r^-1", "1", "-r^-1", "0"],
            &["1", "0", "1", "0"],
            &["0", "0", "r", "0"],
            &["0", "0", "0", "r"],
        ]),
    ]
}

/// The printed 2×2 matrices.
pub fn j_matrices() -> [M; 4] {
    let a = parse_matrix(&[&["-r^-1", "1"], &["0", "r"]]);
    let b = parse_matrix(&[&["r", "0"], &["1", "-r^-1"]]);
    [a.clone(), a.clone(), b, a]
}

#[derive(Clone, Debug, Serialize)]
pub struct HeckeCheck {
    pub relation: String,
    pub pass: bool,
}

/// Quadratic relation for every generator and the braid/commutation
/// relations of the D_4 diagram, whose centre is node 3.
fn d4_relations(h: &[M; 4]) -> Vec<HeckeCheck> {
    let m = RationalFunction::r_pow(-1) - RationalFunction::r();
    let dim = h[0].dim();
    let id = SparseMatrix::identity(dim);
    let mut out = vec![];
    for (k, x) in h.iter().enumerate() {
        let quad = x.mul(x).add(&x.scale(&m));
        out.push(HeckeCheck { relation: format!("quadratic {}", k + 1), pass: quad == id });
    }
    for a in 0..4 {
        for b in a + 1..4 {
            let (x, y) = (&h[a], &h[b]);
            let adjacent = a == 2 || b == 2;
            let pass = if adjacent {
                x.mul(y).mul(x) == y.mul(x).mul(y)
            } else {
                x.mul(y) == y.mul(x)
            };
            let kind = if adjacent { "braid" } else { "commute" };
            out.push(HeckeCheck { relation: format!("{kind} {} {}", a + 1, b + 1), pass });
        }
    }
    out
}

/// Number of independent `u` with `H_i·u = r·u` for all `i`, over Q(r).
pub fn joint_r_eigenspace_dim(h: &[M; 4]) -> usize {
    let dim = h[0].dim();
    let r = RationalFunction::r();
    let mut ech = Echelon::new(dim);
    for x in h {
        let shifted = x.sub(&SparseMatrix::scalar(dim, r.clone()));
        for i in 0..dim {
            ech.insert(shifted.row(i).clone());
        }
    }
    dim - ech.rank()
}

/// Relations of the degree-4 model, plus the absence of a joint
/// `r`-eigenvector.
pub fn h_matrices_check() -> Vec<HeckeCheck> {
    let h = h_matrices();
    let mut out = d4_relations(&h);
    out.push(HeckeCheck { relation: "no joint r-eigenvector".into(), pass: joint_r_eigenspace_dim(&h) == 0 });
    out
}

pub fn j_matrices_check() -> bool {
    d4_relations(&j_matrices()).iter().all(|c| c.pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_four_model() {
        let checks = h_matrices_check();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
        assert_eq!(checks.len(), 11);
    }

    #[test]
    fn degree_two_model() {
        assert!(j_matrices_check());
    }

    #[test]
    fn a_wrong_entry_is_caught() {
        let mut h = h_matrices();
        h[1].set(3, 2, RationalFunction::from_int(2));
        assert!(d4_relations(&h).iter().any(|c| !c.pass));
    }
}
