//! The defining relations of the algebra, checked as exact matrix identities.

use rayon::prelude::*;
use serde::Serialize;

use super::Representation;
use crate::error::Result;
use crate::field::{Field, PointSampler, Q};
use crate::linalg::SparseMatrix;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: String,
    pub i: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub n: usize,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&RelationCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

/// Nodes `i` and `j` are joined in the type D_n diagram: `1–3` and the
/// path `2–3–…–n`.
pub fn adjacent(i: usize, j: usize) -> bool {
    let (a, b) = (i.min(j), i.max(j));
    (a == 1 && b == 3) || (a >= 2 && b == a + 1)
}

#[derive(Clone, Copy)]
enum Rel {
    Braid,
    Commute,
    CommuteGE,
    CommuteEE,
    Inverse,
    GE,
    EG,
    EE,
    Quadratic,
    Ege,
    Eee,
    Gge,
}

impl Rel {
    fn name(self) -> &'static str {
        match self {
            Rel::Braid => "braid",
            Rel::Commute => "commute",
            Rel::CommuteGE => "commute-ge",
            Rel::CommuteEE => "commute-ee",
            Rel::Inverse => "inverse",
            Rel::GE => "ge",
            Rel::EG => "eg",
            Rel::EE => "ee",
            Rel::Quadratic => "quadratic",
            Rel::Ege => "ege",
            Rel::Eee => "eee",
            Rel::Gge => "gge",
        }
    }
}

fn holds<F: Field>(rep: &Representation<F>, rel: Rel, i: usize, j: usize) -> bool {
    let (g, e) = (|k| rep.g(k), |k| rep.e(k));
    let dim = rep.dim();
    let l_inv = rep.l().try_inv().expect("l is non-zero");
    let m3 = |a: &SparseMatrix<F>, b: &SparseMatrix<F>, c: &SparseMatrix<F>| a.mul(b).mul(c);
    match rel {
        Rel::Braid => m3(g(i), g(j), g(i)) == m3(g(j), g(i), g(j)),
        Rel::Commute => g(i).mul(g(j)) == g(j).mul(g(i)),
        Rel::CommuteGE => g(i).mul(e(j)) == e(j).mul(g(i)),
        Rel::CommuteEE => e(i).mul(e(j)) == e(j).mul(e(i)),
        Rel::Inverse => g(i).mul(rep.g_inv(i)) == SparseMatrix::identity(dim),
        Rel::GE => g(i).mul(e(i)) == e(i).scale(&l_inv),
        Rel::EG => e(i).mul(g(i)) == e(i).scale(&l_inv),
        Rel::EE => e(i).mul(e(i)) == e(i).scale(rep.loop_value()),
        Rel::Quadratic => {
            let ml = rep.m().mul_ref(&l_inv);
            let lhs = g(i)
                .mul(g(i))
                .add(&g(i).scale(rep.m()))
                .sub(&SparseMatrix::identity(dim))
                .sub(&e(i).scale(&ml));
            lhs.is_zero()
        }
        Rel::Ege => m3(e(i), g(j), e(i)) == e(i).scale(rep.l()),
        Rel::Eee => m3(e(i), e(j), e(i)) == *e(i),
        Rel::Gge => m3(g(j), g(i), e(j)) == e(i).mul(e(j)),
    }
}

fn tasks(n: usize) -> Vec<(Rel, usize, Option<usize>)> {
    let mut t = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if adjacent(i, j) {
                t.push((Rel::Braid, i, Some(j)));
            } else {
                t.push((Rel::Commute, i, Some(j)));
                t.push((Rel::CommuteEE, i, Some(j)));
            }
        }
    }
    for i in 1..=n {
        for rel in [Rel::Inverse, Rel::GE, Rel::EG, Rel::EE, Rel::Quadratic] {
            t.push((rel, i, None));
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            if adjacent(i, j) {
                for rel in [Rel::Ege, Rel::Eee, Rel::Gge] {
                    t.push((rel, i, Some(j)));
                }
            } else {
                t.push((Rel::CommuteGE, i, Some(j)));
            }
        }
    }
    t
}

/// Check every relation on an already built representation.
pub fn check_relations<F: Field>(rep: &Representation<F>) -> RelationReport {
    let checks = tasks(rep.n())
        .into_par_iter()
        .map(|(rel, i, j)| RelationCheck {
            relation: rel.name().to_string(),
            i,
            j,
            pass: holds(rep, rel, i, j.unwrap_or(i)),
        })
        .collect();
    RelationReport { n: rep.n(), checks }
}

/// All relations as identities over Q(l, r).
pub fn verify_relations(n: usize) -> Result<RelationReport> {
    let rep = super::generic(n)?;
    Ok(check_relations(&rep))
}

/// All relations at `points` random admissible rational points.
pub fn verify_relations_at_points(
    n: usize,
    points: usize,
    seed: u64,
) -> Result<Vec<(Q, Q, RelationReport)>> {
    let mut s = PointSampler::new(seed, n);
    let pts: Vec<(Q, Q)> = (0..points).map(|_| s.point()).collect();
    pts.into_par_iter()
        .map(|(l, r)| {
            let rep = Representation::at_point(n, l.clone(), r.clone())?;
            Ok((l, r, check_relations(&rep)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RationalFunction;

    #[test]
    fn relations_hold_for_rank_four() {
        let rep = super::super::generic(4).unwrap();
        let report = check_relations(&rep);
        assert!(report.all_pass(), "{:?}", report.failures());
    }

    #[test]
    fn corrupted_entry_breaks_a_braid_relation() {
        let mut rep = Representation::generic(5).unwrap();
        let b = rep.basis().clone();
        let mut g3 = rep.g(3).clone();
        let (row, col) = (b.idx(3, 4, false), b.idx(2, 4, false));
        let v = g3.get(row, col).add_ref(&RationalFunction::one());
        g3.set(row, col, v);
        rep.replace_generator(3, g3).unwrap();
        let report = check_relations(&rep);
        assert!(report
            .failures()
            .iter()
            .any(|c| c.relation == "braid" && c.i == 3 && c.j == Some(4)));
    }
}
