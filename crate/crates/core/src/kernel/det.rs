use rayon::prelude::*;

use super::conjugates::sum_matrix;
use crate::error::{Error, Result};
use crate::field::{default_family, trial_factor, BiLaurentPoly, FactoredForm, PointSampler, RationalFunction, Q};
use crate::linalg::{det, modular_det, SparseMatrix};
use crate::rep::{self, Representation};

/// Largest rank for which the symbolic determinant is attempted.
pub const MAX_SYMBOLIC_RANK: usize = 7;

/// The closed form of `det S(7)`.
pub fn det_s7_closed_form() -> RationalFunction {
    "(l*r - 1)^21 * (l - r^3)^14 * (l + r^3)^35 * (l*r^7 - 1)^6 * (l*r^9 + 1)^7 * (l*r^21 - 1) \
     / (l^42 * r^105 * (r^2 - 1)^42)"
        .parse()
        .expect("valid closed form")
}

/// Determinant of a matrix over Q(l, r): each row is multiplied by the lcm
/// of its denominators, then the determinant of the polynomial matrix is
/// computed by modular evaluation and interpolation.
pub fn symbolic_det(m: &SparseMatrix<RationalFunction>) -> Result<RationalFunction> {
    let dense = m.to_dense();
    let (rows, scales): (Vec<Vec<BiLaurentPoly>>, Vec<BiLaurentPoly>) = dense
        .into_par_iter()
        .map(|row| {
            let mut lcm = BiLaurentPoly::one();
            for x in &row {
                let d = x.denom();
                if !d.is_one() {
                    let g = lcm.gcd(d);
                    lcm = lcm.mul(&d.div_exact(&g).expect("gcd divides"));
                }
            }
            let polys = row
                .iter()
                .map(|x| {
                    let k = lcm.div_exact(x.denom()).expect("denominator divides lcm");
                    x.numer().mul(&k)
                })
                .collect();
            (polys, lcm)
        })
        .unzip();
    let d = modular_det(&rows)?;
    let scale = scales.iter().fold(BiLaurentPoly::one(), |a, s| a.mul(s));
    RationalFunction::new(d, scale)
}

/// Symbolic `det S(n)`, trial-factored against the default family.
pub fn det_sum_symbolic(n: usize) -> Result<(RationalFunction, FactoredForm)> {
    if n > MAX_SYMBOLIC_RANK {
        return Err(Error::Unsupported(format!(
            "symbolic determinant is limited to n <= {MAX_SYMBOLIC_RANK}; use the probabilistic mode"
        )));
    }
    let rep = rep::generic(n)?;
    let s = sum_matrix(&rep);
    let d = symbolic_det(&s)?;
    let f = trial_factor(&d, &default_family(n));
    Ok((d, f))
}

/// `det S(n)` at a rational point.
pub fn det_sum_at(n: usize, l: &Q, r: &Q) -> Result<Q> {
    let rep = Representation::at_point(n, l.clone(), r.clone())?;
    Ok(det(&sum_matrix(&rep).to_dense()))
}

/// One sampled comparison.
#[derive(Clone, Debug)]
pub struct DetSample {
    pub l: Q,
    pub r: Q,
    pub computed: Q,
    pub expected: Q,
}

impl DetSample {
    pub fn matches(&self) -> bool {
        self.computed == self.expected
    }
}

/// Compare `det S(n)` with `target` at `points` admissible random points.
/// Points where `target` has a pole are skipped.
pub fn det_sum_probabilistic(
    n: usize,
    target: &RationalFunction,
    points: usize,
    seed: u64,
) -> Result<Vec<DetSample>> {
    let mut s = PointSampler::new(seed, n);
    let mut pts = Vec::with_capacity(points);
    while pts.len() < points {
        let (l, r) = s.point();
        if let Ok(expected) = target.eval(&l, &r) {
            pts.push((l, r, expected));
        }
    }
    pts.into_par_iter()
        .map(|(l, r, expected)| {
            let computed = det_sum_at(n, &l, &r)?;
            Ok(DetSample { l, r, computed, expected })
        })
        .collect()
}
