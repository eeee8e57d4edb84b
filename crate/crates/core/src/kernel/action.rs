//! Tabulated action of the conjugates on basis vectors.
//!
//! Each case names a family `X·w_src = coeff·w_ij`, where `X` is `C_ij` or
//! `Ĉ_ij` and the source label is shifted from `(i, j)` by `s` and `t`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::conjugates::{all_conjugates, c_matrix, ConjugateSpec};
use crate::error::{Error, Result};
use crate::field::RationalFunction;
use crate::linalg::SparseMatrix;
use crate::rep::{self, Representation, RootLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ActionCase {
    LoNhNh,
    LoNhH,
    LoHNh,
    LoHH,
    LiNhNh,
    LiNhH,
    LiHH,
    LiHNh,
    INhH,
    IHNh,
    IHH,
    ElHH,
    LcNhNh,
    LcNhH,
    LcHNh,
    LcHH,
}

use ActionCase::*;

pub const ALL_CASES: [ActionCase; 16] =
    [LoNhNh, LoNhH, LoHNh, LoHH, LiNhNh, LiNhH, LiHH, LiHNh, INhH, IHNh, IHH, ElHH, LcNhNh, LcNhH, LcHNh, LcHH];

impl ActionCase {
    pub fn name(self) -> &'static str {
        match self {
            LoNhNh => "LONHNH",
            LoNhH => "LONHH",
            LoHNh => "LOHNH",
            LoHH => "LOHH",
            LiNhNh => "LINHNH",
            LiNhH => "LINHH",
            LiHH => "LIHH",
            LiHNh => "LIHNH",
            INhH => "INHH",
            IHNh => "IHNH",
            IHH => "IHH",
            ElHH => "ELOHH",
            LcNhNh => "LCNHNH",
            LcNhH => "LCNHH",
            LcHNh => "LCHNH",
            LcHH => "LCHH",
        }
    }

    /// Whether the acting conjugate is the hatted one.
    pub fn hatted_conjugate(self) -> bool {
        matches!(self, LoHNh | LoHH | LiHH | LiHNh | IHNh | IHH | ElHH | LcHNh | LcHH)
    }

    /// Only `s` shifts the source label.
    pub fn single_shift(self) -> bool {
        matches!(self, LoNhNh | LoNhH | LoHNh | LoHH | LiNhNh | LiNhH | LiHH | LiHNh)
    }

    fn source_hatted(self) -> bool {
        matches!(self, LoNhH | LoHH | LiNhH | LiHH | INhH | IHH | ElHH | LcNhH | LcHH)
    }

    /// Source indices, possibly out of range.
    fn source(self, i: i64, j: i64, s: i64, t: i64) -> (i64, i64) {
        match self {
            LoNhNh | LoNhH | LoHNh | LoHH => (i - s, i),
            LiNhNh | LiNhH | LiHH | LiHNh => (i, j - s),
            INhH | IHNh | IHH => (i + t, j - s),
            ElHH => (i - s, i - t),
            LcNhNh | LcNhH | LcHNh | LcHH => (i - s, j - t),
        }
    }

    /// The range of shifts on which the tabulated formula is claimed.
    pub fn in_range(self, i: usize, j: usize, s: usize, t: usize) -> bool {
        match self {
            _ if self.single_shift() => s >= 1 && t == 0,
            INhH | IHNh | IHH => s >= 1 && t >= 1 && i + t + s < j,
            ElHH => s > t && t >= 1,
            _ => s >= 1 && t >= 1 && i + t < j,
        }
    }

    /// Tabulated coefficient of `w_ij` (or `ŵ_ij`) in the image.
    pub fn coefficient(self, i: usize, j: usize, s: usize, t: usize) -> RationalFunction {
        let (i, j, s, t) = (i as i32, j as i32, s as i32, t as i32);
        let l = RationalFunction::l;
        let rp = RationalFunction::r_pow;
        let m = || rp(-1) - RationalFunction::r();
        let one = RationalFunction::one;
        // (1 - l r)(1 + r^2)
        let twist = || (one() - l() * RationalFunction::r()) * (one() + rp(2));
        let inv_l = || l().inv().expect("l is non-zero");
        match self {
            LoNhNh | LoNhH => rp(-((j - i) + (s - 2))),
            LoHNh => l() * rp(-((j - i) + (s - 3))),
            LoHH => inv_l() * rp(-((j - i) + (s - 1))),
            LiNhNh | LiHH => inv_l() * rp(-(s - 1)),
            LiNhH | LiHNh => rp(-(s - 2)),
            INhH => m() * rp(t - s - 2) * inv_l() * twist(),
            IHNh | IHH => RationalFunction::zero(),
            ElHH => m() * inv_l() * rp(-(j - i + s + t - 2)) * twist(),
            LcNhNh | LcNhH | LcHH => m() * rp(-(s + t - 2)) * (inv_l() - rp(-1)),
            LcHNh => m() * rp(-(s + t - 2)) * (RationalFunction::r() - l()),
        }
    }

    /// `(source label, target label)` if both are basis labels of rank `n`
    /// and differ.
    pub fn labels(self, n: usize, i: usize, j: usize, s: usize, t: usize) -> Option<(RootLabel, RootLabel)> {
        if !(1 <= i && i < j && j <= n) {
            return None;
        }
        let (a, b) = self.source(i as i64, j as i64, s as i64, t as i64);
        if !(1 <= a && a < b && b <= n as i64) || (a as usize, b as usize) == (i, j) {
            return None;
        }
        let src = RootLabel { i: a as usize, j: b as usize, hatted: self.source_hatted() };
        let dst = RootLabel { i, j, hatted: self.hatted_conjugate() };
        Some((src, dst))
    }
}

impl fmt::Display for ActionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ActionCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ALL_CASES
            .iter()
            .copied()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown case {s:?}")))
    }
}

fn holds(
    rep: &Representation<RationalFunction>,
    conj: &SparseMatrix<RationalFunction>,
    case: ActionCase,
    (i, j, s, t): (usize, usize, usize, usize),
    (src, dst): (RootLabel, RootLabel),
) -> bool {
    let b = rep.basis();
    let col = b.index_of(src).expect("valid label");
    let target = b.index_of(dst).expect("valid label");
    let coeff = case.coefficient(i, j, s, t);
    conj.column(col)
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .all(|(row, v)| row == target && v == coeff)
        && (coeff.is_zero() || !conj.get(target, col).is_zero())
}

/// Check one entry of the table over Q(l, r).
pub fn verify_action(n: usize, case: ActionCase, indices: (usize, usize, usize, usize)) -> Result<bool> {
    let (i, j, s, t) = indices;
    let labels = case.labels(n, i, j, s, t).filter(|_| case.in_range(i, j, s, t)).ok_or_else(|| {
        Error::InvalidArgument(format!("{case} is not stated for (i, j, s, t) = ({i}, {j}, {s}, {t}) at n = {n}"))
    })?;
    let rep = rep::generic(n)?;
    let conj = c_matrix(&rep, ConjugateSpec::new(i, j, case.hatted_conjugate()))?;
    Ok(holds(&rep, &conj, case, indices, labels))
}

/// Per-case sweep outcome.
#[derive(Clone, Debug, Serialize)]
pub struct SweepEntry {
    pub case: ActionCase,
    pub passed: usize,
    /// In-range tuples where the formula failed.
    pub failed: Vec<(usize, usize, usize, usize)>,
    /// Tuples with valid labels but outside the stated range, with whether
    /// the formula happens to hold there.
    pub excluded: Vec<((usize, usize, usize, usize), bool)>,
}

impl SweepEntry {
    pub fn ok(&self) -> bool {
        self.failed.is_empty() && self.passed > 0
    }
}

/// Check every case over all index tuples with valid labels at rank `n`.
pub fn sweep(n: usize) -> Result<Vec<SweepEntry>> {
    let rep = rep::generic(n)?;
    let conj = all_conjugates(&rep);
    let specs = super::conjugates::all_specs(n);
    let find = |i, j, h| {
        let k = specs.iter().position(|c| *c == ConjugateSpec::new(i, j, h)).expect("spec exists");
        &conj[k]
    };
    let mut out = vec![];
    for case in ALL_CASES {
        let mut entry = SweepEntry { case, passed: 0, failed: vec![], excluded: vec![] };
        for j in 2..=n {
            for i in 1..j {
                for s in 0..=n {
                    let t_max = if case.single_shift() { 0 } else { n };
                    for t in 0..=t_max {
                        let Some(labels) = case.labels(n, i, j, s, t) else { continue };
                        let idx = (i, j, s, t);
                        let ok = holds(&rep, find(i, j, case.hatted_conjugate()), case, idx, labels);
                        if case.in_range(i, j, s, t) {
                            if ok {
                                entry.passed += 1;
                            } else {
                                entry.failed.push(idx);
                            }
                        } else {
                            entry.excluded.push((idx, ok));
                        }
                    }
                }
            }
        }
        out.push(entry);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in ALL_CASES {
            assert_eq!(c.name().parse::<ActionCase>().unwrap(), c);
        }
        assert!("XYZ".parse::<ActionCase>().is_err());
    }

    #[test]
    fn documented_entries() {
        assert!(verify_action(6, ElHH, (4, 6, 2, 1)).unwrap());
        assert!(verify_action(6, IHNh, (1, 6, 1, 2)).unwrap());
        assert!(verify_action(5, LoNhNh, (3, 4, 1, 0)).unwrap());
        assert!(verify_action(5, LcNhNh, (3, 5, 1, 1)).unwrap());
    }

    #[test]
    fn out_of_range_is_an_error() {
        assert!(verify_action(5, ElHH, (4, 5, 1, 1)).is_err());
        assert!(verify_action(5, LoNhNh, (1, 2, 1, 0)).is_err());
        assert!(verify_action(5, IHH, (1, 3, 1, 1)).is_err());
    }

    #[test]
    fn sweep_at_rank_five() {
        let res = sweep(5).unwrap();
        for e in &res {
            assert!(e.ok(), "{} failed at {:?}", e.case, e.failed);
        }
    }
}
