//! Dimensions of irreducible modules of the type-D Hecke algebra, indexed by
//! unordered pairs of partitions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition as a weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("{parts:?} is not a weakly decreasing list of positive parts")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(vec![])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Length of column `c` (0-based).
    fn column_len(&self, c: usize) -> usize {
        self.0.iter().take_while(|&&p| p > c).count()
    }

    pub fn hooks(&self) -> Vec<usize> {
        let mut out = vec![];
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                out.push(row - j + self.column_len(j) - i - 1);
            }
        }
        out
    }

    /// Rows whose last box can be removed.
    pub fn removable_rows(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| i + 1 == self.0.len() || self.0[i] > self.0[i + 1]).collect()
    }

    pub fn remove_box(&self, row: usize) -> Self {
        let mut p = self.0.clone();
        p[row] -= 1;
        if p[row] == 0 {
            p.pop();
        }
        Partition(p)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("(0)");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<usize> = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| Error::InvalidArgument(format!("bad part {t:?}"))))
            .collect::<Result<_>>()?;
        Partition::new(parts.into_iter().filter(|&p| p > 0).collect())
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = vec![];
    rec(n, n, &mut vec![], &mut out);
    out
}

/// Number of standard tableaux by the hook length formula.
pub fn syt_count(p: &Partition) -> u128 {
    let mut num = BigUint::one();
    for k in 2..=p.size() {
        num *= k;
    }
    let den = p.hooks().into_iter().fold(BigUint::one(), |a, h| a * h);
    (num / den).to_u128().expect("count fits in 128 bits")
}

/// Number of standard tableaux by recursive filling: the largest entry sits
/// in a removable corner.
pub fn syt_enumerate(p: &Partition) -> u128 {
    fn rec(p: &Partition, memo: &mut HashMap<Partition, u128>) -> u128 {
        if p.is_empty() {
            return 1;
        }
        if let Some(&c) = memo.get(p) {
            return c;
        }
        let c = p.removable_rows().into_iter().map(|row| rec(&p.remove_box(row), memo)).sum();
        memo.insert(p.clone(), c);
        c
    }
    rec(p, &mut HashMap::new())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Split {
    Plus,
    Minus,
}

/// An unordered pair of partitions, ordered so that `|lam| ≤ |mu|` (ties by
/// lexicographic order); equal pairs carry a split sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoublePartition {
    pub lam: Partition,
    pub mu: Partition,
    pub split: Option<Split>,
}

impl DoublePartition {
    /// The pair `{a, b}` with `a ≠ b`.
    pub fn new(a: Partition, b: Partition) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidArgument(format!("equal pair {a} needs a split sign")));
        }
        let (lam, mu) = if (a.size(), &a) <= (b.size(), &b) { (a, b) } else { (b, a) };
        Ok(DoublePartition { lam, mu, split: None })
    }

    pub fn split(a: Partition, sign: Split) -> Self {
        DoublePartition { lam: a.clone(), mu: a, split: Some(sign) }
    }

    pub fn n(&self) -> usize {
        self.lam.size() + self.mu.size()
    }

    /// Both halves when `a = b`, else the single pair.
    fn from_pair(a: Partition, b: Partition) -> Vec<Self> {
        if a == b {
            vec![Self::split(a.clone(), Split::Plus), Self::split(a, Split::Minus)]
        } else {
            vec![Self::new(a, b).expect("distinct")]
        }
    }
}

impl fmt::Display for DoublePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lam, self.mu)?;
        match self.split {
            Some(Split::Plus) => f.write_str("+"),
            Some(Split::Minus) => f.write_str("-"),
            None => Ok(()),
        }
    }
}

impl Serialize for DoublePartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Every irreducible module of rank `n`, split halves listed separately.
pub fn double_partitions(n: usize) -> Vec<DoublePartition> {
    let mut out = vec![];
    for a in 0..=n / 2 {
        let b = n - a;
        for lam in partitions(a) {
            for mu in partitions(b) {
                if a == b && lam > mu {
                    continue;
                }
                out.extend(DoublePartition::from_pair(lam.clone(), mu));
            }
        }
    }
    out.sort();
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

pub fn dn_dim(dp: &DoublePartition) -> u128 {
    let d = binomial(dp.n(), dp.lam.size()) * syt_count(&dp.lam) * syt_count(&dp.mu);
    if dp.split.is_some() {
        d / 2
    } else {
        d
    }
}

/// The rank below which degrees are usually listed.
pub fn default_bound(n: usize) -> u128 {
    (n * (n - 1)) as u128
}

/// Degrees below `bound` (all degrees when `None`) with their modules.
pub fn degree_list(n: usize, bound: Option<u128>) -> BTreeMap<u128, Vec<DoublePartition>> {
    let mut out: BTreeMap<u128, Vec<DoublePartition>> = BTreeMap::new();
    for dp in double_partitions(n) {
        let d = dn_dim(&dp);
        if bound.is_none_or(|b| d < b) {
            out.entry(d).or_default().push(dp);
        }
    }
    out
}

/// Degrees `1, n-1, n, n(n-3)/2, (n-1)(n-2)/2` present for every `n ≥ 5`.
pub fn generic_degrees(n: usize) -> Vec<u128> {
    let n = n as u128;
    let mut v = vec![1, n - 1, n, n * (n - 3) / 2, (n - 1) * (n - 2) / 2];
    v.sort();
    v.dedup();
    v
}

/// The degree list printed for rank 4, which omits 4.
pub const REFERENCE_D4_DEGREES: [u128; 5] = [1, 2, 3, 6, 8];

#[derive(Clone, Debug, Serialize)]
pub struct DimSum {
    pub n: usize,
    pub sum: u128,
    pub expected: u128,
}

impl DimSum {
    pub fn pass(&self) -> bool {
        self.sum == self.expected
    }
}

/// Sum of squared dimensions against the algebra dimension `2^(n-1)·n!`.
pub fn dim_sum_check(n: usize) -> DimSum {
    let sum = double_partitions(n).iter().map(|dp| dn_dim(dp).pow(2)).sum();
    let expected = (1u128 << (n - 1)) * (1..=n as u128).product::<u128>();
    DimSum { n, sum, expected }
}

/// Constituents after removing one box from either diagram.
pub fn restrict_dims(dp: &DoublePartition) -> Result<Vec<DoublePartition>> {
    if dp.split.is_some() {
        return Err(Error::Unsupported(format!("restriction of the split module {dp}")));
    }
    if dp.n() < 2 {
        return Err(Error::InvalidArgument(format!("{dp} has rank below 2")));
    }
    let mut out = vec![];
    for row in dp.lam.removable_rows() {
        out.extend(DoublePartition::from_pair(dp.lam.remove_box(row), dp.mu.clone()));
    }
    for row in dp.mu.removable_rows() {
        out.extend(DoublePartition::from_pair(dp.lam.clone(), dp.mu.remove_box(row)));
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn dp(a: &str, b: &str) -> DoublePartition {
        DoublePartition::new(p(a), p(b)).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(syt_count(&p("(2,2)")), 2);
        assert_eq!(syt_count(&p("(4,4)")), 14);
        assert_eq!(syt_enumerate(&p("(1,1,1)")), 1);
        assert_eq!(syt_enumerate(&p("(3)")), 1);
        assert_eq!(syt_enumerate(&p("(2,1)")), 2);
    }

    #[test]
    fn three_row_hook_shape() {
        for n in 6..=10usize {
            let shape = Partition::new(vec![n - 3, 2, 1]).unwrap();
            let expect = n * (n - 2) * (n - 4) / 3;
            assert_eq!(syt_count(&shape), expect as u128);
        }
    }

    #[test]
    fn named_dimensions() {
        let s = DoublePartition::split(p("(2)"), Split::Plus);
        assert_eq!(dn_dim(&s), 3);
        assert_eq!(dn_dim(&dp("(0)", "(3,2)")), 5);
        assert_eq!(dn_dim(&dp("(1)", "(3)")), 4);
        assert_eq!(dp("(3)", "(1)"), dp("(1)", "(3)"));
    }

    #[test]
    fn listed_degrees() {
        let d8: Vec<u128> = degree_list(8, Some(56)).into_keys().collect();
        assert_eq!(d8, [1, 7, 8, 14, 20, 21, 28, 35, 42, 48]);
        let d9: Vec<u128> = degree_list(9, Some(72)).into_keys().collect();
        assert_eq!(d9, [1, 8, 9, 27, 28, 36, 42, 48, 56, 63, 70]);
    }

    #[test]
    fn rank_four_includes_four() {
        let d4: Vec<u128> = degree_list(4, None).into_keys().collect();
        assert_eq!(d4, [1, 2, 3, 4, 6, 8]);
        assert!(!REFERENCE_D4_DEGREES.contains(&4));
    }

    #[test]
    fn dimension_sums() {
        assert_eq!(dim_sum_check(4).sum, 192);
        assert_eq!(dim_sum_check(5).sum, 1920);
        assert_eq!(dim_sum_check(6).sum, 23040);
    }

    #[test]
    fn restrictions() {
        let c = restrict_dims(&dp("(0)", "(4,4)")).unwrap();
        assert_eq!(c, vec![dp("(0)", "(4,3)")]);
        let c = restrict_dims(&dp("(1)", "(4)")).unwrap();
        assert_eq!(c, vec![dp("(0)", "(4)"), dp("(1)", "(3)")]);
        assert!(restrict_dims(&DoublePartition::split(p("(2)"), Split::Minus)).is_err());
        let c = restrict_dims(&dp("(1)", "(2)")).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.iter().map(dn_dim).sum::<u128>(), dn_dim(&dp("(1)", "(2)")));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("(0)"), Partition::empty());
        assert_eq!(p("(3,2)").to_string(), "(3,2)");
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(dp("(1)", "(3)").to_string(), "((1),(3))");
    }
}
