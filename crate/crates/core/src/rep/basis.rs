use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Basis vector `w_ij` (or `ŵ_ij` when `hatted`), `1 ≤ i < j ≤ n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RootLabel {
    pub i: usize,
    pub j: usize,
    pub hatted: bool,
}

impl RootLabel {
    pub fn w(i: usize, j: usize) -> Self {
        RootLabel { i, j, hatted: false }
    }

    pub fn wh(i: usize, j: usize) -> Self {
        RootLabel { i, j, hatted: true }
    }

    pub fn with_hat(self, hatted: bool) -> Self {
        RootLabel { hatted, ..self }
    }

    pub fn is_valid(&self, n: usize) -> bool {
        1 <= self.i && self.i < self.j && self.j <= n
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = if self.hatted { "wh" } else { "w" };
        write!(f, "{p}_{}_{}", self.i, self.j)
    }
}

impl FromStr for RootLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad basis label '{s}'"));
        let mut parts = s.split('_');
        let hatted = match parts.next() {
            Some("w") => false,
            Some("wh") => true,
            _ => return Err(bad()),
        };
        let i = parts.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
        let j = parts.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
        if parts.next().is_some() || i >= j || i == 0 {
            return Err(bad());
        }
        Ok(RootLabel { i, j, hatted })
    }
}

impl Serialize for RootLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RootLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Ordered basis of the `n(n-1)`-dimensional space.
///
/// Labels are listed by increasing `j`, then increasing `i`, with `w_ij`
/// before `ŵ_ij`; the `2(n-1)` labels with `j = n` therefore come last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisIndex {
    n: usize,
    labels: Vec<RootLabel>,
    index: HashMap<RootLabel, usize>,
}

impl BasisIndex {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidArgument(format!("rank must be at least 4, got {n}")));
        }
        let mut labels = Vec::with_capacity(n * (n - 1));
        for j in 2..=n {
            for i in 1..j {
                labels.push(RootLabel::w(i, j));
                labels.push(RootLabel::wh(i, j));
            }
        }
        let index = labels.iter().enumerate().map(|(k, l)| (*l, k)).collect();
        Ok(BasisIndex { n, labels, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[RootLabel] {
        &self.labels
    }

    pub fn label(&self, k: usize) -> RootLabel {
        self.labels[k]
    }

    pub fn index_of(&self, l: RootLabel) -> Option<usize> {
        self.index.get(&l).copied()
    }

    /// Index of `w_ij` / `ŵ_ij`; panics on an invalid label.
    pub fn idx(&self, i: usize, j: usize, hatted: bool) -> usize {
        self.index[&RootLabel { i, j, hatted }]
    }
}

/// Shorthand for [`BasisIndex::new`].
pub fn basis(n: usize) -> Result<BasisIndex> {
    BasisIndex::new(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_tail_block() {
        for (n, size) in [(4, 12), (5, 20), (6, 30)] {
            let b = basis(n).unwrap();
            assert_eq!(b.len(), size);
            let tail = &b.labels()[size - 2 * (n - 1)..];
            assert!(tail.iter().all(|l| l.j == n));
            for (k, l) in b.labels().iter().enumerate() {
                assert_eq!(b.index_of(*l), Some(k));
            }
        }
        assert!(basis(3).is_err());
    }

    #[test]
    fn label_round_trip() {
        for s in ["w_1_2", "wh_3_7"] {
            assert_eq!(s.parse::<RootLabel>().unwrap().to_string(), s);
        }
        assert!("w_2_1".parse::<RootLabel>().is_err());
    }
}
