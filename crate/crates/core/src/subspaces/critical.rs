use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::LValue;

/// The values of `l` (and of `t = r³/l`) at which `V_n` is reducible.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalSet {
    pub n: usize,
    pub l_values: Vec<LValue>,
    pub t_values: Vec<LValue>,
}

impl CriticalSet {
    /// `l = r³/t` applied to each `t`, in order.
    pub fn mapped_t(&self) -> Vec<LValue> {
        self.t_values.iter().map(l_from_t).collect()
    }

    /// The image of the `t`-set equals the `l`-set as multisets.
    pub fn map_is_bijective(&self) -> bool {
        let mut a = self.mapped_t();
        let mut b = self.l_values.clone();
        a.sort();
        b.sort();
        a == b
    }

    /// The `l`-values without repeats.
    pub fn distinct_l(&self) -> Vec<LValue> {
        let mut out: Vec<LValue> = vec![];
        for l in &self.l_values {
            if !out.contains(l) {
                out.push(l.clone());
            }
        }
        out
    }
}

fn l_from_t(t: &LValue) -> LValue {
    LValue::new(t.coeff().recip(), 3 - t.power()).expect("t is non-zero")
}

pub fn critical_sets(n: usize) -> Result<CriticalSet> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("rank must be at least 4, got {n}")));
    }
    let k = n as i32;
    let l_values = vec![
        LValue::r_pow(7 - 4 * k),
        LValue::r_pow(7 - 2 * k),
        LValue::signed(-1, 5 - 2 * k),
        LValue::r_pow(3),
        LValue::r_pow(-1),
        LValue::signed(-1, 3),
    ];
    let t_values = vec![
        LValue::r_pow(4 * k - 4),
        LValue::r_pow(2 * k - 4),
        LValue::signed(-1, 2 * k - 2),
        LValue::r_pow(0),
        LValue::r_pow(4),
        LValue::signed(-1, 0),
    ];
    Ok(CriticalSet { n, l_values, t_values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_seven_values() {
        let c = critical_sets(7).unwrap();
        let shown: Vec<String> = c.l_values.iter().map(|l| l.to_string()).collect();
        assert_eq!(shown, ["r^-21", "r^-7", "-r^-9", "r^3", "r^-1", "-r^3"]);
        assert!(c.map_is_bijective());
    }

    #[test]
    fn rank_four_has_a_repeat() {
        let c = critical_sets(4).unwrap();
        assert_eq!(c.distinct_l().len(), 5);
        assert!(c.map_is_bijective());
        assert_eq!(c.mapped_t(), c.l_values);
    }
}
