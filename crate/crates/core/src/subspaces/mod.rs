//! Explicit invariant vectors and subspaces at the critical values of `l`,
//! the Hecke-algebra matrix models, and the `t ↔ l` parameter map.

mod checks;
mod critical;
mod families;
mod hecke;
mod relsys;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::field::{Field, RationalFunction};
use crate::rep::{BasisIndex, RootLabel};

pub use checks::{
    check_subspaces, check_t, check_kernel_vector, check_u, check_v, e_annihilation_check, kernel_is_e_annihilated, FamilyCheck,
    SubspaceReport, GENERIC_TRIALS,
};
pub use critical::{critical_sets, CriticalSet};
pub use families::{kernel_vector, vector_u, vectors_t, vectors_v, vectors_v_recursive, KernelVector};
pub use hecke::{h_matrices, h_matrices_check, j_matrices, j_matrices_check, joint_r_eigenspace_dim, HeckeCheck};
pub use relsys::{
    v_family_relations, w12_residual, v_system_nullity, conjugate_relations, conjugate_system_nullity, residual_forces_critical_l,
    system_holds,
    RelationSystemCheck, VectorRelation,
};

/// A vector of `V_n` as a sparse map from basis labels to coordinates.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct VectorExpr {
    pub coords: BTreeMap<RootLabel, RationalFunction>,
}

impl VectorExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Add `c` to the coordinate of `label`.
    pub fn add_term(&mut self, label: RootLabel, c: RationalFunction) {
        let sum = match self.coords.remove(&label) {
            Some(x) => x + c,
            None => c,
        };
        if !sum.is_zero() {
            self.coords.insert(label, sum);
        }
    }

    pub fn with(mut self, label: RootLabel, c: RationalFunction) -> Self {
        self.add_term(label, c);
        self
    }

    pub fn coeff(&self, label: RootLabel) -> RationalFunction {
        self.coords.get(&label).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn to_dense(&self, basis: &BasisIndex) -> Vec<RationalFunction> {
        let mut x = vec![RationalFunction::zero(); basis.len()];
        for (l, c) in &self.coords {
            x[basis.index_of(*l).expect("label in basis")] = c.clone();
        }
        x
    }

    pub fn from_dense(basis: &BasisIndex, x: &[RationalFunction]) -> Self {
        let coords = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (basis.label(k), c.clone()))
            .collect();
        VectorExpr { coords }
    }

    /// Coordinates specialized to a rational point, for numeric checks.
    pub fn eval_dense<G: Field>(
        &self,
        basis: &BasisIndex,
        eval: impl Fn(&RationalFunction) -> crate::error::Result<G>,
    ) -> crate::error::Result<Vec<G>> {
        let mut x = vec![G::zero(); basis.len()];
        for (l, c) in &self.coords {
            x[basis.index_of(*l).expect("label in basis")] = eval(c)?;
        }
        Ok(x)
    }
}

impl Serialize for VectorExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, String> = self.coords.iter().map(|(l, c)| (l.to_string(), c.to_string())).collect();
        m.serialize(s)
    }
}

impl fmt::Display for VectorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coords.iter().map(|(l, c)| format!("({c})*{l}")).collect();
        f.write_str(&parts.join(" + "))
    }
}
