//! Each family is checked at its critical `l` and, as a control, at
//! several random non-critical values where the same check must fail.

use rayon::prelude::*;
use serde::Serialize;

use super::families::{kernel_vector, vector_u, vectors_t, vectors_v, vectors_v_recursive, KernelVector};
use super::relsys::{v_family_relations, v_system_nullity, residual_forces_critical_l, system_holds};
use super::VectorExpr;
use crate::error::Result;
use crate::field::modp::{large_primes, rank_mod};
use crate::field::{LValue, PointSampler, RationalFunction};
use crate::kernel::{all_conjugates, kernel_at};
use crate::linalg::Echelon;
use crate::rep::Representation;

/// Number of random non-critical values of `l` each family is tried at.
pub const GENERIC_TRIALS: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct FamilyCheck {
    pub family: String,
    pub n: usize,
    pub l: LValue,
    /// The defining property at the critical value.
    pub holds: bool,
    /// The same property at random non-critical values; each should fail.
    pub generic: Vec<(LValue, bool)>,
    /// Further named checks, each of which should pass.
    pub extras: Vec<(String, bool)>,
}

impl FamilyCheck {
    pub fn ok(&self) -> bool {
        self.holds && self.generic.iter().all(|(_, h)| !h) && self.extras.iter().all(|(_, p)| *p)
    }
}

type Property<'a> = dyn Fn(&Representation<RationalFunction>) -> Result<bool> + Sync + 'a;

fn run_family(
    family: &str,
    n: usize,
    l: LValue,
    seed: u64,
    property: &Property<'_>,
    extras: Vec<(String, bool)>,
) -> Result<FamilyCheck> {
    let holds = property(&Representation::at_l(n, &l)?)?;
    let mut sampler = PointSampler::new(seed, n);
    let trials: Vec<LValue> = (0..GENERIC_TRIALS).map(|_| sampler.generic_l()).collect();
    let generic = trials
        .into_par_iter()
        .map(|lv| Ok((lv.clone(), property(&Representation::at_l(n, &lv)?)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(FamilyCheck { family: family.to_string(), n, l, holds, generic, extras })
}

fn dense(rep: &Representation<RationalFunction>, vs: &[VectorExpr]) -> Vec<Vec<RationalFunction>> {
    vs.iter().map(|v| v.to_dense(rep.basis())).collect()
}

/// `ν(e_i)·x = 0` for every generator and every given vector.
pub fn e_annihilation_check(vectors: &[VectorExpr], n: usize, l: &LValue) -> Result<bool> {
    let rep = Representation::at_l(n, l)?;
    Ok(annihilated_by_e(&rep, &dense(&rep, vectors)))
}

fn annihilated_by_e(rep: &Representation<RationalFunction>, xs: &[Vec<RationalFunction>]) -> bool {
    (1..=rep.n()).all(|i| xs.iter().all(|x| rep.e(i).mul_vec(x).iter().all(|c| c.is_zero())))
}

fn in_kernel_of_conjugates(rep: &Representation<RationalFunction>, xs: &[Vec<RationalFunction>]) -> bool {
    let conj = all_conjugates(rep);
    xs.iter().all(|x| conj.iter().all(|c| c.mul_vec(x).iter().all(|v| v.is_zero())))
}

/// Every `ν(g_k)` maps the span of `xs` into itself.
fn span_is_invariant(rep: &Representation<RationalFunction>, xs: &[Vec<RationalFunction>]) -> bool {
    let mut ech = Echelon::new(rep.dim());
    for x in xs {
        ech.insert_dense(x);
    }
    (1..=rep.n()).all(|k| xs.iter().all(|x| ech.contains(&rep.g(k).mul_vec(x))))
}

/// Dimension of `{x : ν(g_i)x = r·x for all i}` at `l = lv`, computed at a
/// random admissible `r` modulo a prime, which bounds it from above.
fn joint_r_eigen_nullity(n: usize, lv: &LValue, seed: u64) -> Result<usize> {
    let r = PointSampler::new(seed, n).admissible_r();
    let rep = Representation::at_point(n, lv.eval(&r)?, r.clone())?;
    let d = rep.dim();
    'primes: for p in large_primes().take(8) {
        let Some(rv) = p.from_rational(&r) else { continue };
        let mut rows = vec![];
        for i in 1..=n {
            let mut block = vec![vec![0u64; d]; d];
            for (a, b, x) in rep.g(i).entries() {
                let Some(v) = p.from_rational(x) else { continue 'primes };
                block[a][b] = v;
            }
            for (a, row) in block.iter_mut().enumerate() {
                row[a] = p.sub(row[a], rv);
            }
            rows.extend(block);
        }
        return Ok(d - rank_mod(p, &mut rows));
    }
    Err(crate::error::Error::Unsupported("no usable prime for this point".into()))
}

/// The one-dimensional family at `l = r^(7-4n)`.
pub fn check_u(n: usize, seed: u64) -> Result<FamilyCheck> {
    let l = LValue::r_pow(7 - 4 * n as i32);
    let u = vector_u(n);
    let property = |rep: &Representation<RationalFunction>| {
        let x = u.to_dense(rep.basis());
        let rx: Vec<RationalFunction> = x.iter().map(|c| c * rep.r()).collect();
        Ok((1..=n).all(|i| rep.g(i).mul_vec(&x) == rx))
    };
    let extras = vec![
        ("unique up to scalar".to_string(), joint_r_eigen_nullity(n, &l, seed)? == 1),
        ("every e_i kills it".to_string(), e_annihilation_check(std::slice::from_ref(&u), n, &l)?),
    ];
    run_family("u", n, l, seed, &property, extras)
}

/// The `(n-1)`-dimensional family at `l = r^(7-2n)`.
pub fn check_v(n: usize, seed: u64) -> Result<FamilyCheck> {
    let l = LValue::r_pow(7 - 2 * n as i32);
    let v = vectors_v(n)?;
    let rels = v_family_relations(n);
    let property =
        |rep: &Representation<RationalFunction>| Ok(system_holds(rep, &rels, &v).iter().all(|c| c.pass));
    let at_l = Representation::at_l(n, &l)?;
    let extras = vec![
        ("recursion reproduces closed form".to_string(), vectors_v_recursive(&at_l)? == v),
        ("w_12 residual forces critical l".to_string(), residual_forces_critical_l(n)?),
        ("system has a unique solution".to_string(), v_system_nullity(n, seed)? == 1),
        ("span is invariant".to_string(), span_is_invariant(&at_l, &dense(&at_l, &v))),
        ("every e_i kills the span".to_string(), annihilated_by_e(&at_l, &dense(&at_l, &v))),
    ];
    run_family("v", n, l, seed, &property, extras)
}

/// The `n(n-1)/2`-dimensional family at `l = 1/r`.
pub fn check_t(n: usize, seed: u64) -> Result<FamilyCheck> {
    let l = LValue::r_pow(-1);
    let t = vectors_t(n);
    let property = |rep: &Representation<RationalFunction>| Ok(span_is_invariant(rep, &dense(rep, &t)));
    let at_l = Representation::at_l(n, &l)?;
    let xs = dense(&at_l, &t);
    let kernel = kernel_at(n, &l)?;
    let mut extras = vec![
        ("loop value vanishes".to_string(), at_l.loop_value().is_zero()),
        ("span lies in the kernel".to_string(), in_kernel_of_conjugates(&at_l, &xs)),
        ("every e_i kills the span".to_string(), annihilated_by_e(&at_l, &xs)),
    ];
    // at n = 4 the value 1/r is also r^(7-2n) and the kernel is larger
    if n >= 5 {
        extras.push(("kernel dimension is n(n-1)/2".to_string(), kernel.k == t.len()));
    }
    run_family("t", n, l, seed, &property, extras)
}

/// Membership of one of the explicit vectors in the common kernel of the
/// conjugates, cross-checked against the computed kernel.
pub fn check_kernel_vector(n: usize, which: KernelVector, seed: u64) -> Result<FamilyCheck> {
    let l = which.l_value(n);
    let x = kernel_vector(n, which)?;
    let property = |rep: &Representation<RationalFunction>| {
        Ok(in_kernel_of_conjugates(rep, &[x.to_dense(rep.basis())]))
    };
    let at_l = Representation::at_l(n, &l)?;
    let kernel = kernel_at(n, &l)?;
    let mut ech = Echelon::new(at_l.dim());
    for v in kernel.dense_basis(at_l.dim(), at_l.basis()) {
        ech.insert_dense(&v);
    }
    let extras = vec![("in the computed kernel".to_string(), ech.contains(&x.to_dense(at_l.basis())))];
    run_family(which.name(), n, l, seed, &property, extras)
}

#[derive(Clone, Debug, Serialize)]
pub struct SubspaceReport {
    pub n: usize,
    pub families: Vec<FamilyCheck>,
    pub skipped: Vec<String>,
}

impl SubspaceReport {
    pub fn ok(&self) -> bool {
        self.families.iter().all(FamilyCheck::ok)
    }
}

/// Every family that applies at rank `n`, optionally restricted to those
/// whose critical value is `only`.
pub fn check_subspaces(n: usize, only: Option<&LValue>, seed: u64) -> Result<SubspaceReport> {
    if n < 4 {
        return Err(crate::error::Error::InvalidArgument(format!("rank must be at least 4, got {n}")));
    }
    let k = n as i32;
    let mut jobs: Vec<(String, LValue)> = vec![
        ("u".into(), LValue::r_pow(7 - 4 * k)),
        ("v".into(), LValue::r_pow(7 - 2 * k)),
        ("t".into(), LValue::r_pow(-1)),
    ];
    for w in KernelVector::ALL {
        jobs.push((w.name().into(), w.l_value(n)));
    }
    let mut skipped = vec![];
    let jobs: Vec<(String, LValue)> = jobs
        .into_iter()
        .filter(|(name, l)| {
            if only.is_some_and(|o| o != l) {
                return false;
            }
            let applies = match name.as_str() {
                "v" => n >= 5,
                "u" | "t" => true,
                other => other.parse::<KernelVector>().is_ok_and(|w| w.applies(n)),
            };
            if !applies {
                skipped.push(format!("{name}: not defined for n = {n}"));
            }
            applies
        })
        .collect();
    let families = jobs
        .into_par_iter()
        .map(|(name, _)| match name.as_str() {
            "u" => check_u(n, seed),
            "v" => check_v(n, seed),
            "t" => check_t(n, seed),
            other => check_kernel_vector(n, other.parse()?, seed),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SubspaceReport { n, families, skipped })
}

/// `ν(e_i)` kills the whole kernel at a critical value, which is invariant.
pub fn kernel_is_e_annihilated(n: usize, l: &LValue) -> Result<bool> {
    let report = kernel_at(n, l)?;
    let rep = Representation::at_l(n, l)?;
    Ok(annihilated_by_e(&rep, &report.dense_basis(rep.dim(), rep.basis())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    #[test]
    fn rank_four_families() {
        let rep = check_subspaces(4, None, 0).unwrap();
        for f in &rep.families {
            assert!(f.ok(), "{f:?}");
        }
        assert!(rep.skipped.iter().any(|s| s.starts_with("v:")));
        assert!(rep.skipped.iter().any(|s| s.starts_with("Y:")));
    }

    #[test]
    fn full_space_is_not_e_annihilated() {
        let rep = Representation::at_l(5, &LValue::new(Q::new(3.into(), 7.into()), 2).unwrap()).unwrap();
        let basis: Vec<Vec<RationalFunction>> =
            rep.basis().labels().iter().map(|l| rep.unit(*l)).collect();
        assert!(!annihilated_by_e(&rep, &basis));
    }

    #[test]
    fn kernels_at_critical_values_are_killed_by_e() {
        for l in ["r^3", "-r^3", "r^-1"] {
            assert!(kernel_is_e_annihilated(5, &l.parse().unwrap()).unwrap(), "l = {l}");
        }
    }
}
