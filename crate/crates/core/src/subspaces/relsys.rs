//! The two relation systems a basis `v_1, …, v_{n-1}` of an
//! `(n-1)`-dimensional invariant subspace would have to satisfy, one for
//! each of the two candidate Specht modules.

use serde::Serialize;

use super::families::vectors_v_recursive;
use super::VectorExpr;
use crate::error::{Error, Result};
use crate::field::modp::{large_primes, rank_mod};
use crate::field::{BiLaurentPoly, LValue, PointSampler, RationalFunction, Q};
use crate::rep::{Representation, RootLabel};

/// `ν_generator(v_vector) = Σ coeff · v_k` over `rhs`, with 1-based indices.
#[derive(Clone, Debug)]
pub struct VectorRelation {
    pub name: &'static str,
    pub generator: usize,
    pub vector: usize,
    pub rhs: Vec<(usize, RationalFunction)>,
}

fn rel(name: &'static str, generator: usize, vector: usize, rhs: Vec<(usize, RationalFunction)>) -> VectorRelation {
    VectorRelation { name, generator, vector, rhs }
}

/// Both systems share one shape, with eigenvalues `(x, y) = (−1/r, r)` for
/// one module and `(r, −1/r)` for the other.
fn system(n: usize, x: RationalFunction, y: RationalFunction, names: [&'static str; 7]) -> Vec<VectorRelation> {
    let last = n - 1;
    let mut out = vec![];
    out.push(rel(names[0], 1, 1, vec![(1, x.clone())]));
    if last >= 2 {
        out.push(rel(names[1], 1, 2, vec![(1, -x.clone()), (2, y.clone())]));
    }
    for t in 3..=last {
        out.push(rel(names[2], 1, t, vec![(t, y.clone())]));
    }
    for i in 2..=n {
        if i <= last {
            out.push(rel(names[3], i, i, vec![(i - 1, -x.clone()), (i, y.clone())]));
        }
        out.push(rel(names[4], i, i - 1, vec![(i - 1, x.clone())]));
        if i >= 3 {
            out.push(rel(names[5], i, i - 2, vec![(i - 2, y.clone()), (i - 1, y.clone())]));
        }
        for t in 1..=last {
            if t != i && t + 1 != i && t + 2 != i {
                out.push(rel(names[6], i, t, vec![(t, y.clone())]));
            }
        }
    }
    out
}

/// The system satisfied by the vectors of the `(n-1)`-dimensional family.
/// The second relation reads `ν_1(v_2) = (1/r)v_1 + r·v_2`.
pub fn v_family_relations(n: usize) -> Vec<VectorRelation> {
    let r = RationalFunction::r();
    system(n, -r.inv().expect("r is non-zero"), r, ["a'", "b'", "c'", "d'", "e'", "f'", "g'"])
}

/// The system for the conjugate module, with `r ↦ −1/r`.
pub fn conjugate_relations(n: usize) -> Vec<VectorRelation> {
    let r = RationalFunction::r();
    system(n, r.clone(), -r.inv().expect("r is non-zero"), ["a", "b", "c", "d", "e", "f", "g"])
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationSystemCheck {
    pub relation: &'static str,
    pub generator: usize,
    pub vector: usize,
    pub pass: bool,
}

/// Evaluate each relation on concrete vectors.
pub fn system_holds(
    rep: &Representation<RationalFunction>,
    rels: &[VectorRelation],
    vectors: &[VectorExpr],
) -> Vec<RelationSystemCheck> {
    let b = rep.basis();
    let dense: Vec<Vec<RationalFunction>> = vectors.iter().map(|v| v.to_dense(b)).collect();
    rels.iter()
        .map(|rl| {
            let lhs = rep.g(rl.generator).mul_vec(&dense[rl.vector - 1]);
            let mut rhs = vec![RationalFunction::zero(); rep.dim()];
            for (k, c) in &rl.rhs {
                for (a, x) in rhs.iter_mut().zip(&dense[k - 1]) {
                    if !x.is_zero() {
                        *a = &*a + &(c * x);
                    }
                }
            }
            RelationSystemCheck { relation: rl.name, generator: rl.generator, vector: rl.vector, pass: lhs == rhs }
        })
        .collect()
}

/// Coefficient of `w_12` in `ν_2(v_2) − ((1/r)v_1 + r·v_2)` over Q(l, r),
/// with `v_2` obtained from `v_1` by the recursion.
pub fn w12_residual(n: usize) -> Result<RationalFunction> {
    let rep = crate::rep::generic(n)?;
    let v = vectors_v_recursive(&rep)?;
    let rels = v_family_relations(n);
    let d2 = rels
        .iter()
        .find(|rl| rl.name == "d'" && rl.generator == 2)
        .expect("relation present");
    let b = rep.basis();
    let k = b.index_of(RootLabel::w(1, 2)).expect("label");
    let lhs = rep.g(2).mul_vec(&v[1].to_dense(b))[k].clone();
    let rhs = d2.rhs.iter().fold(RationalFunction::zero(), |acc, (t, c)| acc + c * &v[t - 1].coeff(RootLabel::w(1, 2)));
    Ok(lhs - rhs)
}

/// The residual is a non-zero multiple of `l·r^(2n-7) − 1`.
pub fn residual_forces_critical_l(n: usize) -> Result<bool> {
    let res = w12_residual(n)?;
    if res.is_zero() {
        return Ok(false);
    }
    let factor = BiLaurentPoly::monomial(Q::from_integer(1.into()), 1, 2 * n as i32 - 7).sub(&BiLaurentPoly::one());
    Ok(res.numer().div_exact(&factor).is_some())
}

/// Dimension of the solution space of a relation system in the unknowns
/// `v_1, …, v_{n-1}`, computed at one rational point modulo a prime. It
/// bounds the dimension over Q(l, r) from above.
fn nullity_at(n: usize, rels: &[VectorRelation], l: Q, r: Q) -> Result<usize> {
    let rep = Representation::at_point(n, l, r.clone())?;
    let d = rep.dim();
    let unknowns = (n - 1) * d;
    let one = Q::from_integer(1.into());
    for p in large_primes().take(8) {
        let mut rows: Vec<Vec<u64>> = vec![];
        let mut ok = true;
        'build: for rl in rels {
            let g = rep.g(rl.generator);
            let mut block = vec![vec![0u64; unknowns]; d];
            let off = (rl.vector - 1) * d;
            for (i, j, x) in g.entries() {
                let Some(v) = p.from_rational(x) else {
                    ok = false;
                    break 'build;
                };
                block[i][off + j] = v;
            }
            for (t, c) in &rl.rhs {
                let Some(cv) = c.eval(&one, &r).ok().and_then(|q| p.from_rational(&q)) else {
                    ok = false;
                    break 'build;
                };
                let off = (t - 1) * d;
                for (i, row) in block.iter_mut().enumerate() {
                    row[off + i] = p.sub(row[off + i], cv);
                }
            }
            rows.extend(block);
        }
        if ok {
            return Ok(unknowns - rank_mod(p, &mut rows));
        }
    }
    Err(Error::Unsupported("no usable prime for this point".into()))
}

/// Solution-space dimension of the conjugate system at a random point.
/// With `relaxed`, the relations `ν_1(v_t) = −(1/r)v_t`, `t ≥ 3`, are dropped.
pub fn conjugate_system_nullity(n: usize, seed: u64, relaxed: bool) -> Result<usize> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("rank must be at least 4, got {n}")));
    }
    let rels: Vec<VectorRelation> = conjugate_relations(n).into_iter().filter(|rl| !(relaxed && rl.name == "c")).collect();
    let (l, r) = PointSampler::new(seed, n).point();
    nullity_at(n, &rels, l, r)
}

/// Solution-space dimension of the family's own system at `l = r^(7-2n)`
/// and a random admissible `r`.
pub fn v_system_nullity(n: usize, seed: u64) -> Result<usize> {
    let r = PointSampler::new(seed, n).admissible_r();
    let l = LValue::r_pow(7 - 2 * n as i32).eval(&r)?;
    nullity_at(n, &v_family_relations(n), l, r)
}
