use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::VectorExpr;
use crate::error::{Error, Result};
use crate::field::{LValue, RationalFunction};
use crate::rep::{Representation, RootLabel};

fn rp(k: i32) -> RationalFunction {
    RationalFunction::r_pow(k)
}

fn w(i: usize, j: usize) -> RootLabel {
    RootLabel::w(i, j)
}

fn wh(i: usize, j: usize) -> RootLabel {
    RootLabel::wh(i, j)
}

/// The vector scaled by `r` under every generator when `l = r^(7-4n)`.
pub fn vector_u(n: usize) -> VectorExpr {
    let shift = 2 * n as i32 - 4;
    let mut u = VectorExpr::new();
    for j in 2..=n {
        for i in 1..j {
            let k = (i + j) as i32;
            u.add_term(wh(i, j), rp(k));
            u.add_term(w(i, j), rp(k + shift));
        }
    }
    u
}

/// `v_1` of the `(n-1)`-dimensional family, normalized by `ŵ_23 ↦ 1`.
fn v_first(n: usize) -> VectorExpr {
    let n2 = 2 * n as i32;
    let mut v = VectorExpr::new().with(w(1, 2), rp(n2 - 6) - rp(-2));
    for j in 3..=n {
        let c = j as i32 - 5;
        v.add_term(w(2, j), rp(c));
        v.add_term(w(1, j), -rp(c + 1));
        v.add_term(wh(2, j), rp(c + 2));
        v.add_term(wh(1, j), -rp(c + 3));
    }
    v
}

/// Closed form of `v_1, …, v_{n-1}` spanning the invariant subspace at
/// `l = r^(7-2n)`.
pub fn vectors_v(n: usize) -> Result<Vec<VectorExpr>> {
    if n < 5 {
        return Err(Error::Unsupported(format!("the (n-1)-dimensional family needs n >= 5, got {n}")));
    }
    let n2 = 2 * n as i32;
    let mut out = vec![];
    for i in 1..n {
        let ii = i as i32;
        let mut v = VectorExpr::new().with(w(i, i + 1), rp(n2 - 6) - rp(-2));
        for j in i + 2..=n {
            let c = j as i32 - ii - 4;
            v.add_term(w(i + 1, j), rp(c));
            v.add_term(w(i, j), -rp(c + 1));
            v.add_term(wh(i + 1, j), rp(c + 2));
            v.add_term(wh(i, j), -rp(c + 3));
        }
        for s in 1..i {
            let c = s as i32 - ii;
            v.add_term(w(s, i + 1), rp(c + n2 - 6));
            v.add_term(w(s, i), -rp(c + n2 - 5));
            v.add_term(wh(s, i + 1), rp(c));
            v.add_term(wh(s, i), -rp(c + 1));
        }
        out.push(v);
    }
    Ok(out)
}

/// `v_1` from its closed form and `v_k = ν_{k+1}(v_{k-1})/r − v_{k-1}`,
/// computed in the given representation.
pub fn vectors_v_recursive(rep: &Representation<RationalFunction>) -> Result<Vec<VectorExpr>> {
    let n = rep.n();
    if n < 5 {
        return Err(Error::Unsupported(format!("the (n-1)-dimensional family needs n >= 5, got {n}")));
    }
    let b = rep.basis();
    let r_inv = rep.r().inv()?;
    let mut out = vec![v_first(n)];
    for k in 2..n {
        let prev = out[k - 2].to_dense(b);
        let moved = rep.g(k + 1).mul_vec(&prev);
        let next: Vec<RationalFunction> = moved.iter().zip(&prev).map(|(a, p)| a * &r_inv - p.clone()).collect();
        out.push(VectorExpr::from_dense(b, &next));
    }
    Ok(out)
}

/// `t_ij = w_ij − ŵ_ij`, spanning an invariant subspace at `l = 1/r`.
pub fn vectors_t(n: usize) -> Vec<VectorExpr> {
    let mut out = vec![];
    for j in 2..=n {
        for i in 1..j {
            out.push(VectorExpr::new().with(w(i, j), RationalFunction::one()).with(wh(i, j), -RationalFunction::one()));
        }
    }
    out
}

/// The four explicit members of the common kernel of the conjugates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum KernelVector {
    X,
    Y,
    Z,
    J,
}

impl KernelVector {
    pub const ALL: [KernelVector; 4] = [Self::X, Self::Y, Self::Z, Self::J];

    pub fn name(self) -> &'static str {
        match self {
            Self::X => "X",
            Self::Y => "Y",
            Self::Z => "Z",
            Self::J => "J",
        }
    }

    /// The value of `l` at which the vector lies in the kernel.
    pub fn l_value(self, n: usize) -> LValue {
        match self {
            Self::X => LValue::r_pow(3),
            Self::Y | Self::Z => LValue::signed(-1, 3),
            Self::J => LValue::signed(-1, 5 - 2 * n as i32),
        }
    }

    pub fn applies(self, n: usize) -> bool {
        match self {
            Self::Y => n >= 5,
            Self::Z => n == 4,
            _ => n >= 4,
        }
    }
}

impl fmt::Display for KernelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown vector {s:?}")))
    }
}

pub fn kernel_vector(n: usize, which: KernelVector) -> Result<VectorExpr> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("rank must be at least 4, got {n}")));
    }
    if !which.applies(n) {
        return Err(Error::Unsupported(format!("vector {which} is not defined for n = {n}")));
    }
    let one = RationalFunction::one;
    Ok(match which {
        KernelVector::X => VectorExpr::new()
            .with(w(2, 4), one())
            .with(wh(2, 4), rp(2))
            .with(w(1, 4), -rp(1))
            .with(wh(1, 4), -rp(3))
            .with(w(2, 3), -rp(1))
            .with(wh(2, 3), -rp(3))
            .with(w(1, 3), rp(2))
            .with(wh(1, 3), rp(4)),
        KernelVector::Y => VectorExpr::new().with(w(3, 4), one()).with(w(3, 5), -rp(-1)).with(w(4, 5), rp(-2)),
        KernelVector::Z => VectorExpr::new().with(wh(2, 4), rp(3)).with(wh(3, 4), -rp(2)).with(w(2, 3), one()),
        KernelVector::J => {
            let a = 2 * n as i32 - 6;
            let mut v = VectorExpr::new()
                .with(wh(1, 2), one())
                .with(w(1, 2), rp(a))
                .with(wh(1, 3), -rp(-1))
                .with(w(1, 3), -rp(a - 1))
                .with(w(2, 3), -(one() + rp(a)));
            for j in 4..=n {
                let c = j as i32 - 4;
                v.add_term(w(3, j), rp(c));
                v.add_term(wh(3, j), -rp(c));
                v.add_term(w(2, j), -rp(c + 1));
                v.add_term(wh(2, j), rp(c + 1));
            }
            v
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u_coefficients() {
        let u = vector_u(4);
        assert_eq!(u.coeff(wh(1, 2)), rp(3));
        assert_eq!(u.coeff(w(1, 2)), rp(7));
        assert_eq!(u.coords.len(), 12);
    }

    #[test]
    fn v1_matches_the_closed_form() {
        for n in 5..=7 {
            assert_eq!(vectors_v(n).unwrap()[0], v_first(n));
        }
        let v = vectors_v(6).unwrap();
        assert_eq!(v[0].coeff(w(1, 2)), rp(6) - rp(-2));
        assert!(vectors_v(4).is_err());
    }

    #[test]
    fn recursion_reproduces_closed_form_at_critical_l() {
        for n in [5, 6] {
            let rep = Representation::at_l(n, &LValue::r_pow(7 - 2 * n as i32)).unwrap();
            assert_eq!(vectors_v_recursive(&rep).unwrap(), vectors_v(n).unwrap());
        }
    }

    #[test]
    fn kernel_vector_constraints() {
        assert!(kernel_vector(4, KernelVector::Y).is_err());
        assert!(kernel_vector(5, KernelVector::Z).is_err());
        assert_eq!(kernel_vector(4, KernelVector::Z).unwrap().coords.len(), 3);
        assert_eq!(KernelVector::J.l_value(4).to_string(), "-r^-3");
    }
}
