//! The group of k-jets of reparametrizations `t -> a_1 t + ... + a_k t^k`.
//!
//! A jet acts on `(f', f'', ..., f^(k))` as a row vector times an upper
//! triangular matrix. With composition `compose(phi, psi) = phi(psi(t))` the
//! matrices satisfy `matrix(compose(phi, psi)) = matrix(phi) * matrix(psi)`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactalg::{Ctx, MultiPoly, Rational, VarContext};

/// A k-jet `alpha_1 t + ... + alpha_k t^k` with `alpha_1 != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetReparam {
    alpha: Vec<MultiPoly>,
}

pub type Matrix = Vec<Vec<MultiPoly>>;

impl JetReparam {
    pub fn new(alpha: Vec<MultiPoly>) -> Result<Self> {
        let Some(first) = alpha.first() else {
            return Err(Error::Argument("jet order k must be at least 1".into()));
        };
        if first.is_zero() {
            return Err(Error::Argument("linear coefficient must be nonzero".into()));
        }
        let ctx = first.ctx().clone();
        let alpha = alpha
            .iter()
            .map(|a| a.rebase(&ctx))
            .collect::<Result<Vec<_>>>()?;
        Ok(JetReparam { alpha })
    }

    pub fn from_rationals(alpha: &[Rational]) -> Result<Self> {
        let ctx = VarContext::new(Vec::<String>::new())?;
        Self::new(alpha.iter().map(|a| MultiPoly::constant(&ctx, a.clone())).collect())
    }

    pub fn identity(ctx: &Ctx, k: usize) -> Result<Self> {
        let mut alpha = vec![MultiPoly::zero(ctx); k];
        if let Some(a) = alpha.first_mut() {
            *a = MultiPoly::one(ctx);
        }
        Self::new(alpha)
    }

    pub fn order(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[MultiPoly] {
        &self.alpha
    }

    pub fn ctx(&self) -> &Ctx {
        self.alpha[0].ctx()
    }

    /// Whether the jet lies in the unipotent subgroup (`alpha_1 = 1`).
    pub fn is_unipotent(&self) -> bool {
        self.alpha[0].is_one()
    }
}

/// Compositions of `total` into `parts` positive integers, memoized by `(parts, total)`.
struct Compositions {
    cache: HashMap<(usize, usize), Vec<Vec<usize>>>,
}

impl Compositions {
    fn new() -> Self {
        Compositions {
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, parts: usize, total: usize) -> Vec<Vec<usize>> {
        if let Some(c) = self.cache.get(&(parts, total)) {
            return c.clone();
        }
        let out = if parts == 0 {
            if total == 0 {
                vec![vec![]]
            } else {
                vec![]
            }
        } else {
            let mut out = Vec::new();
            for first in 1..=total.saturating_sub(parts - 1) {
                for mut rest in self.get(parts - 1, total - first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        };
        self.cache.insert((parts, total), out.clone());
        out
    }
}

/// The k x k matrix with entry `(i, j)` the sum over compositions
/// `s_1 + ... + s_i = j` of `alpha_{s_1} ... alpha_{s_i}` (indices from 1).
pub fn reparam_matrix(phi: &JetReparam) -> Matrix {
    let k = phi.order();
    let ctx = phi.ctx().clone();
    let mut comps = Compositions::new();
    let mut m = vec![vec![MultiPoly::zero(&ctx); k]; k];
    for i in 1..=k {
        for j in i..=k {
            let mut entry = MultiPoly::zero(&ctx);
            for comp in comps.get(i, j) {
                let term = comp
                    .iter()
                    .fold(MultiPoly::one(&ctx), |acc, &s| acc * &phi.alpha[s - 1]);
                entry = entry + term;
            }
            m[i - 1][j - 1] = entry;
        }
    }
    m
}

/// Coefficients of `phi(psi(t))` modulo `t^(k+1)`.
pub fn reparam_compose(phi: &JetReparam, psi: &JetReparam) -> Result<JetReparam> {
    let k = phi.order();
    if psi.order() != k {
        return Err(Error::Argument(format!(
            "jet orders differ: {k} and {}",
            psi.order()
        )));
    }
    let ctx = phi.ctx().clone();
    let psi_alpha = psi
        .alpha
        .iter()
        .map(|a| a.rebase(&ctx))
        .collect::<Result<Vec<_>>>()?;
    // power[j] = coefficient of t^j in psi(t)^i, starting from psi^1
    let mut power: Vec<MultiPoly> = std::iter::once(MultiPoly::zero(&ctx))
        .chain(psi_alpha.iter().cloned())
        .collect();
    let mut out = vec![MultiPoly::zero(&ctx); k + 1];
    for i in 1..=k {
        for j in 0..=k {
            out[j] = &out[j] + &phi.alpha[i - 1] * &power[j];
        }
        let mut next = vec![MultiPoly::zero(&ctx); k + 1];
        for (a, pa) in power.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for b in 1..=k - a.min(k) {
                if a + b > k {
                    break;
                }
                next[a + b] = &next[a + b] + pa * &psi_alpha[b - 1];
            }
        }
        power = next;
    }
    JetReparam::new(out.into_iter().skip(1).collect())
}

/// Product of square matrices of polynomials.
pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let k = a.len();
    let ctx = a[0][0].ctx().clone();
    let mut out = vec![vec![MultiPoly::zero(&ctx); k]; k];
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                if a[i][l].is_zero() || b[l][j].is_zero() {
                    continue;
                }
                out[i][j] = &out[i][j] + &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{indexed_names, rat};

    fn symbolic(k: usize) -> (JetReparam, JetReparam) {
        let mut names = indexed_names("a", k);
        names.extend(indexed_names("b", k));
        let ctx = VarContext::new(names).unwrap();
        let a = (0..k).map(|i| MultiPoly::var(&ctx, i)).collect();
        let b = (0..k).map(|i| MultiPoly::var(&ctx, k + i)).collect();
        (JetReparam::new(a).unwrap(), JetReparam::new(b).unwrap())
    }

    #[test]
    fn identity_matrix() {
        let ctx = VarContext::new(Vec::<String>::new()).unwrap();
        let id = JetReparam::identity(&ctx, 4).unwrap();
        let m = reparam_matrix(&id);
        for (i, row) in m.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(e.is_one(), i == j);
                assert_eq!(e.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn second_order_matrix() {
        let (phi, _) = symbolic(2);
        let m = reparam_matrix(&phi);
        assert_eq!(m[0][0].to_string(), "a1");
        assert_eq!(m[0][1].to_string(), "a2");
        assert!(m[1][0].is_zero());
        assert_eq!(m[1][1].to_string(), "a1^2");
    }

    #[test]
    fn third_order_entry() {
        let (phi, _) = symbolic(3);
        let m = reparam_matrix(&phi);
        assert_eq!(m[1][2].to_string(), "2*a1*a2");
        assert_eq!(m[0][2].to_string(), "a3");
        assert_eq!(m[2][2].to_string(), "a1^3");
    }

    #[test]
    fn second_order_composition() {
        let (phi, psi) = symbolic(2);
        let c = reparam_compose(&phi, &psi).unwrap();
        assert_eq!(c.alpha()[0].to_string(), "a1*b1");
        assert_eq!(c.alpha()[1].to_string(), "a2*b1^2 + a1*b2");
        assert_eq!(
            reparam_matrix(&c),
            mat_mul(&reparam_matrix(&phi), &reparam_matrix(&psi))
        );
    }

    #[test]
    fn compose_with_identity() {
        let (phi, _) = symbolic(3);
        let id = JetReparam::identity(phi.ctx(), 3).unwrap();
        assert_eq!(reparam_compose(&phi, &id).unwrap(), phi);
        assert_eq!(reparam_compose(&id, &phi).unwrap(), phi);
    }

    #[test]
    fn argument_errors() {
        assert!(JetReparam::from_rationals(&[]).is_err());
        assert!(JetReparam::from_rationals(&[rat(0, 1), rat(1, 1)]).is_err());
        let a = JetReparam::from_rationals(&[rat(1, 1), rat(2, 1)]).unwrap();
        let b = JetReparam::from_rationals(&[rat(1, 1)]).unwrap();
        assert!(reparam_compose(&a, &b).is_err());
        assert!(a.is_unipotent());
    }

    #[test]
    fn scaling_is_diagonal() {
        let lambda = rat(3, 2);
        let mut alpha = vec![rat(0, 1); 5];
        alpha[0] = lambda.clone();
        let m = reparam_matrix(&JetReparam::from_rationals(&alpha).unwrap());
        let mut p = rat(1, 1);
        for (i, row) in m.iter().enumerate() {
            p *= &lambda;
            for (j, e) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(e.as_constant(), Some(p.clone()));
                } else {
                    assert!(e.is_zero());
                }
            }
        }
    }
}
