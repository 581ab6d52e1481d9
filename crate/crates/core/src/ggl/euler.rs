use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactalg::{factorial, DPoly, MultiPoly, Rational, D};
use crate::residue::{
    chern_hypersurface, hypersurface_integral_dpoly, tautological_context, todd_class, IntegralRoute,
    ResidueMethod,
};
use crate::Limits;

/// Extra degree used when re-running at a larger budget.
pub const STABILITY_STEP: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerCharacteristic {
    pub value: DPoly,
    /// Total `(u, h)` degree kept in the exponential and Todd factors.
    pub budget: usize,
    /// Whether `budget + STABILITY_STEP` reproduced `value`.
    pub stable: bool,
}

/// Default budget `dim X_k + n`.
pub fn default_budget(n: usize, k: usize) -> usize {
    n + k * (n - 1) + n
}

/// `e^(a.u) Td(X)` with every term of `(u, h)`-degree above `budget` dropped.
pub fn euler_integrand(n: usize, a: &[BigInt], budget: usize) -> Result<MultiPoly> {
    let k = a.len();
    let ctx = tautological_context(k).extended(&[D]);
    let weights: Vec<u32> = (0..ctx.len()).map(|v| u32::from(v <= k)).collect();
    let cap = u32::try_from(budget).map_err(|_| Error::Argument("budget too large".into()))?;
    let linear = a.iter().enumerate().fold(MultiPoly::zero(&ctx), |acc, (i, ai)| {
        acc + MultiPoly::var(&ctx, i).scale(&Rational::from_integer(ai.clone()))
    });
    let mut exp = MultiPoly::one(&ctx);
    let mut power = MultiPoly::one(&ctx);
    for m in 1..=budget {
        power = (&power * &linear).truncate_weighted(cap, &weights);
        exp = exp + power.scale(&Rational::from_integer(factorial(m as u64)).recip());
    }
    let td = todd_class(&chern_hypersurface(n)?)?.into_poly().rebase(&ctx)?;
    Ok((exp * td).truncate_weighted(cap, &weights))
}

/// `chi(X, pi_* O_{X_k}(a))` on a smooth degree-d hypersurface of dimension `n`.
///
/// The Chern character `e^(a.u)` and `Td(X)` are pushed through the Segre-class
/// residue formula and integrated over `X`. The value is recomputed at a larger
/// budget and `stable` records whether the two agree.
pub fn euler_characteristic(
    n: usize,
    a: &[BigInt],
    budget: Option<usize>,
    limits: &Limits,
) -> Result<EulerCharacteristic> {
    euler_characteristic_with(n, a, budget, ResidueMethod::Expand, limits)
}

/// [`euler_characteristic`] with a chosen residue algorithm.
pub fn euler_characteristic_with(
    n: usize,
    a: &[BigInt],
    budget: Option<usize>,
    method: ResidueMethod,
    limits: &Limits,
) -> Result<EulerCharacteristic> {
    if n < 1 {
        return Err(Error::Argument("dimension n must be at least 1".into()));
    }
    if a.is_empty() {
        return Err(Error::Argument("need at least one weight".into()));
    }
    let k = a.len();
    let budget = budget.unwrap_or_else(|| default_budget(n, k));
    let run = |b: usize| -> Result<DPoly> {
        let p = euler_integrand(n, a, b)?;
        hypersurface_integral_dpoly(n, k, &p, IntegralRoute::Segre, method, limits)
    };
    let value = run(budget)?;
    let stable = run(budget + STABILITY_STEP)? == value;
    Ok(EulerCharacteristic { value, budget, stable })
}

/// `chi(X, O_X) = int_X Td(X)`.
pub fn todd_genus(n: usize) -> Result<DPoly> {
    crate::residue::integrate_over_x(&todd_class(&chern_hypersurface(n)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    #[test]
    fn integrand_respects_budget() {
        let p = euler_integrand(2, &[BigInt::from(3)], 3).unwrap();
        assert_eq!(p.homogeneous_degree(&[1, 1, 0]), None);
        assert!(p.terms().all(|(m, _)| m.weighted_degree(&[1, 1, 0]) <= 3));
        assert_eq!(p.constant_term(), int(1));
        // linear part: 3 u1 + c1/2 with c1 = (4 - d) h
        let ctx = p.ctx().clone();
        let u = ctx.require("u1").unwrap();
        let h = ctx.require("h").unwrap();
        assert_eq!(p.coefficient_of(&[(u, 1), (h, 0)]).as_constant(), Some(int(3)));
    }

    #[test]
    fn surface_genus_is_integral_of_todd() {
        let td = todd_genus(2).unwrap();
        // d (d^2 - 6d + 11) / 6
        assert_eq!(td.coeffs(), &[int(0), rat(11, 6), int(-1), rat(1, 6)]);
    }

    #[test]
    fn stable_for_small_surfaces() {
        for a in [vec![1i64], vec![3, 1]] {
            let a: Vec<BigInt> = a.into_iter().map(BigInt::from).collect();
            let chi = euler_characteristic(2, &a, None, &Limits::default()).unwrap();
            assert!(chi.stable, "{a:?}");
            assert!(!chi.value.is_zero());
            let other = euler_characteristic_with(2, &a, None, ResidueMethod::Stepwise, &Limits::default()).unwrap();
            assert_eq!(other, chi);
        }
    }
}
