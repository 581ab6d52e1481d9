//! Iterated residues at infinity and the integrands they act on.

mod builders;
mod classes;
mod expand;
mod form;
mod stepwise;

pub use builders::{
    demailly_integrand, fibre_residue_integrand, flag_residue_integrand, grassmannian_form,
    hypersurface_integrand, segre_route_sign, tautological_context, Lambdas,
};
pub use classes::{
    chern_hypersurface, hd_context, integrate_over_x, integrate_over_x_symbolic,
    segre_hypersurface, todd_class, SegreData,
};
pub use expand::residue_expand;
pub use form::{orientation_sign, LinearForm, ResidueForm, STEP_SIGN};
pub use stepwise::residue_stepwise;

use crate::error::{Error, Result};
use crate::exactalg::{DPoly, MultiPoly, Rational, D, H};
use crate::Limits;

/// Which residue algorithm evaluates a form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResidueMethod {
    Expand,
    Stepwise,
}

impl ResidueMethod {
    pub fn other(self) -> Self {
        match self {
            ResidueMethod::Expand => ResidueMethod::Stepwise,
            ResidueMethod::Stepwise => ResidueMethod::Expand,
        }
    }
}

/// Which integrand computes `int_{X_k} P` on a hypersurface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntegralRoute {
    /// Chern data eliminated through `(1+h)^(n+2) = (1+dh) c(X)`.
    Hypersurface,
    /// Segre classes of the hypersurface fed into the general tower formula.
    Segre,
}

/// Residue of `form` as a polynomial in the coefficient variables.
///
/// The stepwise method fails with an internal error when the poles do not
/// cancel, which happens only for symbolic coefficients.
pub fn residue(form: &ResidueForm, method: ResidueMethod, limits: &Limits) -> Result<MultiPoly> {
    match method {
        ResidueMethod::Expand => residue_expand(form, limits),
        ResidueMethod::Stepwise => residue_stepwise(form, limits)?.into_polynomial(),
    }
}

/// Fibre integral of `P(u_1..u_k)` over the tower fibre through its residue formula.
///
/// The value lives in the context of `p`, free of the `u` variables.
pub fn fibre_integral_residue(
    n: usize,
    k: usize,
    p: &MultiPoly,
    lambdas: &[Rational],
    method: ResidueMethod,
    limits: &Limits,
) -> Result<MultiPoly> {
    crate::localization::check_lambdas(lambdas, n)?;
    let form = fibre_residue_integrand(n, k, p, &Lambdas::Numeric(lambdas.to_vec()))?;
    residue(&form, method, limits)?.rebase(p.ctx())
}

/// Builds the integrand for `int_{X_k} P` on a smooth degree-d hypersurface of dimension n.
pub fn hypersurface_form(n: usize, k: usize, p: &MultiPoly, route: IntegralRoute) -> Result<ResidueForm> {
    match route {
        IntegralRoute::Hypersurface => hypersurface_integrand(n, k, p),
        IntegralRoute::Segre => demailly_integrand(n, k, p, &segre_hypersurface(n)?),
    }
}

/// `int_{X_k} P` as a polynomial in `d` and any further parameters of `P`.
///
/// The residue leaves a class on `X`; only its `h^n` part survives, with
/// `int_X h^n = d`.
pub fn hypersurface_integral(
    n: usize,
    k: usize,
    p: &MultiPoly,
    route: IntegralRoute,
    method: ResidueMethod,
    limits: &Limits,
) -> Result<MultiPoly> {
    let form = hypersurface_form(n, k, p, route)?;
    let value = residue(&form, method, limits)?;
    let ctx = value.ctx().clone();
    let h = ctx.require(H)?;
    let exp = u16::try_from(n).map_err(|_| Error::Argument("dimension too large".into()))?;
    let top = value.coefficient_of(&[(h, exp)]);
    Ok(top * MultiPoly::var_named(&ctx, D)?)
}

/// [`hypersurface_integral`] for integrands whose only parameter is `d`.
pub fn hypersurface_integral_dpoly(
    n: usize,
    k: usize,
    p: &MultiPoly,
    route: IntegralRoute,
    method: ResidueMethod,
    limits: &Limits,
) -> Result<DPoly> {
    DPoly::from_multipoly(&hypersurface_integral(n, k, p, route, method, limits)?, D)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat, VarContext};

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn grassmannian_residue_is_two() {
        let form = grassmannian_form();
        for method in [ResidueMethod::Expand, ResidueMethod::Stepwise] {
            let r = residue(&form, method, &limits()).unwrap();
            assert_eq!(r.as_constant(), Some(int(2)), "{method:?}");
        }
    }

    #[test]
    fn projective_line_residue_matches_fixed_points() {
        let ctx = VarContext::new(["u1"]).unwrap();
        let p = MultiPoly::var(&ctx, 0);
        let lambdas = [rat(2, 1), rat(-3, 5)];
        for method in [ResidueMethod::Expand, ResidueMethod::Stepwise] {
            let r = fibre_integral_residue(2, 1, &p, &lambdas, method, &limits()).unwrap();
            assert_eq!(r.as_constant(), Some(int(-1)));
        }
    }

    #[test]
    fn fibre_integrand_structure() {
        let ctx = tautological_context(2);
        let p = MultiPoly::one(&ctx);
        let form = fibre_residue_integrand(2, 2, &p, &Lambdas::Symbolic).unwrap();
        assert_eq!(form.k(), 2);
        // (z1 - z2) and four lambda factors
        assert_eq!(form.factors().len(), 5);
        assert_eq!(form.numerator().to_string(), "-z2");
        let pure_z = form
            .factors()
            .iter()
            .filter(|(f, _)| f.constant().is_zero())
            .count();
        assert_eq!(pure_z, 1);
    }

    #[test]
    fn fibre_integrand_factor_counts() {
        for k in 2..=4 {
            let ctx = tautological_context(k);
            let form = fibre_residue_integrand(3, k, &MultiPoly::one(&ctx), &Lambdas::Symbolic).unwrap();
            let pairs = k * (k - 1) / 2;
            let pure_z = form.factors().iter().filter(|(f, _)| f.constant().is_zero()).count();
            assert_eq!(pure_z, pairs);
            assert_eq!(form.numerator().total_degree(), Some(pairs as u32));
        }
    }

    #[test]
    fn hypersurface_integrand_shape() {
        let ctx = tautological_context(2);
        let form = hypersurface_integrand(2, 2, &MultiPoly::one(&ctx)).unwrap();
        let mults: Vec<u32> = form.factors().iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 4, 4]);
        assert_eq!(form.truncation().map(|(_, m)| m), Some(2));
    }

    #[test]
    fn surface_top_self_intersection() {
        // k = 1: int_{X_1} u^3 = 10d - 4d^2 for a surface
        let ctx = tautological_context(1);
        let p = MultiPoly::var(&ctx, 0).pow(3);
        for route in [IntegralRoute::Hypersurface, IntegralRoute::Segre] {
            for method in [ResidueMethod::Expand, ResidueMethod::Stepwise] {
                let v = hypersurface_integral_dpoly(2, 1, &p, route, method, &limits()).unwrap();
                assert_eq!(v.coeffs(), &[int(0), int(10), int(-4)], "{route:?} {method:?}");
            }
        }
    }

    #[test]
    fn hypersurface_pullback_of_base_class() {
        // u h^2 on X_1 over a surface; here u restricts to the hyperplane class of each fibre
        let ctx = tautological_context(1);
        let p = MultiPoly::var(&ctx, 0) * MultiPoly::var(&ctx, 1).pow(2);
        let v = hypersurface_integral_dpoly(2, 1, &p, IntegralRoute::Hypersurface, ResidueMethod::Expand, &limits())
            .unwrap();
        assert_eq!(v.coeffs(), &[int(0), int(1)]);
    }

    #[test]
    fn wrong_degree_integrates_to_zero() {
        let ctx = tautological_context(2);
        let p = MultiPoly::var(&ctx, 0).pow(3) + MultiPoly::var(&ctx, 1).pow(5);
        let v = hypersurface_integral_dpoly(2, 2, &p, IntegralRoute::Hypersurface, ResidueMethod::Expand, &limits())
            .unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn constant_factor_rejected() {
        let ctx = VarContext::new(["z1", "h"]).unwrap();
        let h = MultiPoly::var(&ctx, 1);
        let form = ResidueForm::from_polys(MultiPoly::one(&ctx), &[(h, 1)], vec![0]).unwrap();
        assert!(matches!(
            residue_expand(&form, &limits()),
            Err(Error::NotResidueIntegrable(_))
        ));
        assert!(matches!(
            residue_stepwise(&form, &limits()),
            Err(Error::NotResidueIntegrable(_))
        ));
    }
}
