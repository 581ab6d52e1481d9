use num_bigint::BigInt;
use num_traits::Zero;

use super::config::GGLConfig;
use crate::error::{Error, Result};
use crate::exactalg::{int, Ctx, DPoly, MultiPoly, Rational, VarContext, D, DELTA, H};
use crate::names;
use crate::residue::{hypersurface_integral, IntegralRoute, ResidueMethod};
use crate::Limits;

/// Context `u1..uk, h, d, delta` of the Morse integrand.
pub fn integrand_context(k: usize) -> Ctx {
    let mut list: Vec<String> = (1..=k).map(names::u).collect();
    list.extend([H, D, DELTA].map(String::from));
    VarContext::new(list).expect("valid names")
}

/// `S = 2 - (n + k(n-1)) (2 + delta (d - n - 2))` in the given context, which must contain `d`.
fn s_in(ctx: &Ctx, n: usize, k: usize, delta: &MultiPoly) -> Result<MultiPoly> {
    let dim = (n + k * (n - 1)) as i64;
    let d = MultiPoly::var_named(ctx, D)?;
    let shifted = d - MultiPoly::from_int(ctx, n as i64 + 2);
    Ok(MultiPoly::from_int(ctx, 2)
        - (MultiPoly::from_int(ctx, 2) + delta * &shifted).scale(&int(dim)))
}

/// `S_{n,k,delta,d}` as an affine polynomial in `d`.
pub fn s_constant(n: usize, k: usize, delta: &Rational) -> MultiPoly {
    let ctx = VarContext::new([D]).expect("valid names");
    let delta = MultiPoly::constant(&ctx, delta.clone());
    s_in(&ctx, n, k, &delta).expect("context has d")
}

/// `(a.u + 2|a| h)^((k+1)(n-1)) (a.u + S |a| h)` with `delta` left symbolic.
pub fn intersection_integrand(n: usize, k: usize, a: &[BigInt]) -> Result<MultiPoly> {
    if a.len() != k {
        return Err(Error::Argument(format!("expected {k} weights, got {}", a.len())));
    }
    let ctx = integrand_context(k);
    let norm = Rational::from_integer(a.iter().fold(BigInt::zero(), |acc, x| acc + x));
    let linear = a.iter().enumerate().fold(MultiPoly::zero(&ctx), |acc, (i, ai)| {
        acc + MultiPoly::var(&ctx, i).scale(&Rational::from_integer(ai.clone()))
    });
    let h = MultiPoly::var_named(&ctx, H)?;
    let delta = MultiPoly::var_named(&ctx, DELTA)?;
    let s = s_in(&ctx, n, k, &delta)?;
    let nef = &linear + h.scale(&(int(2) * &norm));
    let twisted = &linear + (s * &h).scale(&norm);
    Ok(nef.pow(((k + 1) * (n - 1)) as u32) * twisted)
}

/// The intersection number as a polynomial in the hypersurface degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPolynomial {
    /// `I(d, delta)` before `delta` is specialized, in the context `d, delta`.
    pub symbolic: MultiPoly,
    /// `I(d)`.
    pub i: DPoly,
    /// `p(d) = I(d) / d`.
    pub p: DPoly,
}

/// Computes `I(d)` through the residue formula and splits off the factor `d`.
pub fn build_intersection_polynomial(
    cfg: &GGLConfig,
    route: IntegralRoute,
    method: ResidueMethod,
    limits: &Limits,
) -> Result<IntersectionPolynomial> {
    let integrand = intersection_integrand(cfg.n, cfg.k, &cfg.a)?;
    let value = hypersurface_integral(cfg.n, cfg.k, &integrand, route, method, limits)?;
    let target = VarContext::new([D, DELTA]).expect("valid names");
    let symbolic = value.rebase(&target)?;
    let specialized = symbolic.evaluate(1, &cfg.delta);
    let i = DPoly::from_multipoly(&specialized, D)?;
    let p = i.div_by_d().ok_or_else(|| {
        Error::Internal(format!("intersection polynomial {i} is not divisible by d"))
    })?;
    Ok(IntersectionPolynomial { symbolic, i, p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn s_constant_values() {
        let s = s_constant(2, 2, &rat(0, 1));
        assert_eq!(s.as_constant(), Some(int(-6)));
        // n = k: 2 - 2n^2 + n^2 (n+2) delta - n^2 delta d
        let s = s_constant(3, 3, &rat(1, 5));
        let d = DPoly::from_multipoly(&s, D).unwrap();
        assert_eq!(d.coeffs(), &[int(2 - 18) + rat(9 * 5, 5), rat(-9, 5)]);
    }

    #[test]
    fn integrand_is_homogeneous_of_tower_dimension() {
        let a = [BigInt::from(3), BigInt::from(1)];
        let p = intersection_integrand(2, 2, &a).unwrap();
        let weights = [1, 1, 1, 0, 0];
        assert_eq!(p.homogeneous_degree(&weights), Some(4));
    }

    #[test]
    fn surface_polynomial_divisible_by_d() {
        let cfg = GGLConfig::new(2, 2, vec![BigInt::from(3), BigInt::from(1)], rat(0, 1)).unwrap();
        let r = build_intersection_polynomial(&cfg, IntegralRoute::Hypersurface, ResidueMethod::Expand, &Limits::default())
            .unwrap();
        assert_eq!(r.i.degree(), Some(3));
        assert_eq!(r.p.degree(), Some(2));
        assert!(r.i.coeff(0).is_zero());
    }
}
