use std::fmt;

use super::context::Ctx;
use super::poly::MultiPoly;
use super::series::series_inverse_graded;
use super::Rational;
use crate::error::{Error, Result};

/// Name of the hyperplane class variable.
pub const H: &str = "h";
/// Name of the hypersurface degree variable.
pub const D: &str = "d";
/// Name of the symbolic Morse parameter.
pub const DELTA: &str = "delta";

const COEFFICIENT_VARS: [&str; 2] = [D, DELTA];

/// Element of `Q[d, delta][h] / (h^(n+1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HClass {
    poly: MultiPoly,
    h: usize,
    n: u32,
}

/// Truncates `a` below `h^(n+1)`; `a` may only involve `h`, `d` and `delta`.
pub fn truncate_h(a: &MultiPoly, n: u32) -> Result<HClass> {
    HClass::new(a, n)
}

impl HClass {
    pub fn new(a: &MultiPoly, n: u32) -> Result<Self> {
        let ctx = a.ctx();
        let h = ctx.require(H)?;
        for v in a.variables_used() {
            let name = ctx.name(v);
            if v != h && !COEFFICIENT_VARS.contains(&name) {
                return Err(Error::Context(format!(
                    "class on X may not involve variable {name}"
                )));
            }
        }
        Ok(HClass {
            poly: a.truncate_var(h, n.min(u16::MAX as u32) as u16),
            h,
            n,
        })
    }

    pub fn zero(ctx: &Ctx, n: u32) -> Result<Self> {
        Self::new(&MultiPoly::zero(ctx), n)
    }

    pub fn one(ctx: &Ctx, n: u32) -> Result<Self> {
        Self::new(&MultiPoly::one(ctx), n)
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly {
        self.poly
    }

    pub fn ctx(&self) -> &Ctx {
        self.poly.ctx()
    }

    pub fn h_var(&self) -> usize {
        self.h
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn wrap(&self, poly: MultiPoly) -> HClass {
        HClass {
            poly: poly.truncate_var(self.h, self.n as u16),
            h: self.h,
            n: self.n,
        }
    }

    fn check(&self, other: &HClass) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Context(format!(
                "classes truncated at different degrees {} and {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &HClass) -> Result<HClass> {
        self.check(other)?;
        Ok(self.wrap(self.poly.try_add(&other.poly)?))
    }

    pub fn sub(&self, other: &HClass) -> Result<HClass> {
        self.check(other)?;
        Ok(self.wrap(self.poly.try_sub(&other.poly)?))
    }

    pub fn mul(&self, other: &HClass) -> Result<HClass> {
        self.check(other)?;
        self.poly.try_mul(&other.poly)?;
        Ok(self.wrap(self.poly.mul_truncated(&other.poly, self.h, self.n as u16)))
    }

    pub fn scale(&self, c: &Rational) -> HClass {
        self.wrap(self.poly.scale(c))
    }

    pub fn pow(&self, e: u32) -> HClass {
        let mut acc = self.wrap(MultiPoly::one(self.ctx()));
        for _ in 0..e {
            acc = acc.mul(self).expect("same truncation");
        }
        acc
    }

    /// Multiplicative inverse; the `h`-free part must be exactly 1.
    pub fn inverse(&self) -> Result<HClass> {
        let mut weights = vec![0; self.ctx().len()];
        weights[self.h] = 1;
        Ok(self.wrap(series_inverse_graded(&self.poly, self.n, &weights)?))
    }

    /// Coefficient of `h^i`, a polynomial in `d` (and `delta`).
    pub fn h_coefficient(&self, i: u32) -> MultiPoly {
        self.poly.coefficient_of(&[(self.h, i as u16)])
    }

    /// Degree-`i` homogeneous part `c_i h^i`.
    pub fn h_component(&self, i: u32) -> HClass {
        let h_pow = MultiPoly::var(self.ctx(), self.h).pow(i);
        self.wrap(self.h_coefficient(i) * h_pow)
    }
}

impl fmt::Display for HClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::VarContext;

    fn ctx() -> Ctx {
        VarContext::new(["h", "d"]).unwrap()
    }

    #[test]
    fn truncation_law() {
        let c = ctx();
        let h = MultiPoly::var(&c, 0);
        let d = MultiPoly::var(&c, 1);
        for n in 1..5 {
            assert!(truncate_h(&h.pow(n + 1), n).unwrap().is_zero());
            let a = MultiPoly::one(&c) + &h + h.pow(n + 2) * &d;
            assert_eq!(truncate_h(&a, n).unwrap().poly(), &(MultiPoly::one(&c) + &h));
            let top = truncate_h(&h.pow(n), n).unwrap();
            let one_h = truncate_h(&h, n).unwrap();
            assert!(top.mul(&one_h).unwrap().is_zero());
        }
    }

    #[test]
    fn foreign_variables_rejected() {
        let c = VarContext::new(["z1", "h", "d"]).unwrap();
        let z = MultiPoly::var(&c, 0);
        assert!(matches!(truncate_h(&z, 2), Err(Error::Context(_))));
        let no_h = VarContext::new(["d"]).unwrap();
        assert!(truncate_h(&MultiPoly::one(&no_h), 2).is_err());
    }
}
