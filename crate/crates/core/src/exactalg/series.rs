use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::Rational;
use crate::error::{Error, Result};

/// The unique `b` with `a * b = 1` modulo terms of total degree above `cap`.
pub fn series_inverse(a: &MultiPoly, cap: u32) -> Result<MultiPoly> {
    let weights = vec![1; a.ctx().len()];
    series_inverse_graded(a, cap, &weights)
}

/// Inverse modulo weighted degree above `cap`.
///
/// Variables of weight 0 act as coefficients; the weight-0 part of `a` must be exactly 1.
pub fn series_inverse_graded(a: &MultiPoly, cap: u32, weights: &[u32]) -> Result<MultiPoly> {
    let comps = a.graded_components(weights);
    let ctx = a.ctx();
    let unit = comps.get(&0).cloned().unwrap_or_else(|| MultiPoly::zero(ctx));
    if !unit.is_one() {
        return Err(Error::NonUnit(unit.to_string()));
    }
    let mut parts: Vec<MultiPoly> = vec![MultiPoly::one(ctx)];
    for m in 1..=cap {
        let mut acc = MultiPoly::zero(ctx);
        for i in 1..=m {
            if let Some(ai) = comps.get(&i) {
                acc = acc - ai * &parts[(m - i) as usize];
            }
        }
        parts.push(acc);
    }
    Ok(parts.into_iter().fold(MultiPoly::zero(ctx), |s, p| s + p))
}

/// Truncated univariate power series with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniSeries {
    coeffs: Vec<Rational>,
}

impl UniSeries {
    /// Series from coefficients, truncated to `order` terms.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order, Rational::zero());
        UniSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `(1 - e^{-x}) / x`.
    pub fn one_minus_exp_neg_over_x(order: usize) -> Self {
        let mut fact = BigInt::one();
        let mut coeffs = Vec::with_capacity(order);
        for j in 0..order {
            fact *= BigInt::from(j + 1);
            let sign = if j % 2 == 0 { 1 } else { -1 };
            coeffs.push(Rational::new(BigInt::from(sign), fact.clone()));
        }
        UniSeries { coeffs }
    }

    pub fn mul(&self, other: &UniSeries) -> UniSeries {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                out[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        UniSeries { coeffs: out }
    }

    pub fn inverse(&self) -> Result<UniSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnit(self.coeffs[0].to_string()));
        }
        let n = self.order();
        let mut out = vec![Rational::zero(); n];
        out[0] = Rational::one();
        for m in 1..n {
            let mut acc = Rational::zero();
            for i in 1..=m {
                acc -= &self.coeffs[i] * &out[m - i];
            }
            out[m] = acc;
        }
        Ok(UniSeries { coeffs: out })
    }

    /// `log` of a series with constant term 1.
    pub fn log(&self) -> Result<UniSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnit(self.coeffs[0].to_string()));
        }
        let n = self.order();
        // log f = integral of f'/f
        let mut deriv = vec![Rational::zero(); n];
        for i in 1..n {
            deriv[i - 1] = &self.coeffs[i] * Rational::from_integer(BigInt::from(i));
        }
        let q = UniSeries { coeffs: deriv }.mul(&self.inverse()?);
        let mut out = vec![Rational::zero(); n];
        for i in 1..n {
            out[i] = &q.coeffs[i - 1] / Rational::from_integer(BigInt::from(i));
        }
        Ok(UniSeries { coeffs: out })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, VarContext};

    #[test]
    fn geometric_series() {
        let c = VarContext::new(["h"]).unwrap();
        let a = MultiPoly::one(&c) + MultiPoly::var(&c, 0);
        let b = series_inverse(&a, 3).unwrap();
        assert_eq!(b.to_string(), "-h^3 + h^2 - h + 1");
        assert_eq!(series_inverse(&MultiPoly::one(&c), 5).unwrap(), MultiPoly::one(&c));
    }

    #[test]
    fn non_unit_rejected() {
        let c = VarContext::new(["h"]).unwrap();
        let a = MultiPoly::from_int(&c, 2) + MultiPoly::var(&c, 0);
        assert!(matches!(series_inverse(&a, 2), Err(Error::NonUnit(_))));
        assert!(matches!(
            series_inverse(&MultiPoly::var(&c, 0), 2),
            Err(Error::NonUnit(_))
        ));
    }

    #[test]
    fn surface_segre_series() {
        // c(X) = (1+h)^4 / (1+dh) for a surface of degree d in P^3
        let c = VarContext::new(["h", "d"]).unwrap();
        let h = MultiPoly::var(&c, 0);
        let d = MultiPoly::var(&c, 1);
        let one = MultiPoly::one(&c);
        let weights = [1, 0];
        let inv_dh = series_inverse_graded(&(&one + &d * &h), 2, &weights).unwrap();
        let chern = ((&one + &h).pow(4) * inv_dh).truncate_var(0, 2);
        let segre = series_inverse_graded(&chern, 2, &weights).unwrap();
        assert_eq!((&chern * &segre).truncate_var(0, 2), one);
        let expected = &one + (&d - MultiPoly::from_int(&c, 4)) * &h
            + (MultiPoly::from_int(&c, 10) - d.scale(&rat(4, 1))) * h.pow(2);
        assert_eq!(segre, expected);
    }

    #[test]
    fn todd_generating_series() {
        let f = UniSeries::one_minus_exp_neg_over_x(5).inverse().unwrap();
        assert_eq!(f.coeffs(), &[rat(1, 1), rat(1, 2), rat(1, 12), rat(0, 1), rat(-1, 720)]);
        let l = f.log().unwrap();
        assert_eq!(l.coeffs(), &[rat(0, 1), rat(1, 2), rat(-1, 24), rat(0, 1), rat(1, 2880)]);
    }
}
