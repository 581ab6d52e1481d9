use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{Ctx, MultiPoly, Rational};

/// Sign picked up by one residue at infinity relative to the coefficient of `z^-1`.
///
/// This is the only orientation constant in the crate: `Res_{z=inf} f dz`
/// is `STEP_SIGN` times the coefficient of `1/z` in the expansion at infinity.
pub const STEP_SIGN: i64 = -1;

/// Orientation of a k-fold iterated residue, `STEP_SIGN^k`.
pub fn orientation_sign(k: usize) -> Rational {
    Rational::from_integer(STEP_SIGN.pow(k as u32).into())
}

/// Affine-linear form `constant + sum_i c_i z_i`; the constant is free of the z's.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    z_coeffs: Vec<Rational>,
    constant: MultiPoly,
}

impl LinearForm {
    pub fn new(constant: MultiPoly, z_coeffs: Vec<Rational>) -> Self {
        LinearForm { z_coeffs, constant }
    }

    /// Reads a polynomial of degree at most one in the z variables `z_vars`.
    pub fn from_poly(p: &MultiPoly, z_vars: &[usize]) -> Result<Self> {
        let ctx = p.ctx();
        let mut z_coeffs = vec![Rational::zero(); z_vars.len()];
        let mut constant = MultiPoly::zero(ctx);
        for (m, c) in p.terms() {
            let zdeg: u32 = z_vars.iter().map(|&v| m.exp(v) as u32).sum();
            match zdeg {
                0 => constant = constant + MultiPoly::monomial(ctx, m.clone(), c.clone()),
                1 if m.degree() == 1 => {
                    let i = z_vars.iter().position(|&v| m.exp(v) == 1).expect("one z");
                    z_coeffs[i] = c.clone();
                }
                _ => {
                    return Err(Error::Argument(format!(
                        "denominator factor {p} is not affine-linear in the residue variables"
                    )))
                }
            }
        }
        Ok(LinearForm { z_coeffs, constant })
    }

    pub fn constant(&self) -> &MultiPoly {
        &self.constant
    }

    pub fn z_coeffs(&self) -> &[Rational] {
        &self.z_coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.z_coeffs.iter().all(Zero::is_zero)
    }

    /// Largest z index with a nonzero coefficient.
    pub fn leading_var(&self) -> Option<usize> {
        self.z_coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn to_poly(&self, z_vars: &[usize]) -> MultiPoly {
        let ctx = self.constant.ctx();
        self.z_coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(self.constant.clone(), |acc, (i, c)| {
                acc + MultiPoly::var(ctx, z_vars[i]).scale(c)
            })
    }

    /// The form with the coefficient of z variable `q` set to zero, as a polynomial.
    pub fn without_var(&self, q: usize, z_vars: &[usize]) -> MultiPoly {
        let mut f = self.clone();
        f.z_coeffs[q] = Rational::zero();
        f.to_poly(z_vars)
    }

    /// Splits off the leading coefficient: `self = c * monic` with leading coefficient 1.
    pub fn normalized(&self) -> Option<(Rational, LinearForm)> {
        let q = self.leading_var()?;
        let c = self.z_coeffs[q].clone();
        if c.is_one() {
            return Some((c, self.clone()));
        }
        let inv = c.recip();
        Some((
            c,
            LinearForm {
                z_coeffs: self.z_coeffs.iter().map(|a| a * &inv).collect(),
                constant: self.constant.scale(&inv),
            },
        ))
    }

    pub fn scale(&self, c: &Rational) -> LinearForm {
        LinearForm {
            z_coeffs: self.z_coeffs.iter().map(|a| a * c).collect(),
            constant: self.constant.scale(c),
        }
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        LinearForm {
            z_coeffs: self
                .z_coeffs
                .iter()
                .zip(&other.z_coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            constant: &self.constant + &other.constant,
        }
    }

    pub fn sub(&self, other: &LinearForm) -> LinearForm {
        self.add(&other.scale(&-Rational::one()))
    }
}

/// A rational form `numerator / prod(factor^mult)` in the residue variables.
#[derive(Clone, Debug)]
pub struct ResidueForm {
    z_vars: Vec<usize>,
    numerator: MultiPoly,
    factors: Vec<(LinearForm, u32)>,
    truncation: Option<(usize, u16)>,
}

impl ResidueForm {
    /// `z_vars` lists the context indices of `z_1, ..., z_k` in order.
    pub fn new(
        numerator: MultiPoly,
        factors: Vec<(LinearForm, u32)>,
        z_vars: Vec<usize>,
    ) -> Result<Self> {
        if z_vars.is_empty() {
            return Err(Error::Argument("a residue needs at least one variable".into()));
        }
        let ctx = numerator.ctx().clone();
        for &v in &z_vars {
            if v >= ctx.len() {
                return Err(Error::Argument(format!("variable index {v} out of range")));
            }
        }
        for (f, m) in &factors {
            if *m == 0 {
                return Err(Error::Argument("factor multiplicity must be positive".into()));
            }
            if f.z_coeffs.len() != z_vars.len() {
                return Err(Error::Argument("factor has wrong number of z coefficients".into()));
            }
            if f.is_zero() {
                return Err(Error::Argument("denominator factor is identically zero".into()));
            }
            if !crate::exactalg::same_context(f.constant.ctx(), &ctx) {
                return Err(Error::Context("denominator factor context differs".into()));
            }
            if z_vars.iter().any(|&v| f.constant.involves(v)) {
                return Err(Error::Argument("factor constant involves a z variable".into()));
            }
        }
        Ok(ResidueForm {
            z_vars,
            numerator,
            factors,
            truncation: None,
        })
    }

    /// Builds a form from polynomial factors, each affine-linear in the z's.
    pub fn from_polys(
        numerator: MultiPoly,
        factors: &[(MultiPoly, u32)],
        z_vars: Vec<usize>,
    ) -> Result<Self> {
        let forms = factors
            .iter()
            .map(|(p, m)| Ok((LinearForm::from_poly(p, &z_vars)?, *m)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(numerator, forms, z_vars)
    }

    /// Work modulo `var^(max+1)`, e.g. `h^(n+1) = 0` on an n-dimensional base.
    pub fn with_truncation(mut self, var: usize, max: u16) -> Self {
        self.truncation = Some((var, max));
        self
    }

    pub fn ctx(&self) -> &Ctx {
        self.numerator.ctx()
    }

    pub fn k(&self) -> usize {
        self.z_vars.len()
    }

    pub fn z_vars(&self) -> &[usize] {
        &self.z_vars
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.numerator
    }

    pub fn factors(&self) -> &[(LinearForm, u32)] {
        &self.factors
    }

    pub fn truncation(&self) -> Option<(usize, u16)> {
        self.truncation
    }

    pub fn truncate(&self, p: MultiPoly) -> MultiPoly {
        match self.truncation {
            Some((v, max)) => p.truncate_var(v, max),
            None => p,
        }
    }

    /// Product in the truncated coefficient ring.
    pub fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        match self.truncation {
            Some((v, max)) => a.mul_truncated(b, v, max),
            None => a * b,
        }
    }

    /// Rejects factors without z-dependence.
    pub fn check_integrable(&self) -> Result<()> {
        for (f, _) in &self.factors {
            if f.leading_var().is_none() {
                return Err(Error::NotResidueIntegrable(f.to_poly(&self.z_vars).to_string()));
            }
        }
        Ok(())
    }

    /// Total degree of numerator minus denominator in the given grading, if homogeneous.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<i64> {
        let num = self.numerator.homogeneous_degree(weights)? as i64;
        let mut den = 0i64;
        for (f, m) in &self.factors {
            den += f.to_poly(&self.z_vars).homogeneous_degree(weights)? as i64 * *m as i64;
        }
        Some(num - den)
    }
}

impl fmt::Display for ResidueForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.numerator)?;
        if self.factors.is_empty() {
            return Ok(());
        }
        write!(f, " / (")?;
        for (i, (lf, m)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "({})", lf.to_poly(&self.z_vars))?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        write!(f, ")")
    }
}
