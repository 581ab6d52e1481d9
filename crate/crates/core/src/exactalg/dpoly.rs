use std::fmt;

use num_traits::{Signed, Zero};

use super::poly::MultiPoly;
use super::Rational;
use crate::error::{Error, Result};

/// Univariate polynomial in the degree variable `d`, coefficients from `d^0` upward.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DPoly {
    coeffs: Vec<Rational>,
}

impl DPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        DPoly { coeffs }
    }

    pub fn zero() -> Self {
        DPoly { coeffs: Vec::new() }
    }

    /// Reads a polynomial that involves at most the variable `var`.
    pub fn from_multipoly(p: &MultiPoly, var: &str) -> Result<Self> {
        let ctx = p.ctx();
        let idx = ctx.index_of(var);
        for v in p.variables_used() {
            if Some(v) != idx {
                return Err(Error::Context(format!(
                    "expected a polynomial in {var} only, found {}",
                    ctx.name(v)
                )));
            }
        }
        let Some(idx) = idx else {
            return Ok(DPoly::new(vec![p.constant_term()]));
        };
        let coeffs = p
            .split_by_var(idx)
            .iter()
            .map(MultiPoly::constant_term)
            .collect();
        Ok(DPoly::new(coeffs))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `self / d` when the constant term vanishes.
    pub fn div_by_d(&self) -> Option<DPoly> {
        if self.is_zero() {
            return Some(DPoly::zero());
        }
        if !self.coeffs[0].is_zero() {
            return None;
        }
        Some(DPoly::new(self.coeffs[1..].to_vec()))
    }
}

impl fmt::Display for DPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            match i {
                0 => write!(f, "{abs}")?,
                _ => {
                    if abs != Rational::from_integer(1.into()) {
                        write!(f, "{abs}*")?;
                    }
                    if i == 1 {
                        write!(f, "d")?;
                    } else {
                        write!(f, "d^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, VarContext};

    #[test]
    fn trims_and_evaluates() {
        let p = DPoly::new(vec![rat(1, 1), rat(-2, 1), rat(0, 1)]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.eval(&rat(3, 1)), rat(-5, 1));
        assert_eq!(p.to_string(), "-2*d + 1");
        assert!(DPoly::new(vec![rat(0, 1)]).is_zero());
    }

    #[test]
    fn from_polynomial_in_d() {
        let c = VarContext::new(["h", "d"]).unwrap();
        let d = MultiPoly::var(&c, 1);
        let p = d.pow(2).scale(&rat(5, 1)) + d.scale(&rat(3, 1));
        let q = DPoly::from_multipoly(&p, "d").unwrap();
        assert_eq!(q.coeffs(), &[rat(0, 1), rat(3, 1), rat(5, 1)]);
        assert_eq!(q.div_by_d().unwrap().coeffs(), &[rat(3, 1), rat(5, 1)]);
        assert!(DPoly::from_multipoly(&MultiPoly::var(&c, 0), "d").is_err());
    }
}
