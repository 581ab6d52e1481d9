use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::context::{same_context, Ctx};
use super::monomial::Monomial;
use super::Rational;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in graded-lex order; zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    ctx: Ctx,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(ctx: &Ctx) -> Self {
        MultiPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &Ctx, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.len()), c);
        }
        p
    }

    pub fn from_int(ctx: &Ctx, c: i64) -> Self {
        Self::constant(ctx, Rational::from_integer(BigInt::from(c)))
    }

    /// The variable at position `idx`.
    pub fn var(ctx: &Ctx, idx: usize) -> Self {
        assert!(idx < ctx.len(), "variable index out of range");
        Self::monomial(ctx, Monomial::var(ctx.len(), idx, 1), Rational::one())
    }

    /// The variable called `name`.
    pub fn var_named(ctx: &Ctx, name: &str) -> Result<Self> {
        Ok(Self::var(ctx, ctx.require(name)?))
    }

    pub fn monomial(ctx: &Ctx, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), ctx.len(), "monomial length does not match context");
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from possibly repeated terms, dropping zeros.
    pub fn from_terms<I>(ctx: &Ctx, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            assert_eq!(m.nvars(), ctx.len(), "monomial length does not match context");
            p.add_term(m, c);
        }
        p
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.ctx.len()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The rational value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.constant_term())
    }

    /// Leading term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var) as u32).max().unwrap_or(0)
    }

    /// Indices of variables with a nonzero exponent somewhere.
    pub fn variables_used(&self) -> Vec<usize> {
        (0..self.ctx.len())
            .filter(|&i| self.terms.keys().any(|m| m.exp(i) > 0))
            .collect()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    /// Degree if every term has the same weighted degree.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(weights));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ctx(&self, other: &MultiPoly) -> Result<()> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::Context(format!("{} vs {}", self.ctx, other.ctx)))
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MultiPoly::zero(&self.ctx));
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += c;
                    }
                }
            }
        }
        Ok(MultiPoly {
            ctx: self.ctx.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Product that drops every term whose exponent in `var` exceeds `max`.
    pub fn mul_truncated(&self, other: &MultiPoly, var: usize, max: u16) -> MultiPoly {
        self.check_ctx(other).expect("context mismatch");
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (ma, ca) in &self.terms {
            if ma.exp(var) > max {
                continue;
            }
            for (mb, cb) in &other.terms {
                if ma.exp(var) as u32 + mb.exp(var) as u32 > max as u32 {
                    continue;
                }
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        MultiPoly {
            ctx: self.ctx.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ctx);
        }
        MultiPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by a single monomial.
    pub fn shift(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(t, v)| (t.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = MultiPoly::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Drops terms whose exponent in `var` exceeds `max`.
    pub fn truncate_var(&self, var: usize, max: u16) -> MultiPoly {
        MultiPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(var) <= max)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops terms of weighted degree above `cap`.
    pub fn truncate_weighted(&self, cap: u32, weights: &[u32]) -> MultiPoly {
        MultiPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weighted_degree(weights) <= cap)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Components grouped by weighted degree.
    pub fn graded_components(&self, weights: &[u32]) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weighted_degree(weights))
                .or_insert_with(|| MultiPoly::zero(&self.ctx))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Coefficient of the partial monomial given as `(variable, exponent)` pairs.
    ///
    /// The result lives in the same context with those variables' exponents set to 0.
    pub fn coefficient_of(&self, partial: &[(usize, u16)]) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| partial.iter().all(|&(v, e)| m.exp(v) == e))
            .map(|(m, c)| {
                let mut m = m.clone();
                for &(v, _) in partial {
                    m = m.with_exp(v, 0);
                }
                (m, c.clone())
            });
        MultiPoly::from_terms(&self.ctx, terms)
    }

    /// Coefficients of powers of `var`: entry `e` multiplies `var^e`.
    pub fn split_by_var(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![MultiPoly::zero(&self.ctx); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            out[e].terms.insert(m.with_exp(var, 0), c.clone());
        }
        out
    }

    /// Replaces `var` by the rational `value`.
    pub fn evaluate(&self, var: usize, value: &Rational) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ctx);
        let mut powers: Vec<Rational> = vec![Rational::one()];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            out.add_term(m.with_exp(var, 0), c * &powers[e]);
        }
        out
    }

    /// Replaces several variables by rationals at once.
    pub fn evaluate_many(&self, values: &[(usize, Rational)]) -> MultiPoly {
        values
            .iter()
            .fold(self.clone(), |acc, (v, x)| acc.evaluate(*v, x))
    }

    /// Replaces `var` by the polynomial `value`.
    pub fn substitute(&self, var: usize, value: &MultiPoly) -> MultiPoly {
        self.check_ctx(value).expect("context mismatch");
        let parts = self.split_by_var(var);
        let mut out = MultiPoly::zero(&self.ctx);
        let mut power = MultiPoly::one(&self.ctx);
        for (e, part) in parts.iter().enumerate() {
            if e > 0 {
                power = &power * value;
            }
            if !part.is_zero() {
                out = &out + &(part * &power);
            }
        }
        out
    }

    /// Moves the polynomial into `target`, matching variables by name.
    pub fn rebase(&self, target: &Ctx) -> Result<MultiPoly> {
        if same_context(&self.ctx, target) {
            return Ok(MultiPoly {
                ctx: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let mut map = Vec::with_capacity(self.ctx.len());
        for (i, name) in self.ctx.names().iter().enumerate() {
            let idx = target.index_of(name);
            if idx.is_none() && self.involves(i) {
                return Err(Error::Context(format!(
                    "variable {name} missing from target context {target}"
                )));
            }
            map.push(idx);
        }
        Ok(self.map_variables(target, &map))
    }

    /// Moves the polynomial into `target` with an explicit index map.
    ///
    /// Variables mapped to `None` must not occur.
    pub fn map_variables(&self, target: &Ctx, map: &[Option<usize>]) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out = vec![0u16; target.len()];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let j = map[i].expect("unmapped variable occurs in polynomial");
                    out[j] = out[j].checked_add(e).expect("monomial exponent overflow");
                }
            }
            (Monomial::from_exponents(&out), c.clone())
        });
        MultiPoly::from_terms(target, terms)
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        self.check_ctx(divisor).ok()?;
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.ctx);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            let step = divisor.shift(&qm).scale(&qc);
            rem = &rem - &step;
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Splits off the leading coefficient: `self = c * monic`.
    pub fn monic(&self) -> (Rational, MultiPoly) {
        match self.leading_term() {
            None => (Rational::one(), self.clone()),
            Some((_, c)) => {
                let c = c.clone();
                (c.clone(), self.scale(&c.recip()))
            }
        }
    }

    /// Least common multiple of all coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Canonical string in descending graded-lex order, e.g. `z1^2 - 1/2*h`.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl Hash for MultiPoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.names().hash(state);
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl PartialOrd for MultiPoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiPoly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.ctx
            .names()
            .cmp(other.ctx.names())
            .then_with(|| self.terms.iter().cmp(other.terms.iter()))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    let name = self.ctx.name(v);
                    if e == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$try(rhs).expect("polynomial context mismatch")
            }
        }
        impl $trait<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$try(&rhs).expect("polynomial context mismatch")
            }
        }
        impl $trait<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$try(rhs).expect("polynomial context mismatch")
            }
        }
        impl $trait<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$try(&rhs).expect("polynomial context mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, VarContext};

    fn ctx2() -> Ctx {
        VarContext::new(["z1", "z2", "h"]).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let c = ctx2();
        let z1 = MultiPoly::var(&c, 0);
        let z2 = MultiPoly::var(&c, 1);
        let p = (&z1 + &z2) * (&z1 - &z2);
        assert_eq!(p.to_string(), "z1^2 - z2^2");
        assert!((&p * &MultiPoly::zero(&c)).is_zero());
    }

    #[test]
    fn binomial_cube() {
        let c = ctx2();
        let one_h = MultiPoly::one(&c) + MultiPoly::var(&c, 2);
        let p = one_h.pow(2) * &one_h;
        assert_eq!(p.to_string(), "h^3 + 3*h^2 + 3*h + 1");
        assert_eq!(MultiPoly::var(&c, 0).pow(0), MultiPoly::one(&c));
    }

    #[test]
    fn power_of_linear_form() {
        let c = VarContext::new(["u1", "u2"]).unwrap();
        let p = (MultiPoly::var(&c, 0) + MultiPoly::var(&c, 1).scale(&rat(2, 1))).pow(3);
        assert_eq!(p.to_string(), "u1^3 + 6*u1^2*u2 + 12*u1*u2^2 + 8*u2^3");
    }

    #[test]
    fn coefficient_extraction() {
        let c = ctx2();
        let z1 = MultiPoly::var(&c, 0);
        let z2 = MultiPoly::var(&c, 1);
        let h = MultiPoly::var(&c, 2);
        let p = &z1 * &h + &z2;
        assert_eq!(p.coefficient_of(&[(0, 1)]), h);
        assert!((&z1 * &h).coefficient_of(&[(0, 2)]).is_zero());
        let sq = (&z1 + &z2).pow(2);
        assert_eq!(sq.coefficient_of(&[(0, 1), (1, 1)]), MultiPoly::from_int(&c, 2));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = MultiPoly::var(&ctx2(), 0);
        let other = VarContext::new(["x"]).unwrap();
        let b = MultiPoly::var(&other, 0);
        assert!(matches!(a.try_add(&b), Err(Error::Context(_))));
    }

    #[test]
    fn exact_division() {
        let c = ctx2();
        let z1 = MultiPoly::var(&c, 0);
        let z2 = MultiPoly::var(&c, 1);
        let p = (&z1 - &z2) * (&z1 + &z2 + MultiPoly::from_int(&c, 3));
        assert_eq!(p.div_exact(&(&z1 - &z2)), Some(&z1 + &z2 + MultiPoly::from_int(&c, 3)));
        assert_eq!(p.div_exact(&(&z1 + &z2)), None);
    }

    #[test]
    fn substitution_and_evaluation() {
        let c = ctx2();
        let z1 = MultiPoly::var(&c, 0);
        let z2 = MultiPoly::var(&c, 1);
        let p = z1.pow(2) + &z2;
        let q = p.substitute(0, &(&z2 + MultiPoly::one(&c)));
        assert_eq!(q, z2.pow(2) + z2.scale(&rat(3, 1)) + MultiPoly::one(&c));
        assert_eq!(p.evaluate(0, &rat(1, 2)), &z2 + MultiPoly::constant(&c, rat(1, 4)));
    }

    #[test]
    fn rebase_by_name() {
        let a = VarContext::new(["x", "y"]).unwrap();
        let b = VarContext::new(["y", "w", "x"]).unwrap();
        let p = MultiPoly::var(&a, 0) * MultiPoly::var(&a, 1).pow(2);
        let q = p.rebase(&b).unwrap();
        assert_eq!(q.to_string(), "y^2*x");
        let narrow = VarContext::new(["x"]).unwrap();
        assert!(p.rebase(&narrow).is_err());
    }
}
