//! Fixed-point localization: exact sums of `value / euler` over torus fixed points.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{indexed_names, same_context, Ctx, MultiPoly, Rational, VarContext};
use crate::names;
use crate::tower::{enumerate_fixed_points, FixedPoint};
use crate::Limits;

/// Restriction of a class to one fixed point together with its tangent weights.
#[derive(Clone, Debug)]
pub struct LocalizationDatum {
    numerator_value: MultiPoly,
    euler_factors: Vec<MultiPoly>,
}

impl LocalizationDatum {
    pub fn new(numerator_value: MultiPoly, euler_factors: Vec<MultiPoly>) -> Result<Self> {
        for f in &euler_factors {
            if !same_context(f.ctx(), numerator_value.ctx()) {
                return Err(Error::Context("Euler factor context differs".into()));
            }
            if f.is_zero() {
                return Err(Error::DegenerateWeights("zero tangent weight".into()));
            }
        }
        Ok(LocalizationDatum {
            numerator_value,
            euler_factors,
        })
    }

    pub fn numerator_value(&self) -> &MultiPoly {
        &self.numerator_value
    }

    pub fn euler_factors(&self) -> &[MultiPoly] {
        &self.euler_factors
    }

    pub fn euler(&self) -> MultiPoly {
        self.euler_factors
            .iter()
            .fold(MultiPoly::one(self.numerator_value.ctx()), |acc, f| acc * f)
    }
}

/// Quotient of two polynomials, reduced where exact division applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicFraction {
    numerator: MultiPoly,
    denominator: MultiPoly,
}

impl SymbolicFraction {
    pub fn new(numerator: MultiPoly, denominator: MultiPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Argument("zero denominator".into()));
        }
        if !same_context(numerator.ctx(), denominator.ctx()) {
            return Err(Error::Context("fraction parts in different contexts".into()));
        }
        if numerator.is_zero() {
            return Ok(Self::from_poly(numerator));
        }
        if let Some(q) = numerator.div_exact(&denominator) {
            return Ok(Self::from_poly(q));
        }
        let (c, monic) = denominator.monic();
        let numerator = numerator.scale(&c.recip());
        Ok(SymbolicFraction {
            numerator,
            denominator: monic,
        })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let one = MultiPoly::one(p.ctx());
        SymbolicFraction {
            numerator: p,
            denominator: one,
        }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.denominator
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&MultiPoly> {
        self.is_polynomial().then_some(&self.numerator)
    }

    pub fn into_polynomial(self) -> Result<MultiPoly> {
        if self.is_polynomial() {
            Ok(self.numerator)
        } else {
            Err(Error::Internal(format!(
                "expected a polynomial, got ({}) / ({})",
                self.numerator, self.denominator
            )))
        }
    }
}

impl fmt::Display for SymbolicFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

/// Accumulates `num / prod(factors)` terms over a shared factored denominator.
///
/// Factors are stored monic so that `a - b` and `b - a` are recognized as the same.
pub struct FactoredSum {
    ctx: Ctx,
    terms: BTreeMap<BTreeMap<MultiPoly, u32>, MultiPoly>,
}

impl FactoredSum {
    pub fn new(ctx: &Ctx) -> Self {
        FactoredSum {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Adds `num / prod(factor^mult)`; every factor must be nonzero.
    pub fn add<I>(&mut self, num: MultiPoly, factors: I) -> Result<()>
    where
        I: IntoIterator<Item = (MultiPoly, u32)>,
    {
        let mut num = num;
        let mut key: BTreeMap<MultiPoly, u32> = BTreeMap::new();
        for (f, m) in factors {
            if f.is_zero() {
                return Err(Error::DegenerateWeights("zero denominator factor".into()));
            }
            if let Some(c) = f.as_constant() {
                num = num.scale(&c.recip().pow(m as i32));
                continue;
            }
            let (c, monic) = f.monic();
            num = num.scale(&c.recip().pow(m as i32));
            *key.entry(monic).or_insert(0) += m;
        }
        if num.is_zero() {
            return Ok(());
        }
        let slot = self
            .terms
            .entry(key)
            .or_insert_with(|| MultiPoly::zero(&self.ctx));
        *slot = &*slot + &num;
        Ok(())
    }

    /// Brings everything over the least common denominator and cancels exact factors.
    pub fn finish(self) -> Result<SymbolicFraction> {
        let mut lcm: BTreeMap<MultiPoly, u32> = BTreeMap::new();
        for key in self.terms.keys() {
            for (f, &m) in key {
                let e = lcm.entry(f.clone()).or_insert(0);
                *e = (*e).max(m);
            }
        }
        let mut numerator = MultiPoly::zero(&self.ctx);
        for (key, num) in self.terms {
            if num.is_zero() {
                continue;
            }
            let mut term = num;
            for (f, &m) in &lcm {
                let have = key.get(f).copied().unwrap_or(0);
                if m > have {
                    term = term * f.pow(m - have);
                }
            }
            numerator = numerator + term;
        }
        let mut denominator = MultiPoly::one(&self.ctx);
        if numerator.is_zero() {
            return Ok(SymbolicFraction::from_poly(numerator));
        }
        for (f, m) in lcm {
            let mut left = m;
            while left > 0 {
                match numerator.div_exact(&f) {
                    Some(q) => {
                        numerator = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                denominator = denominator * f.pow(left);
            }
        }
        SymbolicFraction::new(numerator, denominator)
    }
}

/// Exact sum of `value / euler` over all fixed points.
pub fn abbv_sum(points: &[LocalizationDatum]) -> Result<SymbolicFraction> {
    let first = points
        .first()
        .ok_or_else(|| Error::Argument("no fixed points given".into()))?;
    let mut acc = FactoredSum::new(first.numerator_value.ctx());
    for p in points {
        acc.add(
            p.numerator_value.clone(),
            p.euler_factors.iter().map(|f| (f.clone(), 1)),
        )?;
    }
    acc.finish()
}

/// Fixed-point data of `Gr(2,4)` for the class `c1^2 c2` of the tautological bundle.
///
/// Characters are `mu1..mu4`; the point `(i, j)` carries value
/// `(mu_i + mu_j)^2 mu_i mu_j` and tangent weights `mu_s - mu_i`, `mu_s - mu_j`.
pub fn grassmannian_datum() -> Vec<LocalizationDatum> {
    let ctx = VarContext::new(indexed_names("mu", 4)).expect("valid names");
    let mu = |i: usize| MultiPoly::var(&ctx, i);
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let value = (mu(i) + mu(j)).pow(2) * mu(i) * mu(j);
            let mut factors = Vec::new();
            for s in (0..4).filter(|s| *s != i && *s != j) {
                factors.push(mu(s) - mu(i));
                factors.push(mu(s) - mu(j));
            }
            out.push(LocalizationDatum::new(value, factors).expect("nonzero weights"));
        }
    }
    out
}

/// Result of a fibre integral over fixed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreIntegral {
    /// The integral, in the context of the integrand with all `u` variables gone.
    pub value: MultiPoly,
    /// Whether the integrand had exactly the fibre dimension as its degree.
    pub degree_matched: bool,
}

/// Checks that the torus specialization has `n` pairwise distinct entries.
pub fn check_lambdas(lambdas: &[Rational], n: usize) -> Result<()> {
    if lambdas.len() != n {
        return Err(Error::Argument(format!(
            "expected {n} torus weights, got {}",
            lambdas.len()
        )));
    }
    for i in 0..n {
        for j in i + 1..n {
            if lambdas[i] == lambdas[j] {
                return Err(Error::DegenerateWeights(format!(
                    "lambda{} = lambda{} = {}",
                    i + 1,
                    j + 1,
                    lambdas[i]
                )));
            }
        }
    }
    Ok(())
}

/// Grading that counts `u1..uk` and `h` with weight 1.
pub fn tautological_grading(ctx: &Ctx, k: usize) -> Vec<u32> {
    ctx.names()
        .iter()
        .map(|name| {
            let is_u = (1..=k).any(|i| *name == names::u(i));
            u32::from(is_u || name == crate::exactalg::H)
        })
        .collect()
}

/// Integral of `P(u_1, ..., u_k)` over the tower fibre by summing over its `n^k` fixed points.
///
/// `u_j` restricts to `w_j` at the fixed point `(w_1, ..., w_k)`; all other
/// variables of `P` are treated as constants.
pub fn fibre_integral_fixed_points(
    n: usize,
    k: usize,
    p: &MultiPoly,
    lambdas: &[Rational],
    limits: &Limits,
) -> Result<FibreIntegral> {
    check_lambdas(lambdas, n)?;
    let points = enumerate_fixed_points(n, k, limits.max_points)?;
    let ctx = p.ctx().clone();
    let u_vars: Vec<Option<usize>> = (1..=k).map(|i| ctx.index_of(&names::u(i))).collect();
    let grading = tautological_grading(&ctx, k);
    let degree_matched =
        p.is_zero() || p.homogeneous_degree(&grading) == Some((k * (n - 1)) as u32);
    let contributions: Vec<Result<MultiPoly>> = points
        .par_iter()
        .map(|fp| point_contribution(fp, p, &u_vars, lambdas))
        .collect();
    let mut value = MultiPoly::zero(&ctx);
    for c in contributions {
        value = value + c?;
    }
    Ok(FibreIntegral {
        value,
        degree_matched,
    })
}

fn point_contribution(
    fp: &FixedPoint,
    p: &MultiPoly,
    u_vars: &[Option<usize>],
    lambdas: &[Rational],
) -> Result<MultiPoly> {
    let mut euler = Rational::from_integer(1.into());
    for w in fp.tangent_weights() {
        let v = w.eval(lambdas);
        if v == Rational::from_integer(0.into()) {
            return Err(Error::DegenerateWeights(format!(
                "tangent weight {w} vanishes at the chosen specialization"
            )));
        }
        euler *= v;
    }
    let subs: Vec<(usize, Rational)> = u_vars
        .iter()
        .zip(fp.weights())
        .filter_map(|(v, w)| v.map(|v| (v, w.eval(lambdas))))
        .collect();
    Ok(p.evaluate_many(&subs).scale(&euler.recip()))
}
