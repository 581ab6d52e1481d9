use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::form::{LinearForm, ResidueForm, STEP_SIGN};
use crate::error::{Error, Result};
use crate::exactalg::{binomial, Ctx, MultiPoly, Rational};
use crate::localization::{FactoredSum, SymbolicFraction};
use crate::Limits;

/// Normalized z-dependent factors with multiplicities.
type Factors = BTreeMap<LinearForm, u32>;
/// Monic z-free polynomial factors with multiplicities.
type Consts = BTreeMap<MultiPoly, u32>;

struct Terms {
    map: BTreeMap<(Factors, Consts), MultiPoly>,
}

impl Terms {
    fn new() -> Self {
        Terms {
            map: BTreeMap::new(),
        }
    }

    fn total_terms(&self) -> u64 {
        self.map.values().map(|p| p.num_terms() as u64).sum()
    }

    /// Adds `num / (base * consts * prod(extra))`, normalizing the new factors.
    fn insert(
        &mut self,
        num: MultiPoly,
        mut factors: Factors,
        mut consts: Consts,
        extra: Vec<(LinearForm, u32)>,
    ) -> Result<()> {
        let mut scale = Rational::one();
        for (f, m) in extra {
            match f.normalized() {
                Some((a, nf)) => {
                    scale *= a.recip().pow(m as i32);
                    *factors.entry(nf).or_insert(0) += m;
                }
                None => {
                    let c = f.constant();
                    if c.is_zero() {
                        return Err(Error::Internal("coinciding poles were not merged".into()));
                    }
                    if let Some(v) = c.as_constant() {
                        scale *= v.recip().pow(m as i32);
                    } else {
                        let (a, monic) = c.monic();
                        scale *= a.recip().pow(m as i32);
                        *consts.entry(monic).or_insert(0) += m;
                    }
                }
            }
        }
        let num = if scale.is_one() { num } else { num.scale(&scale) };
        if num.is_zero() {
            return Ok(());
        }
        let key = (factors, consts);
        let sum = match self.map.remove(&key) {
            Some(v) => v + num,
            None => num,
        };
        if !sum.is_zero() {
            self.map.insert(key, sum);
        }
        Ok(())
    }
}

/// Iterated residue at infinity by the residue theorem, one variable at a time.
///
/// For each variable `z_q`, from `z_k` down, the residue at infinity is minus
/// the sum of the residues at the finite poles `z_q = p_j`. At a pole of order
/// `m_j` the residue is the coefficient of `t^(m_j - 1)` in
/// `N(p_j + t) / prod_{i != j} (p_j - p_i + t)^(m_i)`. Coinciding poles are
/// merged into a single higher-order pole. The result is a fraction in the
/// remaining coefficient variables, reduced by exact division.
pub fn residue_stepwise(form: &ResidueForm, limits: &Limits) -> Result<SymbolicFraction> {
    form.check_integrable()?;
    let ctx = form.ctx().clone();
    let z_vars = form.z_vars().to_vec();
    let k = form.k();
    let mut terms = Terms::new();
    terms.insert(
        form.numerator().clone(),
        Factors::new(),
        Consts::new(),
        form.factors().to_vec(),
    )?;
    for q in (0..k).rev() {
        let mut next = Terms::new();
        for ((factors, consts), num) in std::mem::take(&mut terms.map) {
            let (mine, rest): (Vec<_>, Vec<_>) = factors
                .into_iter()
                .partition(|(f, _)| f.leading_var() == Some(q));
            if mine.is_empty() {
                continue;
            }
            let rest: Factors = rest.into_iter().collect();
            eliminate(&mut next, q, &z_vars, &num, &mine, &rest, &consts)?;
            if next.total_terms() > limits.max_terms {
                return Err(Error::ResourceLimit {
                    what: format!("stepwise residue terms at z{}", q + 1),
                    limit: limits.max_terms,
                });
            }
        }
        terms = next;
    }
    let mut sum = FactoredSum::new(&ctx);
    for ((factors, consts), num) in terms.map {
        debug_assert!(factors.is_empty());
        sum.add(num, consts)?;
    }
    let frac = sum.finish()?;
    match frac.as_polynomial() {
        Some(p) => Ok(SymbolicFraction::from_poly(form.truncate(p.clone()))),
        None => Ok(frac),
    }
}

fn eliminate(
    out: &mut Terms,
    q: usize,
    z_vars: &[usize],
    num: &MultiPoly,
    mine: &[(LinearForm, u32)],
    rest: &Factors,
    consts: &Consts,
) -> Result<()> {
    let ctx = num.ctx();
    let parts = num.split_by_var(z_vars[q]);
    // each factor reads z_q + tail; its pole is at z_q = -tail
    let tails: Vec<LinearForm> = mine
        .iter()
        .map(|(f, _)| {
            let mut c = f.z_coeffs().to_vec();
            c[q] = Rational::zero();
            LinearForm::new(f.constant().clone(), c)
        })
        .collect();
    let step = Rational::from_integer(STEP_SIGN.into());
    for (j, (_, mj)) in mine.iter().enumerate() {
        let pole = tails[j].scale(&-Rational::one()).to_poly(z_vars);
        let taylor = shifted_coefficients(&parts, &pole, *mj as usize, ctx);
        let others: Vec<(LinearForm, u32)> = tails
            .iter()
            .zip(mine)
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, (t, (_, m)))| (t.sub(&tails[j]), *m))
            .collect();
        let budget = (*mj - 1) as usize;
        let mut split = vec![0usize; others.len()];
        distribute(budget, 0, &mut split, &mut |split| {
            let used: usize = split.iter().sum();
            let r0 = budget - used;
            if taylor[r0].is_zero() {
                return Ok(());
            }
            let mut coef = step.clone();
            let mut extra = Vec::with_capacity(others.len());
            for ((delta, mi), &ri) in others.iter().zip(split.iter()) {
                let b = binomial((*mi as usize + ri - 1) as u64, ri as u64);
                let signed = if ri % 2 == 1 { -b } else { b };
                coef *= Rational::from_integer(signed);
                extra.push((delta.clone(), *mi + ri as u32));
            }
            out.insert(taylor[r0].scale(&coef), rest.clone(), consts.clone(), extra)
        })?;
    }
    Ok(())
}

/// Coefficients of `t^0..t^(count-1)` in `N(pole + t)`, with `N` given by its `z_q` parts.
fn shifted_coefficients(
    parts: &[MultiPoly],
    pole: &MultiPoly,
    count: usize,
    ctx: &Ctx,
) -> Vec<MultiPoly> {
    let mut powers = vec![MultiPoly::one(ctx)];
    for _ in 1..parts.len() {
        let next = powers.last().unwrap() * pole;
        powers.push(next);
    }
    (0..count)
        .map(|r| {
            let mut acc = MultiPoly::zero(ctx);
            for (e, part) in parts.iter().enumerate().skip(r) {
                if part.is_zero() {
                    continue;
                }
                let c = Rational::from_integer(binomial(e as u64, r as u64));
                acc = acc + (part * &powers[e - r]).scale(&c);
            }
            acc
        })
        .collect()
}

/// Calls `f` on every split of at most `budget` among the remaining slots.
fn distribute<F>(budget: usize, idx: usize, split: &mut Vec<usize>, f: &mut F) -> Result<()>
where
    F: FnMut(&[usize]) -> Result<()>,
{
    if idx == split.len() {
        return f(split);
    }
    for r in 0..=budget {
        split[idx] = r;
        distribute(budget - r, idx + 1, split, f)?;
    }
    split[idx] = 0;
    Ok(())
}
