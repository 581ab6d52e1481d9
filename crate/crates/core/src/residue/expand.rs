use num_bigint::BigInt;

use super::form::{orientation_sign, LinearForm, ResidueForm};
use crate::error::{Error, Result};
use crate::exactalg::{binomial, MultiPoly, Rational};
use crate::Limits;

/// Iterated residue at infinity by Laurent expansion.
///
/// Each factor is expanded as a geometric series in `1/z_q`, where `z_q` is its
/// leading variable, which is the expansion valid on `|z_1| << ... << |z_k|`.
/// Variables are eliminated from `z_k` down to `z_1`: at step `q` only the
/// factors led by `z_q` depend on it, so the coefficient of `1/z_q` is a
/// finite sum over the powers of `z_q` present in the numerator. Expansions
/// are cut at exactly the order those powers can reach.
pub fn residue_expand(form: &ResidueForm, limits: &Limits) -> Result<MultiPoly> {
    form.check_integrable()?;
    let k = form.k();
    let z_vars = form.z_vars().to_vec();
    let ctx = form.ctx().clone();
    let mut numerator = form.truncate(form.numerator().clone());
    let mut remaining: Vec<(LinearForm, u32)> = form.factors().to_vec();
    for q in (0..k).rev() {
        let (mine, rest): (Vec<_>, Vec<_>) = remaining
            .into_iter()
            .partition(|(f, _)| f.leading_var() == Some(q));
        remaining = rest;
        if mine.is_empty() || numerator.is_zero() {
            return Ok(MultiPoly::zero(&ctx));
        }
        let zq = z_vars[q];
        let parts = numerator.split_by_var(zq);
        // series in t = 1/z_q; we need coefficients up to t^(deg+1)
        let order = parts.len();
        let pole_order: u32 = mine.iter().map(|(_, m)| *m).sum();
        if pole_order as usize > order {
            return Ok(MultiPoly::zero(&ctx));
        }
        let mut series: Vec<MultiPoly> = vec![MultiPoly::zero(&ctx); order + 1];
        series[0] = MultiPoly::one(&ctx);
        for (f, m) in &mine {
            let factor_series = inverse_power_series(f, *m, q, &z_vars, order, form)?;
            series = multiply_series(&series, &factor_series, order, form);
            check_terms(&series, limits)?;
        }
        let mut next = MultiPoly::zero(&ctx);
        for (e, part) in parts.iter().enumerate() {
            if part.is_zero() || series[e + 1].is_zero() {
                continue;
            }
            next = next + form.mul(part, &series[e + 1]);
        }
        if next.num_terms() as u64 > limits.max_terms {
            return Err(Error::ResourceLimit {
                what: format!("{} terms after eliminating z{}", next.num_terms(), q + 1),
                limit: limits.max_terms,
            });
        }
        numerator = next;
    }
    Ok(numerator.scale(&orientation_sign(k)))
}

/// Coefficients of `t^0..t^order` in `(a z_q + r)^(-m)` with `t = 1/z_q`.
///
/// `(a z + r)^(-m) = sum_j C(m+j-1, j) (-r)^j a^(-(m+j)) t^(m+j)`.
fn inverse_power_series(
    f: &LinearForm,
    m: u32,
    q: usize,
    z_vars: &[usize],
    order: usize,
    form: &ResidueForm,
) -> Result<Vec<MultiPoly>> {
    let ctx = form.ctx();
    let a = f.z_coeffs()[q].clone();
    let neg_r = -f.without_var(q, z_vars);
    let a_inv = a.recip();
    let mut out = vec![MultiPoly::zero(ctx); order + 1];
    let m_us = m as usize;
    if m_us > order {
        return Ok(out);
    }
    let mut r_pow = MultiPoly::one(ctx);
    let mut a_pow = pow_rational(&a_inv, m);
    for j in 0..=(order - m_us) {
        if j > 0 {
            r_pow = form.mul(&r_pow, &neg_r);
            a_pow = &a_pow * &a_inv;
        }
        if r_pow.is_zero() {
            break;
        }
        let c = Rational::from_integer(binomial((m_us + j - 1) as u64, j as u64)) * &a_pow;
        out[m_us + j] = r_pow.scale(&c);
    }
    Ok(out)
}

fn pow_rational(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::from_integer(BigInt::from(1));
    for _ in 0..e {
        acc *= x;
    }
    acc
}

fn multiply_series(
    a: &[MultiPoly],
    b: &[MultiPoly],
    order: usize,
    form: &ResidueForm,
) -> Vec<MultiPoly> {
    let ctx = form.ctx();
    let mut out = vec![MultiPoly::zero(ctx); order + 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            if bj.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + form.mul(ai, bj);
        }
    }
    out
}

fn check_terms(series: &[MultiPoly], limits: &Limits) -> Result<()> {
    let total: u64 = series.iter().map(|p| p.num_terms() as u64).sum();
    if total > limits.max_terms {
        return Err(Error::ResourceLimit {
            what: format!("{total} terms in a truncated expansion"),
            limit: limits.max_terms,
        });
    }
    Ok(())
}

