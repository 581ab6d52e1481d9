use num_traits::One;

use super::classes::SegreData;
use super::form::ResidueForm;
use crate::error::{Error, Result};
use crate::exactalg::{indexed_names, Ctx, MultiPoly, Rational, VarContext, D, H};
use crate::names;
use crate::tower::LAMBDA_PREFIX;

/// How the torus characters enter a fibre integrand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lambdas {
    /// As variables `l1..ln` of the residue context.
    Symbolic,
    /// Specialized to the given rationals.
    Numeric(Vec<Rational>),
}

/// Context for a k-variable residue built from a user polynomial.
///
/// `z1..zk` come first, then the remaining variables of `source` in order,
/// then `extra`. Both `u_i` and `z_i` in `source` map to `z_i`.
pub(crate) struct ResidueContext {
    pub ctx: Ctx,
    pub map: Vec<Option<usize>>,
    pub z_vars: Vec<usize>,
}

impl ResidueContext {
    pub fn new(source: &Ctx, k: usize, extra: &[String]) -> Result<Self> {
        let mut list: Vec<String> = (1..=k).map(names::z).collect();
        let mut map = Vec::with_capacity(source.len());
        for name in source.names() {
            let alias = (1..=k).find(|&i| *name == names::u(i) || *name == names::z(i));
            match alias {
                Some(i) => map.push(Some(i - 1)),
                None => {
                    if is_tautological_name(name) {
                        return Err(Error::Argument(format!(
                            "variable {name} exceeds the number of tower levels {k}"
                        )));
                    }
                    if !list.contains(name) {
                        list.push(name.clone());
                    }
                    map.push(list.iter().position(|n| n == name));
                }
            }
        }
        for e in extra {
            if !list.contains(e) {
                list.push(e.clone());
            }
        }
        let ctx = VarContext::new(list)?;
        Ok(ResidueContext {
            ctx,
            map,
            z_vars: (0..k).collect(),
        })
    }

    pub fn import(&self, p: &MultiPoly) -> MultiPoly {
        p.map_variables(&self.ctx, &self.map)
    }

    pub fn var(&self, name: &str) -> MultiPoly {
        MultiPoly::var_named(&self.ctx, name).expect("variable registered in context")
    }

    /// `z_a + ... + z_b`, 1-based and inclusive; zero when `a > b`.
    pub fn zsum(&self, a: usize, b: usize) -> MultiPoly {
        (a..=b).fold(MultiPoly::zero(&self.ctx), |acc, i| {
            acc + MultiPoly::var(&self.ctx, self.z_vars[i - 1])
        })
    }
}

fn is_tautological_name(name: &str) -> bool {
    [names::U, names::Z].iter().any(|p| {
        name.strip_prefix(p)
            .is_some_and(|rest| !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()))
    })
}

fn lambda_values(rc: &ResidueContext, n: usize, lambdas: &Lambdas) -> Result<Vec<MultiPoly>> {
    match lambdas {
        Lambdas::Symbolic => Ok(indexed_names(LAMBDA_PREFIX, n)
            .iter()
            .map(|name| rc.var(name))
            .collect()),
        Lambdas::Numeric(values) => {
            if values.len() != n {
                return Err(Error::Argument(format!(
                    "expected {n} torus weights, got {}",
                    values.len()
                )));
            }
            Ok(values
                .iter()
                .map(|v| MultiPoly::constant(&rc.ctx, v.clone()))
                .collect())
        }
    }
}

fn lambda_names(n: usize, lambdas: &Lambdas) -> Vec<String> {
    match lambdas {
        Lambdas::Symbolic => indexed_names(LAMBDA_PREFIX, n),
        Lambdas::Numeric(_) => Vec::new(),
    }
}

/// One-variable form `P(z) / prod_i (lambda_i - z)` computing an integral over `P^(n-1)`.
pub fn flag_residue_integrand(n: usize, p: &MultiPoly, lambdas: &Lambdas) -> Result<ResidueForm> {
    let rc = ResidueContext::new(p.ctx(), 1, &lambda_names(n, lambdas))?;
    let z = rc.zsum(1, 1);
    let factors: Vec<(MultiPoly, u32)> = lambda_values(&rc, n, lambdas)?
        .into_iter()
        .map(|l| (l - &z, 1))
        .collect();
    ResidueForm::from_polys(rc.import(p), &factors, rc.z_vars.clone())
}

/// Residue form of a fibre integral over the k-th tower fibre.
///
/// Numerator `prod_{2<=t1<=t2<=k} -(z_t1+...+z_t2) * P`; denominator
/// `prod_{s1<s2} (z_s1 - z_{s1+1} - ... - z_s2) * prod_j prod_i (lambda_i - z_1 - ... - z_j)`.
/// For `k = 1` this is [`flag_residue_integrand`].
pub fn fibre_residue_integrand(
    n: usize,
    k: usize,
    p: &MultiPoly,
    lambdas: &Lambdas,
) -> Result<ResidueForm> {
    if k < 1 {
        return Err(Error::Argument("tower depth k must be at least 1".into()));
    }
    if n < 1 {
        return Err(Error::Argument("dimension n must be at least 1".into()));
    }
    if k == 1 {
        return flag_residue_integrand(n, p, lambdas);
    }
    let rc = ResidueContext::new(p.ctx(), k, &lambda_names(n, lambdas))?;
    let mut numerator = rc.import(p);
    for t1 in 2..=k {
        for t2 in t1..=k {
            numerator = numerator * -rc.zsum(t1, t2);
        }
    }
    let mut factors = pair_factors(&rc, k, false);
    let lams = lambda_values(&rc, n, lambdas)?;
    for j in 1..=k {
        let zj = rc.zsum(1, j);
        for l in &lams {
            factors.push((l - &zj, 1));
        }
    }
    ResidueForm::from_polys(numerator, &factors, rc.z_vars.clone())
}

/// `z_s1 - z_{s1+1} - ... - z_s2` for all `s1 < s2`, negated when `flip` is set.
fn pair_factors(rc: &ResidueContext, k: usize, flip: bool) -> Vec<(MultiPoly, u32)> {
    let mut out = Vec::new();
    for s1 in 1..=k {
        for s2 in s1 + 1..=k {
            let f = rc.zsum(s1, s1) - rc.zsum(s1 + 1, s2);
            out.push((if flip { -f } else { f }, 1));
        }
    }
    out
}

fn check_depth(n: usize, k: usize) -> Result<()> {
    if k < 1 || n < 1 {
        return Err(Error::Argument(format!("need n >= 1 and k >= 1, got n={n}, k={k}")));
    }
    if n > u16::MAX as usize {
        return Err(Error::Argument("dimension too large".into()));
    }
    Ok(())
}

/// Residue form computing `int_{X_k} P` for a smooth degree-d hypersurface `X` of dimension n.
///
/// Numerator `(-1)^k prod_{1<=t1<=t2<=k} z_[t1..t2] * prod_j (z_[1..j] + d h) * P`;
/// denominator `prod_{s1<s2} (-z_s1 + z_[s1+1..s2]) * prod_j (z_[1..j] + h)^(n+2)`.
/// Coefficients are taken modulo `h^(n+1)`.
pub fn hypersurface_integrand(n: usize, k: usize, p: &MultiPoly) -> Result<ResidueForm> {
    check_depth(n, k)?;
    let rc = ResidueContext::new(p.ctx(), k, &[H.to_string(), D.to_string()])?;
    let h = rc.var(H);
    let dh = rc.var(D) * &h;
    let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
    let mut numerator = rc.import(p).scale(&sign);
    for t1 in 1..=k {
        for t2 in t1..=k {
            numerator = numerator * rc.zsum(t1, t2);
        }
    }
    for j in 1..=k {
        numerator = numerator * (rc.zsum(1, j) + &dh);
    }
    let mut factors = pair_factors(&rc, k, true);
    for j in 1..=k {
        factors.push((rc.zsum(1, j) + &h, (n + 2) as u32));
    }
    let hv = rc.ctx.require(H)?;
    Ok(ResidueForm::from_polys(numerator, &factors, rc.z_vars.clone())?
        .with_truncation(hv, n as u16))
}

/// Sign relating the Segre-class integrand to the hypersurface integrand.
///
/// With the residue orientation of [`super::orientation_sign`], the Segre form
/// needs `(-1)^k` to agree with [`hypersurface_integrand`]; this factor is
/// where that convention lives.
pub fn segre_route_sign(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Residue form computing `int_{X_k} P` from the Segre classes of `X`.
///
/// Numerator `prod_{2<=t1<=t2<=k} -z_[t1..t2] * P * prod_j sum_i s_i z_[1..j]^(n-i)`;
/// denominator `prod_{s1<s2} (z_s1 - z_[s1+1..s2]) * prod_j z_[1..j]^(2n)`, that is
/// `s(1/z_[1..j]) / z_[1..j]^n` with the Segre series cleared.
pub fn demailly_integrand(
    n: usize,
    k: usize,
    p: &MultiPoly,
    segre: &SegreData,
) -> Result<ResidueForm> {
    check_depth(n, k)?;
    if segre.dim() != n {
        return Err(Error::Argument(format!(
            "Segre data has dimension {}, expected {n}",
            segre.dim()
        )));
    }
    let mut extra: Vec<String> = vec![H.to_string(), D.to_string()];
    extra.extend(segre.ctx().names().iter().cloned());
    let rc = ResidueContext::new(p.ctx(), k, &extra)?;
    let segre_terms: Vec<MultiPoly> = (0..=n)
        .map(|i| segre.class(i).rebase(&rc.ctx))
        .collect::<Result<_>>()?;
    let mut numerator = rc.import(p).scale(&segre_route_sign(k));
    for t1 in 2..=k {
        for t2 in t1..=k {
            numerator = numerator * -rc.zsum(t1, t2);
        }
    }
    for j in 1..=k {
        let zj = rc.zsum(1, j);
        let mut cleared = MultiPoly::zero(&rc.ctx);
        for (i, s) in segre_terms.iter().enumerate() {
            cleared = cleared + s * zj.pow((n - i) as u32);
        }
        numerator = numerator * cleared;
    }
    let mut factors = pair_factors(&rc, k, false);
    for j in 1..=k {
        factors.push((rc.zsum(1, j), (2 * n) as u32));
    }
    let hv = rc.ctx.require(H)?;
    Ok(ResidueForm::from_polys(numerator, &factors, rc.z_vars.clone())?
        .with_truncation(hv, n as u16))
}

/// Two-variable form whose residue is twice the Grassmannian integral of `c1^2 c2`.
///
/// `-(z2 - z1)^2 (z1 + z2)^2 z1 z2 / prod_i (mu_i - z1)(mu_i - z2)` with symbolic `mu1..mu4`.
pub fn grassmannian_form() -> ResidueForm {
    let mut list = vec![names::z(1), names::z(2)];
    list.extend(indexed_names("mu", 4));
    let ctx = VarContext::new(list).expect("valid names");
    let z1 = MultiPoly::var(&ctx, 0);
    let z2 = MultiPoly::var(&ctx, 1);
    let numerator = -((&z2 - &z1).pow(2) * (&z1 + &z2).pow(2) * &z1 * &z2);
    let mut factors = Vec::new();
    for i in 0..4 {
        let mu = MultiPoly::var(&ctx, 2 + i);
        factors.push((&mu - &z1, 1));
        factors.push((&mu - &z2, 1));
    }
    ResidueForm::from_polys(numerator, &factors, vec![0, 1]).expect("valid form")
}

/// Standard context `u1..uk, h` for user integrands.
pub fn tautological_context(k: usize) -> Ctx {
    let mut list: Vec<String> = (1..=k).map(names::u).collect();
    list.push(H.to_string());
    VarContext::new(list).expect("valid names")
}
