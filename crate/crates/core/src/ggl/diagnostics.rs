use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::certificate::defect;
use super::config::GGLConfig;
use crate::error::{Error, Result};
use crate::exactalg::{binomial, int, DPoly, Rational};
use crate::Limits;

/// Exponent of `z^i h^s (dh)^t`, with `i` allowed to be negative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoeffKey {
    pub z: Vec<i64>,
    pub h: u32,
    pub dh: u32,
}

impl CoeffKey {
    pub fn new(z: Vec<i64>, h: u32, dh: u32) -> Self {
        CoeffKey { z, h, dh }
    }

    /// Defect of the z part plus `n + 1` for every power of `h` or `dh`.
    ///
    /// Each elementary ratio `z_i/z_j` (`i < j`), `h/z_j`, `dh/z_j` has positive weight.
    pub fn weight(&self) -> i64 {
        let n = self.z.len() as i64;
        defect(&self.z) + (n + 1) * (self.h + self.dh) as i64
    }
}

/// Series labels of the surface expansion `A = A0 A1 A2` and `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Series {
    A0,
    A1,
    A2,
    A,
    B,
}

type Terms = BTreeMap<CoeffKey, Rational>;

#[derive(Clone, Debug)]
struct Laurent {
    n: usize,
    terms: Terms,
}

impl Laurent {
    fn one(n: usize) -> Self {
        Self::monomial(n, CoeffKey::new(vec![0; n], 0, 0), Rational::one())
    }

    fn monomial(n: usize, key: CoeffKey, c: Rational) -> Self {
        let mut terms = Terms::new();
        if !c.is_zero() {
            terms.insert(key, c);
        }
        Laurent { n, terms }
    }

    /// `z_i / z_j`, 0-based.
    fn ratio(n: usize, i: usize, j: usize) -> Self {
        let mut z = vec![0; n];
        z[i] += 1;
        z[j] -= 1;
        Self::monomial(n, CoeffKey::new(z, 0, 0), Rational::one())
    }

    /// `h / z_j` or `dh / z_j`.
    fn class_over(n: usize, j: usize, h: u32, dh: u32) -> Self {
        let mut z = vec![0; n];
        z[j] = -1;
        Self::monomial(n, CoeffKey::new(z, h, dh), Rational::one())
    }

    fn add(mut self, other: &Laurent) -> Self {
        for (k, c) in &other.terms {
            let entry = self.terms.entry(k.clone()).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(k);
            }
        }
        self
    }

    fn scale(mut self, c: &Rational) -> Self {
        if c.is_zero() {
            self.terms.clear();
        }
        for v in self.terms.values_mut() {
            *v *= c;
        }
        self
    }

    /// Product with `h^s (dh)^t` dropped for `s + t > n` and, given a cap, weights above it.
    fn mul(&self, other: &Laurent, cap: Option<i64>) -> Laurent {
        let n = self.n as u32;
        let mut acc: HashMap<CoeffKey, Rational> = HashMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                if ka.h + ka.dh + kb.h + kb.dh > n {
                    continue;
                }
                let key = CoeffKey {
                    z: ka.z.iter().zip(&kb.z).map(|(x, y)| x + y).collect(),
                    h: ka.h + kb.h,
                    dh: ka.dh + kb.dh,
                };
                if cap.is_some_and(|w| key.weight() > w) {
                    continue;
                }
                *acc.entry(key).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Laurent {
            n: self.n,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// `sum_m coeffs(m) x^m` until the powers of `x` vanish under the cap.
    fn series_in<F>(x: &Laurent, cap: i64, coeffs: F) -> Laurent
    where
        F: Fn(u64) -> Rational,
    {
        let mut out = Laurent::one(x.n);
        let mut power = Laurent::one(x.n);
        let mut m = 0u64;
        loop {
            m += 1;
            power = power.mul(x, Some(cap));
            if power.terms.is_empty() {
                return out;
            }
            out = out.add(&power.clone().scale(&coeffs(m)));
        }
    }

    fn check(&self, limits: &Limits, label: &str) -> Result<()> {
        if self.terms.len() as u64 > limits.max_terms {
            return Err(Error::ResourceLimit {
                what: format!("{} terms in the {label} expansion", self.terms.len()),
                limit: limits.max_terms,
            });
        }
        Ok(())
    }
}

/// `A0 = prod_j (1 + (z_[1..j-1] + dh) / z_j)`.
fn series_a0(n: usize) -> Laurent {
    (0..n).fold(Laurent::one(n), |acc, j| {
        let factor = (0..j).fold(
            Laurent::one(n).add(&Laurent::class_over(n, j, 0, 1)),
            |f, i| f.add(&Laurent::ratio(n, i, j)),
        );
        acc.mul(&factor, None)
    })
}

/// `A1 = prod_{t1<t2} z_[t1..t2] / (-z_t1 + z_[t1+1..t2])`, expanded in `1/z_t2`.
fn series_a1(n: usize, cap: i64) -> Laurent {
    let mut acc = Laurent::one(n);
    for t2 in 0..n {
        for t1 in 0..t2 {
            // z_[t1..t2] / z_t2 * sum_m q^m with q = (z_t1 - z_[t1+1..t2-1]) / z_t2
            let numerator = (t1..t2).fold(Laurent::one(n), |f, i| f.add(&Laurent::ratio(n, i, t2)));
            let q = (t1 + 1..t2).fold(Laurent::ratio(n, t1, t2), |f, i| {
                f.add(&Laurent::ratio(n, i, t2).scale(&int(-1)))
            });
            let geometric = Laurent::series_in(&q, cap, |_| Rational::one());
            acc = acc.mul(&numerator.mul(&geometric, Some(cap)), Some(cap));
        }
    }
    acc
}

/// `A2 = prod_j (1 + (z_[1..j-1] + h) / z_j)^-(n+2)`.
fn series_a2(n: usize, cap: i64) -> Laurent {
    let e = (n + 1) as u64;
    let mut acc = Laurent::one(n);
    for j in 0..n {
        let y = (0..j).fold(Laurent::class_over(n, j, 1, 0), |f, i| f.add(&Laurent::ratio(n, i, j)));
        // (1 + y)^-(n+2) = sum_m (-1)^m C(n+1+m, m) y^m
        let factor = Laurent::series_in(&y, cap, |m| {
            let c = Rational::from_integer(binomial(e + m, m));
            if m % 2 == 1 {
                -c
            } else {
                c
            }
        });
        acc = acc.mul(&factor, Some(cap));
    }
    acc
}

/// `B = (a.z + 2|a| h)^(n^2-1) (a.z + S |a| h - n^2 delta |a| dh) / (z_1 ... z_n)^n`.
fn series_b(cfg: &GGLConfig) -> Laurent {
    let n = cfg.n;
    let norm = Rational::from_integer(cfg.a_norm());
    let linear = cfg.a.iter().enumerate().fold(
        Laurent { n, terms: Terms::new() },
        |acc, (i, ai)| {
            let mut z = vec![0; n];
            z[i] = 1;
            acc.add(&Laurent::monomial(n, CoeffKey::new(z, 0, 0), Rational::from_integer(ai.clone())))
        },
    );
    let h = |c: Rational| Laurent::monomial(n, CoeffKey::new(vec![0; n], 1, 0), c);
    let dh = |c: Rational| Laurent::monomial(n, CoeffKey::new(vec![0; n], 0, 1), c);
    let n2 = (n * n) as i64;
    let s = s_n_delta(n, &cfg.delta);
    let nef = linear.clone().add(&h(int(2) * &norm));
    let twisted = linear
        .add(&h(&s * &norm))
        .add(&dh(-(int(n2) * &cfg.delta * &norm)));
    let mut acc = twisted;
    for _ in 0..n2 - 1 {
        acc = acc.mul(&nef, None);
    }
    let terms = acc
        .terms
        .into_iter()
        .map(|(mut k, c)| {
            for x in k.z.iter_mut() {
                *x -= n as i64;
            }
            (k, c)
        })
        .collect();
    Laurent { n, terms }
}

/// `S_{n,delta} = 2 - 2n^2 + n^2 (n+2) delta`.
pub fn s_n_delta(n: usize, delta: &Rational) -> Rational {
    let n2 = int((n * n) as i64);
    int(2) - int(2) * &n2 + n2 * int(n as i64 + 2) * delta
}

/// Closed form of `B_{z^i h^s}`:
/// `(M(n^2; s, i+n) + (S/2 - 1) M(n^2-1; s-1, i+n)) (2|a|)^s prod_t a_t^(i_t+n)`.
pub fn b_closed_form(cfg: &GGLConfig, i: &[i64], s: u32) -> Rational {
    use crate::exactalg::multinomial;
    let n = cfg.n as i64;
    let shifted: Vec<i64> = i.iter().map(|x| x + n).collect();
    if shifted.iter().any(|&x| x < 0) {
        return Rational::zero();
    }
    let mut top = vec![s as i64];
    top.extend(&shifted);
    let mut lower = vec![s as i64 - 1];
    lower.extend(&shifted);
    let m_top = Rational::from_integer(multinomial(&top));
    let m_lower = Rational::from_integer(multinomial(&lower));
    let correction = s_n_delta(cfg.n, &cfg.delta) / int(2) - int(1);
    let mut scale = Rational::from_integer((BigInt::from(2) * cfg.a_norm()).pow(s));
    for (a, e) in cfg.a.iter().zip(&shifted) {
        scale *= Rational::from_integer(a.pow(*e as u32));
    }
    (m_top + correction * m_lower) * scale
}

/// Coefficients of the labelled series of the surface-case expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    pub n: usize,
    /// Requested bound on `|D(i)|` for reported entries.
    pub defect_cap: i64,
    /// Largest weight kept in the A-series; they are exact below it.
    pub weight_cap: i64,
    pub a0: Terms,
    pub a1: Terms,
    pub a2: Terms,
    pub a: Terms,
    pub b: Terms,
}

impl CoefficientTable {
    pub fn series(&self, label: Series) -> &Terms {
        match label {
            Series::A0 => &self.a0,
            Series::A1 => &self.a1,
            Series::A2 => &self.a2,
            Series::A => &self.a,
            Series::B => &self.b,
        }
    }

    pub fn get(&self, label: Series, key: &CoeffKey) -> Rational {
        self.series(label).get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Entries with `|D(i)| <= defect_cap`.
    pub fn within_cap(&self, label: Series) -> impl Iterator<Item = (&CoeffKey, &Rational)> + '_ {
        self.series(label)
            .iter()
            .filter(|(k, _)| defect(&k.z).abs() <= self.defect_cap)
    }

    /// `p_(n-l) = sum B_{z^i h^s (dh)^t} A_{z^(-i-1) h^(l-s) (dh)^(n-l-t)}`, assembled for all `l`.
    pub fn coefficient_route(&self) -> DPoly {
        let n = self.n as u32;
        let mut coeffs = vec![Rational::zero(); self.n + 1];
        for (kb, cb) in &self.b {
            let target: Vec<i64> = kb.z.iter().map(|x| -x - 1).collect();
            for l in kb.h..=n.saturating_sub(kb.dh) {
                if n - l < kb.dh {
                    continue;
                }
                let ka = CoeffKey::new(target.clone(), l - kb.h, n - l - kb.dh);
                if let Some(ca) = self.a.get(&ka) {
                    coeffs[(n - l) as usize] += cb * ca;
                }
            }
        }
        DPoly::new(coeffs)
    }
}

/// Weight needed in `A` to pair with every term of `B` in the coefficient route.
fn route_weight(b: &Laurent) -> i64 {
    let n = b.n as u32;
    b.terms
        .keys()
        .map(|k| {
            let z: Vec<i64> = k.z.iter().map(|x| -x - 1).collect();
            CoeffKey::new(z, n - k.h - k.dh, 0).weight()
        })
        .max()
        .unwrap_or(0)
}

/// Expands `A0`, `A1`, `A2`, `A` and `B` for the case `k = n`.
///
/// The A-series are exact up to weight `max(defect_cap + n(n+1), w)`, where
/// `w` is what the coefficient route needs.
pub fn expansion_diagnostics(cfg: &GGLConfig, defect_cap: i64, limits: &Limits) -> Result<CoefficientTable> {
    if cfg.n != cfg.k {
        return Err(Error::Argument(format!(
            "expansion diagnostics need k = n, got n={}, k={}",
            cfg.n, cfg.k
        )));
    }
    if defect_cap < 0 {
        return Err(Error::Argument("defect cap must be non-negative".into()));
    }
    let n = cfg.n;
    let b = series_b(cfg);
    b.check(limits, "B")?;
    let cap = (defect_cap + (n * (n + 1)) as i64).max(route_weight(&b));
    let a0 = series_a0(n);
    let a1 = series_a1(n, cap);
    a1.check(limits, "A1")?;
    let a2 = series_a2(n, cap);
    a2.check(limits, "A2")?;
    let a = a0.mul(&a1, Some(cap)).mul(&a2, Some(cap));
    a.check(limits, "A")?;
    Ok(CoefficientTable {
        n,
        defect_cap,
        weight_cap: cap,
        a0: a0.terms,
        a1: a1.terms,
        a2: a2.terms,
        a: a.terms,
        b: b.terms,
    })
}
