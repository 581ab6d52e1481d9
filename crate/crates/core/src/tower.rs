//! Torus fixed points on the fibre of the Demailly-Semple tower.
//!
//! A fixed point is a sequence of weights `w_1, ..., w_k`, each drawn from the
//! weight set determined by its predecessors. Weights are integer vectors in
//! the basis `lambda_1, ..., lambda_n` of the torus characters.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{indexed_names, Ctx, MultiPoly, Rational, VarContext};

/// Prefix of the variable names used for the torus characters.
pub const LAMBDA_PREFIX: &str = "l";

/// Default cap on the number of fixed points enumerated.
pub const DEFAULT_POINT_CAP: u64 = 1_000_000;

/// A character `sum c_i lambda_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    /// The basis character `lambda_{i+1}`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut c = vec![0; n];
        c[i] = 1;
        Weight(c)
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    /// Value at a numeric specialization of the characters.
    pub fn eval(&self, lambdas: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(lambdas)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, l)| l * Rational::from_integer(c.into()))
            .sum()
    }

    /// The linear form in the first `n` variables of `ctx`.
    pub fn to_poly(&self, ctx: &Ctx) -> MultiPoly {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .fold(MultiPoly::zero(ctx), |acc, (i, &c)| {
                acc + MultiPoly::var(ctx, i).scale(&Rational::from_integer(c.into()))
            })
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = lambda_context(self.0.len());
        write!(f, "{}", self.to_poly(&ctx))
    }
}

/// Context `l1, ..., ln` for symbolic characters.
pub fn lambda_context(n: usize) -> Ctx {
    VarContext::new(indexed_names(LAMBDA_PREFIX, n)).expect("valid names")
}

/// The n weights on one fibre, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightSet {
    elements: Vec<Weight>,
}

impl WeightSet {
    fn from_unsorted(mut elements: Vec<Weight>, n: usize) -> Result<Self> {
        elements.sort();
        if elements.len() != n
            || elements.iter().any(Weight::is_zero)
            || elements.windows(2).any(|w| w[0] == w[1])
        {
            return Err(Error::Internal(format!(
                "weight set {elements:?} does not have {n} distinct nonzero elements"
            )));
        }
        Ok(WeightSet { elements })
    }

    pub fn elements(&self) -> &[Weight] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.elements.binary_search(w).is_ok()
    }
}

fn check_dimension(prefix: &[Weight], n: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::Argument("n must be positive".into()));
    }
    if let Some(w) = prefix.iter().find(|w| w.0.len() != n) {
        return Err(Error::InvalidPrefix(format!(
            "weight {:?} has length {}, expected {n}",
            w.0,
            w.0.len()
        )));
    }
    Ok(())
}

fn initial_set(n: usize) -> Vec<Weight> {
    (0..n).map(|i| Weight::basis(n, i)).collect()
}

/// One step of the recursion: `{w} + {v - w : v != w}`, zeros dropped.
fn next_set(current: &[Weight], w: &Weight) -> Vec<Weight> {
    std::iter::once(w.clone())
        .chain(current.iter().filter(|v| *v != w).map(|v| v.sub(w)))
        .filter(|v| !v.is_zero())
        .collect()
}

/// Weight set of the fibre over the prefix, built step by step.
pub fn weight_set_recursive(prefix: &[Weight], n: usize) -> Result<WeightSet> {
    check_dimension(prefix, n)?;
    let mut current = initial_set(n);
    for (i, w) in prefix.iter().enumerate() {
        if !current.contains(w) {
            return Err(Error::InvalidPrefix(format!(
                "weight {w} at position {} is not in the preceding weight set",
                i + 1
            )));
        }
        current = next_set(&current, w);
    }
    WeightSet::from_unsorted(current, n)
}

/// Counts recorded while evaluating the closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosedFormCounts {
    pub candidates: usize,
    pub zeros_removed: usize,
    pub subtracted: usize,
}

/// Closed-form weight set together with its cardinality bookkeeping.
pub fn weight_set_closed_counts(
    prefix: &[Weight],
    n: usize,
) -> Result<(WeightSet, ClosedFormCounts)> {
    check_dimension(prefix, n)?;
    // validity is decided by the recursive rule
    weight_set_recursive(prefix, n)?;
    let i = prefix.len();
    if i == 0 {
        let set = WeightSet::from_unsorted(initial_set(n), n)?;
        let counts = ClosedFormCounts {
            candidates: n,
            zeros_removed: 0,
            subtracted: 0,
        };
        return Ok((set, counts));
    }
    // tail[s] = w_{s+1} + ... + w_i (0-based s)
    let mut tail = vec![Weight::zero(n); i + 1];
    for s in (0..i).rev() {
        tail[s] = tail[s + 1].add(&prefix[s]);
    }
    let mut candidates: Vec<Weight> = (0..n)
        .map(|j| Weight::basis(n, j).sub(&tail[0]))
        .collect();
    for s in 0..i - 1 {
        candidates.push(prefix[s].sub(&tail[s + 1]));
    }
    candidates.push(prefix[i - 1].clone());
    let total = candidates.len();
    candidates.retain(|w| !w.is_zero());
    let zeros_removed = total - candidates.len();
    let mut subtracted = 0;
    for t in 1..i {
        let target = tail[t].neg();
        if let Some(pos) = candidates.iter().position(|w| *w == target) {
            candidates.remove(pos);
            subtracted += 1;
        }
    }
    let set = WeightSet::from_unsorted(candidates, n)?;
    Ok((
        set,
        ClosedFormCounts {
            candidates: total,
            zeros_removed,
            subtracted,
        },
    ))
}

/// Weight set of the fibre over the prefix, from the closed formula.
pub fn weight_set_closed(prefix: &[Weight], n: usize) -> Result<WeightSet> {
    weight_set_closed_counts(prefix, n).map(|(s, _)| s)
}

/// A torus fixed point of the k-th fibre.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedPoint {
    weights: Vec<Weight>,
}

impl FixedPoint {
    /// Validates that each weight lies in the set determined by its predecessors.
    pub fn new(weights: Vec<Weight>, n: usize) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidPrefix("fixed point needs at least one weight".into()));
        }
        weight_set_recursive(&weights, n)?;
        Ok(FixedPoint { weights })
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn depth(&self) -> usize {
        self.weights.len()
    }

    /// The tangent weights `w - w_j` for `w` in the j-th set, `w != w_j`.
    pub fn tangent_weights(&self) -> Vec<Weight> {
        let n = self.weights[0].0.len();
        let mut current = initial_set(n);
        let mut out = Vec::with_capacity(self.weights.len() * (n - 1));
        for w in &self.weights {
            out.extend(current.iter().filter(|v| *v != w).map(|v| v.sub(w)));
            current = next_set(&current, w);
        }
        out
    }
}

/// All `n^k` fixed points, in lexicographic order of their weight choices.
pub fn enumerate_fixed_points(n: usize, k: usize, cap: u64) -> Result<Vec<FixedPoint>> {
    if n < 2 || k < 1 {
        return Err(Error::Argument(format!("need n >= 2 and k >= 1, got n={n}, k={k}")));
    }
    let count = (n as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if count > cap {
        return Err(Error::ResourceLimit {
            what: format!("{count} fixed points for n={n}, k={k}"),
            limit: cap,
        });
    }
    let first = WeightSet::from_unsorted(initial_set(n), n)?;
    let points: Vec<Vec<Vec<Weight>>> = first
        .elements()
        .par_iter()
        .map(|w1| {
            let mut layer = vec![vec![w1.clone()]];
            for _ in 1..k {
                let mut next = Vec::with_capacity(layer.len() * n);
                for prefix in &layer {
                    let set = weight_set_recursive(prefix, n).expect("prefix is valid");
                    for w in set.elements() {
                        let mut p = prefix.clone();
                        p.push(w.clone());
                        next.push(p);
                    }
                }
                layer = next;
            }
            layer
        })
        .collect();
    Ok(points
        .into_iter()
        .flatten()
        .map(|weights| FixedPoint { weights })
        .collect())
}

/// Equivariant Euler class of the tangent space at `fp`, a polynomial in `l1..ln`.
pub fn euler_class(fp: &FixedPoint, n: usize) -> MultiPoly {
    let ctx = lambda_context(n);
    fp.tangent_weights()
        .iter()
        .fold(MultiPoly::one(&ctx), |acc, w| acc * w.to_poly(&ctx))
}
