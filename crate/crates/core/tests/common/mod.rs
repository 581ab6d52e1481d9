#![allow(dead_code)]

use jetres_core::exactalg::{binomial, factorial, int, DPoly, Monomial, MultiPoly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Exponent vectors of total weighted degree `deg` over variables with positive weight.
pub fn monomials_of_degree(weights: &[u32], deg: u32) -> Vec<Vec<u16>> {
    fn go(weights: &[u32], i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if weights[i] == 0 {
            cur.push(0);
            go(weights, i + 1, left, cur, out);
            cur.pop();
            return;
        }
        let mut e = 0;
        while e * weights[i] <= left {
            cur.push(e as u16);
            go(weights, i + 1, left - e * weights[i], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    go(weights, 0, deg, &mut Vec::new(), &mut out);
    out
}

/// A random polynomial homogeneous of degree `deg` for `weights`, with
/// up to `terms` monomials and small nonzero integer coefficients.
pub fn random_homogeneous(
    ctx: &jetres_core::exactalg::Ctx,
    weights: &[u32],
    deg: u32,
    terms: usize,
    rng: &mut ChaCha8Rng,
) -> MultiPoly {
    let mut all = monomials_of_degree(weights, deg);
    all.shuffle(rng);
    loop {
        let p = MultiPoly::from_terms(
            ctx,
            all.iter().take(terms).map(|e| {
                let mut c = rng.gen_range(-5i64..=5);
                if c == 0 {
                    c = 1;
                }
                (Monomial::from_exponents(e), int(c))
            }),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

/// `n` pairwise distinct random rationals, spread widely enough that small
/// integer combinations of them do not vanish.
pub fn random_lambdas(n: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    while out.len() < n {
        let l = Rational::new(
            BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000)),
            BigInt::from(rng.gen_range(1i64..=97)),
        );
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

type DCoeffs = Vec<Rational>;

fn dmul(a: &DCoeffs, b: &DCoeffs) -> DCoeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn dadd(a: &DCoeffs, b: &DCoeffs) -> DCoeffs {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

/// Series in `h` with coefficients polynomial in `d`, cut at `h^n`.
fn hmul(a: &[DCoeffs], b: &[DCoeffs], n: usize) -> Vec<DCoeffs> {
    let mut out = vec![Vec::new(); n + 1];
    for i in 0..=n {
        for j in 0..=n - i {
            out[i + j] = dadd(&out[i + j], &dmul(&a[i], &b[j]));
        }
    }
    out
}

fn constant_series(c: &[Rational]) -> Vec<DCoeffs> {
    c.iter().map(|x| vec![x.clone()]).collect()
}

/// `Td(X) = (h / (1 - e^-h))^(n+2) (1 - e^-dh) / dh` on a degree-d hypersurface.
pub fn todd_closed_form(n: usize) -> Vec<DCoeffs> {
    let sign = |m: usize| if m % 2 == 0 { Rational::one() } else { -Rational::one() };
    // g = (1 - e^-h) / h, inverted term by term
    let g: Vec<Rational> = (0..=n).map(|m| sign(m) / Rational::from_integer(factorial(m as u64 + 1))).collect();
    let mut inv = vec![Rational::zero(); n + 1];
    inv[0] = Rational::one();
    for m in 1..=n {
        let s: Rational = (1..=m).map(|j| &g[j] * &inv[m - j]).sum();
        inv[m] = -s;
    }
    let inv = constant_series(&inv);
    let mut td = constant_series(&[Rational::one()]);
    td.resize(n + 1, Vec::new());
    for _ in 0..n + 2 {
        td = hmul(&td, &inv, n);
    }
    let normal: Vec<DCoeffs> = (0..=n)
        .map(|m| {
            let mut c = vec![Rational::zero(); m + 1];
            c[m] = sign(m) / Rational::from_integer(factorial(m as u64 + 1));
            c
        })
        .collect();
    hmul(&td, &normal, n)
}

/// `s_j(X)` from `(1 + dh)(1 + h)^-(n+2)`.
pub fn segre_closed_form(n: usize, j: usize) -> DCoeffs {
    let sign = |m: usize| if m % 2 == 0 { Rational::one() } else { -Rational::one() };
    let e = n as u64 + 1;
    let free = sign(j) * Rational::from_integer(binomial(e + j as u64, j as u64));
    let with_d = if j == 0 {
        Rational::zero()
    } else {
        sign(j - 1) * Rational::from_integer(binomial(e + j as u64 - 1, j as u64 - 1))
    };
    vec![free, with_d]
}

/// `chi` for `k = 1` by pushing `e^(a u) Td(X)` forward along `P(T_X) -> X`:
/// `u^(n-1+i)` goes to `s_i(X)`, lower powers to 0.
pub fn euler_k1_oracle(n: usize, a: &BigInt) -> DPoly {
    let td = todd_closed_form(n);
    let mut top: DCoeffs = Vec::new();
    for i in 0..=n {
        let m = (n - 1 + i) as u32;
        let weight = Rational::from_integer(a.pow(m)) / Rational::from_integer(factorial(m as u64));
        let term = dmul(&dmul(&segre_closed_form(n, i), &td[n - i]), &vec![weight]);
        top = dadd(&top, &term);
    }
    // int_X h^n = d
    let mut coeffs = vec![Rational::zero()];
    coeffs.extend(top);
    DPoly::new(coeffs)
}

/// Members of the cone `sum_{i<j} N (e_i - e_j) + sum_i N (-e_i)` inside the box `|i_j| <= bound`,
/// by breadth-first search over generators. Large enough depth makes the search exhaustive
/// for the box.
pub fn lambda_plus_box(n: usize, bound: i64, depth: usize) -> std::collections::HashSet<Vec<i64>> {
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut g = vec![0; n];
        g[i] = -1;
        gens.push(g);
        for j in i + 1..n {
            let mut g = vec![0; n];
            g[i] = 1;
            g[j] = -1;
            gens.push(g);
        }
    }
    let mut seen = std::collections::HashSet::new();
    seen.insert(vec![0; n]);
    let mut frontier = vec![vec![0; n]];
    // intermediate points may leave the box; allow a wider working box
    let wide = bound * (n as i64 + 1);
    for _ in 0..depth {
        let mut next = Vec::new();
        for v in &frontier {
            for g in &gens {
                let w: Vec<i64> = v.iter().zip(g).map(|(x, y)| x + y).collect();
                if w.iter().all(|x| x.abs() <= wide) && seen.insert(w.clone()) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().filter(|v| v.iter().all(|x| x.abs() <= bound)).collect()
}
