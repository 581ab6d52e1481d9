//! Exact arithmetic: rationals, sparse polynomials, truncated series and the
//! cohomology ring of a hypersurface.

mod context;
mod dpoly;
mod hclass;
mod monomial;
mod poly;
mod series;

pub use context::{indexed_names, same_context, Ctx, VarContext};
pub use dpoly::DPoly;
pub use hclass::{truncate_h, HClass, D, DELTA, H};
pub use monomial::Monomial;
pub use poly::MultiPoly;
pub use series::{series_inverse, series_inverse_graded, UniSeries};

use num_bigint::BigInt;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// `num / den` as a rational; panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

/// Binomial coefficient `C(n, k)` as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i))
}

/// Multinomial coefficient `(sum parts)! / prod(parts!)`; zero if any part is negative.
pub fn multinomial(parts: &[i64]) -> BigInt {
    if parts.iter().any(|&p| p < 0) {
        return BigInt::from(0);
    }
    let mut total = 0u64;
    let mut acc = BigInt::from(1);
    for &p in parts {
        total += p as u64;
        acc *= binomial(total, p as u64);
    }
    acc
}
