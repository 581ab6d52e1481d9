use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::Rational;

/// Parameters of the twisted line bundle on `X_k` whose positivity is tested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GGLConfig {
    pub n: usize,
    pub k: usize,
    /// Weights `a_1..a_k`, all positive.
    pub a: Vec<BigInt>,
    /// Morse parameter, non-negative.
    pub delta: Rational,
}

impl GGLConfig {
    pub fn new(n: usize, k: usize, a: Vec<BigInt>, delta: Rational) -> Result<Self> {
        if n < 2 {
            return Err(Error::Argument(format!("need n >= 2, got {n}")));
        }
        if k < 1 {
            return Err(Error::Argument("need k >= 1".into()));
        }
        if a.len() != k {
            return Err(Error::Argument(format!("expected {k} weights, got {}", a.len())));
        }
        if let Some(bad) = a.iter().find(|x| !x.is_positive()) {
            return Err(Error::Argument(format!("weights must be positive, got {bad}")));
        }
        if delta.is_negative() {
            return Err(Error::Argument(format!("delta must be non-negative, got {delta}")));
        }
        Ok(GGLConfig { n, k, a, delta })
    }

    /// `k = n`, `a_i = n^(8(n+1-i))`, `delta = 1 / (2 n^(8n))`.
    pub fn canonical(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Argument(format!("need n >= 2, got {n}")));
        }
        let base = BigInt::from(n);
        let a = (1..=n).map(|i| base.pow((8 * (n + 1 - i)) as u32)).collect();
        let delta = Rational::new(BigInt::one(), BigInt::from(2) * base.pow((8 * n) as u32));
        Self::new(n, n, a, delta)
    }

    /// `|a| = a_1 + ... + a_k`.
    pub fn a_norm(&self) -> BigInt {
        self.a.iter().fold(BigInt::zero(), |acc, x| acc + x)
    }

    /// `dim X_k = n + k(n-1)`.
    pub fn tower_dim(&self) -> usize {
        self.n + self.k * (self.n - 1)
    }
}

/// The Fujiwara radius `3 n^(8n)` attached to the canonical configuration.
pub fn canonical_bound(n: usize) -> BigInt {
    BigInt::from(3) * BigInt::from(n).pow((8 * n) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn canonical_surface() {
        let c = GGLConfig::canonical(2).unwrap();
        assert_eq!(c.a, vec![BigInt::from(65536), BigInt::from(256)]);
        assert_eq!(c.delta, rat(1, 131072));
        assert_eq!(c.a_norm(), BigInt::from(65792));
        assert_eq!(c.tower_dim(), 4);
        assert_eq!(canonical_bound(2), BigInt::from(196608));
    }

    #[test]
    fn validation() {
        assert!(GGLConfig::new(1, 1, vec![BigInt::from(1)], rat(0, 1)).is_err());
        assert!(GGLConfig::new(2, 2, vec![BigInt::from(1)], rat(0, 1)).is_err());
        assert!(GGLConfig::new(2, 1, vec![BigInt::from(0)], rat(0, 1)).is_err());
        assert!(GGLConfig::new(2, 1, vec![BigInt::from(1)], rat(-1, 2)).is_err());
        assert!(GGLConfig::new(2, 1, vec![BigInt::from(1)], rat(1, 2)).is_ok());
    }
}
