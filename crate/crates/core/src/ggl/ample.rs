use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Relative positivity of `O_{X_k}(a)` over `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Positivity {
    RelativelyAmple,
    RelativelyNef,
    Neither,
}

impl fmt::Display for Positivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Positivity::RelativelyAmple => "relatively_ample",
            Positivity::RelativelyNef => "relatively_nef",
            Positivity::Neither => "neither",
        })
    }
}

/// Classifies the weights by `a_i >= 3 a_(i+1)` for `i <= k-2` together with
/// `a_(k-1) > 2 a_k > 0` (ample) or `a_(k-1) >= 2 a_k >= 0` (nef).
///
/// For `k = 1` the bundle is the hyperplane bundle of each fibre: ample
/// when `a_1 > 0`, nef when `a_1 >= 0`.
pub fn ample_condition(a: &[BigInt]) -> Result<Positivity> {
    let k = a.len();
    if k == 0 {
        return Err(Error::Argument("need at least one weight".into()));
    }
    if k == 1 {
        return Ok(if a[0].is_positive() {
            Positivity::RelativelyAmple
        } else if !a[0].is_negative() {
            Positivity::RelativelyNef
        } else {
            Positivity::Neither
        });
    }
    let three = BigInt::from(3);
    let two = BigInt::from(2);
    if !(0..k - 2).all(|i| a[i] >= &three * &a[i + 1]) {
        return Ok(Positivity::Neither);
    }
    let last = &two * &a[k - 1];
    let prev = &a[k - 2];
    if prev > &last && last > BigInt::zero() {
        Ok(Positivity::RelativelyAmple)
    } else if prev >= &last && last >= BigInt::zero() {
        Ok(Positivity::RelativelyNef)
    } else {
        Ok(Positivity::Neither)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn examples() {
        for n in 2..6i64 {
            let a = vec![BigInt::from(n).pow(16), BigInt::from(n).pow(8)];
            assert_eq!(ample_condition(&a).unwrap(), Positivity::RelativelyAmple);
        }
        assert_eq!(ample_condition(&big(&[2, 1])).unwrap(), Positivity::RelativelyNef);
        assert_eq!(ample_condition(&big(&[1, 2])).unwrap(), Positivity::Neither);
        assert_eq!(ample_condition(&big(&[5, 2, 1])).unwrap(), Positivity::Neither);
        assert_eq!(ample_condition(&big(&[9, 3, 1])).unwrap(), Positivity::RelativelyAmple);
        assert_eq!(ample_condition(&big(&[0, 0])).unwrap(), Positivity::RelativelyNef);
        assert_eq!(ample_condition(&big(&[1])).unwrap(), Positivity::RelativelyAmple);
        assert_eq!(ample_condition(&big(&[0])).unwrap(), Positivity::RelativelyNef);
        assert_eq!(ample_condition(&big(&[-1])).unwrap(), Positivity::Neither);
        assert!(ample_condition(&[]).is_err());
    }

    #[test]
    fn canonical_weights_are_ample() {
        for n in 2..=4usize {
            let a: Vec<BigInt> = (1..=n).map(|i| BigInt::from(n).pow((8 * (n + 1 - i)) as u32)).collect();
            assert_eq!(ample_condition(&a).unwrap(), Positivity::RelativelyAmple);
        }
    }
}
