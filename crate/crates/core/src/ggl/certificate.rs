use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactalg::{multinomial, DPoly, Rational};

/// Coefficient test `p_n > 0` and `|p_(n-l)| < D^l p_n` for `l = 1..n`.
///
/// When it holds, `p(d) > 0` for every `d > 2D`.
pub fn fujiwara_certificate(p: &DPoly, bound: &Rational) -> Result<bool> {
    let Some(n) = p.degree() else {
        return Err(Error::Argument("zero polynomial has no certificate".into()));
    };
    let lead = p.coeff(n);
    if !lead.is_positive() {
        return Ok(false);
    }
    let mut power = Rational::one();
    for l in 1..=n {
        power *= bound;
        if p.coeff(n - l).abs() >= &power * &lead {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `B_0 = (a_1 ... a_n)^n * multinomial(n^2; n, ..., n)`.
pub fn b0(n: usize, a: &[BigInt]) -> Result<BigInt> {
    if a.len() != n {
        return Err(Error::Argument(format!("expected {n} weights, got {}", a.len())));
    }
    let prod = a.iter().fold(BigInt::one(), |acc, x| acc * x);
    Ok(prod.pow(n as u32) * multinomial(&vec![n as i64; n]))
}

/// Defect `n i_1 + (n-1) i_2 + ... + i_n`.
pub fn defect(i: &[i64]) -> i64 {
    let n = i.len() as i64;
    i.iter().enumerate().map(|(j, x)| (n - j as i64) * x).sum()
}

/// Membership in the cone spanned by `e_i - e_j` (`i < j`) and `-e_i`.
///
/// Decided by: the total sum is non-positive and no prefix sum is below it.
pub fn lambda_plus_member(i: &[i64]) -> bool {
    let total: i64 = i.iter().sum();
    if total > 0 {
        return false;
    }
    let mut prefix = 0;
    for x in i {
        prefix += x;
        if prefix < total {
            return false;
        }
    }
    true
}

/// Evaluates the sign of `p` exactly at `d`.
pub fn positive_at(p: &DPoly, d: &Rational) -> bool {
    p.eval(d).is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn dp(c: &[i64]) -> DPoly {
        DPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn certificate_examples() {
        let p = dp(&[1, 1, 1]);
        assert!(!fujiwara_certificate(&p, &int(1)).unwrap());
        assert!(fujiwara_certificate(&p, &int(2)).unwrap());
        let q = dp(&[-10, 1]);
        assert!(!fujiwara_certificate(&q, &int(10)).unwrap());
        assert!(fujiwara_certificate(&q, &int(11)).unwrap());
        assert!(positive_at(&q, &int(23)));
        assert!(fujiwara_certificate(&DPoly::zero(), &int(1)).is_err());
        assert!(!fujiwara_certificate(&dp(&[0, -1]), &int(100)).unwrap());
    }

    #[test]
    fn b0_examples() {
        assert_eq!(b0(2, &[BigInt::from(1), BigInt::from(1)]).unwrap(), BigInt::from(6));
        let a = [BigInt::from(65536), BigInt::from(256)];
        assert_eq!(b0(2, &a).unwrap(), BigInt::from(6) * BigInt::from(2).pow(48));
        assert_eq!(b0(3, &[BigInt::from(1), BigInt::from(1), BigInt::from(1)]).unwrap(), BigInt::from(1680));
        assert!(b0(3, &[BigInt::from(1)]).is_err());
    }

    #[test]
    fn defect_and_cone() {
        assert_eq!(defect(&[1, -1]), 1);
        assert!(lambda_plus_member(&[1, -1]));
        assert!(lambda_plus_member(&[-1, 0]));
        assert!(!lambda_plus_member(&[1, 0]));
        assert!(!lambda_plus_member(&[-1, 1]));
        for n in 1..=5usize {
            for l in 1..=n {
                let mut i = vec![0; n];
                for x in i.iter_mut().skip(n - l) {
                    *x = -1;
                }
                assert_eq!(defect(&i), -((l * (l + 1) / 2) as i64));
                assert!(lambda_plus_member(&i));
            }
        }
    }
}
