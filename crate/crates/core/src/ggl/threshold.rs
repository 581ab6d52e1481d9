use num_bigint::BigInt;

use super::certificate::{fujiwara_certificate, positive_at};
use super::config::{canonical_bound, GGLConfig};
use super::intersection::build_intersection_polynomial;
use crate::error::Result;
use crate::exactalg::{DPoly, Rational};
use crate::residue::{IntegralRoute, ResidueMethod};
use crate::Limits;

/// Multiples of the threshold `2 * bound` probed beyond `2 * bound + 1`.
const SAMPLE_MULTIPLES: [u32; 3] = [2, 10, 1000];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdReport {
    pub config: GGLConfig,
    pub p: DPoly,
    /// `3 n^(8n)`.
    pub bound: BigInt,
    pub certified: bool,
    /// `(d, p(d) > 0)` at `6 n^(8n) + 1` and larger points.
    pub samples: Vec<(BigInt, bool)>,
}

impl ThresholdReport {
    pub fn holds(&self) -> bool {
        self.certified && self.samples.iter().all(|(_, positive)| *positive)
    }
}

/// Certifies `p(d) > 0` for `d > 6 n^(8n)` on the canonical configuration.
pub fn ggl_threshold_check(n: usize, limits: &Limits) -> Result<ThresholdReport> {
    let cfg = GGLConfig::canonical(n)?;
    let poly = build_intersection_polynomial(&cfg, IntegralRoute::Hypersurface, ResidueMethod::Expand, limits)?;
    threshold_report(cfg, poly.p)
}

/// [`ggl_threshold_check`] for an already computed `p`.
pub fn threshold_report(config: GGLConfig, p: DPoly) -> Result<ThresholdReport> {
    let bound = canonical_bound(config.n);
    let certified = fujiwara_certificate(&p, &Rational::from_integer(bound.clone()))?;
    let threshold = BigInt::from(2) * &bound;
    let mut points = vec![&threshold + 1];
    points.extend(SAMPLE_MULTIPLES.iter().map(|m| &threshold * BigInt::from(*m)));
    let samples = points
        .into_iter()
        .map(|d| {
            let positive = positive_at(&p, &Rational::from_integer(d.clone()));
            (d, positive)
        })
        .collect();
    Ok(ThresholdReport {
        config,
        p,
        bound,
        certified,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    #[test]
    fn report_on_synthetic_polynomial() {
        let cfg = GGLConfig::canonical(2).unwrap();
        let p = DPoly::new(vec![int(-1), int(0), int(1)]);
        let r = threshold_report(cfg.clone(), p).unwrap();
        assert!(r.holds());
        assert_eq!(r.samples[0].0, BigInt::from(393217));
        assert_eq!(r.samples.len(), 4);
        let q = DPoly::new(vec![int(0), int(-1_000_000), int(1)]);
        let bad = threshold_report(cfg, q).unwrap();
        assert!(!bad.certified);
        assert!(!bad.samples[0].1);
        assert!(bad.samples[3].1);
    }
}
