//! Green-Griffiths-Lang pipeline.

mod ample;
mod certificate;
mod config;
mod diagnostics;
mod estimates;
mod euler;
mod intersection;
mod threshold;

pub use ample::{ample_condition, Positivity};
pub use certificate::{b0, defect, fujiwara_certificate, lambda_plus_member, positive_at};
pub use config::{canonical_bound, GGLConfig};
pub use diagnostics::{
    b_closed_form, expansion_diagnostics, s_n_delta, CoeffKey, CoefficientTable, Series,
};
pub use estimates::{
    estimate_checks, estimate_checks_with, EstimateReport, Finding, CLOSED_FORM_DEFECT_CAP,
    LEMMA_DEFECT_CAP,
};
pub use euler::{
    default_budget, euler_characteristic, euler_characteristic_with, euler_integrand, todd_genus, EulerCharacteristic,
    STABILITY_STEP,
};
pub use intersection::{
    build_intersection_polynomial, integrand_context, intersection_integrand, s_constant,
    IntersectionPolynomial,
};
pub use threshold::{ggl_threshold_check, threshold_report, ThresholdReport};
