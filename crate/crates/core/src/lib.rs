//! Exact intersection numbers on Demailly-Semple jet towers.
//!
//! Tautological integrals over the tower fibres are evaluated two ways: by
//! summing over torus fixed points and by iterated residues at infinity. On
//! smooth hypersurfaces the residue formula yields the intersection
//! polynomial `I(d)` behind the effective Green-Griffiths-Lang degree bound,
//! which the [`ggl`] module builds and certifies.

pub mod error;
pub mod exactalg;
pub mod ggl;
pub mod jetgroup;
pub mod localization;
pub mod residue;
pub mod tower;

pub use error::{Error, Result};

/// Variable naming conventions shared across modules.
pub mod names {
    /// Tautological classes `u1..uk` in user polynomials.
    pub const U: &str = "u";
    /// Residue variables `z1..zk`.
    pub const Z: &str = "z";

    pub fn u(i: usize) -> String {
        format!("{U}{i}")
    }

    pub fn z(i: usize) -> String {
        format!("{Z}{i}")
    }
}

/// Resource caps shared by the engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of torus fixed points enumerated.
    pub max_points: u64,
    /// Largest number of polynomial terms held by one intermediate value.
    pub max_terms: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_points: 1_000_000,
            max_terms: 10_000_000,
        }
    }
}
