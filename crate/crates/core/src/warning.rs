use serde::Serialize;
use std::fmt;

/// Non-fatal diagnostics attached to results and reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum Warning {
    /// `|det Q| != 1`.
    NonUnimodularForm { determinant: String },
    /// The Spin^c class fails `c . x == x . x (mod 2)` on these basis vectors.
    NotCharacteristic { basis_indices: Vec<usize> },
    /// Simple connectivity is assumed by the reduction bookkeeping.
    NonzeroB1 { b1: u32 },
    /// The mu-map parameter lies outside `[0, 1]`.
    TauOutOfRange { tau: f64 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::NonUnimodularForm { determinant } => {
                write!(f, "intersection form is not unimodular (det = {determinant})")
            }
            Warning::NotCharacteristic { basis_indices } => write!(
                f,
                "spin^c class is not characteristic on basis vectors {basis_indices:?}"
            ),
            Warning::NonzeroB1 { b1 } => {
                write!(f, "b1 = {b1}; reduction bookkeeping assumes a simply connected manifold")
            }
            Warning::TauOutOfRange { tau } => write!(f, "tau = {tau} lies outside [0, 1]"),
        }
    }
}
