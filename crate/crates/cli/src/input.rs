//! Problem files: JSON documents describing a manifold, a Spin^c structure,
//! a bundle and optional curvature bounds and run options.

use monopole_core::cohomology::{BundleData, CohClass2, FourManifold, SpincStructure};
use monopole_core::exact::rational_json;
use monopole_core::reductions::CurvatureBounds;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA: &str = include_str!("../schema/problem.schema.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub manifold: ManifoldInput,
    pub spinc: SpincInput,
    pub bundle: BundleInput,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<OptionsInput>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldInput {
    pub name: String,
    pub b1: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2plus: Option<usize>,
    pub intersection_form: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpincInput {
    pub c1: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleInput {
    pub rank: u32,
    pub c1: Vec<i64>,
    pub c2: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsInput {
    pub c_trace: f64,
    pub c_plus: f64,
    pub c_minus: f64,
    #[serde(default)]
    pub g: Metric,
}

/// The harmonic-form metric: `"identity"` or an explicit rational matrix.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Metric {
    #[default]
    Identity,
    Matrix(Vec<Vec<Rational64>>),
}

impl Serialize for Metric {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Metric::Identity => s.serialize_str("identity"),
            Metric::Matrix(m) => rational_json::matrix::serialize(m, s),
        }
    }
}

impl<'de> Deserialize<'de> for Metric {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Name(String),
            Matrix(#[serde(with = "rational_json::matrix")] Vec<Vec<Rational64>>),
        }
        match Raw::deserialize(d).map_err(|_| {
            serde::de::Error::custom("expected \"identity\" or a matrix of rationals")
        })? {
            Raw::Name(n) if n == "identity" => Ok(Metric::Identity),
            Raw::Name(n) => Err(serde::de::Error::custom(format!(
                "unknown metric {n:?}; expected \"identity\" or a matrix"
            ))),
            Raw::Matrix(m) => Ok(Metric::Matrix(m)),
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim() == "identity" {
            return Ok(Metric::Identity);
        }
        serde_json::from_str(s).map_err(|e| format!("--g: {e}"))
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub starts: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dirac_multiplicity: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kmax: Option<u32>,
}

/// Validated core objects built from a [`ProblemFile`].
#[derive(Debug, Clone)]
pub struct Problem {
    pub manifold: FourManifold,
    pub spinc: SpincStructure,
    pub bundle: BundleData,
    pub raw: ProblemFile,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut de = serde_json::Deserializer::from_str(text);
        let file: ProblemFile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let path = e.path().to_string();
            CliError::Validation {
                field: if path.is_empty() || path == "." { "<document>".into() } else { path },
                message: e.into_inner().to_string(),
            }
        })?;
        de.end().map_err(|e| CliError::Validation {
            field: "<document>".into(),
            message: e.to_string(),
        })?;
        if let Some(m) = file.options.as_ref().and_then(|o| o.dirac_multiplicity) {
            if !(1..=2).contains(&m) {
                return Err(CliError::Validation {
                    field: "options.dirac_multiplicity".into(),
                    message: format!("must be 1 or 2, got {m}"),
                });
            }
        }
        Ok(file)
    }

    /// Compact JSON in field order; identical documents give identical text.
    pub fn canonical(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn validate(self) -> Result<Problem, CliError> {
        let m = &self.manifold;
        let manifold = match m.b2plus {
            Some(b) => FourManifold::with_declared_b2plus(m.name.clone(), m.b1, b, m.intersection_form.clone()),
            None => FourManifold::new(m.name.clone(), m.b1, m.intersection_form.clone()),
        }
        .map_err(CliError::from_core)?;
        let b2 = manifold.b2();
        for (field, len) in [("spinc.c1", self.spinc.c1.len()), ("bundle.c1", self.bundle.c1.len())] {
            if len != b2 {
                return Err(CliError::Validation {
                    field: field.into(),
                    message: format!("expected {b2} coefficients, found {len}"),
                });
            }
        }
        let spinc = SpincStructure::new(CohClass2(self.spinc.c1.clone()));
        let bundle = BundleData::new(self.bundle.rank, CohClass2(self.bundle.c1.clone()), self.bundle.c2)
            .map_err(CliError::from_core)?;
        Ok(Problem { manifold, spinc, bundle, raw: self })
    }
}

impl BoundsInput {
    pub fn to_core(&self, b2: usize) -> Result<CurvatureBounds, CliError> {
        match &self.g {
            Metric::Identity => CurvatureBounds::with_identity_metric(b2, self.c_trace, self.c_plus, self.c_minus),
            Metric::Matrix(g) => CurvatureBounds::new(self.c_trace, self.c_plus, self.c_minus, g.clone()),
        }
        .map_err(CliError::from_core)
    }
}
