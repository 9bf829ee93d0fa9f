use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::spectra::CaseId;

/// Context of a check: what was tested, where, and with which rule.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<CaseId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<QuadratureSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, f64>,
}

impl ReportMetadata {
    pub fn new(check: &str, case: Option<CaseId>, quadrature: Option<QuadratureSpec>) -> Self {
        ReportMetadata {
            check: check.to_string(),
            case,
            quadrature,
            extra: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.extra.insert(key.to_string(), value);
        self
    }
}

/// `lhs ≤ rhs`, measured: `margin = rhs − lhs` with the standard error of the margin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub std_error: f64,
    pub metadata: ReportMetadata,
}

impl InequalityReport {
    pub fn new(lhs: f64, rhs: f64, std_error: f64, metadata: ReportMetadata) -> Result<Self> {
        let margin = rhs - lhs;
        if !margin.is_finite() || !std_error.is_finite() {
            return Err(Error::NonFinite { point: vec![lhs, rhs, std_error] });
        }
        Ok(InequalityReport {
            lhs,
            rhs,
            margin,
            std_error,
            metadata,
        })
    }

    /// `margin ≥ −sigmas · std_error − abs_tol`.
    pub fn holds_within(&self, sigmas: f64, abs_tol: f64) -> bool {
        self.margin >= -sigmas * self.std_error - abs_tol
    }

    /// `margin ≥ −3 · std_error`, with a rounding allowance relative to the sides.
    pub fn holds(&self) -> bool {
        self.holds_within(3.0, 1e-12 * self.rhs.abs().max(self.lhs.abs()).max(1.0))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margin_and_json() {
        let md = ReportMetadata::new("demo", Some(CaseId::real(2)), Some(QuadratureSpec::monte_carlo(10, 1))).with("t", 0.5);
        let r = InequalityReport::new(1.0, 1.5, 0.1, md).unwrap();
        assert_eq!(r.margin, 0.5);
        assert!(r.holds());
        let back: InequalityReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let tight = InequalityReport::new(1.0, 0.8, 0.1, ReportMetadata::default()).unwrap();
        assert!(tight.holds() && !tight.holds_within(1.0, 0.0));
        assert!(InequalityReport::new(f64::NAN, 1.0, 0.0, ReportMetadata::default()).is_err());
    }
}
