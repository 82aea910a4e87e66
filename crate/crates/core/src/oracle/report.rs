use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub case: String,
    pub error: f64,
}

/// Outcome of one named check; `passed` holds exactly when
/// `max_error <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub details: Vec<CaseRecord>,
}

impl OracleReport {
    /// A non-finite case error fails the report.
    pub fn from_cases(name: impl Into<String>, tolerance: f64, details: Vec<CaseRecord>) -> Self {
        let max_error = details.iter().map(|c| c.error).fold(0.0, |m: f64, e| {
            if e.is_nan() || m.is_nan() {
                f64::NAN
            } else {
                m.max(e)
            }
        });
        let max_error = if max_error.is_nan() {
            f64::INFINITY
        } else {
            max_error
        };
        Self {
            name: name.into(),
            max_error,
            tolerance,
            passed: max_error <= tolerance,
            details,
        }
    }

    /// A check that could not be carried out.
    pub fn failure(name: impl Into<String>, tolerance: f64, reason: impl Into<String>) -> Self {
        Self::from_cases(
            name,
            tolerance,
            vec![CaseRecord {
                case: reason.into(),
                error: f64::INFINITY,
            }],
        )
    }
}
