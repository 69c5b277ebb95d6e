use std::collections::BTreeMap;

use serde::Serialize;

use crate::numerics::matrix::Matrix;

/// One named hypothesis of a claim, with its evaluation.
#[derive(Debug, Clone, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub satisfied: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Machine-readable outcome of checking one claim on one instance.
///
/// Vacuity discipline: `conclusion_holds` is `None` exactly when some
/// hypothesis failed; a vacuous trial is never reported as a pass.
/// Defects are residual norms (finite, nonnegative); `witness` carries the
/// offending matrix when there is something to reproduce.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub hypotheses: Vec<Hypothesis>,
    pub hypotheses_met: bool,
    pub conclusion_holds: Option<bool>,
    pub defects: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Matrix>,
    pub trials: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(claim_id: &str) -> Self {
        VerificationReport {
            claim_id: claim_id.to_string(),
            hypotheses: Vec::new(),
            hypotheses_met: true,
            conclusion_holds: None,
            defects: BTreeMap::new(),
            witness: None,
            trials: 1,
            notes: Vec::new(),
        }
    }

    pub fn hypothesis(&mut self, name: &str, satisfied: bool) -> &mut Self {
        self.hypotheses.push(Hypothesis {
            name: name.to_string(),
            satisfied,
            detail: None,
        });
        self.hypotheses_met &= satisfied;
        self
    }

    pub fn hypothesis_with_detail(
        &mut self,
        name: &str,
        satisfied: bool,
        detail: impl Into<String>,
    ) -> &mut Self {
        self.hypotheses.push(Hypothesis {
            name: name.to_string(),
            satisfied,
            detail: Some(detail.into()),
        });
        self.hypotheses_met &= satisfied;
        self
    }

    pub fn defect(&mut self, name: &str, value: f64) -> &mut Self {
        assert!(
            value.is_finite() && value >= 0.0,
            "defect {name} must be finite and nonnegative, got {value}"
        );
        self.defects.insert(name.to_string(), value);
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    /// Record the conclusion. Only takes effect when every hypothesis
    /// held, keeping vacuous reports vacuous.
    pub fn conclude(&mut self, holds: bool) -> &mut Self {
        if self.hypotheses_met {
            self.conclusion_holds = Some(holds);
        }
        self
    }

    pub fn with_witness(&mut self, witness: &Matrix) -> &mut Self {
        self.witness = Some(witness.clone());
        self
    }

    pub fn max_defect(&self) -> f64 {
        self.defects.values().fold(0.0f64, |acc, &v| acc.max(v))
    }

    /// A failure is a non-vacuous trial whose conclusion is false.
    pub fn failed(&self) -> bool {
        self.conclusion_holds == Some(false)
    }

    pub fn vacuous(&self) -> bool {
        !self.hypotheses_met
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuous_reports_never_conclude() {
        let mut r = VerificationReport::new("X");
        r.hypothesis("h1", false);
        r.conclude(true);
        assert!(r.vacuous());
        assert_eq!(r.conclusion_holds, None);
        assert!(!r.failed());
    }

    #[test]
    fn conclusion_recorded_when_hypotheses_hold() {
        let mut r = VerificationReport::new("X");
        r.hypothesis("h1", true).defect("d", 1e-12).conclude(false);
        assert!(r.failed());
        assert_eq!(r.max_defect(), 1e-12);
    }

    #[test]
    #[should_panic(expected = "finite and nonnegative")]
    fn non_finite_defects_are_bugs() {
        VerificationReport::new("X").defect("bad", f64::NAN);
    }
}
