use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::canon::CanonicalForm;
use crate::spectral::Alpha;

/// A check passes iff its slack is at least `-PASS_TOL`.
pub const PASS_TOL: f64 = 1e-9;
/// Declared equalities must hold to within this.
pub const EQUALITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Subject {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key: Option<CanonicalForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Alpha>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
}

impl Subject {
    pub fn graph(key: CanonicalForm, alpha: Alpha) -> Self {
        Subject { key: Some(key), alpha: Some(alpha), params: BTreeMap::new() }
    }

    pub fn param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }
}

fn nullable<'de, D: serde::Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

/// One evaluated inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub subject: Subject,
    /// `NaN` (serialized as null) when skipped.
    #[serde(deserialize_with = "nullable")]
    pub lhs: f64,
    #[serde(deserialize_with = "nullable")]
    pub rhs: f64,
    /// `rhs − lhs`
    #[serde(deserialize_with = "nullable")]
    pub slack: f64,
    pub equality_expected: bool,
    /// Equality holds exactly when `equality_expected` does.
    pub equality_characterized: bool,
    pub equality_observed: bool,
    pub observe_only: bool,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn inequality(check_id: &str, subject: Subject, lhs: f64, rhs: f64) -> Self {
        let mut r = CheckReport {
            check_id: check_id.to_string(),
            subject,
            lhs,
            rhs,
            slack: rhs - lhs,
            equality_expected: false,
            equality_characterized: false,
            equality_observed: false,
            observe_only: false,
            verdict: Verdict::Pass,
            note: None,
        };
        r.evaluate();
        r
    }

    pub fn skipped(check_id: &str, subject: Subject, reason: &str) -> Self {
        CheckReport {
            check_id: check_id.to_string(),
            subject,
            lhs: f64::NAN,
            rhs: f64::NAN,
            slack: f64::NAN,
            equality_expected: false,
            equality_characterized: false,
            equality_observed: false,
            observe_only: false,
            verdict: Verdict::Skipped(reason.to_string()),
            note: None,
        }
    }

    pub fn expect_equality(mut self, expected: bool) -> Self {
        self.equality_expected = expected;
        self.evaluate();
        self
    }

    /// Declares that equality holds if and only if it is expected.
    pub fn characterized(mut self) -> Self {
        self.equality_characterized = true;
        self.evaluate();
        self
    }

    pub fn observe_only(mut self) -> Self {
        self.observe_only = true;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Failed and not merely observational.
    pub fn is_hard_failure(&self) -> bool {
        self.verdict == Verdict::Fail && !self.observe_only
    }

    fn evaluate(&mut self) {
        if matches!(self.verdict, Verdict::Skipped(_)) {
            return;
        }
        self.equality_observed = self.slack.abs() <= EQUALITY_TOL;
        let ok = self.slack >= -PASS_TOL
            && (!self.equality_expected || self.equality_observed)
            && !(self.equality_characterized && !self.equality_expected && self.equality_observed);
        self.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
    }
}
