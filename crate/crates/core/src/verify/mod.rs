//! Verification harness: lemma checks, identity certification over parameter
//! grids, proof-chain margins, sharpness reports and counterexample search.

mod chains;
mod identities;
mod lemmas;
pub mod suites;
mod theorems;

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

use crate::extremal::{ExtremalError, JoinParts};
use crate::graph::{Graph, GraphError, MAX_VERTICES};
use crate::io::to_graph6;
use crate::rational::ExtendedRational;
use crate::spectral::{q_index, SpectralError, DEFAULT_TOL, PERRON_TOL};
use crate::toughness::ToughnessError;

pub use chains::{check_case1_chain, check_case2_chain, check_chain, ChainCase};
pub use identities::{
    check_charpoly_difference, check_charpolys, check_g3prime_gap, check_phi_identities, check_phi_positive,
    det3,
};
pub use lemmas::{check_lemma21, check_lemma22, check_lemma23, check_lemma24};
pub use theorems::{
    exhaustive_search, monte_carlo_search, sharpness_report, verify_theorem_on_graph, TheoremContext,
};

/// Row-sum tolerance for accepting a partition as equitable.
pub const EQUITABLE_TOL: f64 = 1e-9;
/// Minimum margin for links the argument claims are strict.
pub const STRICT_MARGIN: f64 = 1e-9;
/// Relative residual allowed for transcribed identities.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Slack for non-strict links between computed spectral quantities.
pub const CHAIN_TOL: f64 = 1e-8;
/// Eigenvalue-containment tolerance for quotient spectra.
pub const CONTAINMENT_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Toughness(#[from] ToughnessError),
    #[error(transparent)]
    Extremal(#[from] ExtremalError),
}

/// q of a join family: dense solver when the graph fits in [`Graph`], the
/// equitable quotient otherwise.
pub(crate) fn join_q(parts: &JoinParts) -> Result<f64, VerifyError> {
    if parts.order() <= MAX_VERTICES {
        Ok(q_index(&parts.graph()?, DEFAULT_TOL)?)
    } else {
        Ok(parts.q_index(PERRON_TOL)?)
    }
}

pub(crate) fn precondition(ok: bool, what: impl FnOnce() -> String) -> Result<(), VerifyError> {
    if ok {
        Ok(())
    } else {
        Err(VerifyError::Precondition(what()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    /// The graph is the theorem's own exception.
    Exempt,
    /// The theorem's hypothesis does not apply, so nothing is asserted.
    HypothesisNotMet,
    /// Data below the theorem's order threshold; never a failure.
    Exploratory,
    Skipped,
}

impl Outcome {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

/// A JSON number, or a string for values JSON cannot hold.
pub fn real(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else if x.is_nan() {
        Value::from("nan")
    } else if x > 0.0 {
        Value::from("inf")
    } else {
        Value::from("-inf")
    }
}

fn serialize_real<S: Serializer>(x: &f64, serializer: S) -> Result<S::Ok, S::Error> {
    real(*x).serialize(serializer)
}

/// The structured record of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub params: BTreeMap<String, Value>,
    pub computed: BTreeMap<String, Value>,
    #[serde(serialize_with = "serialize_real")]
    pub margin: f64,
    pub outcome: Outcome,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn new(check_id: impl Into<String>) -> Self {
        VerificationReport {
            check_id: check_id.into(),
            params: BTreeMap::new(),
            computed: BTreeMap::new(),
            margin: 0.0,
            outcome: Outcome::Skipped,
            passed: true,
            witness: None,
            seed: None,
            note: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn value(mut self, key: &str, x: f64) -> Self {
        self.computed.insert(key.to_string(), real(x));
        self
    }

    pub fn count(mut self, key: &str, k: usize) -> Self {
        self.computed.insert(key.to_string(), Value::from(k));
        self
    }

    pub fn flag(mut self, key: &str, b: bool) -> Self {
        self.computed.insert(key.to_string(), Value::from(b));
        self
    }

    pub fn rational(mut self, key: &str, r: ExtendedRational) -> Self {
        self.computed.insert(key.to_string(), Value::from(r.to_string()));
        self
    }

    pub fn text(mut self, key: &str, s: impl Into<String>) -> Self {
        self.computed.insert(key.to_string(), Value::from(s.into()));
        self
    }

    pub fn witness(mut self, g: &Graph) -> Self {
        self.witness = Some(to_graph6(g));
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn finish(mut self, margin: f64, outcome: Outcome) -> Self {
        self.margin = margin;
        self.outcome = outcome;
        self.passed = outcome != Outcome::Fail;
        self
    }

    /// Pass iff `margin ≥ 0`.
    pub fn finish_margin(self, margin: f64) -> Self {
        self.finish(margin, Outcome::from_pass(margin >= 0.0))
    }

    pub fn is_failure(&self) -> bool {
        self.outcome == Outcome::Fail
    }

    /// One JSON line.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    /// Parameters as `k=v;k=v`, for the CSV aggregate.
    pub fn params_compact(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Sort key for canonical output order.
    pub fn sort_key(&self) -> (String, String) {
        (self.check_id.clone(), self.params_compact())
    }
}

/// Sorts reports by check id, then parameters.
pub fn canonical_order(reports: &mut [VerificationReport]) {
    reports.sort_by_cached_key(|r| r.sort_key());
}

/// Tally of outcomes over a batch of reports.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub other: usize,
}

impl Tally {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let mut t = Tally::default();
        for r in reports {
            t.total += 1;
            match r.outcome {
                Outcome::Pass => t.passed += 1,
                Outcome::Fail => t.failed += 1,
                _ => t.other += 1,
            }
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_json_is_stable() {
        let r = VerificationReport::new("demo")
            .param("n", 5)
            .param("b", 1)
            .value("q", 8.0)
            .value("gap", f64::INFINITY)
            .rational("t", ExtendedRational::ratio(1, 2))
            .seed(9)
            .finish_margin(f64::INFINITY);
        assert_eq!(
            r.to_json(),
            r#"{"check_id":"demo","params":{"b":1,"n":5},"computed":{"gap":"inf","q":8.0,"t":"1/2"},"margin":"inf","outcome":"pass","passed":true,"seed":9}"#
        );
        assert_eq!(r.params_compact(), "b=1;n=5");
    }

    #[test]
    fn outcome_drives_passed() {
        let r = VerificationReport::new("x").finish_margin(-1.0);
        assert!(r.is_failure() && !r.passed);
        let r = VerificationReport::new("x").finish(-1.0, Outcome::Exploratory);
        assert!(r.passed);
        let t = Tally::of(&[r.clone(), VerificationReport::new("y").finish_margin(0.0)]);
        assert_eq!((t.total, t.passed, t.failed, t.other), (2, 1, 0, 1));
    }
}
