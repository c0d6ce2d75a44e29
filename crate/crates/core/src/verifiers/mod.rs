//! Certified checks: complement coverage, minimality witnesses, named structural
//! claims on truncations, and the cyclic-group characterization.

mod claims;
mod complement;
mod cyclic;

pub use claims::{
    Truncation, check_claims_st, check_claims_st_with, check_claims_uv, check_claims_uv_with,
    check_uv_finiteness, check_uv_finiteness_with, offset, residue_window,
};
pub use complement::{
    verify_complement_truncated, verify_complement_window, verify_element_necessity_a,
    verify_minimality,
};
pub use cyclic::{check_self_cominimal_cyclic, is_3ap_free, is_3ap_free_cyclic};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::window::IntegerWindow;

/// Declared strength of a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certification {
    /// Exact on the stated window, nothing claimed outside it.
    #[serde(rename = "window-only")]
    WindowOnly,
    /// Exhaustive below the horizon plus a classified tail above it.
    #[serde(rename = "window+tail")]
    WindowTail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "A-min-over-B")]
    AMinOverB,
    #[serde(rename = "B-min-over-A")]
    BMinOverA,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Target lost when the element is removed.
    pub target: i64,
    /// True when the absence of other representations follows from a bound, not a scan.
    pub tail_proven: bool,
    pub horizon: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub direction: Direction,
    pub entries: BTreeMap<i64, Witness>,
    /// Elements for which no witness was found in the window. Not a falsification.
    pub unverified: Vec<i64>,
    pub certification: Certification,
    pub window: IntegerWindow,
    pub horizon: u32,
}

impl WitnessReport {
    pub fn all_witnessed(&self) -> bool {
        self.unverified.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim: String,
    pub n: Option<u32>,
    pub holds: bool,
    pub counterexample: Option<i64>,
    pub truncation: Option<Truncation>,
    pub certification: Certification,
    pub detail: String,
}

impl ClaimResult {
    pub(crate) fn new(
        claim: &str,
        n: Option<u32>,
        counterexample: Option<i64>,
        truncation: Option<Truncation>,
        detail: String,
    ) -> Self {
        ClaimResult {
            claim: claim.to_string(),
            n,
            holds: counterexample.is_none(),
            counterexample,
            truncation,
            certification: Certification::WindowOnly,
            detail,
        }
    }
}

/// Deterministic merge order for parallel claim runs.
fn sort_results(v: &mut [ClaimResult]) {
    v.sort_by(|a, b| (&a.claim, a.n).cmp(&(&b.claim, b.n)));
}
