//! End-to-end verification experiments.
//!
//! Every experiment returns a serialisable report carrying a [`Verdict`].
//! Parallel work is collected in input order, so reports are reproducible
//! byte for byte for a fixed configuration and seed.

mod gcd;
mod growth;
mod scan;
mod theorem;
mod wak;

pub use gcd::{gcd_growth_profile, k_set_product, prop1_suite, GcdProfile, GcdRow, KSetProduct, Prop1Suite, N_CAP};
pub use growth::{
    lemma7_polynomial_check, verify_distance, verify_growth, DistanceReport, DistanceRow, GrowthReport, GrowthRow,
    Lemma7PolyReport,
};
pub use scan::{scan, sufficiency_sweep, ScanRecord, SweepReport, TGrid, ThresholdTally};
pub use theorem::{verify_theorem1, ConvergentRow, QSample, QStrategy, TheoremOpts, TheoremReport};
pub use wak::{wakabayashi_compare, WakReport};

use serde::Serialize;

use crate::interval::Decision;
use crate::params::{normalize, ReducedParams};

/// Aggregate outcome; maps onto process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Undetermined,
    Fail,
}

impl Verdict {
    /// `0` pass, `1` certified failure, `2` undetermined.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Undetermined => 2,
        }
    }

    /// Worst of two verdicts: a failure dominates an undetermined result.
    pub fn combine(self, other: Verdict) -> Verdict {
        self.max(other)
    }

    pub fn from_decision(d: Decision) -> Verdict {
        match d {
            Decision::True => Verdict::Pass,
            Decision::False => Verdict::Fail,
            Decision::Undetermined => Verdict::Undetermined,
        }
    }
}

impl FromIterator<Verdict> for Verdict {
    fn from_iter<I: IntoIterator<Item = Verdict>>(iter: I) -> Self {
        iter.into_iter().fold(Verdict::Pass, Verdict::combine)
    }
}

/// Parameter pairs covering both parities of `a*`, both classes modulo 3
/// and both signs of `t`: `a*` = 1, 3, 2, 6, 9 respectively.
pub const SUITE: [(i64, i64); 5] = [(6, 2), (100, 1), (-9, 2), (7, 2), (14, 3)];

/// Reduced parameters of [`SUITE`].
pub fn suite() -> Vec<ReducedParams> {
    SUITE
        .iter()
        .map(|&(t, a)| normalize(t, a).expect("suite pairs are valid").reduce())
        .collect()
}
