//! Exchange-orbit search, monotonic simplification, certificates,
//! split/composite cuts, decomposition and the small-size census.

mod census;
mod certificate;
mod cuts;
mod decompose;
mod search;

use serde::{Deserialize, Serialize};

pub use census::{census, for_each_diagram, CensusError, CensusReport, DEFAULT_CENSUS_CEILING};
pub use certificate::{check_certificate, verify_certificate, CertificateError};
pub use cuts::{
    detect_composite, detect_split, factor_at, part_count, split_at, CompositeCut, CutError,
    SplitCut,
};
pub use decompose::{decompose, Classification, DecompNode, DecompositionTree};
pub use search::{
    exchange_orbit, monotonic_simplify, resume_exchange_orbit, LevelStats, LimitKind, OrbitResult,
    OrbitSnapshot, OutcomeTag, SimplifyOutcome, SNAPSHOT_HEADER,
};

/// Limits and scheduling for orbit searches. Hitting a limit yields an
/// inconclusive result, never a wrong one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Largest number of states held in one exchange orbit.
    pub max_orbit_states: usize,
    /// Wall-clock budget for a whole run.
    pub max_wall_millis: u64,
    /// Worker threads used to expand a BFS level.
    pub parallelism: usize,
    /// Merge each level in frontier order so traces do not depend on
    /// thread timing; otherwise the first insertion from any worker wins.
    pub deterministic: bool,
}

pub const DEFAULT_MAX_ORBIT_STATES: usize = 1_000_000;
pub const DEFAULT_MAX_WALL_MILLIS: u64 = 120_000;

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_orbit_states: DEFAULT_MAX_ORBIT_STATES,
            max_wall_millis: DEFAULT_MAX_WALL_MILLIS,
            parallelism: 1,
            deterministic: true,
        }
    }
}

impl SearchConfig {
    pub fn with_parallelism(mut self, workers: usize) -> Self {
        self.parallelism = workers.max(1);
        self
    }
}
