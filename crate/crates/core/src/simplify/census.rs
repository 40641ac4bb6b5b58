use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::search::exchange_neighbors;
use super::SearchConfig;
use crate::grid::{CanonicalKey, GridDiagram};
use crate::invariants::is_rigid;

pub const DEFAULT_CENSUS_CEILING: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("census size {n} exceeds the ceiling {ceiling}")]
    LimitExceeded { n: usize, ceiling: usize },
    #[error("census size {0} is below 2")]
    TooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    /// Number of valid diagrams of size `n`.
    pub diagram_count: u64,
    /// Number of classes under cyclic shifts, `N(n)`.
    pub class_count: usize,
    pub orbit_count: usize,
    pub rigid_class_count: usize,
    /// `((n-1)!)^2 / (2n)`
    pub lower_bound: f64,
    /// `((n-1)!)^2`
    pub upper_bound: u64,
    /// Exchange orbits, each sorted, ordered by smallest key.
    pub orbit_partition: Vec<Vec<CanonicalKey>>,
}

impl CensusReport {
    pub fn within_bounds(&self) -> bool {
        let count = self.class_count as f64;
        self.lower_bound < count && self.class_count as u64 <= self.upper_bound
    }

    pub fn classes(&self) -> impl Iterator<Item = &CanonicalKey> {
        self.orbit_partition.iter().flatten()
    }
}

/// Calls `f` on every valid diagram of size `n`.
pub fn for_each_diagram(n: usize, mut f: impl FnMut(&GridDiagram)) {
    fn go(n: usize, cols: &mut Vec<[usize; 2]>, used: &mut [u8], f: &mut dyn FnMut(&GridDiagram)) {
        if cols.len() == n {
            f(&GridDiagram::from_usize_unchecked(cols));
            return;
        }
        // rows still needed must fit in the remaining columns
        let remaining = 2 * (n - cols.len());
        let needed: usize = used.iter().map(|&u| 2 - u as usize).sum();
        if needed != remaining {
            return;
        }
        for a in 0..n {
            if used[a] == 2 {
                continue;
            }
            for b in a + 1..n {
                if used[b] == 2 {
                    continue;
                }
                used[a] += 1;
                used[b] += 1;
                cols.push([a, b]);
                go(n, cols, used, f);
                cols.pop();
                used[a] -= 1;
                used[b] -= 1;
            }
        }
    }
    go(n, &mut Vec::with_capacity(n), &mut vec![0; n], &mut f);
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Enumerates all diagrams of size `n`, groups them into cyclic classes and
/// the classes into exchange orbits. Canonicalization runs on
/// `cfg.parallelism` workers; the report does not depend on it.
pub fn census(n: usize, ceiling: usize, cfg: &SearchConfig) -> Result<CensusReport, CensusError> {
    if n < 2 {
        return Err(CensusError::TooSmall(n));
    }
    if n > ceiling {
        return Err(CensusError::LimitExceeded { n, ceiling });
    }
    let mut diagrams = Vec::new();
    for_each_diagram(n, |d| diagrams.push(d.clone()));
    let keys: Vec<CanonicalKey> = if cfg.parallelism > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallelism)
            .build()
            .expect("worker pool starts")
            .install(|| {
                diagrams
                    .par_iter()
                    .map(GridDiagram::canonical_key)
                    .collect()
            })
    } else {
        diagrams.iter().map(GridDiagram::canonical_key).collect()
    };
    let diagram_count = diagrams.len() as u64;
    let classes: Vec<CanonicalKey> = keys
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut parent: Vec<usize> = (0..classes.len()).collect();
    for (i, key) in classes.iter().enumerate() {
        for (other, _) in exchange_neighbors(key) {
            let j = classes.binary_search(&other).expect("neighbour is a class");
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<CanonicalKey>> = vec![Vec::new(); classes.len()];
    for (i, key) in classes.iter().enumerate() {
        let root = find(&mut parent, i);
        groups[root].push(key.clone());
    }
    let orbit_partition: Vec<Vec<CanonicalKey>> =
        groups.into_iter().filter(|g| !g.is_empty()).collect();
    let rigid_class_count = classes.iter().filter(|k| is_rigid(&k.to_diagram())).count();
    let factorial: u64 = (1..n as u64).product();
    let upper_bound = factorial * factorial;
    Ok(CensusReport {
        n,
        diagram_count,
        class_count: classes.len(),
        orbit_count: orbit_partition.len(),
        rigid_class_count,
        lower_bound: upper_bound as f64 / (2 * n) as f64,
        upper_bound,
        orbit_partition,
    })
}
