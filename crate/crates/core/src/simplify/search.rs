use std::collections::HashMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use dashmap::DashMap;
use rayon::prelude::*;
use rayon::ThreadPool;
use serde::{Deserialize, Serialize};

use super::SearchConfig;
use crate::grid::{CanonicalKey, GridDiagram};
use crate::io::ParseError;
use crate::moves::{
    apply, can_xchg_cols, can_xchg_rows, canonicalizing_moves, destab_blocks, xchg_cols_unchecked,
    xchg_rows_unchecked, Move, MoveSequence,
};

pub const SNAPSHOT_HEADER: &str = "GRIDKNOT-ORBIT v1";

// frontier states expanded between limit checks
const CHUNK: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeTag {
    Trivial,
    Irreducible,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitKind {
    OrbitStates,
    WallClock,
}

/// Exploration summary for one complexity level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelStats {
    pub n: usize,
    pub states: usize,
    pub depth: usize,
}

/// BFS tree over canonical keys; node 0 is the root.
#[derive(Debug, Clone, Default)]
pub(crate) struct Arena {
    keys: Vec<CanonicalKey>,
    parent: Vec<u32>,
    via: Vec<Option<Move>>,
    index: HashMap<CanonicalKey, u32>,
}

impl Arena {
    fn with_root(key: CanonicalKey) -> Self {
        let mut a = Arena::default();
        a.insert(key, u32::MAX, None);
        a
    }

    fn insert(&mut self, key: CanonicalKey, parent: u32, via: Option<Move>) -> Option<u32> {
        if self.index.contains_key(&key) {
            return None;
        }
        let id = self.keys.len() as u32;
        self.index.insert(key.clone(), id);
        self.keys.push(key);
        self.parent.push(parent);
        self.via.push(via);
        Some(id)
    }

    fn len(&self) -> usize {
        self.keys.len()
    }

    fn sorted_keys(&self) -> Vec<CanonicalKey> {
        let mut keys = self.keys.clone();
        keys.sort_unstable();
        keys
    }

    /// Moves from the root representative to the representative of `node`.
    fn path(&self, node: u32) -> Vec<Move> {
        let mut chain = Vec::new();
        let mut at = node;
        while self.parent[at as usize] != u32::MAX {
            chain.push(at);
            at = self.parent[at as usize];
        }
        let mut moves = Vec::new();
        for &child in chain.iter().rev() {
            let parent = self.parent[child as usize] as usize;
            let m = self.via[child as usize].expect("non-root nodes record their move");
            let next = apply(&self.keys[parent].to_diagram(), m).expect("recorded move applies");
            moves.push(m);
            moves.extend(canonicalizing_moves(&next));
        }
        moves
    }
}

/// All exchange neighbours of a canonical representative.
pub(crate) fn exchange_neighbors(key: &CanonicalKey) -> Vec<(CanonicalKey, Move)> {
    let d = key.to_diagram();
    let n = d.size();
    let rows = d.rows();
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        if can_xchg_cols(&d, i) {
            out.push((
                xchg_cols_unchecked(&d, i).canonical_key(),
                Move::XchgCols { i },
            ));
        }
    }
    for j in 0..n {
        if can_xchg_rows(&rows, j) {
            out.push((
                xchg_rows_unchecked(&d, j).canonical_key(),
                Move::XchgRows { j },
            ));
        }
    }
    out
}

struct Budget {
    deadline: Instant,
    max_states: usize,
}

impl Budget {
    fn new(cfg: &SearchConfig) -> Self {
        Budget {
            deadline: Instant::now() + Duration::from_millis(cfg.max_wall_millis),
            max_states: cfg.max_orbit_states.max(1),
        }
    }

    fn expired(&self) -> bool {
        Instant::now() >= self.deadline
    }
}

enum Stop {
    Destab { node: u32, block: (usize, usize) },
    Exhausted,
    Limit { kind: LimitKind, frontier: Vec<u32> },
}

struct Workers {
    pool: Option<ThreadPool>,
    deterministic: bool,
}

impl Workers {
    fn new(cfg: &SearchConfig) -> Self {
        let pool = (cfg.parallelism > 1).then(|| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.parallelism)
                .build()
                .expect("worker pool starts")
        });
        Workers {
            pool,
            deterministic: cfg.deterministic,
        }
    }

    fn map<T: Send>(&self, items: &[u32], f: impl Fn(u32) -> T + Sync + Send) -> Vec<T> {
        match &self.pool {
            Some(pool) => pool.install(|| items.par_iter().map(|&x| f(x)).collect()),
            None => items.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Expands `chunk` into `arena`, returning the new node ids.
    fn expand(&self, arena: &mut Arena, chunk: &[u32]) -> Vec<u32> {
        let pool = match &self.pool {
            Some(pool) if !self.deterministic => pool,
            _ => {
                let found = self.map(chunk, |id| exchange_neighbors(&arena.keys[id as usize]));
                let mut fresh = Vec::new();
                for (&id, list) in chunk.iter().zip(found) {
                    for (key, m) in list {
                        fresh.extend(arena.insert(key, id, Some(m)));
                    }
                }
                return fresh;
            }
        };
        let seen: DashMap<CanonicalKey, (u32, Move)> = DashMap::new();
        {
            let arena = &*arena;
            pool.install(|| {
                chunk.par_iter().for_each(|&id| {
                    for (key, m) in exchange_neighbors(&arena.keys[id as usize]) {
                        if !arena.index.contains_key(&key) {
                            seen.entry(key).or_insert((id, m));
                        }
                    }
                })
            });
        }
        let mut found: Vec<_> = seen.into_iter().collect();
        found.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        found
            .into_iter()
            .filter_map(|(key, (id, m))| arena.insert(key, id, Some(m)))
            .collect()
    }

    /// Lowest-keyed frontier state admitting a destabilization, with its
    /// lowest block.
    fn find_destab(&self, arena: &Arena, frontier: &[u32]) -> Option<(u32, (usize, usize))> {
        self.map(frontier, |id| {
            destab_blocks(&arena.keys[id as usize].to_diagram())
                .first()
                .map(|&b| (id, b))
        })
        .into_iter()
        .flatten()
        .min_by(|a, b| arena.keys[a.0 as usize].cmp(&arena.keys[b.0 as usize]))
    }
}

/// Level-synchronous BFS from `frontier`; returns how it stopped and the
/// number of completed levels.
fn explore(
    arena: &mut Arena,
    mut frontier: Vec<u32>,
    workers: &Workers,
    budget: &Budget,
    stop_at_destab: bool,
) -> (Stop, usize) {
    let mut depth = 0;
    loop {
        if budget.expired() {
            let kind = LimitKind::WallClock;
            return (Stop::Limit { kind, frontier }, depth);
        }
        if stop_at_destab {
            if let Some((node, block)) = workers.find_destab(arena, &frontier) {
                return (Stop::Destab { node, block }, depth);
            }
        }
        if frontier.is_empty() {
            return (Stop::Exhausted, depth);
        }
        let mut next = Vec::new();
        for (idx, chunk) in frontier.chunks(CHUNK).enumerate() {
            let limit = if budget.expired() {
                Some(LimitKind::WallClock)
            } else {
                next.extend(workers.expand(arena, chunk));
                (arena.len() > budget.max_states).then_some(LimitKind::OrbitStates)
            };
            if let Some(kind) = limit {
                let mut pending: Vec<u32> = frontier[idx * CHUNK..].to_vec();
                pending.extend(next);
                return (
                    Stop::Limit {
                        kind,
                        frontier: pending,
                    },
                    depth,
                );
            }
        }
        frontier = next;
        depth += 1;
    }
}

/// Partial orbit state saved when a search stops at a limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSnapshot {
    pub n: usize,
    /// Every key discovered so far, sorted.
    pub keys: Vec<CanonicalKey>,
    /// Discovered keys whose neighbours may be unexplored, sorted.
    pub frontier: Vec<CanonicalKey>,
}

impl OrbitSnapshot {
    fn from_arena(arena: &Arena, frontier: &[u32]) -> Self {
        let mut pending: Vec<CanonicalKey> = frontier
            .iter()
            .map(|&id| arena.keys[id as usize].clone())
            .collect();
        pending.sort_unstable();
        OrbitSnapshot {
            n: arena.keys[0].size(),
            keys: arena.sorted_keys(),
            frontier: pending,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{SNAPSHOT_HEADER}\nn {}\nkeys {}\n",
            self.n,
            self.keys.len()
        );
        for k in &self.keys {
            let _ = writeln!(s, "{k}");
        }
        let _ = writeln!(s, "frontier {}", self.frontier.len());
        for k in &self.frontier {
            let _ = writeln!(s, "{k}");
        }
        s
    }

    pub fn from_text(src: &str) -> Result<Self, ParseError> {
        let lines: Vec<(usize, &str)> = src
            .lines()
            .enumerate()
            .map(|(i, l)| (i, l.trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let mut it = lines.into_iter();
        let (ln, header) = next_line(&mut it, "header")?;
        if header != SNAPSHOT_HEADER {
            return Err(snapshot_error(
                ln,
                format!("expected header {SNAPSHOT_HEADER:?}"),
            ));
        }
        let n = count_field(&mut it, "n")?;
        let count = count_field(&mut it, "keys")?;
        let keys = key_lines(&mut it, count, n)?;
        let count = count_field(&mut it, "frontier")?;
        let frontier = key_lines(&mut it, count, n)?;
        if keys.is_empty() {
            return Err(snapshot_error(0, "snapshot holds no keys".into()));
        }
        Ok(OrbitSnapshot { n, keys, frontier })
    }
}

type Lines<'a> = std::vec::IntoIter<(usize, &'a str)>;

fn snapshot_error(line: usize, message: String) -> ParseError {
    ParseError {
        line: line + 1,
        column: 1,
        message,
    }
}

fn next_line<'a>(it: &mut Lines<'a>, what: &str) -> Result<(usize, &'a str), ParseError> {
    it.next()
        .ok_or_else(|| snapshot_error(0, format!("unexpected end of snapshot, expected {what}")))
}

fn count_field(it: &mut Lines<'_>, name: &str) -> Result<usize, ParseError> {
    let (ln, line) = next_line(it, name)?;
    line.strip_prefix(name)
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| snapshot_error(ln, format!("expected \"{name} <count>\"")))
}

fn key_lines(it: &mut Lines<'_>, count: usize, n: usize) -> Result<Vec<CanonicalKey>, ParseError> {
    (0..count)
        .map(|_| {
            let (ln, line) = next_line(it, "key")?;
            let key =
                CanonicalKey::from_hex(line).map_err(|e| snapshot_error(ln, e.to_string()))?;
            if key.size() != n {
                return Err(snapshot_error(
                    ln,
                    format!("key of size {} in a size {n} orbit", key.size()),
                ));
            }
            Ok(key)
        })
        .collect()
}

/// Result of an exchange-orbit enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitResult {
    /// Sorted keys found; the whole orbit when `complete`.
    pub keys: Vec<CanonicalKey>,
    pub complete: bool,
    pub limit: Option<LimitKind>,
    pub depth: usize,
    #[serde(skip)]
    pub snapshot: Option<OrbitSnapshot>,
}

impl OrbitResult {
    pub fn representatives(&self) -> impl Iterator<Item = GridDiagram> + '_ {
        self.keys.iter().map(|k| k.to_diagram())
    }

    pub fn contains(&self, key: &CanonicalKey) -> bool {
        self.keys.binary_search(key).is_ok()
    }
}

fn orbit_result(arena: &Arena, stop: Stop, depth: usize) -> OrbitResult {
    match stop {
        Stop::Limit { kind, frontier } => OrbitResult {
            keys: arena.sorted_keys(),
            complete: false,
            limit: Some(kind),
            depth,
            snapshot: Some(OrbitSnapshot::from_arena(arena, &frontier)),
        },
        _ => OrbitResult {
            keys: arena.sorted_keys(),
            complete: true,
            limit: None,
            depth,
            snapshot: None,
        },
    }
}

/// Closure of the class of `d` under exchange moves.
pub fn exchange_orbit(d: &GridDiagram, cfg: &SearchConfig) -> OrbitResult {
    let mut arena = Arena::with_root(d.canonical_key());
    let workers = Workers::new(cfg);
    let (stop, depth) = explore(&mut arena, vec![0], &workers, &Budget::new(cfg), false);
    orbit_result(&arena, stop, depth)
}

/// Continues an orbit enumeration saved by a limited run.
pub fn resume_exchange_orbit(snapshot: &OrbitSnapshot, cfg: &SearchConfig) -> OrbitResult {
    let mut arena = Arena::default();
    for key in &snapshot.keys {
        arena.insert(key.clone(), u32::MAX, None);
    }
    let frontier: Vec<u32> = snapshot
        .frontier
        .iter()
        .filter_map(|k| arena.index.get(k).copied())
        .collect();
    let workers = Workers::new(cfg);
    let (stop, depth) = explore(&mut arena, frontier, &workers, &Budget::new(cfg), false);
    orbit_result(&arena, stop, depth)
}

#[derive(Debug, Clone, Serialize)]
pub struct SimplifyOutcome {
    pub tag: OutcomeTag,
    pub final_n: usize,
    /// Sorted orbit keys at the terminal complexity (partial when
    /// inconclusive).
    pub final_keys: Vec<CanonicalKey>,
    /// From the input to the representative the terminal level started at.
    pub trace: MoveSequence,
    pub orbit_stats: Vec<LevelStats>,
    pub limit: Option<LimitKind>,
    #[serde(skip)]
    pub snapshot: Option<OrbitSnapshot>,
    #[serde(skip)]
    terminal: Option<Arena>,
}

impl SimplifyOutcome {
    pub fn final_diagrams(&self) -> impl Iterator<Item = GridDiagram> + '_ {
        self.final_keys.iter().map(|k| k.to_diagram())
    }

    /// The trace extended inside the terminal orbit to the representative
    /// of `key`.
    pub fn trace_to(&self, key: &CanonicalKey) -> Option<MoveSequence> {
        if *key == self.trace.final_key {
            return Some(self.trace.clone());
        }
        let arena = self.terminal.as_ref()?;
        let &node = arena.index.get(key)?;
        let mut seq = self.trace.clone();
        seq.moves.extend(arena.path(node));
        seq.final_key = key.clone();
        Some(seq)
    }
}

/// Explores exchange orbits, destabilizing whenever some orbit member
/// allows it, until the trivial diagram, an exhausted orbit, or a limit.
pub fn monotonic_simplify(d: &GridDiagram, cfg: &SearchConfig) -> SimplifyOutcome {
    let budget = Budget::new(cfg);
    let workers = Workers::new(cfg);
    let mut current = d.canonical_key();
    let mut moves: Vec<Move> = Vec::new();
    let mut stats = Vec::new();
    loop {
        let n = current.size();
        let trace = |moves: Vec<Move>, end: &CanonicalKey| MoveSequence {
            initial: d.canonical_key(),
            moves,
            final_key: end.clone(),
        };
        if n == 2 {
            stats.push(LevelStats {
                n,
                states: 1,
                depth: 0,
            });
            return SimplifyOutcome {
                tag: OutcomeTag::Trivial,
                final_n: 2,
                final_keys: vec![current.clone()],
                trace: trace(moves, &current),
                orbit_stats: stats,
                limit: None,
                snapshot: None,
                terminal: None,
            };
        }
        let mut arena = Arena::with_root(current.clone());
        let (stop, depth) = explore(&mut arena, vec![0], &workers, &budget, true);
        stats.push(LevelStats {
            n,
            states: arena.len(),
            depth,
        });
        match stop {
            Stop::Destab { node, block } => {
                moves.extend(arena.path(node));
                let (i, j) = block;
                let m = Move::Destab { i, j };
                let smaller = apply(&arena.keys[node as usize].to_diagram(), m)
                    .expect("reported block destabilizes");
                moves.push(m);
                moves.extend(canonicalizing_moves(&smaller));
                current = smaller.canonical_key();
            }
            Stop::Exhausted => {
                return SimplifyOutcome {
                    tag: OutcomeTag::Irreducible,
                    final_n: n,
                    final_keys: arena.sorted_keys(),
                    trace: trace(moves, &current),
                    orbit_stats: stats,
                    limit: None,
                    snapshot: None,
                    terminal: Some(arena),
                };
            }
            Stop::Limit { kind, frontier } => {
                let snapshot = OrbitSnapshot::from_arena(&arena, &frontier);
                return SimplifyOutcome {
                    tag: OutcomeTag::Inconclusive,
                    final_n: n,
                    final_keys: arena.sorted_keys(),
                    trace: trace(moves, &current),
                    orbit_stats: stats,
                    limit: Some(kind),
                    snapshot: Some(snapshot),
                    terminal: Some(arena),
                };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_is_trivial() {
        let out = monotonic_simplify(&GridDiagram::trivial(), &SearchConfig::default());
        assert_eq!(out.tag, OutcomeTag::Trivial);
        assert!(out.trace.moves.is_empty());
        let orbit = exchange_orbit(&GridDiagram::trivial(), &SearchConfig::default());
        assert_eq!(orbit.keys.len(), 1);
    }

    #[test]
    fn snapshot_text_round_trip() {
        let d = GridDiagram::from_pairs(&[[0, 1], [2, 3], [0, 1], [2, 3]]).unwrap();
        let snap = OrbitSnapshot {
            n: 4,
            keys: vec![d.canonical_key()],
            frontier: vec![d.canonical_key()],
        };
        let text = snap.to_text();
        assert!(text.starts_with(SNAPSHOT_HEADER));
        assert_eq!(OrbitSnapshot::from_text(&text).unwrap(), snap);
        assert!(OrbitSnapshot::from_text("GRIDKNOT-ORBIT v2\n").is_err());
    }
}
