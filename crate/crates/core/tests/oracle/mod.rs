//! Independent reference computations used by the integration tests.
#![allow(dead_code)]

use gridknot::invariants::edge_directions;
use gridknot::{GridDiagram, Orientation};

/// Edge directions: `up[c]` for the vertical edge on column `c`,
/// `right[r]` for the horizontal edge on row `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Directions {
    pub up: Vec<bool>,
    pub right: Vec<bool>,
}

fn other(pair: [usize; 2], x: usize) -> usize {
    if pair[0] == x {
        pair[1]
    } else {
        pair[0]
    }
}

/// Components as closed walks of vertices `(col, row)`, alternating a
/// vertical step then a horizontal one.
pub fn trace_components(d: &GridDiagram) -> Vec<Vec<(usize, usize)>> {
    let n = d.size();
    let rows = d.rows();
    let mut used_col = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if used_col[start] {
            continue;
        }
        let mut walk = Vec::new();
        let (mut c, mut r) = (start, d.column(start)[0]);
        loop {
            used_col[c] = true;
            walk.push((c, r));
            r = other(d.column(c), r);
            walk.push((c, r));
            c = other(rows[r], c);
            if c == start {
                break;
            }
        }
        out.push(walk);
    }
    out
}

/// Every consistent direction assignment, one per choice of sense on each
/// traced component.
pub fn all_directions(d: &GridDiagram) -> Vec<Directions> {
    let comps = trace_components(d);
    let n = d.size();
    (0..1u64 << comps.len())
        .map(|bits| {
            let mut up = vec![false; n];
            let mut right = vec![false; n];
            for (k, walk) in comps.iter().enumerate() {
                let mut walk = walk.clone();
                if bits >> k & 1 == 1 {
                    walk.reverse();
                }
                for i in 0..walk.len() {
                    let (c0, r0) = walk[i];
                    let (c1, r1) = walk[(i + 1) % walk.len()];
                    if c0 == c1 && r0 != r1 {
                        up[c0] = r1 > r0;
                    } else {
                        right[r0] = c1 > c0;
                    }
                }
            }
            Directions { up, right }
        })
        .collect()
}

pub fn library_directions(d: &GridDiagram, o: &Orientation) -> Directions {
    let e = edge_directions(d, o);
    Directions {
        up: e.up,
        right: e.right,
    }
}

/// `(w_minus, w_plus)` from edge directions: crossing signs from the cross
/// product of the over and under directions, turn signs from the quadrant
/// spanned by a vertex's two edges.
pub fn writhe_pair(d: &GridDiagram, dirs: &Directions) -> (i64, i64) {
    let n = d.size();
    let rows = d.rows();
    let mut w = 0i64;
    for c in 0..n {
        let [lo, hi] = d.column(c);
        for (r, &[a, b]) in rows.iter().enumerate() {
            if lo < r && r < hi && a < c && c < b {
                let over = (0i64, if dirs.up[c] { 1 } else { -1 });
                let under = (if dirs.right[r] { 1i64 } else { -1 }, 0i64);
                w += (over.0 * under.1 - over.1 * under.0).signum();
            }
        }
    }
    let mut plus = 0i64;
    let mut minus = 0i64;
    for c in 0..n {
        for r in d.column(c) {
            let dy = other(d.column(c), r) as i64 - r as i64;
            let dx = other(rows[r], c) as i64 - c as i64;
            if dx * dy > 0 {
                plus += 1;
            } else {
                minus += 1;
            }
        }
    }
    (w - minus / 2, w + plus / 2)
}

/// All orientations of `d`, including globally reversed ones.
pub fn all_orientations(d: &GridDiagram) -> Vec<Orientation> {
    let k = d.component_count();
    (0..1u64 << k)
        .map(|b| Orientation::from_bits(b, k))
        .collect()
}

/// An orientation of `d` whose vertical edges (or horizontal edges, when
/// `by_rows`) point as in `wanted` wherever `wanted` is set.
pub fn orientation_matching(
    d: &GridDiagram,
    wanted: &[Option<bool>],
    by_rows: bool,
) -> Orientation {
    let found: Vec<Orientation> = all_orientations(d)
        .into_iter()
        .filter(|o| {
            let e = edge_directions(d, o);
            let have = if by_rows { e.right } else { e.up };
            wanted
                .iter()
                .zip(have)
                .all(|(w, h)| w.is_none_or(|w| w == h))
        })
        .collect();
    assert_eq!(found.len(), 1, "constraints pin exactly one orientation");
    found.into_iter().next().unwrap()
}

/// Number of classes under cyclic shifts by Burnside's lemma, from the
/// fixed points of each of the `n^2` shifts.
pub fn burnside_class_count(diagrams: &[GridDiagram]) -> usize {
    let n = diagrams[0].size();
    let mut fixed = 0usize;
    for a in 0..n {
        for b in 0..n {
            fixed += diagrams.iter().filter(|d| d.shifted(b, a) == **d).count();
        }
    }
    assert_eq!(fixed % (n * n), 0);
    fixed / (n * n)
}

/// Number of 0/1 matrices with all row and column sums 2, by dynamic
/// programming over how many rows still need two or one entries.
pub fn two_regular_matrix_count(n: usize) -> u64 {
    // state (a, b): a rows need 2 more, b rows need 1 more
    let mut ways = std::collections::HashMap::new();
    ways.insert((n, 0usize), 1u64);
    for _ in 0..n {
        let mut next = std::collections::HashMap::new();
        for (&(a, b), &w) in &ways {
            let mut add = |key: (usize, usize), mult: u64| {
                if mult > 0 {
                    *next.entry(key).or_insert(0) += w * mult;
                }
            };
            let a = a as u64;
            let b = b as u64;
            // both from a
            add(
                ((a as usize).wrapping_sub(2), b as usize + 2),
                a * a.saturating_sub(1) / 2,
            );
            // one from a, one from b
            add(((a as usize).wrapping_sub(1), b as usize), a * b);
            // both from b
            add(
                (a as usize, (b as usize).wrapping_sub(2)),
                b * b.saturating_sub(1) / 2,
            );
        }
        ways = next;
    }
    ways.get(&(0, 0)).copied().unwrap_or(0)
}

/// The orientation of `after = apply(before, m)` that continues `o`, for an
/// exchange or stabilization `m`. Edges untouched by the move keep their
/// direction; exchanges of columns are matched on vertical edges and
/// exchanges of rows on horizontal ones.
pub fn transported(
    before: &GridDiagram,
    after: &GridDiagram,
    m: gridknot::Move,
    o: &Orientation,
) -> Orientation {
    use gridknot::Move;
    let dirs = edge_directions(before, o);
    let n = after.size();
    let mut wanted = vec![None; n];
    match m {
        Move::XchgCols { i } => {
            let j = (i + 1) % n;
            for (c, w) in wanted.iter_mut().enumerate() {
                let src = if c == i {
                    j
                } else if c == j {
                    i
                } else {
                    c
                };
                *w = Some(dirs.up[src]);
            }
            orientation_matching(after, &wanted, false)
        }
        Move::XchgRows { j } => {
            let k = (j + 1) % n;
            for (r, w) in wanted.iter_mut().enumerate() {
                let src = if r == j {
                    k
                } else if r == k {
                    j
                } else {
                    r
                };
                *w = Some(dirs.right[src]);
            }
            orientation_matching(after, &wanted, true)
        }
        Move::Stab { col, .. } => {
            for c in (0..before.size()).filter(|&c| c != col) {
                let to = if c > col { c + 1 } else { c };
                wanted[to] = Some(dirs.up[c]);
            }
            orientation_matching(after, &wanted, false)
        }
        other => panic!("no transport rule for {other:?}"),
    }
}

/// A seeded random diagram with an admissible generalized exchange, found
/// by rejection sampling; returns the number of rejected draws too.
pub fn admissible_exchange(seed: u64) -> (GridDiagram, gridknot::ExchangeSpec, usize) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for rejected in 0.. {
        let n = rng.gen_range(3..=9);
        let d = gridknot::convert::random_diagram_with(n, &mut rng).unwrap();
        let g1 = rng.gen_range(0..n - 1);
        let g2 = rng.gen_range(g1 + 1..n);
        let g3 = rng.gen_range(g2 + 1..=n);
        let spec = gridknot::ExchangeSpec {
            g1,
            g2,
            g3,
            t1: rng.gen_range(0..n),
            t2: rng.gen_range(0..n),
        };
        if gridknot::generalized_exchange(&d, spec).is_ok() {
            return (d, spec, rejected);
        }
    }
    unreachable!()
}

/// A seeded random diagram with a valid generalized stabilization
/// `(row, split)`.
pub fn admissible_stabilization(seed: u64) -> (GridDiagram, usize, usize) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=9);
    let d = gridknot::convert::random_diagram_with(n, &mut rng).unwrap();
    let row = rng.gen_range(0..n);
    let [lo, hi] = d.rows()[row];
    let split = rng.gen_range(lo + 1..=hi);
    (d, row, split)
}
