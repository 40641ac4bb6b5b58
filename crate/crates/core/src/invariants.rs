//! Crossings, turns, the writhe pair and the two knottedness tests.

use serde::{Deserialize, Serialize};

use crate::grid::{GridDiagram, Orientation};

/// Crossing positions `(col, row)`: the vertical edge on `col` passes over
/// the horizontal edge on `row`.
pub fn crossings(d: &GridDiagram) -> Vec<(usize, usize)> {
    let rows = d.rows();
    let mut out = Vec::new();
    for c in 0..d.size() {
        let [lo, hi] = d.column(c);
        for (r, &[a, b]) in rows.iter().enumerate().take(hi).skip(lo + 1) {
            if a < c && c < b {
                out.push((c, r));
            }
        }
    }
    out
}

pub fn crossing_number(d: &GridDiagram) -> usize {
    crossings(d).len()
}

/// Whether `2 * crossings <= (n - 1)^2`.
pub fn crossing_bound_holds(d: &GridDiagram) -> bool {
    let n = d.size();
    2 * crossing_number(d) <= (n - 1) * (n - 1)
}

/// Counts of positive and negative turns. A vertex whose edges leave
/// toward north and east, or south and west, is positive.
pub fn corner_counts(d: &GridDiagram) -> (usize, usize) {
    let rows = d.rows();
    let mut plus = 0;
    for v in d.vertices() {
        let [r0, r1] = d.column(v.col);
        let north = r0.max(r1) > v.row;
        let [c0, c1] = rows[v.row];
        let east = c0.max(c1) > v.col;
        if north == east {
            plus += 1;
        }
    }
    (plus, 2 * d.size() - plus)
}

/// Edge directions induced by an orientation: `up[c]` for the vertical
/// edge on column `c`, `right[r]` for the horizontal edge on row `r`.
pub struct EdgeDirections {
    pub up: Vec<bool>,
    pub right: Vec<bool>,
}

pub fn edge_directions(d: &GridDiagram, o: &Orientation) -> EdgeDirections {
    let n = d.size();
    let mut up = vec![false; n];
    let mut right = vec![false; n];
    for (idx, comp) in d.components().iter().enumerate() {
        let flip = o.reversed.get(idx).copied().unwrap_or(false);
        let len = comp.cycle.len();
        for k in 0..len {
            let (a, b) = (comp.cycle[k], comp.cycle[(k + 1) % len]);
            if k % 2 == 0 {
                up[a.col] = (b.row > a.row) != flip;
            } else {
                right[a.row] = (b.col > a.col) != flip;
            }
        }
    }
    EdgeDirections { up, right }
}

/// Sign of a crossing: positive when the over (vertical) strand runs up
/// while the under strand runs left, or down while it runs right.
pub fn crossing_sign(up: bool, right: bool) -> i64 {
    if up != right {
        1
    } else {
        -1
    }
}

pub fn writhe(d: &GridDiagram, o: &Orientation) -> i64 {
    let dirs = edge_directions(d, o);
    crossings(d)
        .into_iter()
        .map(|(c, r)| crossing_sign(dirs.up[c], dirs.right[r]))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WritheReport {
    pub w: i64,
    pub n_plus: usize,
    pub n_minus: usize,
    pub w_plus: i64,
    pub w_minus: i64,
    pub orientation: Orientation,
}

impl WritheReport {
    pub fn pair(&self) -> (i64, i64) {
        (self.w_minus, self.w_plus)
    }
}

pub fn writhe_report(d: &GridDiagram, o: &Orientation) -> WritheReport {
    let w = writhe(d, o);
    let (n_plus, n_minus) = corner_counts(d);
    debug_assert!(n_plus % 2 == 0 && n_minus % 2 == 0);
    WritheReport {
        w,
        n_plus,
        n_minus,
        w_plus: w + (n_plus / 2) as i64,
        w_minus: w - (n_minus / 2) as i64,
        orientation: o.clone(),
    }
}

/// `(w_minus, w_plus)` for the default orientation.
pub fn writhe_pair(d: &GridDiagram) -> (i64, i64) {
    writhe_report(d, &Orientation::default_for(d)).pair()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictStatus {
    CertifiedNontrivial,
    NoConclusion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Inequality {
    /// `w_minus > -k`
    WMinusAboveMinusK,
    /// `w_plus < k`
    WPlusBelowK,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub violated: Inequality,
    pub components: usize,
    pub report: WritheReport,
}

impl Witness {
    /// Re-checks the witness against the diagram.
    pub fn verify(&self, d: &GridDiagram) -> bool {
        let k = d.component_count() as i64;
        let report = writhe_report(d, &self.report.orientation);
        report == self.report
            && k == self.components as i64
            && match self.violated {
                Inequality::WMinusAboveMinusK => report.w_minus > -k,
                Inequality::WPlusBelowK => report.w_plus < k,
            }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub witness: Option<Witness>,
}

/// A `k`-component unlink has `w_minus <= -k` and `w_plus >= k` for every
/// orientation; a violation certifies the diagram is not an unlink.
/// With `all_orientations` false only the default orientation is tried.
pub fn writhe_test(d: &GridDiagram, all_orientations: bool) -> Verdict {
    let k = d.component_count();
    let orientations: Vec<Orientation> = if all_orientations {
        Orientation::all_relative(k).collect()
    } else {
        vec![Orientation::default_for(d)]
    };
    for o in orientations {
        let report = writhe_report(d, &o);
        let violated = if report.w_minus > -(k as i64) {
            Some(Inequality::WMinusAboveMinusK)
        } else if report.w_plus < k as i64 {
            Some(Inequality::WPlusBelowK)
        } else {
            None
        };
        if let Some(violated) = violated {
            return Verdict {
                status: VerdictStatus::CertifiedNontrivial,
                witness: Some(Witness {
                    violated,
                    components: k,
                    report,
                }),
            };
        }
    }
    Verdict {
        status: VerdictStatus::NoConclusion,
        witness: None,
    }
}

/// Every pair of cyclically neighbouring columns, and of rows, consists of
/// disjoint interleaved pairs.
pub fn is_rigid(d: &GridDiagram) -> bool {
    let n = d.size();
    if n <= 2 {
        return false;
    }
    let crossing_pairs = |pairs: &[[usize; 2]]| {
        (0..n).all(|i| {
            let (p, q) = (pairs[i], pairs[(i + 1) % n]);
            let (lo, hi) = (p[0].min(p[1]), p[0].max(p[1]));
            let inside = |x: usize| lo < x && x < hi;
            !p.iter().any(|x| q.contains(x)) && inside(q[0]) != inside(q[1])
        })
    };
    crossing_pairs(&d.columns_vec()) && crossing_pairs(&d.rows())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_values() {
        let t = GridDiagram::trivial();
        assert_eq!(crossing_number(&t), 0);
        assert_eq!(corner_counts(&t), (2, 2));
        for o in [Orientation::default_for(&t), Orientation::from_bits(1, 1)] {
            assert_eq!(writhe_report(&t, &o).pair(), (-1, 1));
        }
        assert_eq!(writhe_test(&t, true).status, VerdictStatus::NoConclusion);
        assert!(!is_rigid(&t));
    }

    #[test]
    fn trefoil_values() {
        let d = GridDiagram::from_pairs(&[[0, 2], [1, 4], [0, 3], [2, 4], [1, 3]]).unwrap();
        assert_eq!(writhe_pair(&d), (1, 6));
        assert!(is_rigid(&d));
        let v = writhe_test(&d, true);
        assert_eq!(v.status, VerdictStatus::CertifiedNontrivial);
        assert!(v.witness.unwrap().verify(&d));
    }
}
