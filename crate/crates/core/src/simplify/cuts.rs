//! Cuts of the torus by a pair of vertical lines (or horizontal lines,
//! via the transpose): split cuts (no edge crosses) and composite cuts
//! (exactly two cross).
//!
//! Gap `g` lies between column `g` and column `(g + 1) mod n`. A pair of
//! gaps `g1 < g2` separates the columns `g1+1 ..= g2` from the rest.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::GridDiagram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CutError {
    #[error("cut ({g1}, {g2}) is not a proper pair of gaps for size {n}")]
    BadGaps { g1: usize, g2: usize, n: usize },
    #[error("cut is crossed by {crossing} horizontal edges (expected {expected})")]
    WrongCrossingCount { crossing: usize, expected: usize },
}

/// A cut crossed by no edge, on the diagram itself or (when `transposed`)
/// on its transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCut {
    pub transposed: bool,
    pub g1: usize,
    pub g2: usize,
}

/// A cut crossed by exactly two horizontal edges, on the diagram itself or
/// (when `transposed`) on its transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeCut {
    pub transposed: bool,
    pub g1: usize,
    pub g2: usize,
    /// The two crossing rows (columns, when transposed).
    pub crossing: [usize; 2],
}

fn inside(c: usize, g1: usize, g2: usize) -> bool {
    g1 < c && c <= g2
}

/// Rows crossing the cut, and whether some row lies wholly on each side.
fn classify(rows: &[[usize; 2]], g1: usize, g2: usize) -> (Vec<usize>, bool, bool) {
    let mut crossing = Vec::new();
    let (mut in1, mut in2) = (false, false);
    for (r, &[a, b]) in rows.iter().enumerate() {
        match (inside(a, g1, g2), inside(b, g1, g2)) {
            (true, true) => in1 = true,
            (false, false) => in2 = true,
            _ => crossing.push(r),
        }
    }
    (crossing, in1, in2)
}

fn gap_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |g1| (g1 + 1..n).map(move |g2| (g1, g2)))
}

fn split_on(d: &GridDiagram, transposed: bool) -> Option<SplitCut> {
    let rows = d.rows();
    gap_pairs(d.size())
        .find(|&(g1, g2)| classify(&rows, g1, g2).0.is_empty())
        .map(|(g1, g2)| SplitCut { transposed, g1, g2 })
}

/// First cut (lexicographic in the gaps) that no edge crosses; vertical
/// cuts are tried before horizontal ones.
pub fn detect_split(d: &GridDiagram) -> Option<SplitCut> {
    split_on(d, false).or_else(|| split_on(&d.transpose_dual(), true))
}

fn composite_on(d: &GridDiagram, transposed: bool) -> Option<CompositeCut> {
    let rows = d.rows();
    gap_pairs(d.size()).find_map(|(g1, g2)| {
        let (crossing, in1, in2) = classify(&rows, g1, g2);
        (crossing.len() == 2 && in1 && in2).then(|| CompositeCut {
            transposed,
            g1,
            g2,
            crossing: [crossing[0], crossing[1]],
        })
    })
}

/// A cut met by exactly two horizontal edges with a whole edge on each
/// side; vertical cuts are tried before horizontal ones.
pub fn detect_composite(d: &GridDiagram) -> Option<CompositeCut> {
    composite_on(d, false).or_else(|| composite_on(&d.transpose_dual(), true))
}

/// Columns of each side in cyclic order: `g1+1 ..= g2`, then `g2+1 ..= g1`.
fn sides(n: usize, g1: usize, g2: usize) -> (Vec<usize>, Vec<usize>) {
    let first: Vec<usize> = (g1 + 1..=g2).collect();
    let second: Vec<usize> = (g2 + 1..n).chain(0..=g1).collect();
    (first, second)
}

fn check_gaps(n: usize, g1: usize, g2: usize) -> Result<(), CutError> {
    if g1 < g2 && g2 < n {
        Ok(())
    } else {
        Err(CutError::BadGaps { g1, g2, n })
    }
}

/// Restriction to the given columns, adding `extra` columns (row pairs)
/// before or after; rows are renumbered in order.
fn restrict(
    d: &GridDiagram,
    cols: &[usize],
    extra: Option<[usize; 2]>,
    extra_first: bool,
) -> GridDiagram {
    let mut pairs: Vec<[usize; 2]> = cols.iter().map(|&c| d.column(c)).collect();
    if let Some(p) = extra {
        if extra_first {
            pairs.insert(0, p);
        } else {
            pairs.push(p);
        }
    }
    let mut used: Vec<usize> = pairs.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let rank = |r: usize| used.binary_search(&r).expect("row in use");
    let pairs: Vec<[usize; 2]> = pairs.iter().map(|&[a, b]| [rank(a), rank(b)]).collect();
    GridDiagram::from_usize_unchecked(&pairs)
}

/// The two parts of a split cut.
pub fn split_at(d: &GridDiagram, cut: SplitCut) -> Result<(GridDiagram, GridDiagram), CutError> {
    if cut.transposed {
        let plain = SplitCut {
            transposed: false,
            ..cut
        };
        let (a, b) = split_at(&d.transpose_dual(), plain)?;
        return Ok((a.transpose_dual(), b.transpose_dual()));
    }
    let n = d.size();
    check_gaps(n, cut.g1, cut.g2)?;
    let (crossing, _, _) = classify(&d.rows(), cut.g1, cut.g2);
    if !crossing.is_empty() {
        return Err(CutError::WrongCrossingCount {
            crossing: crossing.len(),
            expected: 0,
        });
    }
    let (a, b) = sides(n, cut.g1, cut.g2);
    Ok((restrict(d, &a, None, false), restrict(d, &b, None, false)))
}

/// The two factors of a composite cut. Each side keeps its columns and the
/// two crossing edges are closed by one new column at the cut, so the
/// sizes add up to `n + 2`.
pub fn factor_at(
    d: &GridDiagram,
    cut: CompositeCut,
) -> Result<(GridDiagram, GridDiagram), CutError> {
    if cut.transposed {
        let (a, b) = factor_at(
            &d.transpose_dual(),
            CompositeCut {
                transposed: false,
                ..cut
            },
        )?;
        return Ok((a.transpose_dual(), b.transpose_dual()));
    }
    let n = d.size();
    check_gaps(n, cut.g1, cut.g2)?;
    let (crossing, _, _) = classify(&d.rows(), cut.g1, cut.g2);
    if crossing.len() != 2 {
        return Err(CutError::WrongCrossingCount {
            crossing: crossing.len(),
            expected: 2,
        });
    }
    let join = Some([crossing[0], crossing[1]]);
    let (a, b) = sides(n, cut.g1, cut.g2);
    Ok((restrict(d, &a, join, false), restrict(d, &b, join, true)))
}

/// Number of pieces obtained by cutting repeatedly (split cuts first)
/// without any moves; 1 when no cut applies.
pub fn part_count(d: &GridDiagram) -> usize {
    if let Some(cut) = detect_split(d) {
        let (a, b) = split_at(d, cut).expect("detected cut is valid");
        return part_count(&a) + part_count(&b);
    }
    if let Some(cut) = detect_composite(d) {
        let (a, b) = factor_at(d, cut).expect("detected cut is valid");
        return part_count(&a) + part_count(&b);
    }
    1
}
