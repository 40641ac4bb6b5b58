//! Conversion between oriented diagrams and braid words.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::generators::distant_union;
use super::ConvertError;
use crate::grid::{GridDiagram, Orientation, MAX_SIZE};
use crate::invariants::edge_directions;

/// Sign of the generator emitted when the moving strand climbs over the
/// strands it passes. Pinned so that the (2,3) torus diagram reads as a
/// positive braid.
const ASCENT_SIGN: i8 = -1;

/// A braid word; strand positions are numbered from the bottom, and letter
/// `(i, s)` is the generator `sigma_i` to the power `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, i8)>) -> Result<Self, ConvertError> {
        let b = BraidWord { strands, letters };
        b.check()?;
        Ok(b)
    }

    pub fn check(&self) -> Result<(), ConvertError> {
        if self.strands == 0 {
            return Err(ConvertError::Braid(
                "a braid needs at least one strand".into(),
            ));
        }
        for (pos, &(i, s)) in self.letters.iter().enumerate() {
            if i == 0 || i >= self.strands {
                return Err(ConvertError::Braid(format!(
                    "letter {pos}: generator index {i} outside [1, {}]",
                    self.strands - 1
                )));
            }
            if s != 1 && s != -1 {
                return Err(ConvertError::Braid(format!(
                    "letter {pos}: sign {s} is not ±1"
                )));
            }
        }
        Ok(())
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&(_, s)| s as i64).sum()
    }

    /// Strand permutation: `perm[start] = end` position.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // at[pos] = start strand
        for &(i, _) in &self.letters {
            at.swap(i - 1, i);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &start) in at.iter().enumerate() {
            perm[start] = pos;
        }
        perm
    }

    /// Number of components of the closure.
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for s in 0..self.strands {
            if !seen[s] {
                cycles += 1;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = perm[x];
                }
            }
        }
        cycles
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for &(i, s) in &self.letters {
            if s < 0 {
                write!(f, " s-{i}")?;
            } else {
                write!(f, " s{i}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = ConvertError;

    /// Parses `"m: s1 s-2 s1"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (head, body) = s
            .split_once(':')
            .ok_or_else(|| ConvertError::Braid("expected \"<strands>: <letters>\"".into()))?;
        let strands = head
            .trim()
            .parse::<usize>()
            .map_err(|_| ConvertError::Braid(format!("bad strand count {:?}", head.trim())))?;
        let mut letters = Vec::new();
        for tok in body.split_whitespace() {
            let bad = || ConvertError::Braid(format!("bad letter {tok:?}"));
            let rest = tok.strip_prefix('s').ok_or_else(bad)?;
            let (sign, digits) = match rest.strip_prefix('-') {
                Some(d) => (-1, d),
                None => (1, rest),
            };
            let i = digits.parse::<usize>().map_err(|_| bad())?;
            letters.push((i, sign));
        }
        BraidWord::new(strands, letters)
    }
}

/// Reads a braid from a diagram. Horizontal edges oriented right to left
/// are sent around the axis; each column then moves one strand vertically
/// over the strands between its endpoints.
pub fn grid_to_braid(d: &GridDiagram, o: &Orientation) -> BraidWord {
    let n = d.size();
    let dirs = edge_directions(d, o);
    let mut heights: Vec<usize> = (0..n).filter(|&r| !dirs.right[r]).collect();
    let strands = heights.len();
    let mut letters = Vec::new();
    for c in 0..n {
        let [lo, hi] = d.column(c);
        let (from, to) = if dirs.up[c] { (lo, hi) } else { (hi, lo) };
        let p = heights
            .binary_search(&from)
            .expect("every vertical edge starts on an active piece");
        heights.remove(p);
        let q = heights.binary_search(&to).unwrap_err();
        heights.insert(q, to);
        if q > p {
            letters.extend((p + 1..=q).map(|i| (i, ASCENT_SIGN)));
        } else {
            letters.extend((q + 1..=p).rev().map(|i| (i, -ASCENT_SIGN)));
        }
        debug_assert_eq!(heights.len(), strands);
    }
    BraidWord { strands, letters }
}

/// Builds a diagram whose braid closure is `b`. Each letter adds a column
/// in which one strand jumps over its neighbour onto a fresh row placed
/// directly beside the neighbour's row, and a final column per strand
/// closes the braid back onto its initial row. Strands that are never
/// moved and end where they started close up on their own; each becomes a
/// separate unknotted square placed beside the rest.
pub fn braid_to_grid(b: &BraidWord) -> Result<GridDiagram, ConvertError> {
    b.check()?;
    let m = b.strands;
    let rows_total = m + b.letters.len();
    if rows_total > MAX_SIZE {
        return Err(ConvertError::TooLarge(rows_total));
    }
    // active[pos] = row id; rows 0..m are the initial pieces, and `order`
    // lists all rows from the bottom up
    let mut active: Vec<usize> = (0..m).collect();
    let mut order: Vec<usize> = (0..m).collect();
    let mut columns: Vec<[usize; 2]> = Vec::new();
    for (offset, &(i, s)) in b.letters.iter().enumerate() {
        let row = m + offset;
        let (mover, other) = if s == ASCENT_SIGN {
            (i - 1, i)
        } else {
            (i, i - 1)
        };
        let at = order
            .iter()
            .position(|&r| r == active[other])
            .expect("active rows are ordered");
        order.insert(if s == ASCENT_SIGN { at + 1 } else { at }, row);
        columns.push([active[mover], row]);
        active[mover] = row;
        active.swap(i - 1, i);
    }

    let mut height = vec![0usize; rows_total];
    for (h, &r) in order.iter().enumerate() {
        height[r] = h;
    }
    // Close positions one at a time, always picking the lowest position
    // whose closing column passes over no piece still in use.
    let fixed: Vec<usize> = (0..m).filter(|&k| active[k] == k).collect();
    let mut open: Vec<usize> = (0..m).filter(|&k| active[k] != k).collect();
    while !open.is_empty() {
        let clear = |k: usize| {
            if active.contains(&k) {
                // initial row k still carries another position's strand
                return false;
            }
            let (lo, hi) = {
                let (a, b) = (height[active[k]], height[k]);
                (a.min(b), a.max(b))
            };
            active
                .iter()
                .enumerate()
                .all(|(p, &r)| p == k || fixed.contains(&p) || !(lo < height[r] && height[r] < hi))
        };
        let idx = open
            .iter()
            .position(|&k| clear(k))
            .ok_or_else(|| ConvertError::Braid("no closure order avoids extra crossings".into()))?;
        let k = open.remove(idx);
        columns.push([active[k], k]);
        active[k] = k;
    }

    let dropped: Vec<bool> = (0..rows_total).map(|r| fixed.contains(&r)).collect();
    let mut height = vec![usize::MAX; rows_total];
    for (h, &r) in order.iter().filter(|&&r| !dropped[r]).enumerate() {
        height[r] = h;
    }
    let kept = rows_total - fixed.len();

    let mut d = if kept == 0 {
        None
    } else {
        let cols: Vec<[usize; 2]> = columns
            .iter()
            .map(|&[a, c]| [height[a], height[c]])
            .collect();
        Some(GridDiagram::from_usize_unchecked(&cols))
    };
    for _ in &fixed {
        d = Some(match d {
            None => GridDiagram::trivial(),
            Some(d) => distant_union(&d, &GridDiagram::trivial()),
        });
    }
    let d = d.expect("a braid has at least one strand");
    if d.size() > MAX_SIZE {
        return Err(ConvertError::TooLarge(d.size()));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let b: BraidWord = "3: s1 s-2 s1 s-2".parse().unwrap();
        assert_eq!(b.letters, vec![(1, 1), (2, -1), (1, 1), (2, -1)]);
        assert_eq!(b.to_string(), "3: s1 s-2 s1 s-2");
        assert!("2: s2".parse::<BraidWord>().is_err());
        assert!("x: s1".parse::<BraidWord>().is_err());
    }

    #[test]
    fn json_shape() {
        let b = BraidWord::new(2, vec![(1, 1), (1, -1)]).unwrap();
        assert_eq!(
            serde_json::to_string(&b).unwrap(),
            r#"{"strands":2,"letters":[[1,1],[1,-1]]}"#
        );
    }

    #[test]
    fn unit_braid_is_trivial() {
        let d = braid_to_grid(&BraidWord::new(1, vec![]).unwrap()).unwrap();
        assert_eq!(d, GridDiagram::trivial());
        let b = grid_to_braid(&d, &Orientation::default_for(&d));
        assert_eq!((b.strands, b.letters.len()), (1, 0));
    }

    #[test]
    fn trefoil_braid_size() {
        let d = braid_to_grid(&BraidWord::new(2, vec![(1, 1); 3]).unwrap()).unwrap();
        assert_eq!(d.size(), 5);
        assert_eq!(d.component_count(), 1);
    }
}
