//! Elementary moves, their inverses, and generalized moves expressed as
//! sequences of elementary ones.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{sorted_pair, CanonicalKey, GridDiagram, VertexRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move not applicable: {0}")]
    NotApplicable(String),
    #[error("destabilization would produce a diagram of size 1")]
    SizeFloor,
    #[error("pairs {p:?} and {q:?} share an endpoint")]
    SharedEndpoint { p: [usize; 2], q: [usize; 2] },
    #[error("row {row} crosses the exchanged block inside its window")]
    WindowViolation { row: usize },
}

fn not_applicable(reason: impl Into<String>) -> MoveError {
    MoveError::NotApplicable(reason.into())
}

/// Names the corner of the 2x2 stabilization block that stays empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quadrant {
    NE,
    NW,
    SE,
    SW,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::NE, Quadrant::NW, Quadrant::SE, Quadrant::SW];

    fn from_sides(east: bool, north: bool) -> Self {
        match (east, north) {
            (true, true) => Quadrant::NE,
            (false, true) => Quadrant::NW,
            (true, false) => Quadrant::SE,
            (false, false) => Quadrant::SW,
        }
    }

    fn is_east(self) -> bool {
        matches!(self, Quadrant::NE | Quadrant::SE)
    }

    fn is_north(self) -> bool {
        matches!(self, Quadrant::NE | Quadrant::NW)
    }

    /// The quadrant seen after swapping rows and columns.
    pub fn transposed(self) -> Self {
        Quadrant::from_sides(self.is_north(), self.is_east())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "t")]
pub enum Move {
    CycCols {
        k: usize,
    },
    CycRows {
        k: usize,
    },
    XchgCols {
        i: usize,
    },
    XchgRows {
        j: usize,
    },
    Stab {
        col: usize,
        row: usize,
        quadrant: Quadrant,
    },
    Destab {
        i: usize,
        j: usize,
    },
}

impl Move {
    pub fn stab(v: VertexRef, quadrant: Quadrant) -> Self {
        Move::Stab {
            col: v.col,
            row: v.row,
            quadrant,
        }
    }

    pub fn apply(&self, d: &GridDiagram) -> Result<GridDiagram, MoveError> {
        apply(d, *self)
    }

    /// Change in diagram size caused by this move.
    pub fn size_delta(&self) -> isize {
        match self {
            Move::Stab { .. } => 1,
            Move::Destab { .. } => -1,
            _ => 0,
        }
    }

    /// The corresponding move on the transposed diagram.
    pub fn dual(&self) -> Move {
        match *self {
            Move::CycCols { k } => Move::CycRows { k },
            Move::CycRows { k } => Move::CycCols { k },
            Move::XchgCols { i } => Move::XchgRows { j: i },
            Move::XchgRows { j } => Move::XchgCols { i: j },
            Move::Stab { col, row, quadrant } => Move::Stab {
                col: row,
                row: col,
                quadrant: quadrant.transposed(),
            },
            Move::Destab { i, j } => Move::Destab { i: j, j: i },
        }
    }
}

/// Whether two disjoint chords of the circle `Z/n` cross.
pub fn interleaved(p: [usize; 2], q: [usize; 2], n: usize) -> Result<bool, MoveError> {
    if p.iter().chain(&q).any(|&x| x >= n) {
        return Err(not_applicable(format!(
            "pairs {p:?}, {q:?} not within [0, {n})"
        )));
    }
    if p.iter().any(|x| q.contains(x)) {
        return Err(MoveError::SharedEndpoint { p, q });
    }
    Ok(chords_cross(p, q))
}

#[inline]
fn chords_cross<T: PartialOrd + Copy>(p: [T; 2], q: [T; 2]) -> bool {
    let (lo, hi) = if p[0] < p[1] {
        (p[0], p[1])
    } else {
        (p[1], p[0])
    };
    let inside = |x: T| lo < x && x < hi;
    inside(q[0]) != inside(q[1])
}

#[inline]
fn exchangeable<T: PartialEq + PartialOrd + Copy>(p: [T; 2], q: [T; 2]) -> bool {
    !p.iter().any(|x| q.contains(x)) && !chords_cross(p, q)
}

pub(crate) fn can_xchg_cols(d: &GridDiagram, i: usize) -> bool {
    let n = d.size();
    let cols = d.raw_columns();
    i < n && exchangeable(cols[i], cols[(i + 1) % n])
}

pub(crate) fn can_xchg_rows(rows: &[[usize; 2]], j: usize) -> bool {
    let n = rows.len();
    j < n && exchangeable(rows[j], rows[(j + 1) % n])
}

pub(crate) fn xchg_cols_unchecked(d: &GridDiagram, i: usize) -> GridDiagram {
    let n = d.size();
    let mut cols = d.raw_columns().to_vec();
    cols.swap(i, (i + 1) % n);
    GridDiagram::from_sorted_unchecked(cols)
}

pub(crate) fn xchg_rows_unchecked(d: &GridDiagram, j: usize) -> GridDiagram {
    let n = d.size();
    let (a, b) = (j as u8, ((j + 1) % n) as u8);
    let swap = |r: u8| {
        if r == a {
            b
        } else if r == b {
            a
        } else {
            r
        }
    };
    let cols = d
        .raw_columns()
        .iter()
        .map(|p| sorted_pair(swap(p[0]), swap(p[1])))
        .collect();
    GridDiagram::from_sorted_unchecked(cols)
}

/// Geometry of a destabilization block with exactly three vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct DestabBlock {
    // corner vertex joined to both others
    corner: VertexRef,
    // the empty corner
    empty: VertexRef,
}

fn destab_block(d: &GridDiagram, i: usize, j: usize) -> Option<DestabBlock> {
    let n = d.size();
    let cols = [i, (i + 1) % n];
    let rows = [j, (j + 1) % n];
    let mut empty = None;
    let mut count = 0;
    for &c in &cols {
        for &r in &rows {
            if d.has_vertex(c, r) {
                count += 1;
            } else {
                empty = Some(VertexRef::new(c, r));
            }
        }
    }
    let empty = empty?;
    if count != 3 {
        return None;
    }
    let other = |pair: [usize; 2], x: usize| if pair[0] == x { pair[1] } else { pair[0] };
    let corner = VertexRef::new(other(cols, empty.col), other(rows, empty.row));
    Some(DestabBlock { corner, empty })
}

/// All blocks `(i, j)` admitting a destabilization, sorted.
pub fn destab_blocks(d: &GridDiagram) -> Vec<(usize, usize)> {
    let n = d.size();
    if n <= 2 {
        return Vec::new();
    }
    let rows = d.rows();
    let adjacent = |a: usize, b: usize| (a + 1) % n == b || (b + 1) % n == a;
    let block_start = |a: usize, b: usize| if (a + 1) % n == b { a } else { b };
    let mut out = Vec::new();
    for c in 0..n {
        let [r0, r1] = d.column(c);
        if !adjacent(r0, r1) {
            continue;
        }
        for r in [r0, r1] {
            let [c0, c1] = rows[r];
            if !adjacent(c0, c1) {
                continue;
            }
            let (i, j) = (block_start(c0, c1), block_start(r0, r1));
            if destab_block(d, i, j).is_some() {
                out.push((i, j));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn destabilize(d: &GridDiagram, i: usize, j: usize) -> Result<GridDiagram, MoveError> {
    let n = d.size();
    if i >= n || j >= n {
        return Err(not_applicable(format!("block ({i}, {j}) out of range")));
    }
    if n == 2 {
        return Err(MoveError::SizeFloor);
    }
    let block = destab_block(d, i, j).ok_or_else(|| {
        not_applicable(format!("block ({i}, {j}) does not hold exactly 3 vertices"))
    })?;
    let (cc, rc) = (block.corner.col, block.corner.row);
    let (ce, re) = (block.empty.col, block.empty.row);
    let down = |r: usize| if r > rc { r - 1 } else { r };
    let mut cols = Vec::with_capacity(n - 1);
    for c in 0..n {
        if c == cc {
            continue;
        }
        let [a, b] = d.column(c);
        let (a, b) = if c == ce {
            // the vertex at the corner's row slides to the empty corner
            let keep = if a == rc { b } else { a };
            (keep, re)
        } else {
            (a, b)
        };
        cols.push([down(a), down(b)]);
    }
    Ok(GridDiagram::from_usize_unchecked(&cols))
}

fn stabilize(
    d: &GridDiagram,
    col: usize,
    row: usize,
    quadrant: Quadrant,
) -> Result<GridDiagram, MoveError> {
    let n = d.size();
    if !d.has_vertex(col, row) || row >= n {
        return Err(not_applicable(format!("({col}, {row}) is not a vertex")));
    }
    if n + 1 > crate::grid::MAX_SIZE {
        return Err(not_applicable("diagram already at maximum size"));
    }
    let [a, b] = d.column(col);
    let vertical_partner = if a == row { b } else { a };
    let rows = d.rows();
    let [c0, c1] = rows[row];
    let horizontal_partner = if c0 == col { c1 } else { c0 };
    let up = |r: usize| if r > row { r + 1 } else { r };
    let right = |c: usize| if c > col { c + 1 } else { c };
    let col_e = if quadrant.is_east() { col + 1 } else { col };
    let row_e = if quadrant.is_north() { row + 1 } else { row };
    let col_c = 2 * col + 1 - col_e;
    let row_c = 2 * row + 1 - row_e;
    let mut cols = vec![[0usize; 2]; n + 1];
    for c in 0..n {
        if c == col {
            continue;
        }
        let [a, b] = d.column(c);
        let fix = |r: usize| if r == row { row_e } else { up(r) };
        cols[right(c)] = if c == horizontal_partner {
            [fix(a), fix(b)]
        } else {
            [up(a), up(b)]
        };
    }
    cols[col_e] = [row_c, up(vertical_partner)];
    cols[col_c] = [row_c, row_e];
    Ok(GridDiagram::from_usize_unchecked(&cols))
}

/// Applies one elementary move.
pub fn apply(d: &GridDiagram, m: Move) -> Result<GridDiagram, MoveError> {
    let n = d.size();
    match m {
        Move::CycCols { k } => Ok(d.shifted(k % n, 0)),
        Move::CycRows { k } => Ok(d.shifted(0, k % n)),
        Move::XchgCols { i } => {
            if i >= n {
                return Err(not_applicable(format!("column {i} out of range")));
            }
            if !can_xchg_cols(d, i) {
                return Err(not_applicable(format!(
                    "columns {i} and {} share a row or interleave",
                    (i + 1) % n
                )));
            }
            Ok(xchg_cols_unchecked(d, i))
        }
        Move::XchgRows { j } => {
            if j >= n {
                return Err(not_applicable(format!("row {j} out of range")));
            }
            if !can_xchg_rows(&d.rows(), j) {
                return Err(not_applicable(format!(
                    "rows {j} and {} share a column or interleave",
                    (j + 1) % n
                )));
            }
            Ok(xchg_rows_unchecked(d, j))
        }
        Move::Stab { col, row, quadrant } => stabilize(d, col, row, quadrant),
        Move::Destab { i, j } => destabilize(d, i, j),
    }
}

/// Every applicable exchange and destabilization, plus the two unit shifts.
/// Stabilizations are listed by [`stabilizations`].
pub fn applicable_moves(d: &GridDiagram) -> Vec<Move> {
    let n = d.size();
    let rows = d.rows();
    let mut out = vec![Move::CycCols { k: 1 }, Move::CycRows { k: 1 }];
    out.extend(
        (0..n)
            .filter(|&i| can_xchg_cols(d, i))
            .map(|i| Move::XchgCols { i }),
    );
    out.extend(
        (0..n)
            .filter(|&j| can_xchg_rows(&rows, j))
            .map(|j| Move::XchgRows { j }),
    );
    out.extend(
        destab_blocks(d)
            .into_iter()
            .map(|(i, j)| Move::Destab { i, j }),
    );
    out
}

/// The `8n` stabilizations of `d`: four quadrants at every vertex.
pub fn stabilizations(d: &GridDiagram) -> Vec<Move> {
    d.vertices()
        .into_iter()
        .flat_map(|v| Quadrant::ALL.into_iter().map(move |q| Move::stab(v, q)))
        .collect()
}

/// Moves undoing `m` when applied to `apply(d, m)`.
pub fn inverse_moves(d: &GridDiagram, m: Move) -> Result<Vec<Move>, MoveError> {
    let n = d.size();
    let after = apply(d, m)?;
    Ok(match m {
        Move::CycCols { k } => nonzero(vec![Move::CycCols { k: (n - k % n) % n }]),
        Move::CycRows { k } => nonzero(vec![Move::CycRows { k: (n - k % n) % n }]),
        Move::XchgCols { .. } | Move::XchgRows { .. } => vec![m],
        Move::Stab { col, row, .. } => vec![Move::Destab { i: col, j: row }],
        Move::Destab { i, j } => {
            let block = destab_block(d, i, j).expect("applied destab has a block");
            let (cc, rc) = (block.corner.col, block.corner.row);
            let e = block.empty;
            let v = VertexRef::new(
                e.col - usize::from(e.col > cc),
                e.row - usize::from(e.row > rc),
            );
            let m_size = after.size();
            for q in Quadrant::ALL {
                let stab = Move::stab(v, q);
                let s = apply(&after, stab)?;
                for b in 0..=m_size {
                    for a in 0..=m_size {
                        if s.shifted(b, a) == *d {
                            let mut seq = vec![stab];
                            seq.extend(nonzero(vec![
                                Move::CycCols { k: b },
                                Move::CycRows { k: a },
                            ]));
                            return Ok(seq);
                        }
                    }
                }
            }
            unreachable!("destabilization always has a stabilization inverse")
        }
    })
}

fn nonzero(moves: Vec<Move>) -> Vec<Move> {
    moves
        .into_iter()
        .filter(|m| !matches!(m, Move::CycCols { k: 0 } | Move::CycRows { k: 0 }))
        .collect()
}

/// Moves taking `d` to its canonical representative.
pub fn canonicalizing_moves(d: &GridDiagram) -> Vec<Move> {
    let form = d.canonical_form();
    nonzero(vec![
        Move::CycCols { k: form.col_shift },
        Move::CycRows { k: form.row_shift },
    ])
}

/// Moves taking the canonical representative of `d` back to `d`.
pub fn decanonicalizing_moves(d: &GridDiagram) -> Vec<Move> {
    let n = d.size();
    let form = d.canonical_form();
    nonzero(vec![
        Move::CycCols {
            k: (n - form.col_shift) % n,
        },
        Move::CycRows {
            k: (n - form.row_shift) % n,
        },
    ])
}

/// Applies moves in order, reporting the index of the first failure.
pub fn replay(start: &GridDiagram, moves: &[Move]) -> Result<GridDiagram, (usize, MoveError)> {
    let mut d = start.clone();
    for (step, &m) in moves.iter().enumerate() {
        d = apply(&d, m).map_err(|e| (step, e))?;
    }
    Ok(d)
}

/// A replayable certificate: the moves start from the canonical
/// representative of `initial` and end at a diagram keyed `final`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSequence {
    pub initial: CanonicalKey,
    pub moves: Vec<Move>,
    #[serde(rename = "final")]
    pub final_key: CanonicalKey,
}

impl MoveSequence {
    pub fn empty(d: &GridDiagram) -> Self {
        let key = d.canonical_key();
        MoveSequence {
            initial: key.clone(),
            moves: Vec::new(),
            final_key: key,
        }
    }

    /// Builds a certificate for `moves` applied to the concrete diagram
    /// `start`, prefixing the shifts from its canonical representative.
    /// Returns the certificate and the concrete end diagram.
    pub fn anchored(
        start: &GridDiagram,
        moves: &[Move],
    ) -> Result<(MoveSequence, GridDiagram), (usize, MoveError)> {
        let mut all = decanonicalizing_moves(start);
        let offset = all.len();
        all.extend_from_slice(moves);
        let end = replay(&start.canonical_representative(), &all)
            .map_err(|(step, e)| (step.saturating_sub(offset), e))?;
        let seq = MoveSequence {
            initial: start.canonical_key(),
            moves: all,
            final_key: end.canonical_key(),
        };
        Ok((seq, end))
    }

    /// Replays from the canonical representative of `initial`.
    pub fn replay(&self) -> Result<GridDiagram, (usize, MoveError)> {
        replay(&self.initial.to_diagram(), &self.moves)
    }

    /// Concatenates `other`, which must start where `self` ends.
    pub fn then(mut self, other: MoveSequence) -> MoveSequence {
        assert_eq!(self.final_key, other.initial, "sequences do not chain");
        self.moves.extend(other.moves);
        self.final_key = other.final_key;
        self
    }

    /// The reverse certificate, from `final` back to `initial`.
    pub fn inverted(&self) -> Result<MoveSequence, (usize, MoveError)> {
        let mut d = self.initial.to_diagram();
        let mut undo: Vec<Vec<Move>> = Vec::with_capacity(self.moves.len());
        for (step, &m) in self.moves.iter().enumerate() {
            undo.push(inverse_moves(&d, m).map_err(|e| (step, e))?);
            d = apply(&d, m).map_err(|e| (step, e))?;
        }
        let mut moves = decanonicalizing_moves(&d);
        moves.extend(undo.into_iter().rev().flatten());
        Ok(MoveSequence {
            initial: self.final_key.clone(),
            moves,
            final_key: self.initial.clone(),
        })
    }
}

/// Splits the horizontal edge on `row` at column position `split`: a new
/// column at index `split` joins `row` to a new row directly above it, and
/// the part of the edge right of the split moves up to the new row.
/// Requires `lo < split <= hi` where `lo < hi` are the edge's columns.
pub fn generalized_stabilization(
    d: &GridDiagram,
    row: usize,
    split: usize,
) -> Result<(GridDiagram, MoveSequence), MoveError> {
    let n = d.size();
    if row >= n {
        return Err(not_applicable(format!("row {row} out of range")));
    }
    let [lo, hi] = d.rows()[row];
    if !(lo < split && split <= hi) {
        return Err(not_applicable(format!(
            "split position {split} not inside the edge ({lo}, {hi}]"
        )));
    }
    let up = |r: usize| if r > row { r + 1 } else { r };
    let mut cols = Vec::with_capacity(n + 1);
    for c in 0..n {
        if c == split {
            cols.push([row, row + 1]);
        }
        let [a, b] = d.column(c);
        cols.push(if c == hi {
            let other = if a == row { b } else { a };
            [up(other), row + 1]
        } else {
            [up(a), up(b)]
        });
    }
    let result = GridDiagram::from_usize_unchecked(&cols);

    let mut moves = vec![Move::Stab {
        col: lo,
        row,
        quadrant: Quadrant::NW,
    }];
    moves.extend((lo + 1..split).map(|i| Move::XchgCols { i }));
    let (seq, end) = MoveSequence::anchored(d, &moves).map_err(|(_, e)| e)?;
    debug_assert_eq!(end, result);
    Ok((result, seq))
}

/// Parameters of a generalized exchange: the column blocks
/// `[g1, g2)` and `[g2, g3)` trade places. Rows in the cyclic window
/// `[t1, t2)` may not straddle the first block, and the remaining rows may
/// not straddle the second; `t1 == t2` puts every row in the first window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeSpec {
    pub g1: usize,
    pub g2: usize,
    pub g3: usize,
    pub t1: usize,
    pub t2: usize,
}

impl ExchangeSpec {
    fn in_first_window(&self, r: usize, n: usize) -> bool {
        let len = (self.t2 + n - self.t1) % n;
        len == 0 || (r + n - self.t1) % n < len
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum RowKind {
    BothA,
    BothB,
    Other,
}

pub fn generalized_exchange(
    d: &GridDiagram,
    spec: ExchangeSpec,
) -> Result<(GridDiagram, MoveSequence), MoveError> {
    let n = d.size();
    let ExchangeSpec { g1, g2, g3, t1, t2 } = spec;
    if !(g1 < g2 && g2 < g3 && g3 <= n) || t1 >= n || t2 >= n {
        return Err(not_applicable(format!("bad exchange parameters {spec:?}")));
    }
    let in_a = |c: usize| g1 <= c && c < g2;
    let in_b = |c: usize| g2 <= c && c < g3;
    let rows = d.rows();
    for (r, &[c0, c1]) in rows.iter().enumerate() {
        let straddles = if spec.in_first_window(r, n) {
            in_a(c0) != in_a(c1)
        } else {
            in_b(c0) != in_b(c1)
        };
        if straddles {
            return Err(MoveError::WindowViolation { row: r });
        }
    }

    let mut cols: Vec<[usize; 2]> = d.columns_vec();
    cols[g1..g3].rotate_left(g2 - g1);
    let result = GridDiagram::from_usize_unchecked(&cols);

    // Gather rows of A-only columns into one cyclic window and rows of
    // B-only columns into the other, by row exchanges.
    let kind = |r: &[usize; 2]| {
        if in_a(r[0]) && in_a(r[1]) {
            RowKind::BothA
        } else if in_b(r[0]) && in_b(r[1]) {
            RowKind::BothB
        } else {
            RowKind::Other
        }
    };
    let mut order: Vec<RowKind> = rows.iter().map(kind).collect();
    let mut row_moves = Vec::new();
    let w1_len = match (t2 + n - t1) % n {
        0 => n,
        len => len,
    };
    // window 1 in cyclic order t1 .. t2-1; push BothA rows to its end
    bubble(
        &mut order,
        &mut row_moves,
        t1,
        w1_len,
        n,
        RowKind::BothA,
        true,
    );
    // window 2 in cyclic order t2 .. t1-1; push BothB rows to its start
    bubble(
        &mut order,
        &mut row_moves,
        t2,
        n - w1_len,
        n,
        RowKind::BothB,
        false,
    );
    // swap the BothA run ending at t2 with the BothB run starting at t2
    let a_run = (0..w1_len)
        .take_while(|&k| order[(t2 + n - 1 - k) % n] == RowKind::BothA)
        .count();
    let b_run = (0..n - w1_len)
        .take_while(|&k| order[(t2 + k) % n] == RowKind::BothB)
        .count();
    for k in 0..a_run {
        // the BothA row just below the BothB run climbs over all of it
        let start = (t2 + n - 1 - k) % n;
        row_moves.extend((0..b_run).map(|s| Move::XchgRows { j: (start + s) % n }));
    }

    let mut moves = row_moves.clone();
    // carry each A column, rightmost first, across the B block
    let (a_len, b_len) = (g2 - g1, g3 - g2);
    for k in (0..a_len).rev() {
        let pos = g1 + k;
        moves.extend((0..b_len).map(|s| Move::XchgCols { i: pos + s }));
    }
    moves.extend(row_moves.iter().rev().copied());

    let (seq, end) = MoveSequence::anchored(d, &moves).map_err(|(_, e)| e)?;
    debug_assert_eq!(end, result);
    Ok((result, seq))
}

/// Stable bubbling of `target` rows within the cyclic window of `len` rows
/// starting at `start`, toward its end (`to_end`) or start. Records the
/// row exchanges and updates `order`.
fn bubble(
    order: &mut [RowKind],
    moves: &mut Vec<Move>,
    start: usize,
    len: usize,
    n: usize,
    target: RowKind,
    to_end: bool,
) {
    let at = |k: usize| (start + k) % n;
    if to_end {
        // settle from the end: next free slot at the end of the window
        let mut slot = len;
        for k in (0..len).rev() {
            if order[at(k)] != target {
                continue;
            }
            slot -= 1;
            for p in k..slot {
                moves.push(Move::XchgRows { j: at(p) });
                order.swap(at(p), at(p + 1));
            }
        }
    } else {
        let mut slot = 0;
        for k in 0..len {
            if order[at(k)] != target {
                continue;
            }
            for p in (slot..k).rev() {
                moves.push(Move::XchgRows { j: at(p) });
                order.swap(at(p), at(p + 1));
            }
            slot += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> GridDiagram {
        GridDiagram::from_pairs(&[[0, 2], [1, 4], [0, 3], [2, 4], [1, 3]]).unwrap()
    }

    #[test]
    fn interleaving_examples() {
        assert!(interleaved([0, 2], [1, 3], 4).unwrap());
        assert!(!interleaved([0, 1], [2, 3], 4).unwrap());
        assert!(interleaved([1, 3], [0, 2], 5).unwrap());
        assert!(matches!(
            interleaved([0, 1], [1, 2], 3),
            Err(MoveError::SharedEndpoint { .. })
        ));
    }

    #[test]
    fn destab_example() {
        let d = GridDiagram::from_pairs(&[[0, 1], [1, 2], [0, 2]]).unwrap();
        assert!(applicable_moves(&d).contains(&Move::Destab { i: 0, j: 0 }));
        let t = apply(&d, Move::Destab { i: 0, j: 0 }).unwrap();
        assert_eq!(t, GridDiagram::trivial());
    }

    #[test]
    fn trivial_has_no_reductions() {
        let moves = applicable_moves(&GridDiagram::trivial());
        assert_eq!(moves.len(), 2);
        assert_eq!(
            apply(&GridDiagram::trivial(), Move::Destab { i: 0, j: 0 }),
            Err(MoveError::SizeFloor)
        );
    }

    #[test]
    fn stab_then_destab() {
        let t = GridDiagram::trivial();
        for v in t.vertices() {
            for q in Quadrant::ALL {
                let s = apply(&t, Move::stab(v, q)).unwrap();
                assert_eq!(s.size(), 3);
                let back = apply(&s, Move::Destab { i: v.col, j: v.row }).unwrap();
                assert_eq!(back, t);
            }
        }
    }

    #[test]
    fn trefoil_admits_nothing() {
        let moves = applicable_moves(&trefoil());
        assert_eq!(moves.len(), 2, "{moves:?}");
    }

    #[test]
    fn wrap_exchange_matches_shift_conjugate() {
        let d = GridDiagram::from_pairs(&[[0, 1], [2, 3], [0, 1], [2, 3]]).unwrap();
        let direct = apply(&d, Move::XchgCols { i: 3 }).unwrap();
        let via = d.shifted(3, 0);
        let via = apply(&via, Move::XchgCols { i: 0 }).unwrap().shifted(1, 0);
        assert_eq!(direct, via);
    }

    #[test]
    fn move_json_shape() {
        let m = Move::XchgCols { i: 3 };
        assert_eq!(
            serde_json::to_string(&m).unwrap(),
            r#"{"t":"XchgCols","i":3}"#
        );
        let s = Move::Stab {
            col: 1,
            row: 0,
            quadrant: Quadrant::NE,
        };
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"t":"Stab","col":1,"row":0,"quadrant":"NE"}"#);
        assert_eq!(serde_json::from_str::<Move>(&text).unwrap(), s);
    }

    #[test]
    fn single_column_exchange() {
        let d = GridDiagram::from_pairs(&[[0, 1], [2, 3], [0, 1], [2, 3]]).unwrap();
        let spec = ExchangeSpec {
            g1: 1,
            g2: 2,
            g3: 3,
            t1: 0,
            t2: 2,
        };
        let (out, seq) = generalized_exchange(&d, spec).unwrap();
        assert_eq!(out, apply(&d, Move::XchgCols { i: 1 }).unwrap());
        let xchg: Vec<_> = seq
            .moves
            .iter()
            .filter(|m| !matches!(m, Move::CycCols { .. } | Move::CycRows { .. }))
            .collect();
        assert_eq!(xchg, vec![&Move::XchgCols { i: 1 }]);
    }

    #[test]
    fn adjacent_split_is_single_stab() {
        let d = trefoil();
        let [lo, _] = d.rows()[0];
        let (out, seq) = generalized_stabilization(&d, 0, lo + 1).unwrap();
        assert_eq!(out.size(), 6);
        assert_eq!(
            seq.moves
                .iter()
                .filter(|m| matches!(m, Move::Stab { .. }))
                .count(),
            1
        );
        assert_eq!(seq.replay().unwrap(), out);
    }
}
