//! The rectangular diagram value type.
//!
//! A diagram of size `n` has `n` columns and `n` rows, indexed from `0`
//! (column 0 on the left, row 0 at the bottom). Every column carries exactly
//! one vertical edge, given by the unordered pair of rows holding its two
//! vertices, and every row is used by exactly two columns. Vertical edges
//! always pass over horizontal ones.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported grid size; rows are stored as bytes.
pub const MAX_SIZE: usize = 255;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("size error: {detail}")]
    Size { detail: String },
    #[error("row {row} is used by {count} columns (expected 2)")]
    RowCount { row: usize, count: usize },
    #[error("column {column} has both vertices on row {row}")]
    DegeneratePair { column: usize, row: usize },
    #[error("column {column} references row {value}, outside [0, {n})")]
    Index { column: usize, value: i64, n: usize },
}

impl GridError {
    fn size(detail: impl Into<String>) -> Self {
        GridError::Size {
            detail: detail.into(),
        }
    }
}

/// A marked point of a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexRef {
    pub col: usize,
    pub row: usize,
}

impl VertexRef {
    pub fn new(col: usize, row: usize) -> Self {
        VertexRef { col, row }
    }
}

/// Unvalidated diagram data, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDiagram {
    pub n: i64,
    pub columns: Vec<Vec<i64>>,
}

/// Checks raw size/pair data and builds a diagram.
pub fn validate(raw: &RawDiagram) -> Result<GridDiagram, GridError> {
    if raw.n < 2 {
        return Err(GridError::size(format!(
            "n = {} is below the minimum of 2",
            raw.n
        )));
    }
    let n = raw.n as usize;
    if n > MAX_SIZE {
        return Err(GridError::size(format!(
            "n = {n} exceeds the supported maximum of {MAX_SIZE}"
        )));
    }
    if raw.columns.len() != n {
        return Err(GridError::size(format!(
            "n = {n} but {} column pairs were given",
            raw.columns.len()
        )));
    }
    let mut columns = Vec::with_capacity(n);
    for (column, pair) in raw.columns.iter().enumerate() {
        if pair.len() != 2 {
            return Err(GridError::size(format!(
                "column {column} lists {} rows (expected 2)",
                pair.len()
            )));
        }
        for &value in pair {
            if value < 0 || value as usize >= n {
                return Err(GridError::Index { column, value, n });
            }
        }
        if pair[0] == pair[1] {
            return Err(GridError::DegeneratePair {
                column,
                row: pair[0] as usize,
            });
        }
        columns.push(sorted_pair(pair[0] as u8, pair[1] as u8));
    }
    let mut counts = vec![0usize; n];
    for pair in &columns {
        counts[pair[0] as usize] += 1;
        counts[pair[1] as usize] += 1;
    }
    if let Some((row, &count)) = counts.iter().enumerate().find(|(_, &c)| c != 2) {
        return Err(GridError::RowCount { row, count });
    }
    Ok(GridDiagram { columns })
}

#[inline]
pub(crate) fn sorted_pair(a: u8, b: u8) -> [u8; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

/// A validated rectangular diagram.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridDiagram {
    // invariant: sorted distinct pairs, every row used exactly twice
    columns: Vec<[u8; 2]>,
}

impl fmt::Debug for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GridDiagram{:?}", self.columns_vec())
    }
}

impl GridDiagram {
    /// Builds a diagram from one row pair per column; `n` is the pair count.
    pub fn from_pairs(columns: &[[usize; 2]]) -> Result<Self, GridError> {
        validate(&RawDiagram {
            n: columns.len() as i64,
            columns: columns
                .iter()
                .map(|p| vec![p[0] as i64, p[1] as i64])
                .collect(),
        })
    }

    /// The rectangle: the unique diagram of size 2.
    pub fn trivial() -> Self {
        GridDiagram {
            columns: vec![[0, 1], [0, 1]],
        }
    }

    pub(crate) fn from_sorted_unchecked(columns: Vec<[u8; 2]>) -> Self {
        debug_assert!(columns.len() >= 2 && columns.iter().all(|p| p[0] < p[1]));
        GridDiagram { columns }
    }

    /// Builds from arbitrary-order pairs without validation; used on data
    /// whose invariants hold by construction.
    pub(crate) fn from_usize_unchecked(columns: &[[usize; 2]]) -> Self {
        let columns = columns
            .iter()
            .map(|p| sorted_pair(p[0] as u8, p[1] as u8))
            .collect();
        let d = GridDiagram { columns };
        debug_assert!(d.check().is_ok(), "invalid diagram built: {d:?}");
        d
    }

    /// Re-runs validation on the stored data.
    pub fn check(&self) -> Result<(), GridError> {
        validate(&self.to_raw()).map(|_| ())
    }

    pub fn to_raw(&self) -> RawDiagram {
        RawDiagram {
            n: self.size() as i64,
            columns: self
                .columns
                .iter()
                .map(|p| vec![p[0] as i64, p[1] as i64])
                .collect(),
        }
    }

    /// Grid size; equals the number of vertical edges, i.e. the complexity.
    #[inline]
    pub fn size(&self) -> usize {
        self.columns.len()
    }

    /// The sorted row pair of column `c`.
    #[inline]
    pub fn column(&self, c: usize) -> [usize; 2] {
        let p = self.columns[c];
        [p[0] as usize, p[1] as usize]
    }

    pub(crate) fn raw_columns(&self) -> &[[u8; 2]] {
        &self.columns
    }

    pub fn columns_vec(&self) -> Vec<[usize; 2]> {
        (0..self.size()).map(|c| self.column(c)).collect()
    }

    /// For every row, the sorted pair of columns holding its vertices.
    pub fn rows(&self) -> Vec<[usize; 2]> {
        let n = self.size();
        let mut rows = vec![[usize::MAX; 2]; n];
        for (c, p) in self.columns.iter().enumerate() {
            for &r in p {
                let slot = &mut rows[r as usize];
                if slot[0] == usize::MAX {
                    slot[0] = c;
                } else {
                    slot[1] = c;
                }
            }
        }
        rows
    }

    pub fn has_vertex(&self, col: usize, row: usize) -> bool {
        col < self.size() && self.columns[col].contains(&(row as u8))
    }

    /// All `2n` vertices, sorted by column then row.
    pub fn vertices(&self) -> Vec<VertexRef> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, p)| p.iter().map(move |&r| VertexRef::new(c, r as usize)))
            .collect()
    }

    /// Cyclic shift of columns and rows: the new column `j` is the old column
    /// `(j + col_shift) mod n`, and old row `r` becomes `(r - row_shift) mod n`.
    pub fn shifted(&self, col_shift: usize, row_shift: usize) -> Self {
        let n = self.size();
        let (b, a) = (col_shift % n, row_shift % n);
        let columns = (0..n)
            .map(|j| {
                let p = self.columns[(j + b) % n];
                let down = |r: u8| ((r as usize + n - a) % n) as u8;
                sorted_pair(down(p[0]), down(p[1]))
            })
            .collect();
        GridDiagram { columns }
    }

    /// Plain transpose: column `r` of the result carries the pair of columns
    /// of `self` meeting row `r`.
    pub fn transpose_dual(&self) -> Self {
        let columns = self
            .rows()
            .into_iter()
            .map(|p| [p[0] as u8, p[1] as u8])
            .collect();
        GridDiagram { columns }
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        self.canonical_form().key
    }

    /// Lexicographically minimal encoding over all `n x n` cyclic shifts,
    /// together with the first shift attaining it.
    pub fn canonical_form(&self) -> CanonicalForm {
        let n = self.size();
        let mut best: Vec<[u8; 2]> = Vec::new();
        let mut best_shift = (0usize, 0usize);
        let mut shifted = vec![[0u8; 2]; n];
        for a in 0..n {
            let mut min_pair = [u8::MAX; 2];
            for (slot, p) in shifted.iter_mut().zip(&self.columns) {
                let down = |r: u8| ((r as usize + n - a) % n) as u8;
                *slot = sorted_pair(down(p[0]), down(p[1]));
                if *slot < min_pair {
                    min_pair = *slot;
                }
            }
            if !best.is_empty() && min_pair > best[0] {
                continue;
            }
            for b in 0..n {
                if shifted[b] != min_pair {
                    continue;
                }
                let better = best.is_empty()
                    || (0..n)
                        .map(|j| shifted[(j + b) % n].cmp(&best[j]))
                        .find(|o| *o != Ordering::Equal)
                        == Some(Ordering::Less);
                if better {
                    best = (0..n).map(|j| shifted[(j + b) % n]).collect();
                    best_shift = (b, a);
                }
            }
        }
        let bytes: Box<[u8]> = best.iter().flat_map(|p| p.iter().copied()).collect();
        CanonicalForm {
            key: CanonicalKey(bytes),
            col_shift: best_shift.0,
            row_shift: best_shift.1,
        }
    }

    /// The canonical representative of this diagram's cyclic class.
    pub fn canonical_representative(&self) -> GridDiagram {
        self.canonical_key().to_diagram()
    }

    /// Traces the closed curves of the diagram. Each cycle starts at its
    /// smallest vertex and leaves it along the vertical edge.
    pub fn components(&self) -> Vec<LinkComponent> {
        let n = self.size();
        let rows = self.rows();
        let mut seen = vec![[false; 2]; n];
        let slot = |c: usize, r: usize, cols: &[[u8; 2]]| usize::from(cols[c][1] as usize == r);
        let mut out = Vec::new();
        for start in self.vertices() {
            if seen[start.col][slot(start.col, start.row, &self.columns)] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            let mut vertical = true;
            loop {
                seen[v.col][slot(v.col, v.row, &self.columns)] = true;
                cycle.push(v);
                v = if vertical {
                    let p = self.column(v.col);
                    VertexRef::new(v.col, if p[0] == v.row { p[1] } else { p[0] })
                } else {
                    let p = rows[v.row];
                    VertexRef::new(if p[0] == v.col { p[1] } else { p[0] }, v.row)
                };
                vertical = !vertical;
                if v == start {
                    break;
                }
            }
            out.push(LinkComponent { cycle });
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }
}

/// A canonical key plus the shift `(col_shift, row_shift)` such that
/// `d.shifted(col_shift, row_shift)` is the canonical representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    pub col_shift: usize,
    pub row_shift: usize,
}

/// Identity of a cyclic-shift class: the flattened minimal column pairs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Box<[u8]>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.len() / 2
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self, GridError> {
        let bytes = hex::decode(s).map_err(|e| GridError::size(format!("bad key hex: {e}")))?;
        if bytes.len() % 2 != 0 {
            return Err(GridError::size("key has odd byte length"));
        }
        let key = CanonicalKey(bytes.into_boxed_slice());
        key.try_to_diagram()?;
        Ok(key)
    }

    fn try_to_diagram(&self) -> Result<GridDiagram, GridError> {
        validate(&RawDiagram {
            n: self.size() as i64,
            columns: self
                .0
                .chunks(2)
                .map(|p| vec![p[0] as i64, p[1] as i64])
                .collect(),
        })
    }

    /// Decodes the canonical representative.
    pub fn to_diagram(&self) -> GridDiagram {
        GridDiagram::from_sorted_unchecked(self.0.chunks(2).map(|p| [p[0], p[1]]).collect())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalKey::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

impl Serialize for GridDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            n: usize,
            columns: Vec<[usize; 2]>,
        }
        Out {
            n: self.size(),
            columns: self.columns_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GridDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawDiagram::deserialize(d)?;
        validate(&raw).map_err(serde::de::Error::custom)
    }
}

/// One closed curve of a diagram, as its cyclic vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkComponent {
    pub cycle: Vec<VertexRef>,
}

/// Traversal sense per component: `false` follows the traced cycle,
/// `true` reverses it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Orientation {
    pub reversed: Vec<bool>,
}

impl Orientation {
    /// Every component in its traced direction.
    pub fn default_for(d: &GridDiagram) -> Self {
        Orientation {
            reversed: vec![false; d.component_count()],
        }
    }

    pub fn from_bits(bits: u64, components: usize) -> Self {
        Orientation {
            reversed: (0..components).map(|i| bits >> i & 1 == 1).collect(),
        }
    }

    pub fn reversed_globally(&self) -> Self {
        Orientation {
            reversed: self.reversed.iter().map(|b| !b).collect(),
        }
    }

    /// The `2^(k-1)` orientations up to global reversal (component 0 fixed).
    pub fn all_relative(components: usize) -> impl Iterator<Item = Orientation> {
        let count = if components == 0 {
            1
        } else {
            1u64 << (components - 1)
        };
        (0..count).map(move |b| Orientation::from_bits(b << 1, components))
    }
}
