//! Diagram constructors: torus links, random diagrams, scrambled unknots,
//! unions, connected sums, and transcribed fixtures.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ConvertError;
use crate::grid::{GridDiagram, MAX_SIZE};
use crate::moves::{apply, can_xchg_cols, can_xchg_rows, Move, MoveSequence, Quadrant};

/// The `(p, q)` torus link: row `r` joins columns `-r` and `p - r` mod `p + q`.
pub fn torus_grid(p: usize, q: usize) -> Result<GridDiagram, ConvertError> {
    if p == 0 || q == 0 {
        return Err(ConvertError::DegenerateParams(format!(
            "torus parameters must be positive, got ({p}, {q})"
        )));
    }
    let n = p + q;
    if n > MAX_SIZE {
        return Err(ConvertError::TooLarge(n));
    }
    let rows: Vec<[usize; 2]> = (0..n).map(|r| [(n - r) % n, (p + n - r) % n]).collect();
    if let Some(r) = rows.iter().position(|pair| pair[0] == pair[1]) {
        return Err(ConvertError::DegenerateParams(format!(
            "row {r} would have both vertices in one column"
        )));
    }
    Ok(GridDiagram::from_usize_unchecked(&rows).transpose_dual())
}

/// Uniform sample among diagrams of size `n`: the `2n` row endpoints are
/// shuffled and paired off, rejecting draws with a degenerate column.
pub fn random_diagram(n: usize, seed: u64) -> Result<GridDiagram, ConvertError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_diagram_with(n, &mut rng)
}

pub fn random_diagram_with<R: Rng>(n: usize, rng: &mut R) -> Result<GridDiagram, ConvertError> {
    if !(2..=MAX_SIZE).contains(&n) {
        return Err(ConvertError::DegenerateParams(format!(
            "size {n} outside [2, {MAX_SIZE}]"
        )));
    }
    let mut stubs: Vec<usize> = (0..2 * n).map(|k| k / 2).collect();
    loop {
        stubs.shuffle(rng);
        if stubs.chunks(2).all(|p| p[0] != p[1]) {
            let cols: Vec<[usize; 2]> = stubs.chunks(2).map(|p| [p[0], p[1]]).collect();
            return Ok(GridDiagram::from_usize_unchecked(&cols));
        }
    }
}

/// Default scramble length for [`random_unknot`].
pub fn default_scramble_moves(n: usize) -> usize {
    (3 * n + 20).max(20)
}

/// An unknot diagram of size `n`, produced from the trivial diagram by
/// seeded stabilizations, exchanges and cyclic shifts, with its trace.
pub fn random_unknot(n: usize, seed: u64) -> Result<(GridDiagram, MoveSequence), ConvertError> {
    random_unknot_with(n, default_scramble_moves(n), seed)
}

pub fn random_unknot_with(
    n: usize,
    total_moves: usize,
    seed: u64,
) -> Result<(GridDiagram, MoveSequence), ConvertError> {
    if !(2..=MAX_SIZE).contains(&n) {
        return Err(ConvertError::DegenerateParams(format!(
            "size {n} outside [2, {MAX_SIZE}]"
        )));
    }
    let total = total_moves.max(n - 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = GridDiagram::trivial();
    let mut d = start.clone();
    let mut moves = Vec::with_capacity(total);
    for step in 0..total {
        let size = d.size();
        let stabs_left = n - size;
        let steps_left = total - step;
        let m = if stabs_left > 0 && rng.gen_range(0..steps_left) < stabs_left {
            let verts = d.vertices();
            let v = verts[rng.gen_range(0..verts.len())];
            Move::stab(v, Quadrant::ALL[rng.gen_range(0..4)])
        } else {
            let rows = d.rows();
            let mut xchg: Vec<Move> = (0..size)
                .filter(|&i| can_xchg_cols(&d, i))
                .map(|i| Move::XchgCols { i })
                .collect();
            xchg.extend(
                (0..size)
                    .filter(|&j| can_xchg_rows(&rows, j))
                    .map(|j| Move::XchgRows { j }),
            );
            if !xchg.is_empty() && rng.gen_bool(0.8) {
                xchg[rng.gen_range(0..xchg.len())]
            } else if rng.gen_bool(0.5) {
                Move::CycCols {
                    k: rng.gen_range(1..size),
                }
            } else {
                Move::CycRows {
                    k: rng.gen_range(1..size),
                }
            }
        };
        d = apply(&d, m).expect("scramble moves are applicable by construction");
        moves.push(m);
    }
    let seq = MoveSequence {
        initial: start.canonical_key(),
        moves,
        final_key: d.canonical_key(),
    };
    Ok((d, seq))
}

/// Block-diagonal union: `b` sits above and to the right of `a`.
pub fn distant_union(a: &GridDiagram, b: &GridDiagram) -> GridDiagram {
    let shift = a.size();
    let mut cols = a.columns_vec();
    cols.extend(
        b.columns_vec()
            .into_iter()
            .map(|[x, y]| [x + shift, y + shift]),
    );
    GridDiagram::from_usize_unchecked(&cols)
}

/// Connected sum along column `col_a` of `a` and column `col_b` of `b`:
/// both columns are removed and their rows are joined, `a` on the left.
/// The result has size `a.size() + b.size() - 2`.
pub fn connected_sum(
    a: &GridDiagram,
    col_a: usize,
    b: &GridDiagram,
    col_b: usize,
) -> Result<GridDiagram, ConvertError> {
    let (na, nb) = (a.size(), b.size());
    if col_a >= na || col_b >= nb {
        return Err(ConvertError::DegenerateParams("column out of range".into()));
    }
    if na + nb - 2 > MAX_SIZE {
        return Err(ConvertError::TooLarge(na + nb - 2));
    }
    let a = a.shifted(col_a + 1, 0);
    let b = b.shifted(col_b, 0);
    let [a_lo, a_hi] = a.column(na - 1);
    let [b_lo, b_hi] = b.column(0);
    // bands from the bottom: below lo (a, then b), the joined lo row,
    // between (a, then b), the joined hi row, above hi (a, then b)
    let band = |r: usize, lo: usize, hi: usize| {
        if r < lo {
            0
        } else if r == lo {
            1
        } else if r < hi {
            2
        } else if r == hi {
            3
        } else {
            4
        }
    };
    let mut keys: Vec<(usize, usize, usize, usize)> = Vec::new(); // (band, side, row, index)
    for r in 0..na {
        keys.push((band(r, a_lo, a_hi), 0, r, 0));
    }
    for r in 0..nb {
        let bd = band(r, b_lo, b_hi);
        if bd != 1 && bd != 3 {
            keys.push((bd, 1, r, 0));
        }
    }
    keys.sort_unstable();
    let mut height_a = vec![0; na];
    let mut height_b = vec![0; nb];
    for (h, &(bd, side, r, _)) in keys.iter().enumerate() {
        if side == 0 {
            height_a[r] = h;
            if bd == 1 {
                height_b[b_lo] = h;
            } else if bd == 3 {
                height_b[b_hi] = h;
            }
        } else {
            height_b[r] = h;
        }
    }
    let mut cols = Vec::with_capacity(na + nb - 2);
    for c in 0..na - 1 {
        let [x, y] = a.column(c);
        cols.push([height_a[x], height_a[y]]);
    }
    for c in 1..nb {
        let [x, y] = b.column(c);
        cols.push([height_b[x], height_b[y]]);
    }
    Ok(GridDiagram::from_usize_unchecked(&cols))
}

/// Two diagrams of the Whitehead link of size 7: one rigid, one not.
pub fn whitehead_fixtures() -> (GridDiagram, GridDiagram) {
    let rigid = [[4, 6], [0, 5], [2, 6], [1, 3], [2, 4], [0, 3], [1, 5]];
    let loose = [[3, 6], [0, 5], [2, 4], [3, 6], [1, 4], [0, 2], [1, 5]];
    (
        GridDiagram::from_pairs(&rigid).expect("fixture is valid"),
        GridDiagram::from_pairs(&loose).expect("fixture is valid"),
    )
}

/// A rigid size-10 diagram of a two-component link whose Alexander
/// polynomial vanishes.
pub fn zero_alexander_fixture() -> GridDiagram {
    let cols = [
        [4, 8],
        [7, 9],
        [3, 8],
        [2, 6],
        [0, 5],
        [4, 9],
        [3, 7],
        [1, 6],
        [0, 2],
        [1, 5],
    ];
    GridDiagram::from_pairs(&cols).expect("fixture is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_examples() {
        let t = torus_grid(2, 3).unwrap();
        assert_eq!(
            t.columns_vec(),
            vec![[0, 2], [1, 4], [0, 3], [2, 4], [1, 3]]
        );
        assert_eq!(t.component_count(), 1);
        assert_eq!(torus_grid(1, 1).unwrap(), GridDiagram::trivial());
        assert_eq!(torus_grid(2, 4).unwrap().component_count(), 2);
        assert!(torus_grid(0, 3).is_err());
    }

    #[test]
    fn random_is_reproducible() {
        assert_eq!(random_diagram(8, 7).unwrap(), random_diagram(8, 7).unwrap());
        let (d, seq) = random_unknot(7, 3).unwrap();
        assert_eq!(d.size(), 7);
        assert!(seq.moves.len() >= 20);
        assert_eq!(seq.replay().unwrap(), d);
    }

    #[test]
    fn fixtures_have_two_components() {
        let (a, b) = whitehead_fixtures();
        assert_eq!((a.component_count(), b.component_count()), (2, 2));
        assert_eq!(zero_alexander_fixture().component_count(), 2);
    }

    #[test]
    fn sum_sizes() {
        let t = torus_grid(2, 3).unwrap();
        let s = connected_sum(&t, 0, &t, 0).unwrap();
        assert_eq!(s.size(), 8);
        assert_eq!(s.component_count(), 1);
        let u = distant_union(&GridDiagram::trivial(), &GridDiagram::trivial());
        assert_eq!(u.columns_vec(), vec![[0, 1], [0, 1], [2, 3], [2, 3]]);
    }
}
