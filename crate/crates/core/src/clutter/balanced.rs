use serde::Serialize;

use crate::error::{Error, Result};

/// Dense 0-1 matrix with row and column labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroOneMatrix {
    rows: Vec<Vec<bool>>,
    row_labels: Vec<u32>,
    col_labels: Vec<u32>,
}

impl ZeroOneMatrix {
    pub fn from_rows(rows: Vec<Vec<bool>>, row_labels: Vec<u32>, col_labels: Vec<u32>) -> Self {
        debug_assert_eq!(rows.len(), row_labels.len());
        debug_assert!(rows.iter().all(|r| r.len() == col_labels.len()));
        ZeroOneMatrix {
            rows,
            row_labels,
            col_labels,
        }
    }

    /// Unlabelled matrix from 0/1 integer rows (labels are positions).
    pub fn from_bits(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        ZeroOneMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| x != 0).collect()).collect(),
            (0..rows.len() as u32).collect(),
            (0..cols as u32).collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        ZeroOneMatrix::from_rows(rows, (0..n as u32).collect(), (0..n as u32).collect())
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }

    pub fn row_labels(&self) -> &[u32] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[u32] {
        &self.col_labels
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }
}

/// Rows and columns (as indices, in cyclic order) of an odd 2-circulant
/// submatrix: row `rows[i]` meets exactly columns `cols[i]` and
/// `cols[(i + k - 1) % k]` among the chosen columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CirculantWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// `Ok(None)` iff `a` is balanced (has no odd-order 2-circulant submatrix).
///
/// An odd 2-circulant submatrix is an induced cycle of length `2k`, `k` odd,
/// in the bipartite row/column graph. Cycles are grown from their smallest
/// row as chordless alternating paths.
pub fn is_balanced_matrix(a: &ZeroOneMatrix, max_dim: usize) -> Result<Option<CirculantWitness>> {
    let dim = a.nrows().max(a.ncols());
    if dim > max_dim {
        return Err(Error::size_limit("matrix dimension", dim, max_dim));
    }
    let col_rows: Vec<Vec<usize>> = (0..a.ncols())
        .map(|c| (0..a.nrows()).filter(|&r| a.rows[r][c]).collect())
        .collect();
    for start in 0..a.nrows() {
        let mut search = CycleSearch {
            a,
            col_rows: &col_rows,
            rows: vec![start],
            cols: Vec::new(),
        };
        if search.grow_col() {
            return Ok(Some(CirculantWitness {
                rows: search.rows,
                cols: search.cols,
            }));
        }
    }
    Ok(None)
}

struct CycleSearch<'a> {
    a: &'a ZeroOneMatrix,
    col_rows: &'a [Vec<usize>],
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl CycleSearch<'_> {
    /// Path is r1 c1 ... r_j; choose c_j adjacent to r_j.
    fn grow_col(&mut self) -> bool {
        let last = *self.rows.last().unwrap();
        let first = self.rows[0];
        let j = self.rows.len();
        for c in 0..self.a.ncols() {
            if !self.a.rows[last][c] || self.cols.contains(&c) {
                continue;
            }
            // no chord to interior rows r_2 .. r_{j-1}
            if self.rows[1..j.max(2) - 1].iter().any(|&r| self.a.rows[r][c]) {
                continue;
            }
            let closes = j >= 2 && self.a.rows[first][c];
            self.cols.push(c);
            if closes {
                if j % 2 == 1 && j >= 3 {
                    return true;
                }
            } else if self.grow_row() {
                return true;
            }
            self.cols.pop();
        }
        false
    }

    /// Path is r1 c1 ... r_j c_j; choose r_{j+1} > r1 adjacent to c_j only.
    fn grow_row(&mut self) -> bool {
        let first = self.rows[0];
        let last_col = *self.cols.last().unwrap();
        let k = self.cols.len();
        for &r in &self.col_rows[last_col] {
            if r <= first || self.rows.contains(&r) {
                continue;
            }
            if self.cols[..k - 1].iter().any(|&c| self.a.rows[r][c]) {
                continue;
            }
            self.rows.push(r);
            if self.grow_col() {
                return true;
            }
            self.rows.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clutter::flow_clutter;
    use crate::graph::{generate, Family};

    fn check_witness(a: &ZeroOneMatrix, w: &CirculantWitness) {
        let k = w.rows.len();
        assert_eq!(k, w.cols.len());
        assert!(k % 2 == 1 && k >= 3);
        for (i, &r) in w.rows.iter().enumerate() {
            for (j, &c) in w.cols.iter().enumerate() {
                let expect = j == i || j == (i + k - 1) % k;
                assert_eq!(a.rows()[r][c], expect, "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn identity_is_balanced() {
        assert_eq!(is_balanced_matrix(&ZeroOneMatrix::identity(5), 20).unwrap(), None);
    }

    #[test]
    fn triangle_matrix() {
        let a = ZeroOneMatrix::from_bits(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let w = is_balanced_matrix(&a, 20).unwrap().unwrap();
        check_witness(&a, &w);
        let mut r = w.rows.clone();
        r.sort();
        assert_eq!(r, vec![0, 1, 2]);
    }

    #[test]
    fn even_cycle_is_balanced() {
        let a = ZeroOneMatrix::from_bits(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 1]]);
        assert_eq!(is_balanced_matrix(&a, 20).unwrap(), None);
    }

    #[test]
    fn odd_cycle_with_chord_uses_inner_triangle() {
        // 5-cycle plus a chord giving a 3-cycle
        let a = ZeroOneMatrix::from_bits(&[
            &[1, 1, 0, 0, 0],
            &[0, 1, 1, 0, 0],
            &[0, 0, 1, 1, 0],
            &[0, 0, 0, 1, 1],
            &[1, 0, 0, 0, 1],
            &[1, 0, 1, 0, 0],
        ]);
        let w = is_balanced_matrix(&a, 20).unwrap().unwrap();
        check_witness(&a, &w);
    }

    #[test]
    fn flow_star_witness_is_positive() {
        let g = generate(Family::FlowStar(3)).unwrap();
        let a = flow_clutter(&g, 100).unwrap().incidence_matrix();
        let w = is_balanced_matrix(&a, 20).unwrap().unwrap();
        check_witness(&a, &w);
        for &c in &w.cols {
            assert!(g.edge(a.col_labels()[c]).unwrap().is_positive());
        }
    }

    #[test]
    fn dimension_cap() {
        assert!(is_balanced_matrix(&ZeroOneMatrix::identity(21), 20).is_err());
    }
}
