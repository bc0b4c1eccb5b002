//! Dense exact simplex for the packing LP `max 1·y  s.t.  A^T y <= w, y >= 0`
//! with `w >= 0`, which is the dual of the covering LP `min w·x  s.t.
//! A x >= 1, x >= 0`. The slack basis is feasible, so no phase one is
//! needed; Bland's rule prevents cycling.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) struct CoverSolution {
    /// Optimal covering solution, one entry per column of `A`.
    pub x: Vec<BigRational>,
    pub value: BigRational,
}

/// `rows` lists, for every covering constraint, the columns it contains
/// (each nonempty); `w` holds the nonnegative column costs.
pub(crate) fn solve_cover(rows: &[Vec<usize>], w: &[BigRational]) -> CoverSolution {
    let m = rows.len();
    let n = w.len();
    let width = m + n;
    // tableau row r is the packing constraint of column r of A
    let mut t: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); width]; n];
    let mut rhs: Vec<BigRational> = w.to_vec();
    for (i, row) in rows.iter().enumerate() {
        for &e in row {
            t[e][i] = BigRational::one();
        }
    }
    for (r, tr) in t.iter_mut().enumerate() {
        tr[m + r] = BigRational::one();
    }
    let mut basis: Vec<usize> = (m..width).collect();
    let mut obj: Vec<BigRational> = (0..width)
        .map(|j| if j < m { -BigRational::one() } else { BigRational::zero() })
        .collect();
    let mut value = BigRational::zero();

    while let Some(enter) = obj.iter().position(|c| c.is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..n {
            if !t[r][enter].is_positive() {
                continue;
            }
            let ratio = &rhs[r] / &t[r][enter];
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        // bounded: every packing column hits a row with a finite bound
        let (pr, _) = leave.expect("packing LP over nonempty constraints is bounded");
        let piv = t[pr][enter].clone();
        for v in t[pr].iter_mut() {
            *v = &*v / &piv;
        }
        rhs[pr] = &rhs[pr] / &piv;
        let prow = t[pr].clone();
        let prhs = rhs[pr].clone();
        for r in 0..n {
            if r == pr || t[r][enter].is_zero() {
                continue;
            }
            let f = t[r][enter].clone();
            for (v, p) in t[r].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            rhs[r] -= &f * &prhs;
        }
        let f = obj[enter].clone();
        for (v, p) in obj.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
        value -= &f * &prhs;
        basis[pr] = enter;
    }
    CoverSolution {
        x: obj[m..].to_vec(),
        value,
    }
}
