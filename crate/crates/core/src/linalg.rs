//! Small exact linear algebra kernel: reduced row echelon form over the
//! rationals, plus the rank / kernel / affine-hull helpers built on it.
//!
//! Matrices are dense `Vec<Vec<Rat>>` rows. Dimensions here are tiny (n is at
//! most ~10 throughout the crate), so the fraction-growth of plain
//! Gauss-Jordan is a non-issue and keeping the code obvious wins.

use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

/// Reduced row echelon form, in place. Returns the pivot columns in order.
pub fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    let n = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        // partial pivoting is pointless in exact arithmetic; take the first
        // nonzero entry
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..m {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..n {
                    let sub = &f * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut work = rows.to_vec();
    rref(&mut work).len()
}

/// Basis of the right kernel {x : A x = 0}, one vector per non-pivot column.
pub fn kernel_basis(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let n = rows[0].len();
    let mut work = rows.to_vec();
    let pivots = rref(&mut work);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = -work[ri][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Dimension of the affine hull of a set of points (0 for a single point,
/// usize::MAX sentinel never used: empty input panics — callers guard).
pub fn affine_rank(points: &[Vec<Rat>]) -> usize {
    assert!(!points.is_empty(), "affine_rank of empty set");
    let base = &points[0];
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs)
}

/// Solve A x = b if consistent. Free variables are set to zero.
pub fn solve(rows: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let m = rows.len();
    assert_eq!(m, b.len());
    if m == 0 {
        return Some(Vec::new());
    }
    let n = rows[0].len();
    let mut aug: Vec<Vec<Rat>> = rows
        .iter()
        .zip(b)
        .map(|(r, bv)| {
            let mut row = r.clone();
            row.push(bv.clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return None; // pivot in the rhs column: inconsistent
    }
    let mut x = vec![Rat::zero(); n];
    for (ri, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[ri][n].clone();
    }
    Some(x)
}

/// Determinant sign of a square rational matrix: -1, 0 or 1.
pub fn det_sign(rows: &[Vec<Rat>]) -> i32 {
    let k = rows.len();
    let mut work = rows.to_vec();
    let mut sign = 1i32;
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| !work[i][c].is_zero()) else {
            return 0;
        };
        if p != c {
            work.swap(c, p);
            sign = -sign;
        }
        if work[c][c].is_negative() {
            sign = -sign;
        }
        let piv = work[c][c].clone();
        for i in c + 1..k {
            if !work[i][c].is_zero() {
                let f = &work[i][c] / &piv;
                for j in c..k {
                    let sub = &f * &work[c][j];
                    work[i][j] = &work[i][j] - &sub;
                }
            }
        }
    }
    sign
}
