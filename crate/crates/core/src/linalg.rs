//! Row reduction and null spaces over [`Real`].
//!
//! Exact rationals reduce with exact zero tests.  Floats use partial pivoting
//! and treat entries below `tol * max|entry|` as zero.

use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct Rref<R> {
    /// Nonzero rows of the reduced row-echelon form.
    pub rows: Vec<Vec<R>>,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
}

fn is_zero<R: Real>(x: &R, threshold: f64) -> bool {
    if R::EXACT {
        x.is_zero()
    } else {
        x.to_f64().abs() <= threshold
    }
}

pub fn rref<R: Real>(m: &[Vec<R>], ncols: usize, tol: f64) -> Rref<R> {
    let mut a: Vec<Vec<R>> = m.to_vec();
    let max = a.iter().flatten().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
    let threshold = tol * max;
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == a.len() {
            break;
        }
        let candidate = if R::EXACT {
            (row..a.len()).find(|&r| !a[r][col].is_zero())
        } else {
            (row..a.len())
                .max_by(|&x, &y| a[x][col].to_f64().abs().total_cmp(&a[y][col].to_f64().abs()))
                .filter(|&r| !is_zero(&a[r][col], threshold))
        };
        let Some(p) = candidate else {
            continue;
        };
        a.swap(row, p);
        let inv = R::one() / a[row][col].clone();
        for x in a[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..a.len() {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..ncols {
                let sub = factor.clone() * a[row][c].clone();
                a[r][c] = a[r][c].clone() - sub;
            }
            if !R::EXACT {
                a[r][col] = R::zero();
            }
        }
        pivots.push(col);
        row += 1;
    }
    a.truncate(row);
    if !R::EXACT {
        for x in a.iter_mut().flatten() {
            if x.to_f64().abs() <= threshold {
                *x = R::zero();
            }
        }
    }
    Rref { rows: a, pivots }
}

pub fn rank<R: Real>(m: &[Vec<R>], ncols: usize, tol: f64) -> usize {
    rref(m, ncols, tol).pivots.len()
}

/// Basis of `{x : m x = 0}` in reduced row-echelon form.
pub fn nullspace<R: Real>(m: &[Vec<R>], ncols: usize, tol: f64) -> Vec<Vec<R>> {
    let red = rref(m, ncols, tol);
    let free: Vec<usize> = (0..ncols).filter(|c| !red.pivots.contains(c)).collect();
    let raw: Vec<Vec<R>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![R::zero(); ncols];
            v[f] = R::one();
            for (row, &p) in red.rows.iter().zip(&red.pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect();
    rref(&raw, ncols, tol).rows
}

/// Coordinates of `v` in a basis given in reduced row-echelon form, if `v`
/// lies in its span.
pub fn coordinates_in_rref<R: Real>(basis: &Rref<R>, v: &[R], tol: f64) -> Option<Vec<R>> {
    let coords: Vec<R> = basis.pivots.iter().map(|&p| v[p].clone()).collect();
    let scale = 1f64.max(v.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max));
    for (c, x) in v.iter().enumerate() {
        let mut recon = R::zero();
        for (k, row) in basis.rows.iter().enumerate() {
            recon = recon + coords[k].clone() * row[c].clone();
        }
        if !(recon - x.clone()).negligible(scale, tol) {
            return None;
        }
    }
    Some(coords)
}
