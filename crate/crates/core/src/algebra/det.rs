use std::collections::HashMap;

use super::MultiPoly;
use crate::error::{Error, Result};

/// Largest size handled by memoized cofactor expansion in [`det_poly`].
const LAPLACE_MAX: usize = 5;

fn check_square(m: &[Vec<MultiPoly>]) -> Result<usize> {
    let n = m.len();
    if n == 0 {
        return Err(Error::Dimension("empty matrix".into()));
    }
    let nvars = m[0][0].nvars();
    for row in m {
        if row.len() != n {
            return Err(Error::Dimension(format!(
                "matrix is not square: {} rows, row of length {}",
                n,
                row.len()
            )));
        }
        if let Some(e) = row.iter().find(|e| e.nvars() != nvars) {
            return Err(Error::VariableMismatch(nvars, e.nvars()));
        }
    }
    Ok(n)
}

/// Exact determinant of a square matrix of polynomials.
pub fn det_poly(m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let n = check_square(m)?;
    if n <= LAPLACE_MAX {
        det_laplace(m)
    } else {
        det_bareiss(m)
    }
}

/// Cofactor expansion along rows, memoized on the set of remaining columns.
pub fn det_laplace(m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let n = check_square(m)?;
    if n > 24 {
        return Err(Error::Dimension(format!("{n}x{n} too large for expansion")));
    }
    let nvars = m[0][0].nvars();
    let mut memo: HashMap<u32, MultiPoly> = HashMap::new();
    Ok(laplace_rec(m, n, (1u32 << n) - 1, nvars, &mut memo))
}

fn laplace_rec(
    m: &[Vec<MultiPoly>],
    n: usize,
    cols: u32,
    nvars: usize,
    memo: &mut HashMap<u32, MultiPoly>,
) -> MultiPoly {
    let row = n - cols.count_ones() as usize;
    if row == n {
        return MultiPoly::one(nvars);
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = MultiPoly::zero(nvars);
    let mut position = 0;
    for c in 0..n {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = &m[row][c];
        if !entry.is_zero() {
            let sub = laplace_rec(m, n, cols & !(1 << c), nvars, memo);
            if !sub.is_zero() {
                let term = entry * &sub;
                acc = if position % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
        }
        position += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Fraction-free (Bareiss) elimination with exact polynomial division.
pub fn det_bareiss(m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let n = check_square(m)?;
    let nvars = m[0][0].nvars();
    let mut a: Vec<Vec<MultiPoly>> = m.to_vec();
    let mut negate = false;
    let mut prev = MultiPoly::one(nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(MultiPoly::zero(nvars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .unwrap_or_else(|| panic!("Bareiss division failed at step {k}"));
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}
