use std::collections::BTreeSet;

use super::{osculating_matrix, osculating_matrix_symbolic, CoordMatrix};
use crate::algebra::{det_poly, rank, MultiPoly, Rational};
use crate::combinatorics::{FlagType, Permutation};
use crate::error::{Error, Result};

/// `dim(E_{a_i} ∩ F_j) >= r`, i.e. the stacked `(a_i + j) × n` matrix has
/// rank at most `a_i + j - r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankCondition {
    pub block: usize,
    pub order: usize,
    pub required: usize,
}

impl RankCondition {
    pub fn rank_bound(&self) -> usize {
        self.block + self.order - self.required
    }

    pub fn minor_size(&self) -> usize {
        self.rank_bound() + 1
    }

    /// True when `other` follows from `self` through
    /// `dim(E_b ∩ F_j') >= dim(E_a ∩ F_j) - (a - b)^+ - (j - j')^+`.
    pub fn implies(&self, other: &RankCondition) -> bool {
        let loss = self.block.saturating_sub(other.block) + self.order.saturating_sub(other.order);
        self.required >= other.required + loss
    }
}

/// The non-automatic rank conditions of `X_w`: pairs `(a_i, j)` with
/// `r_w(a_i, j) > max(0, a_i + j - n)`, minus those implied by another one.
pub fn condition_set(w: &Permutation, ft: &FlagType) -> Result<Vec<RankCondition>> {
    let all = raw_condition_set(w, ft)?;
    Ok(all
        .iter()
        .filter(|c| !all.iter().any(|d| d != *c && d.implies(c)))
        .copied()
        .collect())
}

/// All essential conditions before pruning implied ones.
pub fn raw_condition_set(w: &Permutation, ft: &FlagType) -> Result<Vec<RankCondition>> {
    ft.check(w)?;
    let n = ft.n();
    let mut all = Vec::new();
    for &block in ft.a() {
        for order in 1..=n {
            let required = w.rank(block, order);
            if required > (block + order).saturating_sub(n) {
                all.push(RankCondition {
                    block,
                    order,
                    required,
                });
            }
        }
    }
    Ok(all)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Nonzero minors of the given size, made primitive and deduplicated.
pub fn minors(matrix: &[Vec<MultiPoly>], size: usize) -> Result<Vec<MultiPoly>> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    if size == 0 || size > rows || size > cols {
        return Err(Error::Dimension(format!(
            "minor size {size} exceeds the {rows}x{cols} matrix"
        )));
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for rs in subsets(rows, size) {
        for cs in subsets(cols, size) {
            let sub: Vec<Vec<MultiPoly>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| matrix[r][c].clone()).collect())
                .collect();
            let d = det_poly(&sub)?;
            if d.is_zero() {
                continue;
            }
            let p = d.primitive();
            if seen.insert(p.to_string()) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

fn stacked_minors(
    c: &RankCondition,
    pattern: &CoordMatrix,
    nvars: usize,
    flag_rows: Vec<Vec<MultiPoly>>,
) -> Result<Vec<MultiPoly>> {
    if c.block > pattern.rows() {
        return Err(Error::Dimension(format!(
            "block {} exceeds the {} pattern rows",
            c.block,
            pattern.rows()
        )));
    }
    let mut stacked = pattern.to_polys(c.block, nvars);
    stacked.extend(flag_rows);
    minors(&stacked, c.minor_size())
}

/// Minors of size `1 + a_i + j - r` of the first `a_i` rows of `pattern`
/// stacked on `F_j(t)`.
pub fn condition_polynomials(
    c: &RankCondition,
    t: &Rational,
    pattern: &CoordMatrix,
) -> Result<Vec<MultiPoly>> {
    let nvars = pattern.variable_count();
    let flag: Vec<Vec<MultiPoly>> = osculating_matrix(t, c.order, pattern.cols())
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| MultiPoly::constant(nvars, x))
                .collect()
        })
        .collect();
    stacked_minors(c, pattern, nvars, flag)
}

/// Same as [`condition_polynomials`] with the osculation point kept as an
/// extra last variable `t`.
pub fn condition_polynomials_symbolic(
    c: &RankCondition,
    pattern: &CoordMatrix,
) -> Result<Vec<MultiPoly>> {
    let nvars = pattern.variable_count() + 1;
    let flag = osculating_matrix_symbolic(c.order, pattern.cols(), nvars, nvars - 1);
    stacked_minors(c, pattern, nvars, flag)
}

/// Decides whether the flag given by the rows of `matrix` (an `a_k × n`
/// numeric matrix whose first `a_i` rows span `E_{a_i}`) lies in the closed
/// Schubert variety `X_w(t)`.
pub fn membership_check_matrix(
    matrix: &[Vec<Rational>],
    w: &Permutation,
    ft: &FlagType,
    t: &Rational,
) -> Result<bool> {
    if matrix.len() != ft.top() || matrix.iter().any(|r| r.len() != ft.n()) {
        return Err(Error::Dimension(format!(
            "expected a {}x{} matrix",
            ft.top(),
            ft.n()
        )));
    }
    for c in condition_set(w, ft)? {
        let mut stacked: Vec<Vec<Rational>> = matrix[..c.block].to_vec();
        stacked.extend(osculating_matrix(t, c.order, ft.n()));
        if rank(&stacked) > c.rank_bound() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`membership_check_matrix`] for an assignment of the `M_ι` coordinates.
pub fn membership_check(
    values: &[Rational],
    chart: &CoordMatrix,
    w: &Permutation,
    ft: &FlagType,
    t: &Rational,
) -> Result<bool> {
    membership_check_matrix(&chart.instantiate(values)?, w, ft, t)
}
