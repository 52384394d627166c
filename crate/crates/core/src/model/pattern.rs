use std::fmt;

use crate::algebra::{MultiPoly, Rational};
use crate::combinatorics::{FlagType, Permutation};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entry {
    Zero,
    One,
    /// Free coordinate, numbered row-major from 0.
    Var(usize),
}

/// The `a_k × n` pattern of the Schubert cell coordinates `M_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Entry>,
    variable_count: usize,
    /// Variable index to (row, col), both 1-based.
    positions: Vec<(usize, usize)>,
}

impl CoordMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    /// Entry at 1-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> Entry {
        self.entries[(i - 1) * self.cols + (j - 1)]
    }

    /// 1-based `(row, col)` of a free variable.
    pub fn position(&self, var: usize) -> (usize, usize) {
        self.positions[var]
    }

    /// Polynomial matrix of the first `rows` rows in a ring of `nvars`
    /// variables (`nvars >= variable_count`).
    pub fn to_polys(&self, rows: usize, nvars: usize) -> Vec<Vec<MultiPoly>> {
        (1..=rows)
            .map(|i| {
                (1..=self.cols)
                    .map(|j| match self.entry(i, j) {
                        Entry::Zero => MultiPoly::zero(nvars),
                        Entry::One => MultiPoly::one(nvars),
                        Entry::Var(k) => MultiPoly::var(nvars, k),
                    })
                    .collect()
            })
            .collect()
    }

    /// Numeric matrix for an assignment of the free variables.
    pub fn instantiate(&self, values: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        if values.len() != self.variable_count {
            return Err(Error::Dimension(format!(
                "pattern has {} variables, got {} values",
                self.variable_count,
                values.len()
            )));
        }
        Ok((1..=self.rows)
            .map(|i| {
                (1..=self.cols)
                    .map(|j| match self.entry(i, j) {
                        Entry::Zero => Rational::from_integer(0.into()),
                        Entry::One => Rational::from_integer(1.into()),
                        Entry::Var(k) => values[k].clone(),
                    })
                    .collect()
            })
            .collect())
    }
}

impl fmt::Display for CoordMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.rows {
            let row: Vec<String> = (1..=self.cols)
                .map(|j| match self.entry(i, j) {
                    Entry::Zero => "0".to_string(),
                    Entry::One => "1".to_string(),
                    Entry::Var(_) => format!("x{i}{j}"),
                })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Builds `M_w`: `x_{i,w(i)} = 1`, and `x_{i,j} = 0` when `j < w(i)`, when
/// `w⁻¹(j) < i`, or when `a_l < i < w⁻¹(j) <= a_{l+1}` for some `l`.
pub fn coordinate_pattern(w: &Permutation, ft: &FlagType) -> Result<CoordMatrix> {
    ft.check(w)?;
    let n = ft.n();
    let rows = ft.top();
    let winv = w.inverse();
    let mut bounds = vec![0];
    bounds.extend_from_slice(ft.a());
    let mut entries = Vec::with_capacity(rows * n);
    let mut positions = Vec::new();
    for i in 1..=rows {
        for j in 1..=n {
            let wi = w.at(i);
            let pre = winv.at(j);
            let same_block_later = bounds
                .windows(2)
                .any(|b| b[0] < i && i < pre && pre <= b[1]);
            let e = if j == wi {
                Entry::One
            } else if j < wi || pre < i || same_block_later {
                Entry::Zero
            } else {
                positions.push((i, j));
                Entry::Var(positions.len() - 1)
            };
            entries.push(e);
        }
    }
    Ok(CoordMatrix {
        rows,
        cols: n,
        variable_count: positions.len(),
        entries,
        positions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displayed_example() {
        let ft: FlagType = "2,3,6;8".parse().unwrap();
        let w: Permutation = "25316748".parse().unwrap();
        let m = coordinate_pattern(&w, &ft).unwrap();
        let expect = "\
0 1 x13 x14 0 x16 x17 x18
0 0 0 0 1 x26 x27 x28
0 0 1 x34 0 x36 x37 x38
1 0 0 x44 0 0 0 x48
0 0 0 0 0 1 0 x58
0 0 0 0 0 0 1 x68
";
        assert_eq!(m.to_string(), expect);
        assert_eq!(m.variable_count(), 16);
        assert_eq!(m.variable_count(), ft.dimension() - w.length());
    }

    #[test]
    fn identity_chart() {
        let ft: FlagType = "2,3;5".parse().unwrap();
        let m = coordinate_pattern(&Permutation::identity(5), &ft).unwrap();
        assert_eq!(
            m.to_string(),
            "1 0 x13 x14 x15\n0 1 x23 x24 x25\n0 0 1 x34 x35\n"
        );
        assert_eq!(m.variable_count(), 8);
        assert_eq!(m.position(0), (1, 3));
        assert_eq!(m.position(7), (3, 5));
    }

    #[test]
    fn variable_counts_on_small_flags() {
        for t in ["2,3;5", "1,3;5", "2,4;6", "1,2,3;4"] {
            let ft: FlagType = t.parse().unwrap();
            for w in ft.enumerate_wa() {
                let m = coordinate_pattern(&w, &ft).unwrap();
                assert_eq!(m.variable_count() + w.length(), ft.dimension(), "{t} {w}");
            }
        }
    }

    #[test]
    fn rejects_outside_wa() {
        let ft: FlagType = "2;4".parse().unwrap();
        assert!(coordinate_pattern(&"2143".parse().unwrap(), &ft).is_err());
    }
}
