use num_traits::{One, Zero};

use super::Rational;

/// Incremental row echelon form over the rationals. Each stored row keeps the
/// combination of input vectors that produced it, so the first dependence can
/// be reported with explicit coefficients.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<Rational>, Vec<Rational>)>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a vector. Returns `Some(coeffs)` with `Σ coeffs[k]·v_k = 0`
    /// (`coeffs[last] = 1`) when it depends on the vectors inserted so far.
    pub fn insert(&mut self, v: &[Rational]) -> Option<Vec<Rational>> {
        let idx = self.inserted;
        self.inserted += 1;
        let mut v = v.to_vec();
        let mut combo = vec![Rational::zero(); idx + 1];
        combo[idx] = Rational::one();
        for (pivot, row, rcombo) in &self.rows {
            let f = v[*pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
            for (x, r) in combo.iter_mut().zip(rcombo) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => Some(combo),
            Some(p) => {
                let inv = v[p].recip();
                for x in v.iter_mut() {
                    *x *= &inv;
                }
                for x in combo.iter_mut() {
                    *x *= &inv;
                }
                // Keep earlier rows reduced at the new pivot.
                for (_, row, rcombo) in self.rows.iter_mut() {
                    let f = row[p].clone();
                    if f.is_zero() {
                        continue;
                    }
                    for (x, r) in row.iter_mut().zip(&v) {
                        *x -= &f * r;
                    }
                    rcombo.resize(idx + 1, Rational::zero());
                    for (x, r) in rcombo.iter_mut().zip(&combo) {
                        *x -= &f * r;
                    }
                }
                self.rows.push((p, v, combo));
                None
            }
        }
    }
}

/// Finds the first index at which the prefix of `vectors` becomes linearly
/// dependent, with coefficients `c` such that `Σ_{k<=idx} c_k v_k = 0` and
/// `c_idx = 1`.
pub fn exact_dependence(vectors: &[Vec<Rational>]) -> Option<(usize, Vec<Rational>)> {
    let mut ech = Echelon::new();
    for (i, v) in vectors.iter().enumerate() {
        if let Some(c) = ech.insert(v) {
            return Some((i, c));
        }
    }
    None
}

/// Rank of a rational matrix given by rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    fn combine(vs: &[Vec<Rational>], c: &[Rational]) -> Vec<Rational> {
        let mut out = vec![q(0); vs[0].len()];
        for (vec, ck) in vs.iter().zip(c) {
            for (o, x) in out.iter_mut().zip(vec) {
                *o += ck * x;
            }
        }
        out
    }

    #[test]
    fn simple_dependence() {
        let vs = vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])];
        let (idx, c) = exact_dependence(&vs).unwrap();
        assert_eq!(idx, 2);
        assert_eq!(c, v(&[-1, -1, 1]));
    }

    #[test]
    fn zero_vector_is_dependent() {
        let vs = vec![v(&[1, 2, 3]), v(&[0, 0, 0])];
        let (idx, c) = exact_dependence(&vs).unwrap();
        assert_eq!(idx, 1);
        assert!(combine(&vs[..2], &c).iter().all(|x| x.is_zero()));
        assert!(exact_dependence(&[v(&[1, 0]), v(&[0, 1])]).is_none());
    }

    #[test]
    fn rank_of_matrix() {
        assert_eq!(rank(&[v(&[1, 2]), v(&[2, 4]), v(&[0, 1])]), 2);
        assert_eq!(rank(&[v(&[0, 0])]), 0);
    }

    proptest! {
        #[test]
        fn detects_constructed_combination(
            k in 1usize..5,
            seed in prop::collection::vec(-9i64..10, 40),
            mix in prop::collection::vec(-5i64..6, 5),
        ) {
            let dim = 6;
            // A triangular block guarantees the first k vectors are independent.
            let mut vs: Vec<Vec<Rational>> = (0..k)
                .map(|i| (0..dim).map(|j| {
                    if j == i { q(1) } else if j < i { q(0) } else { q(seed[i * dim + j]) }
                }).collect())
                .collect();
            let c: Vec<Rational> = mix[..k].iter().map(|&x| q(x)).collect();
            vs.push(combine(&vs, &c));
            let (idx, coeffs) = exact_dependence(&vs).unwrap();
            prop_assert_eq!(idx, k);
            prop_assert!(combine(&vs, &coeffs).iter().all(|x| x.is_zero()));
        }
    }
}
