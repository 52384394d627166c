use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Monomial, MultiPoly, Rational};

/// Falling factorial `e (e-1) ... (e-k+1)`.
fn falling(e: usize, k: usize) -> BigInt {
    (e + 1 - k..=e).fold(BigInt::one(), |acc, x| acc * BigInt::from(x))
}

/// Rows `γ(t), γ'(t), ..., γ^{(j-1)}(t)` of the curve
/// `γ(t) = (t^{n-1}, ..., t, 1)`; their span is `F_j(t)`.
pub fn osculating_matrix(t: &Rational, j: usize, n: usize) -> Vec<Vec<Rational>> {
    assert!(1 <= j && j <= n, "need 1 <= j <= n");
    (0..j)
        .map(|k| {
            (0..n)
                .map(|c| {
                    let e = n - 1 - c;
                    if e < k {
                        Rational::zero()
                    } else {
                        Rational::from_integer(falling(e, k)) * num_traits::pow(t.clone(), e - k)
                    }
                })
                .collect()
        })
        .collect()
}

/// The same rows with `t` kept as the variable `t_var` of a ring with
/// `nvars` variables.
pub fn osculating_matrix_symbolic(
    j: usize,
    n: usize,
    nvars: usize,
    t_var: usize,
) -> Vec<Vec<MultiPoly>> {
    (0..j)
        .map(|k| {
            (0..n)
                .map(|c| {
                    let e = n - 1 - c;
                    if e < k {
                        MultiPoly::zero(nvars)
                    } else {
                        MultiPoly::monomial(
                            nvars,
                            Monomial::var_pow(t_var, (e - k) as u8),
                            Rational::from_integer(falling(e, k)),
                        )
                    }
                })
                .collect()
        })
        .collect()
}
