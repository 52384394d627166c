//! Exact arithmetic: rationals, sparse multivariate and dense univariate
//! polynomials, determinants, Sturm counting and rational linear algebra.

mod det;
pub(crate) mod gmp;
mod linalg;
mod monomial;
mod multipoly;
mod unipoly;

pub use det::{det_bareiss, det_laplace, det_poly};
pub use linalg::{exact_dependence, rank, Echelon};
pub use monomial::{Monomial, MAX_VARS};
pub use multipoly::{default_names, MultiPoly};
pub use unipoly::UniPoly;

/// Arbitrary precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let s = s.trim();
    let err = |e: String| crate::Error::Parse(format!("rational {s:?}: {e}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: num_bigint::BigInt = p.trim().parse().map_err(|e| err(format!("{e}")))?;
            let q: num_bigint::BigInt = q.trim().parse().map_err(|e| err(format!("{e}")))?;
            if num_traits::Zero::is_zero(&q) {
                return Err(err("zero denominator".into()));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(
            s.parse().map_err(|e| err(format!("{e}")))?,
        )),
    }
}
