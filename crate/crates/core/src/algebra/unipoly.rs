use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Dense univariate polynomial over the rationals, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d.leading().ok_or(Error::ZeroPolynomial)?.clone();
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self::from_big(&primitive_ints(&to_ints(&self.coeffs)))
    }

    fn from_big(v: &[BigInt]) -> Self {
        Self::new(
            v.iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let (mut a, mut b) = (to_ints(&self.coeffs), to_ints(&other.coeffs));
        a = primitive_ints(&a);
        b = primitive_ints(&b);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = if r.is_empty() { r } else { primitive_ints(&r) };
        }
        Self::from_big(&primitive_ints(&a))
    }

    /// `p / gcd(p, p')`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.div_rem(&g)?;
        debug_assert!(r.is_zero());
        Ok(q.primitive())
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Number of distinct real roots via sign variations of the Sturm
    /// sequence at `-∞` and `+∞`.
    pub fn sturm_count(&self) -> Result<usize> {
        let seq = sturm_sequence(self)?;
        let at_pos: Vec<i8> = seq.iter().map(|p| sign(p.last().unwrap())).collect();
        let at_neg: Vec<i8> = seq
            .iter()
            .map(|p| {
                let s = sign(p.last().unwrap());
                if (p.len() - 1) % 2 == 1 {
                    -s
                } else {
                    s
                }
            })
            .collect();
        Ok(variations(&at_neg) - variations(&at_pos))
    }

    /// Distinct real roots in the half-open interval `(lo, hi]`.
    pub fn sturm_count_in(&self, lo: &Rational, hi: &Rational) -> Result<usize> {
        let seq = sturm_sequence(self)?;
        let signs_at = |x: &Rational| -> Vec<i8> {
            seq.iter()
                .map(|p| {
                    let v = p.iter().rev().fold(Rational::zero(), |acc, c| {
                        acc * x + Rational::from_integer(c.clone())
                    });
                    if v.is_zero() {
                        0
                    } else if v.is_positive() {
                        1
                    } else {
                        -1
                    }
                })
                .collect()
        };
        Ok(variations(&signs_at(lo)).saturating_sub(variations(&signs_at(hi))))
    }
}

/// Sturm sequence over the integers: `p, p', -prem(p_{k-1}, p_k), ...`, each
/// term divided by its positive content.
fn sturm_sequence(p: &UniPoly) -> Result<Vec<Vec<BigInt>>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p0 = primitive_ints_keep_sign(&to_ints(&p.coeffs));
    let mut seq = vec![p0];
    let d = p.derivative();
    if d.is_zero() {
        return Ok(seq);
    }
    seq.push(primitive_ints_keep_sign(&to_ints(&d.coeffs)));
    loop {
        let k = seq.len();
        let (a, b) = (&seq[k - 2], &seq[k - 1]);
        if b.len() == 1 {
            break;
        }
        let mut r = pseudo_rem(a, b);
        if r.is_empty() {
            break;
        }
        // prem multiplies by lc(b)^(deg a - deg b + 1); undo a negative factor.
        let delta = a.len() - b.len() + 1;
        let flip = b.last().unwrap().is_negative() && delta % 2 == 1;
        if !flip {
            for c in r.iter_mut() {
                *c = -&*c;
            }
        }
        seq.push(primitive_ints_keep_sign(&r));
    }
    Ok(seq)
}

fn sign(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn variations(signs: &[i8]) -> usize {
    let nz: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Clears denominators (positive scaling).
fn to_ints(c: &[Rational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for x in c {
        den = den.lcm(x.denom());
    }
    c.iter().map(|x| x.numer() * (&den / x.denom())).collect()
}

fn content(v: &[BigInt]) -> BigInt {
    super::gmp::content_big(v)
}

fn primitive_ints_keep_sign(v: &[BigInt]) -> Vec<BigInt> {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|c| c / &g).collect()
}

fn primitive_ints(v: &[BigInt]) -> Vec<BigInt> {
    let mut out = primitive_ints_keep_sign(v);
    if out.last().is_some_and(|c| c.is_negative()) {
        for c in out.iter_mut() {
            *c = -&*c;
        }
    }
    out
}

/// `lc(b)^(deg a - deg b + 1) · a mod b` over the integers, trimmed.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    if r.len() < b.len() {
        return trim(r);
    }
    let steps = r.len() - db;
    for k in (0..steps).rev() {
        let top = r[k + db].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        if !top.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                r[k + j] -= &top * bc;
            }
        }
        r.truncate(k + db);
    }
    trim(r)
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let coef = format!("{}/{}", c.numer(), c.denom());
                match k {
                    0 => coef,
                    1 => format!("{coef}*T"),
                    _ => format!("{coef}*T^{k}"),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}
