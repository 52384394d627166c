//! Conversions to GMP integers for the arithmetic-heavy inner loops.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use rug::integer::Order;
use rug::Integer;

pub fn to_gmp(x: &BigInt) -> Integer {
    let (sign, digits) = x.to_u64_digits();
    let v = Integer::from_digits(&digits, Order::Lsf);
    if sign == Sign::Minus {
        -v
    } else {
        v
    }
}

pub fn from_gmp(x: &Integer) -> BigInt {
    let sign = match x.cmp0() {
        Ordering::Less => Sign::Minus,
        Ordering::Equal => return BigInt::default(),
        Ordering::Greater => Sign::Plus,
    };
    let mut words = Vec::new();
    for d in x.to_digits::<u64>(Order::Lsf) {
        words.push(d as u32);
        words.push((d >> 32) as u32);
    }
    BigInt::new(sign, words)
}

/// Non-negative gcd of a slice, 0 for an all-zero slice.
pub fn content_gmp<'a>(it: impl IntoIterator<Item = &'a Integer>) -> Integer {
    let mut g = Integer::new();
    for c in it {
        g.gcd_mut(c);
        if g == 1 {
            break;
        }
    }
    g
}

/// [`content_gmp`] for `BigInt` input.
pub fn content_big(v: &[BigInt]) -> BigInt {
    let g: Vec<Integer> = v.iter().map(to_gmp).collect();
    from_gmp(&content_gmp(&g))
}
