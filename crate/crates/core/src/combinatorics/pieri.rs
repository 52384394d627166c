//! `a_i`-Bruhat order and the Pieri-type Λ-sets.
//!
//! Covers `u ⋖_{a_i} v` are the right multiplications `v = u·σ_{bc}` with
//! `b <= a_i < c` that raise the length by exactly one. The order `<_{a_i}`
//! is the transitive closure of these covers, decided by breadth-first
//! search inside `W^a`.

use std::collections::{BTreeMap, BTreeSet};

use super::{FlagType, Permutation, SchubertData};
use crate::error::{Error, Result};

/// All `v = w·σ_{bc}` with `b <= a_i < c` and `ℓ(v) = ℓ(w) + 1`.
pub fn ai_bruhat_covers(w: &Permutation, a_i: usize) -> Vec<Permutation> {
    let n = w.n();
    let len = w.length();
    let mut out = Vec::new();
    for b in 1..=a_i.min(n) {
        for c in a_i + 1..=n {
            // Swapping positions b < c raises the length by one exactly when
            // w(b) < w(c) and no position strictly between holds a value in
            // between.
            let (lo, hi) = (w.at(b), w.at(c));
            if lo > hi {
                continue;
            }
            if (b + 1..c).any(|k| lo < w.at(k) && w.at(k) < hi) {
                continue;
            }
            let v = w.swap_positions(b, c);
            debug_assert_eq!(v.length(), len + 1);
            out.push(v);
        }
    }
    out.sort();
    out
}

/// `Λ = { v ∈ W^a : w <_{a_i} v, ℓ(v) = ℓ(w) + m, #{l > a_i : v(l) ≠ w(l)} = m }`.
///
/// `m = 0` returns `{w}`.
pub fn pieri_lambda(
    ft: &FlagType,
    w: &Permutation,
    a_i: usize,
    m: usize,
) -> Result<BTreeSet<Permutation>> {
    ft.check(w)?;
    if !ft.a().contains(&a_i) {
        return Err(Error::InvalidFlagType(format!(
            "{a_i} is not a step of the flag type {ft}"
        )));
    }
    let mut frontier: BTreeSet<Permutation> = BTreeSet::from([w.clone()]);
    for _ in 0..m {
        let mut next = BTreeSet::new();
        for u in &frontier {
            next.extend(
                ai_bruhat_covers(u, a_i)
                    .into_iter()
                    .filter(|v| ft.contains(v)),
            );
        }
        frontier = next;
    }
    Ok(frontier
        .into_iter()
        .filter(|v| (a_i + 1..=ft.n()).filter(|&l| v.at(l) != w.at(l)).count() == m)
        .collect())
}

/// Counts chains from the identity to the longest element of `W^a`, applying
/// the `m = 1` Λ-set of each condition in turn. This is the degree of Schubert
/// data made of codimension-one Grassmannian conditions.
///
/// Returns `None` when some condition is not a length-one Grassmannian
/// permutation.
pub fn chain_count(data: &SchubertData) -> Result<Option<u128>> {
    let ft = data.flag_type();
    let mut steps = Vec::with_capacity(data.len());
    for w in data.conditions() {
        let dd = w.descent_data();
        match dd.delta {
            Some(d) if w.length() == 1 => steps.push(d),
            _ => return Ok(None),
        }
    }
    let mut layer: BTreeMap<Permutation, u128> =
        BTreeMap::from([(Permutation::identity(ft.n()), 1)]);
    for &a_i in &steps {
        let mut next: BTreeMap<Permutation, u128> = BTreeMap::new();
        for (u, count) in &layer {
            for v in pieri_lambda(ft, u, a_i, 1)? {
                *next.entry(v).or_default() += count;
            }
        }
        layer = next;
    }
    Ok(Some(layer.get(&ft.longest()).copied().unwrap_or(0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn brute_covers(w: &Permutation, a_i: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        for b in 1..=a_i {
            for c in a_i + 1..=w.n() {
                let v = w.swap_positions(b, c);
                if v.length() == w.length() + 1 {
                    out.push(v);
                }
            }
        }
        out.sort();
        out
    }

    fn all_perms(n: usize) -> Vec<Permutation> {
        FlagType::new((1..n).collect(), n).unwrap().enumerate_wa()
    }

    #[test]
    fn identity_s3() {
        let covers = ai_bruhat_covers(&Permutation::identity(3), 1);
        assert_eq!(covers, vec![p("213")]);
    }

    #[test]
    fn longest_has_no_covers() {
        let w0 = p("54321");
        for a in 1..5 {
            assert!(ai_bruhat_covers(&w0, a).is_empty());
        }
    }

    #[test]
    fn covers_match_brute_force_and_grow_prefix() {
        for n in 2..=5 {
            for w in all_perms(n) {
                for a in 1..n {
                    let covers = ai_bruhat_covers(&w, a);
                    assert_eq!(covers, brute_covers(&w, a));
                    let before = w.prefix_set(a);
                    for v in covers {
                        let after = v.prefix_set(a);
                        assert_ne!(before, after);
                        // Componentwise comparison of sorted subsets.
                        assert!(before.iter().zip(&after).all(|(x, y)| x <= y));
                    }
                }
            }
        }
    }

    #[test]
    fn lambda_zero_is_singleton() {
        let ft: FlagType = "2,3;5".parse().unwrap();
        let w = p("13245");
        assert_eq!(pieri_lambda(&ft, &w, 2, 0).unwrap(), BTreeSet::from([w]));
    }

    #[test]
    fn grassmannian_lambda() {
        let ft: FlagType = "2;4".parse().unwrap();
        let lam = pieri_lambda(&ft, &Permutation::identity(4), 2, 1).unwrap();
        assert_eq!(lam.len(), 1);
        assert_eq!(lam.into_iter().next().unwrap(), p("1324"));
    }

    #[test]
    fn lambda_properties() {
        let ft: FlagType = "1,3;5".parse().unwrap();
        for w in ft.enumerate_wa() {
            for &a in ft.a() {
                for m in 1..=3 {
                    for v in pieri_lambda(&ft, &w, a, m).unwrap() {
                        assert_eq!(v.length(), w.length() + m);
                        assert!(ft.contains(&v));
                        assert_ne!(v.prefix_set(a), w.prefix_set(a));
                    }
                }
            }
        }
    }

    #[test]
    fn chain_counts() {
        let four_lines = SchubertData::parse("2;4".parse().unwrap(), "1324^4").unwrap();
        assert_eq!(chain_count(&four_lines).unwrap(), Some(2));

        let fl235 = SchubertData::parse("2,3;5".parse().unwrap(), "13245^4 12435^4").unwrap();
        assert_eq!(chain_count(&fl235).unwrap(), Some(12));

        let space = SchubertData::parse("2,3;4".parse().unwrap(), "1324^3 1243^2").unwrap();
        assert_eq!(chain_count(&space).unwrap(), Some(2));

        let not_codim_one = SchubertData::parse("2,4;6".parse().unwrap(), "142536^4").unwrap();
        assert_eq!(chain_count(&not_codim_one).unwrap(), None);
    }

    #[test]
    fn chain_count_ignores_order() {
        let ft: FlagType = "2,3;5".parse().unwrap();
        let a = SchubertData::parse(
            ft.clone(),
            "13245 12435 13245 12435 13245 12435 13245 12435",
        )
        .unwrap();
        assert_eq!(chain_count(&a).unwrap(), Some(12));
    }
}
