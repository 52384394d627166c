use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Permutation;
use crate::error::{Error, Result};

/// Type `a = (a_1 < ... < a_k)` of flags in `C^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlagType {
    a: Vec<usize>,
    n: usize,
}

impl FlagType {
    pub fn new(a: Vec<usize>, n: usize) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidFlagType("empty type".into()));
        }
        if a[0] == 0 || a.windows(2).any(|p| p[0] >= p[1]) || *a.last().unwrap() >= n {
            return Err(Error::InvalidFlagType(format!(
                "need 0 < a_1 < ... < a_k < n, got a={a:?}, n={n}"
            )));
        }
        Ok(Self { a, n })
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `a_k`, the number of rows of the coordinate matrices.
    pub fn top(&self) -> usize {
        *self.a.last().unwrap()
    }

    pub fn is_grassmannian(&self) -> bool {
        self.a.len() == 1
    }

    /// `sum_i (n - a_i)(a_i - a_{i-1})` with `a_0 = 0`.
    pub fn dimension(&self) -> usize {
        let mut prev = 0;
        let mut dim = 0;
        for &ai in &self.a {
            dim += (self.n - ai) * (ai - prev);
            prev = ai;
        }
        dim
    }

    pub fn contains(&self, w: &Permutation) -> bool {
        w.n() == self.n && w.descents().iter().all(|d| self.a.contains(d))
    }

    pub fn check(&self, w: &Permutation) -> Result<()> {
        if self.contains(w) {
            Ok(())
        } else {
            Err(Error::NotInWa {
                perm: w.to_string(),
                flag_type: self.to_string(),
            })
        }
    }

    /// All of `W^a` in lexicographic order.
    pub fn enumerate_wa(&self) -> Vec<Permutation> {
        let n = self.n;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n + 1];
        self.extend_wa(&mut cur, &mut used, &mut out);
        out
    }

    fn extend_wa(&self, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        let n = self.n;
        if cur.len() == n {
            out.push(Permutation::new(cur.clone()).expect("bijection by construction"));
            return;
        }
        let pos = cur.len();
        // Position `pos` (1-based) may be a descent only if it lies in `a`.
        let floor = match cur.last() {
            Some(&prev) if !self.a.contains(&pos) => prev,
            _ => 0,
        };
        for v in floor + 1..=n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                self.extend_wa(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }

    /// The longest element of `W^a`: the blocks take the largest values first.
    pub fn longest(&self) -> Permutation {
        let n = self.n;
        let mut bounds = vec![0];
        bounds.extend_from_slice(&self.a);
        bounds.push(n);
        let mut images = Vec::with_capacity(n);
        let mut hi = n;
        for blk in bounds.windows(2) {
            let size = blk[1] - blk[0];
            images.extend(hi - size + 1..=hi);
            hi -= size;
        }
        Permutation::new(images).expect("block permutation")
    }
}

impl fmt::Display for FlagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "{};{}", parts.join(","), self.n)
    }
}

impl FromStr for FlagType {
    type Err = Error;

    /// `"2,3;5"` is the type `(2,3)` in `C^5`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, n) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("flag type {s:?}: expected \"a1,...,ak;n\"")))?;
        let a = a
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("flag type {s:?}: {e}")))?;
        let n = n
            .trim()
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("flag type {s:?}: {e}")))?;
        Self::new(a, n)
    }
}

/// An ordered list of Schubert conditions on flags of a fixed type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchubertData {
    flag_type: FlagType,
    conditions: Vec<Permutation>,
}

impl SchubertData {
    /// Rejects conditions outside `W^a`; the length sum is checked separately
    /// by [`SchubertData::is_valid`].
    pub fn new(flag_type: FlagType, conditions: Vec<Permutation>) -> Result<Self> {
        if conditions.is_empty() {
            return Err(Error::InvalidSchubertData("no conditions".into()));
        }
        for w in &conditions {
            flag_type.check(w)?;
        }
        Ok(Self {
            flag_type,
            conditions,
        })
    }

    /// Builds data from `(permutation, repetition)` pairs.
    pub fn from_counts(flag_type: FlagType, counts: &[(Permutation, usize)]) -> Result<Self> {
        let conditions = counts
            .iter()
            .flat_map(|(w, c)| std::iter::repeat_n(w.clone(), *c))
            .collect();
        Self::new(flag_type, conditions)
    }

    /// Parses whitespace separated conditions with optional `^count`,
    /// e.g. `"13245^4 12435^4"`.
    pub fn parse(flag_type: FlagType, data: &str) -> Result<Self> {
        let mut counts = Vec::new();
        for tok in data.split_whitespace() {
            let (w, c) = match tok.split_once('^') {
                Some((w, c)) => (
                    w,
                    c.parse::<usize>()
                        .map_err(|e| Error::Parse(format!("{tok:?}: {e}")))?,
                ),
                None => (tok, 1),
            };
            counts.push((w.parse::<Permutation>()?, c));
        }
        Self::from_counts(flag_type, &counts)
    }

    pub fn flag_type(&self) -> &FlagType {
        &self.flag_type
    }

    pub fn conditions(&self) -> &[Permutation] {
        &self.conditions
    }

    pub fn len(&self) -> usize {
        self.conditions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conditions.is_empty()
    }

    pub fn total_length(&self) -> usize {
        self.conditions.iter().map(Permutation::length).sum()
    }

    /// True iff the lengths sum to the dimension of the flag manifold.
    pub fn is_valid(&self) -> bool {
        self.total_length() == self.flag_type.dimension()
    }

    /// Distinct conditions with their multiplicities, in first-seen order.
    pub fn counts(&self) -> Vec<(Permutation, usize)> {
        let mut out: Vec<(Permutation, usize)> = Vec::new();
        for w in &self.conditions {
            match out.iter_mut().find(|(v, _)| v == w) {
                Some((_, c)) => *c += 1,
                None => out.push((w.clone(), 1)),
            }
        }
        out
    }

    /// Compact form, `13245^4 12435^4`.
    pub fn compact(&self) -> String {
        self.counts()
            .iter()
            .map(|(w, c)| {
                if *c == 1 {
                    w.to_string()
                } else {
                    format!("{w}^{c}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Convenience wrapper matching the validation operation: rejects conditions
/// outside `W^a`, otherwise reports whether the lengths sum to `dim(a)`.
pub fn validate_schubert_data(ft: &FlagType, conditions: &[Permutation]) -> Result<bool> {
    Ok(SchubertData::new(ft.clone(), conditions.to_vec())?.is_valid())
}
