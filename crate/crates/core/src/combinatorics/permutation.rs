use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}` in one-line notation, stored 1-indexed so
/// that `13245` reads exactly as written.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Permutation {
    images: Vec<usize>,
}

/// Descent set of a permutation together with its Grassmannian status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentData {
    pub descents: Vec<usize>,
    pub is_grassmannian: bool,
    /// The unique descent, when there is exactly one.
    pub delta: Option<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n < 2 {
            return Err(Error::InvalidPermutation(format!(
                "need n >= 2, got {images:?}"
            )));
        }
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 1..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `w(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (k, &v) in self.images.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Self { images: inv }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        (0..w.len())
            .map(|i| w[i + 1..].iter().filter(|&&x| x < w[i]).count())
            .sum()
    }

    /// Positions `i` (1-based) with `w(i) > w(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        self.images
            .windows(2)
            .enumerate()
            .filter(|(_, p)| p[0] > p[1])
            .map(|(k, _)| k + 1)
            .collect()
    }

    pub fn descent_data(&self) -> DescentData {
        let descents = self.descents();
        let is_grassmannian = descents.len() == 1;
        let delta = if is_grassmannian {
            Some(descents[0])
        } else {
            None
        };
        DescentData {
            descents,
            is_grassmannian,
            delta,
        }
    }

    /// `r_w(i, j) = #{ l <= i : j + w(l) > n }`.
    pub fn rank(&self, i: usize, j: usize) -> usize {
        let n = self.n();
        self.images[..i.min(n)]
            .iter()
            .filter(|&&v| j + v > n)
            .count()
    }

    /// Right multiplication by the transposition of positions `b` and `c`.
    pub fn swap_positions(&self, b: usize, c: usize) -> Self {
        let mut images = self.images.clone();
        images.swap(b - 1, c - 1);
        Self { images }
    }

    /// The set `{w(1), ..., w(k)}`, sorted.
    pub fn prefix_set(&self, k: usize) -> Vec<usize> {
        let mut s = self.images[..k].to_vec();
        s.sort_unstable();
        s
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.images {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Compact digits (`"13245"`) for `n <= 9`, comma separated otherwise.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let images: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::InvalidPermutation(format!("{s:?}: {e}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::InvalidPermutation(format!("{s:?}: bad digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Self::new(images)
    }
}

impl TryFrom<String> for Permutation {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Permutation> for String {
    fn from(p: Permutation) -> String {
        p.to_string()
    }
}
