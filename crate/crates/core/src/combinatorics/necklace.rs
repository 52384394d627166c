use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One bead of a necklace: the descent of a Grassmannian condition, or an
/// opaque letter standing for a non-Grassmannian one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Descent(usize),
    Opaque(char),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Descent(d) if *d < 10 => write!(f, "{d}"),
            Label::Descent(d) => write!(f, "({d})"),
            Label::Opaque(c) => write!(f, "{c}"),
        }
    }
}

pub fn parse_labels(s: &str) -> Result<Vec<Label>> {
    let mut out = Vec::new();
    let mut chars = s.trim().chars();
    while let Some(c) = chars.next() {
        let label = match c {
            '1'..='9' => Label::Descent(c.to_digit(10).unwrap() as usize),
            '(' => {
                let digits: String = chars.by_ref().take_while(|&c| c != ')').collect();
                Label::Descent(
                    digits
                        .parse()
                        .map_err(|e| Error::Parse(format!("necklace {s:?}: {e}")))?,
                )
            }
            c if c.is_ascii_alphabetic() => Label::Opaque(c),
            _ => return Err(Error::Parse(format!("necklace {s:?}: bad label {c:?}"))),
        };
        out.push(label);
    }
    if out.is_empty() {
        return Err(Error::Parse("empty necklace".into()));
    }
    Ok(out)
}

/// A circular label sequence up to rotation and reflection. Equality and
/// order compare canonical forms only.
#[derive(Clone, Debug)]
pub struct Necklace {
    canonical: Vec<Label>,
    labels: Vec<Label>,
}

impl PartialEq for Necklace {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl Eq for Necklace {}

impl std::hash::Hash for Necklace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical.hash(state);
    }
}

impl PartialOrd for Necklace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Necklace {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.canonical.cmp(&other.canonical)
    }
}

impl Necklace {
    /// Canonical representative: the lexicographic minimum over all rotations
    /// of the sequence and of its reversal.
    pub fn new(labels: Vec<Label>) -> Self {
        assert!(!labels.is_empty(), "necklace needs at least one label");
        let canonical = canonical_form(&labels);
        Self { canonical, labels }
    }

    pub fn canonical(&self) -> &[Label] {
        &self.canonical
    }

    /// The labels as originally supplied.
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical.is_empty()
    }

    /// True iff some rotation, in some orientation, is weakly increasing.
    /// Necklaces containing opaque labels are never monotone.
    pub fn is_monotone(&self) -> bool {
        if self.canonical.iter().any(|l| matches!(l, Label::Opaque(_))) {
            return false;
        }
        // Weakly increasing after a rotation means at most one circular
        // strict descent; the reversal is covered by counting ascents.
        let m = self.canonical.len();
        let l = &self.canonical;
        let drops = (0..m).filter(|&i| l[i] > l[(i + 1) % m]).count();
        let rises = (0..m).filter(|&i| l[i] < l[(i + 1) % m]).count();
        drops <= 1 || rises <= 1
    }

    /// Label multiset.
    pub fn content(&self) -> BTreeMap<Label, usize> {
        let mut out = BTreeMap::new();
        for l in &self.canonical {
            *out.entry(*l).or_default() += 1;
        }
        out
    }
}

impl PartialEq<str> for Necklace {
    fn eq(&self, other: &str) -> bool {
        other.parse::<Necklace>().is_ok_and(|n| n == *self)
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.canonical {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Necklace {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(Self::new(parse_labels(s)?))
    }
}

fn canonical_form(labels: &[Label]) -> Vec<Label> {
    let m = labels.len();
    let reversed: Vec<Label> = labels.iter().rev().copied().collect();
    let mut best: Option<Vec<Label>> = None;
    for seq in [labels, &reversed[..]] {
        for r in 0..m {
            let cand: Vec<Label> = seq[r..].iter().chain(&seq[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}

/// Canonical necklace of a label sequence.
pub fn necklace_canonical(labels: &[Label]) -> Necklace {
    Necklace::new(labels.to_vec())
}

/// Every bracelet over the given multiset, each once, sorted by canonical form.
pub fn enumerate_necklaces(content: &BTreeMap<Label, usize>) -> Vec<Necklace> {
    let total: usize = content.values().sum();
    assert!(total >= 1, "necklace needs at least one label");
    let mut remaining: Vec<(Label, usize)> = content.iter().map(|(l, c)| (*l, *c)).collect();
    let mut seen = BTreeSet::new();
    let mut cur = Vec::with_capacity(total);
    arrangements(&mut remaining, &mut cur, total, &mut |seq| {
        seen.insert(canonical_form(seq));
    });
    seen.into_iter().map(Necklace::new).collect()
}

/// Visits every distinct linear arrangement of a multiset.
fn arrangements(
    remaining: &mut [(Label, usize)],
    cur: &mut Vec<Label>,
    total: usize,
    visit: &mut dyn FnMut(&[Label]),
) {
    if cur.len() == total {
        visit(cur);
        return;
    }
    for k in 0..remaining.len() {
        if remaining[k].1 == 0 {
            continue;
        }
        remaining[k].1 -= 1;
        cur.push(remaining[k].0);
        arrangements(remaining, cur, total, visit);
        cur.pop();
        remaining[k].1 += 1;
    }
}
