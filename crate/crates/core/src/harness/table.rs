use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::combinatorics::Necklace;
use crate::solver::{SolveRecord, SolveStatus};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecklaceRow {
    /// Real solution count to occurrences.
    pub counts: BTreeMap<usize, u64>,
    pub set_aside: u64,
    pub set_aside_by_status: BTreeMap<SolveStatus, u64>,
}

impl NecklaceRow {
    pub fn total(&self) -> u64 {
        self.counts.values().sum::<u64>() + self.set_aside
    }
}

/// A monotone necklace whose instance had fewer real solutions than the
/// degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneViolation {
    pub round: u64,
    pub necklace: String,
    pub real_count: usize,
    pub points: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencyTable {
    pub problem: String,
    pub degree: usize,
    pub rows: BTreeMap<String, NecklaceRow>,
    pub rounds: u64,
    pub total_instances: u64,
    #[serde(default)]
    pub violations: Vec<MonotoneViolation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Text,
}

impl std::str::FromStr for ReportFormat {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "text" | "txt" => Ok(ReportFormat::Text),
            _ => Err(crate::error::Error::Parse(format!(
                "unknown report format {s:?}"
            ))),
        }
    }
}

impl FrequencyTable {
    pub fn new<'a>(
        problem: &str,
        degree: usize,
        necklaces: impl IntoIterator<Item = &'a Necklace>,
    ) -> Self {
        FrequencyTable {
            problem: problem.to_string(),
            degree,
            rows: necklaces
                .into_iter()
                .map(|n| (n.to_string(), NecklaceRow::default()))
                .collect(),
            rounds: 0,
            total_instances: 0,
            violations: Vec::new(),
        }
    }

    /// Tallies one instance. Returns the violation when a monotone necklace
    /// came out with fewer real solutions than the degree.
    pub fn record(
        &mut self,
        necklace: &Necklace,
        outcome: &SolveRecord,
        round: u64,
        points: &[String],
    ) -> Option<MonotoneViolation> {
        self.total_instances += 1;
        let row = self.rows.entry(necklace.to_string()).or_default();
        match (outcome.status, outcome.real_count) {
            (SolveStatus::Solved, Some(r)) => {
                *row.counts.entry(r).or_insert(0) += 1;
                if necklace.is_monotone() && r < self.degree {
                    let v = MonotoneViolation {
                        round,
                        necklace: necklace.to_string(),
                        real_count: r,
                        points: points.to_vec(),
                    };
                    self.violations.push(v.clone());
                    return Some(v);
                }
            }
            (status, _) => {
                row.set_aside += 1;
                *row.set_aside_by_status.entry(status).or_insert(0) += 1;
            }
        }
        None
    }

    /// Real-count columns `d mod 2, d mod 2 + 2, ..., d`.
    pub fn columns(&self) -> Vec<usize> {
        (self.degree % 2..=self.degree).step_by(2).collect()
    }

    /// Necklaces with the monotone ones first, then lexicographic.
    pub fn sorted_necklaces(&self) -> Vec<&str> {
        let mut keys: Vec<&str> = self.rows.keys().map(String::as_str).collect();
        keys.sort_by_key(|k| (!is_monotone_key(k), *k));
        keys
    }

    /// Every row sums to the number of completed rounds.
    pub fn is_conserved(&self) -> bool {
        self.rows.values().all(|r| r.total() == self.rounds)
    }

    /// Every recorded count has the parity of the degree.
    pub fn parity_holds(&self) -> bool {
        self.rows
            .values()
            .flat_map(|r| r.counts.keys())
            .all(|c| c % 2 == self.degree % 2)
    }

    pub fn report(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Csv => self.to_csv(),
            ReportFormat::Text => self.to_text(),
        }
    }

    pub fn to_csv(&self) -> String {
        let cols = self.columns();
        let mut out = String::from("necklace");
        for c in &cols {
            write!(out, ",{c}").unwrap();
        }
        out.push_str(",set_aside\n");
        for key in self.sorted_necklaces() {
            let row = &self.rows[key];
            out.push_str(key);
            for c in &cols {
                write!(out, ",{}", row.counts.get(c).copied().unwrap_or(0)).unwrap();
            }
            writeln!(out, ",{}", row.set_aside).unwrap();
        }
        out
    }

    pub fn to_text(&self) -> String {
        let cols = self.columns();
        let name_w = self
            .rows
            .keys()
            .map(String::len)
            .chain(["Necklace".len()])
            .max()
            .unwrap();
        let cell_w = self
            .rows
            .values()
            .flat_map(|r| r.counts.values().chain([&r.set_aside]))
            .map(|v| v.to_string().len())
            .chain(cols.iter().map(|c| c.to_string().len()))
            .max()
            .unwrap_or(1)
            .max(3);
        let mut out = String::new();
        writeln!(
            out,
            "{}: degree {}, {} rounds, {} instances",
            self.problem, self.degree, self.rounds, self.total_instances
        )
        .unwrap();
        write!(out, "{:<name_w$}", "Necklace").unwrap();
        for c in &cols {
            write!(out, "  {c:>cell_w$}").unwrap();
        }
        writeln!(out, "  {:>9}", "set aside").unwrap();
        for key in self.sorted_necklaces() {
            let row = &self.rows[key];
            write!(out, "{key:<name_w$}").unwrap();
            for c in &cols {
                write!(
                    out,
                    "  {:>cell_w$}",
                    row.counts.get(c).copied().unwrap_or(0)
                )
                .unwrap();
            }
            writeln!(out, "  {:>9}", row.set_aside).unwrap();
        }
        if !self.violations.is_empty() {
            writeln!(
                out,
                "WARNING: {} monotone instance(s) with fewer than {} real solutions",
                self.violations.len(),
                self.degree
            )
            .unwrap();
            for v in &self.violations {
                writeln!(
                    out,
                    "  round {} necklace {}: {} real at points [{}]",
                    v.round,
                    v.necklace,
                    v.real_count,
                    v.points.join(", ")
                )
                .unwrap();
            }
        }
        out
    }
}

fn is_monotone_key(key: &str) -> bool {
    key.parse::<Necklace>()
        .map(|n| n.is_monotone())
        .unwrap_or(false)
}
