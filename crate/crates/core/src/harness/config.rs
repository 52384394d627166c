use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{FlagType, Permutation, SchubertData};
use crate::error::{Error, Result};

pub const DEFAULT_SAMPLING_RANGE: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCount {
    pub permutation: String,
    pub count: usize,
}

/// One experiment: a Schubert problem, how often to sample it and where to
/// write the table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Flag type as `"a_1,...,a_k;n"`.
    pub flag_type: String,
    pub schubert_data: Vec<ConditionCount>,
    pub expected_degree: usize,
    pub iterations: u64,
    #[serde(default)]
    pub seed: u64,
    /// Size of a fixed point list drawn once per experiment; rounds then
    /// pick their points from it. Absent means the whole range.
    #[serde(default)]
    pub point_pool_size: Option<usize>,
    /// Points are integers in `[-B, B] \ {0}`.
    #[serde(default = "default_range")]
    pub sampling_range: u64,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
    #[serde(default = "default_workers")]
    pub worker_count: usize,
    #[serde(default)]
    pub step_budget: Option<u64>,
}

fn default_range() -> u64 {
    DEFAULT_SAMPLING_RANGE
}

fn default_workers() -> usize {
    1
}

impl ExperimentConfig {
    /// A config with defaults for everything but the problem.
    pub fn new(
        flag_type: &FlagType,
        counts: &[(Permutation, usize)],
        expected_degree: usize,
    ) -> Self {
        ExperimentConfig {
            flag_type: flag_type.to_string(),
            schubert_data: counts
                .iter()
                .map(|(w, c)| ConditionCount {
                    permutation: w.to_string(),
                    count: *c,
                })
                .collect(),
            expected_degree,
            iterations: 1,
            seed: 0,
            point_pool_size: None,
            sampling_range: DEFAULT_SAMPLING_RANGE,
            output_path: None,
            worker_count: 1,
            step_budget: None,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let cfg: Self = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn schubert_data(&self) -> Result<SchubertData> {
        let ft: FlagType = self.flag_type.parse()?;
        let counts = self
            .schubert_data
            .iter()
            .map(|c| Ok((c.permutation.parse::<Permutation>()?, c.count)))
            .collect::<Result<Vec<_>>>()?;
        SchubertData::from_counts(ft, &counts)
    }

    pub fn validate(&self) -> Result<()> {
        let data = self.schubert_data()?;
        if !data.is_valid() {
            return Err(Error::Config(format!(
                "lengths of {} sum to {}, not dim {} = {}",
                data.compact(),
                data.total_length(),
                data.flag_type(),
                data.flag_type().dimension()
            )));
        }
        if self.iterations == 0 {
            return Err(Error::Config("iterations must be at least 1".into()));
        }
        if self.expected_degree == 0 {
            return Err(Error::Config("expected_degree must be at least 1".into()));
        }
        if self.worker_count == 0 {
            return Err(Error::Config("worker_count must be at least 1".into()));
        }
        let available = self.sampling_range.saturating_mul(2);
        let m = data.len();
        if let Some(pool) = self.point_pool_size {
            if pool < m {
                return Err(Error::Config(format!(
                    "point_pool_size {pool} is smaller than the {m} points of a round"
                )));
            }
            if pool as u64 > available {
                return Err(Error::PoolExhausted {
                    requested: pool,
                    bound: self.sampling_range,
                });
            }
        } else if (m as u64) > available {
            return Err(Error::PoolExhausted {
                requested: m,
                bound: self.sampling_range,
            });
        }
        Ok(())
    }
}
