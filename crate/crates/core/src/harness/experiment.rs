use std::fs;
use std::path::{Path, PathBuf};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::sampling::{round_rng, sample_from_pool, sample_points};
use super::table::{FrequencyTable, MonotoneViolation};
use crate::algebra::Rational;
use crate::combinatorics::{enumerate_necklaces, Label, Necklace, Permutation, SchubertData};
use crate::error::{Error, Result};
use crate::model::{build_instance, condition_labels, Instance};
use crate::solver::{solve_instance, SolveOptions, SolveRecord, DEFAULT_STEP_BUDGET};

/// Places the condition carrying the `i`-th label of the canonical necklace
/// at the `i`-th smallest point.
pub fn assign_by_necklace(
    nk: &Necklace,
    sd: &SchubertData,
    points: &[Rational],
) -> Result<Instance> {
    let labels = condition_labels(sd);
    if nk.len() != labels.len() || points.len() != labels.len() {
        return Err(Error::NecklaceMismatch(format!(
            "{nk} has {} labels, {} conditions, {} points",
            nk.len(),
            labels.len(),
            points.len()
        )));
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    let mut used = vec![false; labels.len()];
    let mut conditions: Vec<Permutation> = Vec::with_capacity(labels.len());
    for l in nk.canonical() {
        let k = (0..labels.len())
            .find(|&k| !used[k] && labels[k] == *l)
            .ok_or_else(|| {
                Error::NecklaceMismatch(format!("{nk} does not match {}", sd.compact()))
            })?;
        used[k] = true;
        conditions.push(sd.conditions()[k].clone());
    }
    let data = SchubertData::new(sd.flag_type().clone(), conditions)?;
    build_instance(&data, &sorted)
}

/// One round's points and the outcome for every necklace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundOutcome {
    pub round: u64,
    pub points: Vec<String>,
    pub results: Vec<(String, SolveRecord)>,
}

/// A configured experiment, ready to solve rounds.
pub struct Experiment {
    cfg: ExperimentConfig,
    data: SchubertData,
    necklaces: Vec<Necklace>,
    pool: Option<Vec<Rational>>,
}

impl Experiment {
    pub fn new(cfg: ExperimentConfig) -> Result<Self> {
        cfg.validate()?;
        let data = cfg.schubert_data()?;
        let mut content = std::collections::BTreeMap::<Label, usize>::new();
        for l in condition_labels(&data) {
            *content.entry(l).or_insert(0) += 1;
        }
        let necklaces = enumerate_necklaces(&content);
        // The pool gets a stream of its own, disjoint from every round.
        let pool = match cfg.point_pool_size {
            Some(k) => Some(sample_points(
                k,
                cfg.sampling_range,
                &mut round_rng(cfg.seed, u64::MAX),
            )?),
            None => None,
        };
        Ok(Experiment {
            cfg,
            data,
            necklaces,
            pool,
        })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.cfg
    }

    pub fn necklaces(&self) -> &[Necklace] {
        &self.necklaces
    }

    pub fn data(&self) -> &SchubertData {
        &self.data
    }

    pub fn problem_name(&self) -> String {
        format!("{} on Fl({})", self.data.compact(), self.data.flag_type())
    }

    pub fn empty_table(&self) -> FrequencyTable {
        FrequencyTable::new(
            &self.problem_name(),
            self.cfg.expected_degree,
            &self.necklaces,
        )
    }

    /// Points of round `round`, sorted ascending.
    pub fn round_points(&self, round: u64) -> Result<Vec<Rational>> {
        self.round_points_with(&mut round_rng(self.cfg.seed, round))
    }

    /// Solves every necklace at the round's points. Pure in `(config, round)`.
    pub fn solve_round(&self, round: u64) -> Result<RoundOutcome> {
        // Linear-form seeds come after the points in the same stream.
        let mut rng = round_rng(self.cfg.seed, round);
        let points = self.round_points_with(&mut rng)?;
        let mut results = Vec::with_capacity(self.necklaces.len());
        for nk in &self.necklaces {
            let opts = SolveOptions {
                seed: rng.gen(),
                budget: self.cfg.step_budget.unwrap_or(DEFAULT_STEP_BUDGET),
            };
            let inst = assign_by_necklace(nk, &self.data, &points)?;
            let res = solve_instance(&inst, Some(self.cfg.expected_degree), &opts)?;
            results.push((nk.to_string(), res.record(false)));
        }
        Ok(RoundOutcome {
            round,
            points: points.iter().map(|p| p.to_string()).collect(),
            results,
        })
    }

    fn round_points_with(&self, rng: &mut impl Rng) -> Result<Vec<Rational>> {
        let m = self.data.len();
        match &self.pool {
            Some(pool) => sample_from_pool(pool, m, rng),
            None => sample_points(m, self.cfg.sampling_range, rng),
        }
    }

    /// Solves the given rounds, concurrently when the `parallel` feature is
    /// on and more than one worker is configured. Output is in round order.
    pub fn solve_rounds(&self, rounds: std::ops::Range<u64>) -> Result<Vec<RoundOutcome>> {
        #[cfg(feature = "parallel")]
        if self.cfg.worker_count > 1 {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.cfg.worker_count)
                .build()
                .map_err(|e| Error::Config(e.to_string()))?;
            return pool.install(|| {
                rounds
                    .into_par_iter()
                    .map(|r| self.solve_round(r))
                    .collect()
            });
        }
        rounds.map(|r| self.solve_round(r)).collect()
    }
}

/// Sidecar of the CSV checkpoint: everything needed to resume.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub config: ExperimentConfig,
    pub next_round: u64,
    pub table: FrequencyTable,
}

pub fn sidecar_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".state.json");
    PathBuf::from(s)
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Writes the CSV and its sidecar, each through a temporary file.
pub fn save_checkpoint(output: &Path, cp: &Checkpoint) -> Result<()> {
    if let Some(dir) = output.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    write_atomic(&sidecar_path(output), &serde_json::to_string_pretty(cp)?)?;
    write_atomic(output, &cp.table.to_csv())
}

/// Loads the checkpoint stored next to `output` (or `output` itself when it
/// is the sidecar).
pub fn load_checkpoint(output: &Path) -> Result<Checkpoint> {
    let path = if output.to_string_lossy().ends_with(".state.json") {
        output.to_path_buf()
    } else {
        sidecar_path(output)
    };
    let text = fs::read_to_string(&path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Sees each merged round and the monotone violations it produced.
pub type RoundCallback<'a> = dyn FnMut(&RoundOutcome, &[MonotoneViolation]) + 'a;

/// Knobs for [`run_experiment_with`].
#[derive(Default)]
pub struct RunControl<'a> {
    /// Continue from the checkpoint at the configured output path if one
    /// exists.
    pub resume: bool,
    /// Stop after this many rounds in total, leaving the rest for a resume.
    pub stop_after: Option<u64>,
    /// Called after each merged round.
    pub on_round: Option<&'a mut RoundCallback<'a>>,
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<FrequencyTable> {
    run_experiment_with(cfg, RunControl::default())
}

/// Runs the configured rounds, merging them in round order and writing a
/// checkpoint after each one.
pub fn run_experiment_with(
    cfg: &ExperimentConfig,
    mut ctl: RunControl<'_>,
) -> Result<FrequencyTable> {
    let exp = Experiment::new(cfg.clone())?;
    let output = cfg.output_path.clone();
    let (mut table, mut next) = match (&output, ctl.resume) {
        (Some(out), true) if sidecar_path(out).exists() => {
            let cp = load_checkpoint(out)?;
            check_resumable(&cp.config, cfg)?;
            (cp.table, cp.next_round)
        }
        _ => (exp.empty_table(), 0),
    };
    let end = ctl
        .stop_after
        .map_or(cfg.iterations, |s| s.min(cfg.iterations));
    let chunk = cfg.worker_count.max(1) as u64;
    while next < end {
        let upto = (next + chunk).min(end);
        for outcome in exp.solve_rounds(next..upto)? {
            let mut flagged = Vec::new();
            for (key, rec) in &outcome.results {
                let nk: Necklace = key.parse()?;
                if let Some(v) = table.record(&nk, rec, outcome.round, &outcome.points) {
                    flagged.push(v);
                }
            }
            table.rounds += 1;
            next = outcome.round + 1;
            if let Some(out) = &output {
                save_checkpoint(
                    out,
                    &Checkpoint {
                        config: cfg.clone(),
                        next_round: next,
                        table: table.clone(),
                    },
                )?;
            }
            if let Some(cb) = ctl.on_round.as_mut() {
                cb(&outcome, &flagged);
            }
        }
    }
    Ok(table)
}

/// A checkpoint may be resumed under a config that differs only in the
/// iteration count, worker count or output path.
fn check_resumable(saved: &ExperimentConfig, cfg: &ExperimentConfig) -> Result<()> {
    let mut a = saved.clone();
    let mut b = cfg.clone();
    for c in [&mut a, &mut b] {
        c.iterations = 0;
        c.worker_count = 1;
        c.output_path = None;
    }
    if a != b {
        return Err(Error::Config(
            "checkpoint was written for a different problem, seed or sampling".into(),
        ));
    }
    Ok(())
}
