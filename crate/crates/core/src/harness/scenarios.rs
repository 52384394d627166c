use serde::Serialize;

use super::experiment::assign_by_necklace;
use super::sampling::{round_rng, sample_points};
use crate::algebra::Rational;
use crate::combinatorics::{chain_count, FlagType, Necklace, Permutation, SchubertData};
use crate::error::{Error, Result};
use crate::model::{build_instance, build_instance_unchecked, membership_check_matrix};
use crate::solver::{solve_instance, QuotientDim, SolveOptions, SolveStatus};

/// Points of a "generic" instance are drawn from `[-GENERIC_RANGE, GENERIC_RANGE]`.
pub const GENERIC_RANGE: u64 = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    /// Pieri chain count, for data made of codimension-one conditions.
    pub chain_count: Option<u128>,
    pub quotient_dimension: Option<QuotientDim>,
    pub status: Option<SolveStatus>,
    pub real_count: Option<usize>,
    pub points: Vec<String>,
}

impl DegreeReport {
    /// The chain count when known, else the solved quotient dimension.
    pub fn degree(&self) -> Option<u128> {
        self.chain_count.or_else(|| {
            self.quotient_dimension
                .and_then(QuotientDim::finite)
                .map(|d| d as u128)
        })
    }
}

/// Degree of a Schubert problem. The generic instance is solved when the
/// chain count is unavailable or `always_solve` is set.
pub fn problem_degree(data: &SchubertData, seed: u64, always_solve: bool) -> Result<DegreeReport> {
    if !data.is_valid() {
        return Err(Error::InvalidSchubertData(format!(
            "lengths of {} sum to {}, not dim {}",
            data.compact(),
            data.total_length(),
            data.flag_type().dimension()
        )));
    }
    let chain = chain_count(data)?;
    let mut report = DegreeReport {
        chain_count: chain,
        quotient_dimension: None,
        status: None,
        real_count: None,
        points: Vec::new(),
    };
    if chain.is_some() && !always_solve {
        return Ok(report);
    }
    let points = sample_points(data.len(), GENERIC_RANGE, &mut round_rng(seed, 0))?;
    let inst = build_instance(data, &points)?;
    let res = solve_instance(
        &inst,
        None,
        &SolveOptions {
            seed,
            ..Default::default()
        },
    )?;
    report.quotient_dimension = res.quotient_dimension;
    report.status = Some(res.status);
    report.real_count = res.real_count;
    report.points = points.iter().map(|p| p.to_string()).collect();
    Ok(report)
}

/// A flag `E_1 ⊂ E_3` on `Fl(1,3;5)` lying in `X_32514(0)`, `X_21435(1/s)`
/// and `X_21435(1/t)`, as rows spanning `E_1` then `E_3`.
pub fn excess_witness(s: &Rational, t: &Rational) -> Vec<Vec<Rational>> {
    let z = || Rational::from_integer(0.into());
    let o = || Rational::from_integer(1.into());
    let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
    vec![
        vec![z(), z(), o(), q(3, 2) * (s + t), q(6, 1) * s * t],
        vec![z(), o(), z(), q(-3, 1) * s * t, z()],
        vec![z(), z(), z(), z(), o()],
    ]
}

/// Checks the witness at `(s, t)`; both must be nonzero.
pub fn check_excess_witness(s: &Rational, t: &Rational) -> Result<bool> {
    let ft: FlagType = "1,3;5".parse()?;
    let m = excess_witness(s, t);
    let w1: Permutation = "32514".parse()?;
    let w2: Permutation = "21435".parse()?;
    Ok(
        membership_check_matrix(&m, &w1, &ft, &Rational::from_integer(0.into()))?
            && membership_check_matrix(&m, &w2, &ft, &s.recip())?
            && membership_check_matrix(&m, &w2, &ft, &t.recip())?,
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

pub struct Scenario {
    pub name: &'static str,
    pub description: &'static str,
    run: fn(u64) -> Result<(bool, String)>,
}

impl Scenario {
    pub fn run(&self, seed: u64) -> ScenarioReport {
        let (passed, detail) = match (self.run)(seed) {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        ScenarioReport {
            name: self.name.to_string(),
            passed,
            detail,
        }
    }
}

pub fn builtin_scenarios() -> Vec<Scenario> {
    vec![
        Scenario {
            name: "four-lines",
            description: "1324^4 on Gr(2,4): chain count 2 equals the solver degree",
            run: |seed| degree_matches("2;4", "1324^4", 2, seed),
        },
        Scenario {
            name: "fl235-degree",
            description: "13245^4 12435^4 on Fl(2,3;5) has degree 12",
            run: |seed| degree_matches("2,3;5", "13245^4 12435^4", 12, seed),
        },
        Scenario {
            name: "fl234-separated",
            description: "1324^3 1243^2 on Fl(2,3;4) with separated points: 2 real",
            run: |seed| all_real("2,3;4", "1324^3 1243^2", "22233", 2, 5, seed),
        },
        Scenario {
            name: "fl235-monotone",
            description: "monotone instances of 13245^4 12435^4: 12 real",
            run: |seed| all_real("2,3;5", "13245^4 12435^4", "22223333", 12, 2, seed),
        },
        Scenario {
            name: "full-reality-142536",
            description: "142536^4 on Fl(2,4;6): 6 real",
            run: |seed| all_real("2,4;6", "142536^4", "AAAA", 6, 3, seed),
        },
        Scenario {
            name: "excess-witness",
            description: "32514 21435^2 on Fl(1,3;5) is nonempty and the witness checks",
            run: excess_scenario,
        },
    ]
}

pub fn run_scenarios(seed: u64, filter: Option<&str>) -> Vec<ScenarioReport> {
    builtin_scenarios()
        .iter()
        .filter(|s| filter.is_none_or(|f| s.name.contains(f)))
        .map(|s| s.run(seed))
        .collect()
}

fn data(ft: &str, sd: &str) -> Result<SchubertData> {
    SchubertData::parse(ft.parse()?, sd)
}

fn degree_matches(ft: &str, sd: &str, expected: u128, seed: u64) -> Result<(bool, String)> {
    let r = problem_degree(&data(ft, sd)?, seed, true)?;
    let qd = r
        .quotient_dimension
        .and_then(QuotientDim::finite)
        .map(|d| d as u128);
    let ok = r.chain_count == Some(expected) && qd == Some(expected);
    Ok((
        ok,
        format!(
            "chain count {:?}, quotient dimension {:?}",
            r.chain_count, qd
        ),
    ))
}

fn all_real(
    ft: &str,
    sd: &str,
    nk: &str,
    degree: usize,
    rounds: u64,
    seed: u64,
) -> Result<(bool, String)> {
    let sd = data(ft, sd)?;
    let nk: Necklace = nk.parse()?;
    let mut counts = Vec::new();
    for r in 0..rounds {
        let pts = sample_points(sd.len(), 1 << 16, &mut round_rng(seed, r))?;
        let inst = assign_by_necklace(&nk, &sd, &pts)?;
        let res = solve_instance(
            &inst,
            Some(degree),
            &SolveOptions {
                seed: r,
                ..Default::default()
            },
        )?;
        counts.push(if res.is_solved() {
            res.real_count
        } else {
            None
        });
    }
    let ok = counts.iter().all(|c| *c == Some(degree));
    Ok((ok, format!("real counts {counts:?}")))
}

fn excess_scenario(seed: u64) -> Result<(bool, String)> {
    let sd = data("1,3;5", "32514 21435^2")?;
    let mut statuses = Vec::new();
    for r in 0..3 {
        let pts = sample_points(3, 1 << 10, &mut round_rng(seed, r))?;
        let inst = build_instance_unchecked(&sd, &pts)?;
        statuses.push(solve_instance(&inst, None, &SolveOptions::default())?.status);
    }
    let mut witnessed = true;
    let mut rng = round_rng(seed, 99);
    for _ in 0..3 {
        let st = sample_points(2, 1 << 10, &mut rng)?;
        witnessed &= check_excess_witness(&st[0], &st[1])?;
    }
    let ok = witnessed && statuses.iter().all(|s| *s != SolveStatus::Inconsistent);
    Ok((ok, format!("statuses {statuses:?}, witness {witnessed}")))
}
