use serde::{Deserialize, Serialize};

use super::{
    eliminant_from_tables, groebner_with_budget, multiplication_tables, quotient_dimension,
};
use super::{QuotientDim, DEFAULT_STEP_BUDGET};
use crate::algebra::{MultiPoly, UniPoly};
use crate::error::Result;
use crate::model::Instance;

/// Fresh linear forms tried before an eliminant is declared failed.
pub const RETRY_CAP: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SolveStatus {
    Solved,
    NonTransverse,
    EliminantFailed,
    PositiveDimensional,
    Inconsistent,
    BudgetExhausted,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Solved => "Solved",
            SolveStatus::NonTransverse => "NonTransverse",
            SolveStatus::EliminantFailed => "EliminantFailed",
            SolveStatus::PositiveDimensional => "PositiveDimensional",
            SolveStatus::Inconsistent => "Inconsistent",
            SolveStatus::BudgetExhausted => "BudgetExhausted",
        }
    }
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Seed of the first linear form; retries use `seed + k`.
    pub seed: u64,
    pub budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: 0,
            budget: DEFAULT_STEP_BUDGET,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    /// `None` before the basis is known (budget exhausted).
    pub quotient_dimension: Option<QuotientDim>,
    pub eliminant: Option<UniPoly>,
    pub real_count: Option<usize>,
    pub status: SolveStatus,
    pub steps: u64,
}

/// Flat serializable summary of a [`SolveResult`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveRecord {
    pub status: SolveStatus,
    /// `null` for an infinite or unknown quotient.
    pub quotient_dimension: Option<usize>,
    pub eliminant_degree: Option<usize>,
    pub real_count: Option<usize>,
    pub steps: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eliminant: Option<String>,
}

impl SolveResult {
    pub fn is_solved(&self) -> bool {
        self.status == SolveStatus::Solved
    }

    pub fn record(&self, with_eliminant: bool) -> SolveRecord {
        SolveRecord {
            status: self.status,
            quotient_dimension: self.quotient_dimension.and_then(QuotientDim::finite),
            eliminant_degree: self.eliminant.as_ref().and_then(UniPoly::degree),
            real_count: self.real_count,
            steps: self.steps,
            eliminant: if with_eliminant {
                self.eliminant.as_ref().map(|e| e.to_string())
            } else {
                None
            },
        }
    }
}

pub fn solve_instance(
    inst: &Instance,
    expected_degree: Option<usize>,
    opts: &SolveOptions,
) -> Result<SolveResult> {
    solve_generators(inst.generators(), expected_degree, opts)
}

/// The pipeline on a bare generator list.
pub fn solve_generators(
    generators: &[MultiPoly],
    expected_degree: Option<usize>,
    opts: &SolveOptions,
) -> Result<SolveResult> {
    let gb = match groebner_with_budget(generators, opts.budget)? {
        Ok(gb) => gb,
        Err(e) => {
            return Ok(SolveResult {
                quotient_dimension: None,
                eliminant: None,
                real_count: None,
                status: SolveStatus::BudgetExhausted,
                steps: e.steps,
            })
        }
    };
    let steps = gb.steps();
    let qd = quotient_dimension(&gb);
    let mut result = SolveResult {
        quotient_dimension: Some(qd),
        eliminant: None,
        real_count: None,
        status: SolveStatus::Inconsistent,
        steps,
    };
    if gb.is_unit() {
        return Ok(result);
    }
    let d = match qd {
        QuotientDim::Infinite => {
            result.status = SolveStatus::PositiveDimensional;
            return Ok(result);
        }
        QuotientDim::Finite(d) => d,
    };
    let tables = multiplication_tables(&gb)?;
    let elim = eliminant_from_tables(&tables, gb.nvars(), opts.seed, RETRY_CAP)?;
    let squarefree = elim.poly.is_squarefree();
    let real_count = elim.poly.sturm_count()?;
    result.status = if !elim.full_degree {
        SolveStatus::EliminantFailed
    } else if !squarefree || expected_degree.is_some_and(|e| e != d) {
        SolveStatus::NonTransverse
    } else {
        SolveStatus::Solved
    };
    if result.status != SolveStatus::EliminantFailed {
        result.real_count = Some(real_count);
    }
    result.eliminant = Some(elim.poly);
    Ok(result)
}
