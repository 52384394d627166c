//! Gröbner bases, eliminants and the per-instance verdict.

mod eliminant;
mod groebner;
mod solve;

pub use eliminant::{
    eliminant, eliminant_from_tables, form_poly, minimal_polynomial, multiplication_tables,
    quotient_dimension, random_form, standard_monomials, Eliminant, MultiplicationTables,
    QuotientDim,
};
pub use groebner::{
    groebner, groebner_with_budget, BudgetExhausted, GroebnerBasis, DEFAULT_STEP_BUDGET,
};
pub use solve::{
    solve_generators, solve_instance, SolveOptions, SolveRecord, SolveResult, SolveStatus,
    RETRY_CAP,
};
