//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZero,

    #[error("residue symbol of zero constant is undefined")]
    ZeroConstantSymbol,

    #[error("euler criterion produced a non-constant or non-unit residue for deg P = {deg_p}: broken field arithmetic")]
    EulerCriterionBroken { deg_p: usize },

    #[error("zero location failed for q={q}, g={g}: found {found} of {expected} zeros after maximal refinement (P coeffs {p_coeffs:?})")]
    ZeroLocationFailure {
        q: u64,
        g: usize,
        found: usize,
        expected: usize,
        p_coeffs: Vec<u64>,
    },

    #[error("series shape mismatch: ({vars_a} vars, cap {cap_a}) vs ({vars_b} vars, cap {cap_b})")]
    ShapeMismatch {
        vars_a: usize,
        cap_a: usize,
        vars_b: usize,
        cap_b: usize,
    },

    #[error(
        "series order {given} too small for the k={k} residue: need total-degree cap >= {needed}"
    )]
    InsufficientOrder {
        k: usize,
        given: usize,
        needed: usize,
    },

    #[error("evaluation at a pole of zeta_A (s = {s})")]
    ZetaPole { s: String },

    #[error("shift {name} = {value} outside the admissible range {range}")]
    ShiftOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("quadrature did not converge: |I({n_hi}) - I({n_lo})| = {delta:.3e}")]
    QuadratureFailure {
        n_lo: usize,
        n_hi: usize,
        delta: f64,
    },

    #[error("ensemble budget exceeded: q^(2g+1) = {size} > {budget} monic polynomials (pass the override to proceed)")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("sweep failed after {completed_blocks} of {total_blocks} blocks: {source}")]
    SweepFailure {
        completed_blocks: usize,
        total_blocks: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
