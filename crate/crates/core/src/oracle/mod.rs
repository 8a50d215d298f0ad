//! Reference implementations, instance generators and theorem sweeps.

pub mod brute;
pub mod generate;
pub mod verify;

pub use brute::{
    brute_ess, brute_minor, off_diagonal_count, oracle_gap, oracle_quasi_arity,
    oracle_quasi_arity_with_budget, set_partitions, DEFAULT_ORACLE_BUDGET,
};
pub use generate::{
    enumerate, enumerate_with_budget, function_at, gen_nonconstant_unary, gen_oddsupp_determined,
    gen_quasi_m_ary, gen_salomaa, gen_ternary_pattern, gen_with_support, random_function,
    sample_function, sample_functions, space_size,
};
pub use verify::{
    budget_from_env, check, replay, verify, Failure, Filter, Outcome, SweepMode, SweepSpec,
    Theorem, VerificationReport, DEFAULT_SWEEP_BUDGET,
};
