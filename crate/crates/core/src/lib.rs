//! Essential variables, simple minors and the arity gap of finite functions
//! `f: A^n -> B` with `A = {0..k}` and `B = {0..b}`.
//!
//! Functions are dense value tables indexed in big-endian mixed radix, so the
//! first coordinate is the most significant digit. Slots are 0-based in the
//! API and 1-based in every rendered string.
//!
//! ```
//! use aritygap::{arity_gap, classify, text};
//!
//! let maj = text::parse("2 3 2\n0 0 0 1 0 1 1 1").unwrap();
//! assert_eq!(arity_gap(&maj).unwrap().gap, 2);
//! assert_eq!(classify(&maj).unwrap().to_string(), "gap=2 tag=TernaryPattern pattern=000");
//! ```

pub mod analysis;
pub mod anf;
pub mod classify;
pub mod error;
pub mod function;
pub mod gap;
pub mod minors;
pub mod oddsupp;
pub mod oracle;
pub mod samples;
pub mod text;

pub use analysis::{
    diagonal_range, essential_part, essential_slots, essential_slots_on_diagonal, ess,
    is_essential, support_extension, DiagonalRestriction, EssentialityWitness, SupportExtension,
};
pub use anf::{anf, AnfPolynomial};
pub use classify::{
    classify, classify_boolean, classify_pseudo_boolean, ternary_pattern, Classification,
    Decomposition, Family, FamilyMatch, Tag, TernaryPattern,
};
pub use error::{Error, Result};
pub use function::{FiniteFunction, TupleCodec, Value};
pub use gap::{arity_gap, is_semiprojection, quasi_arity, unique_unary_support, GapReport, UnarySupport};
pub use minors::{
    diagonal, identification_minor, partition_minor, simple_minor, MinorMap, VariablePartition,
};
pub use oddsupp::{
    is_determined_by_oddsupp, is_restriction_determined_by_oddsupp, oddsupp, OddsuppProfile, Subset,
};
