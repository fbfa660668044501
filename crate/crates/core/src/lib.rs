//! Quantitative testing semantics for the finite πI-calculus.
//!
//! Terms ([`syntax`]) are given a position-decorated transition system
//! ([`lts`]). Runs are enumerated up to homotopy and valued in a commutative
//! semiring ([`runs`], [`semiring`]). Simple terms and their exhaustive
//! pre-traces ([`algebra`]) lead to partial-order traces with readiness
//! ([`traces`]), which give normal forms used by the equivalence checker
//! ([`equivalence`]).

pub mod algebra;
pub mod equivalence;
pub mod error;
pub mod gen;
pub mod lts;
pub mod order;
pub mod runs;
pub mod semiring;
pub mod syntax;
pub mod traces;

pub use equivalence::{check_equiv, may_equiv, must_equiv, Status, Verdict};
pub use error::{Error, Result};
pub use lts::{reduct, transitions, Label, Position};
pub use order::Poset;
pub use runs::{outcome, runs, PreTrace, Run};
pub use semiring::{SemiringId, Value};
pub use traces::{decompose, implement_trace, extract_trace, sync_count, LinearCombination, Trace};
pub use syntax::{elaborate, parse_term, print_term, Action, Name, Polarity, Term};
