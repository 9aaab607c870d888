//! Exact generating functions for divide-and-conquer sequences.
//!
//! The crate builds the truncated power series of six parametrised families
//! of sequences defined by binary digits, evaluates the parity-split
//! recurrences their coefficients satisfy, and checks the two
//! against each other, against Mahler-type functional equations and against
//! 2-rational (matrix product) representations. Everything is computed over
//! arbitrary-precision integers; there is no floating point anywhere.
//!
//! | module | contents |
//! |---|---|
//! | [`series`] | truncated series, polynomials, rational expansion |
//! | [`families`] | the six families and named members |
//! | [`recurrence`] | parity-split recurrence evaluation, binary digit statistics |
//! | [`mahler`] | functional equations and their verification |
//! | [`tworational`] | linear representations |
//! | [`fit`] | exhaustive family classification of sequences |
//! | [`dsl`] | expression language for generating functions |
//! | [`io_oeis`] | b-file parsing and comparison |

pub mod dsl;
pub mod families;
pub mod fit;
pub mod io_oeis;
pub mod mahler;
pub mod recurrence;
pub mod series;
pub mod tworational;

pub use families::{build_series, FamilyError, FamilyKind, FamilySpec, T6Convention};
pub use fit::{classify, FitMatch, FitReport, SearchBounds, SequenceSample};
pub use mahler::{check_equation, equation_for_family, MahlerEquation, Verification};
pub use recurrence::{eval_linear, eval_recurrence, family_recurrence, oracle_bit_stats, DCRecurrence, LinearRecurrence, Rule};
pub use series::{expand, Polynomial, RationalFunction, TruncatedSeries};
pub use tworational::{eval_linear_rep, rep_for_affine, LinearRepresentation};
