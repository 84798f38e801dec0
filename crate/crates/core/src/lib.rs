//! Exact computational kernels for finitely presented groups.
//!
//! The crate is organised around a pipeline: parse a presentation
//! ([`words`]), enumerate cosets of a finite-index subgroup ([`coset`]),
//! build nested chains of p-power-index subgroups ([`chains`]), and compute
//! first-cohomology dimensions through Fox derivatives ([`fox`],
//! [`cohomology`]) with exact integer linear algebra ([`linalg`]).  On top
//! of that sit the normalized Betti approximants and closed-form bounds
//! ([`betti`]), finite group-ring criteria ([`groupring`]) and girth
//! certificates ([`girth`]).
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals
//! throughout, no floating point.  Every public operation is deterministic;
//! identical inputs produce identical outputs across runs and platforms.

pub mod betti;
pub mod chains;
pub mod cohomology;
pub mod coset;
pub mod fox;
pub mod girth;
pub mod groupring;
pub mod linalg;
pub mod ratio;
pub mod words;

pub use words::{Letter, Order, Presentation, Word};
