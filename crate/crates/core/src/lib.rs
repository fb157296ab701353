//! Exact counting and asymptotics for Arndt-Carlitz compositions.
//!
//! An Arndt-Carlitz composition of `n` is a composition `n = σ₁ + … + σₖ`
//! whose parts satisfy the interleaved chain `σ₁ > σ₂ ≠ σ₃ > σ₄ ≠ σ₅ …`:
//! every odd-indexed part exceeds its successor and neighbouring parts
//! always differ.
//!
//! The crate computes the counting sequences three independent ways:
//!
//! * [`composition`] enumerates compositions directly (brute force),
//! * [`gf`] expands the closed-form generating functions built from the
//!   `α`/`β` sums over exact truncated power series ([`series`]),
//! * [`gf::slice_iteration_series`] runs the adding-a-slice recurrence on
//!   bivariate series.
//!
//! [`asymptotics`] locates the dominant pole `ρ` of the generating
//! functions at configurable decimal precision and derives the amplitude
//! constants of the exponential growth `C·ρ⁻ⁿ`.

pub mod asymptotics;
pub mod composition;
mod error;
pub mod gf;
pub mod real;
pub mod series;

pub use asymptotics::{amplitudes, find_rho, AsymptoticEstimate};
pub use composition::{
    count_brute_force, enumerate_compositions, is_arndt, is_arndt_carlitz, is_carlitz,
    list_arndt_carlitz, BruteForceLimit, Composition, Parity, ParityCounts,
};
pub use error::{Error, Result};
pub use gf::{SeriesBundle, Specialization};
pub use real::HighPrecisionReal;
pub use series::{BivariateSeries, TruncatedSeries};

/// Truncation order used when a caller does not pick one.
pub const DEFAULT_ORDER: usize = 64;
