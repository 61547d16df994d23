//! Generalized Zeckendorf decompositions for positive linear recurrences,
//! exact gap censuses over `[G_n, G_{n+1})`, the limiting gap laws and
//! spectral constants of the Kangaroo family, and Alpert's far-difference
//! (signed Fibonacci) representations.
//!
//! All counting is exact (arbitrary-precision integers and rationals);
//! floating point enters only for root finding, the limiting laws, and
//! report rendering. The float layer is generic over [`real::Real`]
//! (`f32` or `f64`); the `*64` aliases at the crate root fix `f64`.

pub mod error;
pub mod fardiff;
pub mod gap_census;
pub mod real;
pub mod recurrence;
pub mod report;
pub mod spectral;
pub mod zeckendorf;

pub use error::{Error, Result};
pub use fardiff::{far_census, far_decompose, far_theory, is_far_legal, s_table, FarDiffTable, SignedDecomposition};
pub use gap_census::{census_enumerate, census_exact, compare, gaps_of, theory_distribution, CensusReport, GapHistogram};
pub use real::Real;
pub use recurrence::{kangaroo_spec, KangarooParams, RecurrenceSpec, SequenceTable};
pub use zeckendorf::{greedy_decompose, is_legal, recompose, Decomposition, DEFAULT_ENUM_CAP};

/// Double-precision limiting gap distribution.
pub type TheoryDistribution64 = gap_census::TheoryDistribution<f64>;
/// Double-precision spectral summary.
pub type SpectralSummary64 = spectral::SpectralSummary<f64>;
/// Double-precision `P(g)` candidate pair.
pub type PgCandidates64 = gap_census::PgCandidates<f64>;
