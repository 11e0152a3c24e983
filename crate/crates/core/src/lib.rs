//! Numerical semigroups, their weights and dualizing sets, and the value
//! semigroups of singular rational curves.
//!
//! A *numerical semigroup* is a cofinite subset of the natural numbers that
//! contains 0 and is closed under addition. Throughout the crate we write
//! `g` for its genus (the number of gaps), `c` for its conductor (the least
//! element from which every integer onward is a member), `m` for its
//! multiplicity (the least positive member), and `W` for its weight (the sum
//! of `gap_i - i` over gaps indexed from 1).
//!
//! The crate has two halves:
//!
//! * Combinatorics of semigroups: construction from generators, the tree of
//!   all semigroups ordered by genus ([`tree`]), gap tableaux and Dyck paths
//!   ([`tableau`]), dualizing K-sets and weights ([`numset`]), and exhaustive
//!   verification scans over genus ranges ([`verify`]).
//! * Local analysis of a rational curve given by a polynomial
//!   parametrization: its value semigroup, pencils and gonality bounds,
//!   double-cover detection, and containment in rational normal scrolls
//!   ([`curve`]).
//!
//! All arithmetic is exact: sets of naturals are bitsets, series
//! coefficients are arbitrary-precision rationals.

pub mod curve;
pub mod io;
pub mod numset;
pub mod series;
pub mod tableau;
pub mod tree;
pub mod verify;

/// Exact rational scalar used for all curve-side computations.
pub type Rat = num_rational::BigRational;

/// Polynomial in one variable over [`Rat`].
pub type RatPoly = series::Poly<Rat>;

/// Truncated power series over [`Rat`].
pub type RatSeries = series::TruncatedSeries<Rat>;

/// Runtime knobs shared by the scan and curve entry points.
///
/// `threads = 0` means "use the rayon default". Randomized searches (the
/// gonality pencil pool) draw from a ChaCha stream seeded by `seed`, so a
/// fixed seed gives byte-identical reports regardless of thread count.
#[derive(Debug, Clone)]
pub struct Config {
    pub threads: usize,
    pub seed: u64,
    /// Number of random pencils tried per curve when bounding gonality.
    pub gonality_budget: usize,
    /// Hard cap on series truncation order during value-semigroup closure.
    pub max_order: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            threads: 0,
            seed: 0x5eed,
            gonality_budget: 64,
            max_order: 512,
        }
    }
}
