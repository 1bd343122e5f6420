//! Numerical tolerances shared across the crate.

/// Allowed deviation of a norm from 1 after renormalization.
pub const NORM: f64 = 1e-12;

/// Below this length the vector part of a unit quaternion is treated as zero
/// and its rotation axis as undefined.
pub const POLE: f64 = 1e-12;

/// Comparison tolerance for identities that accumulate `O(n)` products.
pub const DERIVED: f64 = 1e-9;

/// Maximum crossing defect for a coloring to be accepted.
pub const COLORING: f64 = 1e-8;

/// Two solver seeds closer than this are the same seed.
pub const SEED_DEDUP: f64 = 1e-6;

/// Colorings whose colors all lie within this distance of each other are
/// trivial.
pub const MIN_SPREAD: f64 = 1e-6;

/// Commutation tolerance for membership in the longitudinal group.
pub const LAMBDA: f64 = 1e-9;

/// Default number of sample points of the seed scan over `[0, pi]`.
pub const DEFAULT_GRID: usize = 2000;

/// Discriminants of the figure-eight formulas within this distance of zero
/// are set to zero, so the interval endpoints give exactly real values.
pub const DISCRIMINANT: f64 = 1e-12;
