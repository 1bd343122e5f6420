//! Command-line front end, tangle text format and CSV sweeps on top of
//! `suknot-core`.

pub mod format;
pub mod knot;
pub mod sweep;
pub mod verify;

pub use suknot_core as core;
