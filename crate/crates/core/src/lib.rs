//! Quandle colorings of 1-tangle diagrams and the longitudinal mapping
//! invariant over SU(2).
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs: unit quaternion arithmetic, the quandles used to
//! color diagrams (spherical, conjugation class, dihedral, generalized
//! Alexander, Eisermann), Wirtinger codes for the torus knots `T(2,n)` and the
//! figure-eight knot, coloring solvers, and the evaluation of the longitude
//! word on a coloring.
//!
//! A typical pipeline:
//!
//! ```
//! use suknot_core::{coloring, longitude, tangle};
//!
//! let diagram = tangle::torus(5, tangle::Sign::Positive).unwrap();
//! let psi = 0.9 * core::f64::consts::PI;
//! let star = coloring::star_polygon(5, 1, psi, 0.0).unwrap();
//! let conj = longitude::to_conjugation(&star).unwrap();
//! let value = longitude::eval_word(&diagram, &conj).unwrap();
//! let theta = conj.quandle().theta();
//! let expected = longitude::t2n_closed_form(5, theta, false).unwrap();
//! assert!(value.q().distance(&expected.q()) < 1e-8);
//! ```
#![no_std]

extern crate alloc;

pub mod coloring;
pub mod longitude;
pub mod quandle;
pub mod quaternion;
pub mod sample;
pub mod tangle;
pub mod tol;

pub use coloring::{Coloring, ColoringError, ColoringSeed};
pub use longitude::{LongitudeError, LongitudeValue};
pub use quandle::{QElement, Quandle, QuandleError, QuandleInstance};
pub use quaternion::{AxisAngle, PoleError, Rotation, SpherePoint, UnitQuaternion};
pub use tangle::{Sign, TangleDiagram, TangleError, WirtingerCode};
