//! Exact arithmetic for low-complexity configurations and translational
//! tilings of Z².
//!
//! The crate covers:
//!
//! * [`lattice`]: vectors, canonical directions, Bezout data and HNF sublattices;
//! * [`poly`]: sparse two-variable Laurent polynomials over Q, derived
//!   annihilators, and one-variable cyclotomic divisibility;
//! * [`config`]: exactly evaluable configurations, the polynomial action,
//!   annihilation certificates, the Sturmian and random-product generators,
//!   and the order-2 coset splitting;
//! * [`dirset`]: direction sets of clusters and the resulting order bounds;
//! * [`tiling`]: torus tilings, exact-cover enumeration, dilation checks and
//!   the prime-square rectangle analysis;
//! * [`kernel`]: kernels of characters of the 2-torus on rational points.

pub mod config;
pub mod dirset;
mod error;
pub mod kernel;
pub mod lattice;
pub mod poly;
pub mod tiling;

pub use error::{Error, Result};

/// Exact rational scalar used for coefficients and configuration values.
pub type Rational = num_rational::Ratio<i128>;

pub use config::{Configuration, Rect, Window};
pub use dirset::{Cluster, DirectionSet};
pub use lattice::{Direction, Lattice2, Vec2};
pub use poly::{LaurentPoly1, LaurentPoly2};
pub use tiling::TorusTiling;
