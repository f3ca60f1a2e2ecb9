//! Generation and analysis of point configurations on the unit sphere.
//!
//! The crate provides:
//!
//! * [`generators`] — spiral, Fibonacci, low-discrepancy, equal-area,
//!   polyhedral and random point families, plus ingestion of external
//!   point files;
//! * [`tessellation`] — spherical Delaunay triangulation (via the 3-D
//!   convex hull) and the dual Voronoi diagram;
//! * [`metrics`] — separation, covering radius and mesh ratio;
//! * [`energy`] — discrete Riesz/logarithmic energies, their normalized
//!   asymptotic series, Epstein zeta coefficients and the Stolarsky
//!   L2 discrepancy;
//! * [`optimizer`] — projected gradient descent towards minimal-energy
//!   configurations.
//!
//! All deterministic families are bit-reproducible; randomized ones are
//! reproducible per seed. The `parallel` feature (on by default) enables
//! rayon-based data parallelism for the O(N^2) inner loops; results are
//! identical to the sequential fallback regardless of thread count.

pub mod config;
pub mod energy;
pub mod error;
pub mod generators;
pub mod geom;
pub mod metrics;
pub mod optimizer;
pub mod tessellation;

mod hull;
mod parallel;

pub use config::{Configuration, Family};
pub use error::Error;
pub use geom::{SphCoord, UnitPoint};

/// Crate result alias.
pub type Result<T> = std::result::Result<T, Error>;
