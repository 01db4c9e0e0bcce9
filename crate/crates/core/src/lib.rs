//! Computational kernel for hyperbolic surfaces built from pairs of pants.
//!
//! The crate covers four loosely coupled layers:
//!
//! - exact boundary/Möbius arithmetic on the sphere at infinity and in the
//!   upper half-space model ([`boundary`], [`mobius`], [`geodesic`]);
//! - right-angled hexagon and pentagon trigonometry, including the
//!   nearly-symmetric asymptotics and concrete realizations ([`polygons`],
//!   [`pants`]);
//! - the parametrized isometry family, its factorization, the hexagon built
//!   on top of it, and a word-ball search over a discrete group
//!   ([`isometry`], [`search`]);
//! - labeled-graph tilings of the Cayley tree of Z/2 * Z/2 * Z/2 with an
//!   exact-rational flow solver ([`tiling`]), plus bi-Lipschitz map
//!   certificates ([`bilip`]) and altitude-plane disjointness checks
//!   ([`incompress`]).
//!
//! The crate is `no_std` (alloc required); all floating-point math goes
//! through `num-traits`/`libm`. Everything here is a pure function of its
//! inputs; there is no interior mutability.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bilip;
pub mod boundary;
pub mod error;
pub mod geodesic;
pub mod incompress;
pub mod isometry;
pub mod mobius;
pub mod pants;
pub mod polygons;
pub mod search;
pub mod simplex;
pub mod tiling;

pub use error::{Error, Result};

/// Crate version, embedded in CLI output headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Relative residual allowed on the cross-ratio orthogonality identity when
/// validating that a geodesic is perpendicular to another.
pub const PERP_TOL: f64 = 1e-9;

/// Chordal tolerance for "this boundary point is fixed by that isometry".
pub const FIXED_POINT_TOL: f64 = 1e-8;

/// Tolerance on re-measured widths of a realized polygon.
pub const WIDTH_TOL: f64 = 1e-8;
