//! Exact-arithmetic wall-and-chamber computations for moduli of sheaves on
//! elliptic surfaces.
//!
//! The library works purely at the level of numerical invariants: a surface is
//! a rational Gram matrix with distinguished classes (fiber, polarization,
//! optional section, fiber-component sublattices), and sheaves enter only
//! through their topological invariant `(r, xi, a)` = (rank, first Chern
//! class, Euler characteristic).  Everything downstream — the Euler pairing,
//! root and isotropic wall enumeration, crossing codimensions, spherical
//! reflections, Fourier-Mukai slope transforms, reduction certificates and
//! Hodge-polynomial targets — is computed with exact rational arithmetic.
//! No floating point is used anywhere.
//!
//! Module map:
//! - [`lattice`]: the numerical Néron-Severi model and root enumeration,
//! - [`chern`]: invariants `(r, xi, a)`, the Euler pairing and dimension
//!   formulas,
//! - [`walls1d`]: wall classification for 1-dimensional sheaf classes in the
//!   `(H, alpha)` parameter space,
//! - [`lambdawalls`]: the lambda-stability line, wall enumeration, crossing
//!   classification and birational-reduction certificates,
//! - [`special52`]: the fully explicit rank-two picture (`NS = ZH + Zf`),
//! - [`hilbpoly`]: Hodge polynomials of `Hilb^n(X) x Pic^0(X)`,
//! - [`config`]: JSON ingestion and exact serialization.

pub mod chern;
pub mod config;
pub mod error;
pub mod hilbpoly;
pub mod lambdawalls;
pub mod lattice;
pub mod rat;
pub mod special52;
pub mod walls1d;

pub use chern::{ChernVector, Polarization};
pub use error::Error;
pub use lattice::{DivisorClass, FiberComponentLattice, SurfaceGeometry};
pub use rat::Rat;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
