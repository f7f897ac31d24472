//! Exact Landau-level eigenstates of an electron in a uniform two-dimensional
//! magnetic field (symmetric gauge, atomic units), the all-variable ladder
//! operators `L±` that connect `ψ_{n,m}` with `ψ_{n±1,m±1}`, and the numerical
//! machinery used to verify them.
//!
//! Module map:
//!
//! - [`laguerre`]: associated Laguerre polynomials and recurrence-identity residuals.
//! - [`quadrature`]: generalized Gauss–Laguerre rules (Golub–Welsch).
//! - [`states`]: quantum numbers, spectrum, normalized eigenfunctions, overlaps.
//! - [`ladder`]: the raising/lowering operators and their verification.
//! - [`velocity`]: finite-difference velocity operators on a Cartesian grid.
//!
//! All radial quantities are expressed in the dimensionless variable
//! `ζ = σρ²` with `σ = B/2`.

pub mod error;
pub mod exec;
pub mod ladder;
pub mod laguerre;
pub mod quadrature;
pub mod special;
pub mod states;
pub mod velocity;

mod tridiag;

pub use error::{Error, Result};
pub use exec::Execution;

pub use ladder::{DerivativeMode, LadderApplication, LadderCheck, LadderDirection};
pub use laguerre::{Identity, LaguerreIndex};
pub use quadrature::QuadratureRule;
pub use states::{FieldConfig, LandauState, QuantumNumbers, SpectralParams};
pub use velocity::{Axis, CartesianGrid, GridField};
