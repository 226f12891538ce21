//! Numerical rigidity toolkit for isometry groups of hyperbolic space in the
//! hyperboloid model.
//!
//! The crate is organized in layers:
//!
//! * [`minkowski`] — the Lorentz form, causal classification and membership
//!   predicates for `SO_0(n,1)`;
//! * [`isometry`] — explicit parabolic holonomies, the `SL(2,C)` bridge, the
//!   block embedding `SO(3,1) ⊂ SO(4,1)`, trace classification and boundary
//!   affine actions;
//! * [`lie`] — the Lie algebra `so(n,1)`, the module splitting
//!   `so(4,1) = so(3,1) ⊕ R^{3,1}`, Killing fields and the `rot` projection;
//! * [`cohomology`] — twisted group cohomology as numerical linear algebra
//!   (Fox calculus, cocycle/coboundary spaces, torus normal forms);
//! * [`twobridge`] — two-bridge knot presentations, Riley representations,
//!   cusp lattices and the excluded-slope pipeline.
//!
//! The single global convention is that the timelike coordinate is index 0,
//! with Lorentz form `diag(-1, 1, …, 1)`.

pub mod cohomology;
pub mod error;
pub mod isometry;
pub mod lie;
pub mod minkowski;
pub mod rank;
pub mod twobridge;

mod expm;

pub use error::{Error, Result};

/// Default tolerance for membership predicates on matrices of size <= 5.
pub const DEFAULT_TOL: f64 = 1e-9;
