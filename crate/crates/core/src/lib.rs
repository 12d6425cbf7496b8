//! Differential geometry of polynomial curves in the Minkowski plane.
//!
//! Special points (lightlike points, inflections, vertices, cusps),
//! evolutes and caustics, self-intersections, and the bifurcation strata of
//! one- and two-parameter model deformations.

pub mod caustic;
pub mod curve;
pub mod detect;
pub mod families;
pub mod jet;
pub mod mink;
pub mod multilocal;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod strata;
pub mod verify;

pub use curve::PolyCurve;
pub use jet::{Jet, JetError};
pub use mink::{minkowski_dot, perp, Vec2};
pub use poly::Poly;
pub use strata::StratumId;
