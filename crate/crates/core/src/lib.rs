//! Exact projective geometry of a complete quadrangle and a line.
//!
//! The crate builds, over exact rationals, the objects attached to a
//! complete quadrangle `A1A2A3A4` and a line `g` avoiding its vertices and
//! diagonal points: the points `U_ij` where `g` cuts the sides, the 24
//! Sharygin points `M_ij^k`, the G-points, the six Sharygin conics, the
//! nine-point conic with its pole `G`, and the two homologies with axis `g`.
//! Every incidence claim about them is checkable with zero tolerance.
//!
//! * [`projective`]: points, lines, cross-ratio, collineations.
//! * [`conic`]: five-point conics, pole/polar, Pascal lines.
//! * [`involution`]: involutions of a line.
//! * [`sharygin`]: the quadrangle constructions.
//! * [`verifier`]: seeded randomized theorem checks.
//! * [`geodsl`]: a small construction language.
//! * [`config`] and [`render`]: JSON documents and SVG figures.

pub mod config;
pub mod conic;
pub mod error;
pub mod geodsl;
pub mod involution;
pub mod linalg;
pub mod projective;
pub mod rational;
pub mod render;
pub mod sharygin;
pub mod verifier;

pub use error::GeomError;
pub use rational::Rational;
