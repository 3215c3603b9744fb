//! Construction and verification of two-dimensional surfaces immersed in
//! su(N), built from projector-valued solutions of Grassmannian sigma
//! models on the light-cone plane, together with the sine-Gordon reduction
//! of the CP^1 case.
//!
//! The pipeline: a solution family supplies a Hermitian idempotent field
//! P(xi_L, xi_R); tangent matrices [dP, P] define a closed su(N)-valued
//! 1-form whose potential is the immersed surface; the induced metric,
//! curvatures, and moving frame come from traces of products of
//! derivatives of P. For 2x2 projectors the surfaces have constant
//! Gaussian curvature -4 and the angle between the asymptotic directions
//! solves the sine-Gordon equation.

pub mod algebra;
pub mod cp1;
pub mod elliptic;
pub mod error;
pub mod families;
pub mod geometry;
pub mod grid;
pub mod immersion;
pub mod lax;
pub mod matrix;
pub mod projector;
pub mod sine_gordon;

pub use error::{Error, Result};
