//! Classical orthogonal polynomials: recurrences, evaluation, weights and
//! zeros, plus the dense [`Polynomial`] type and [`PointConfiguration`].
//!
//! Zeros come from the symmetric Jacobi matrix of the monic recurrence and are
//! then Newton-polished on the three-term recurrence. The Jacobi weight is
//! `(1 - x)^a (1 + x)^b`.

mod family;
mod points;
mod polynomial;

pub use family::{FamilyMember, OrthogonalFamily, RealRootedPolynomial, Recurrence};
pub use points::{log_vandermonde_abs, vandermonde_abs, PointConfiguration};
pub use polynomial::Polynomial;
