//! Numerical kernels shared by every other module: eigensolvers, seeded
//! random streams, quadrature and contour integration.

mod contour;
mod eigen;
mod quadrature;
mod random;

pub use contour::{contour_integral, numeric_residue, Ellipse};
pub use eigen::{hermitian_eigenvalues, symtri_eigenvalues, Cholesky, HermitianMatrix, SymMatrix};
pub use quadrature::{gauss_legendre, Interval, QuadratureRule, HALF_LINE_CUTOFF};
pub use random::{chi_sample, gaussian_sample, RandomStream};
