//! Quantum Hamilton–Jacobi tools with ħ = 2m = 1.
//!
//! A state `ψ = f e^{-∫W}` has momentum function `p = -i ψ'/ψ = -i f'/f + iW`:
//! a simple pole of residue `-i` at every zero of `f` plus the fixed part
//! `iW`. Substituting into `p² - i p' = E - V` with `V = W² - W'` leaves the
//! polynomial equation `-f'' + 2W f' = λ f`, and the action `(1/2π) Re ∮ p`
//! around the zeros counts them.
//!
//! Eigenvalues are reported as `λ_n` of that reduced operator (so `λ_n = 2n`
//! for `W = x`); the labeling `E_n = -λ_n` is the same spectrum with the
//! opposite sign. Only linear `W` reduces to constant coefficients; rational
//! fields (Laguerre, Jacobi) go through [`sturm_liouville_spectrum`].

mod qmf;
mod spectrum;
mod susy;

pub use qmf::{
    contour_quantization, qmf_from_state, riccati_residual, ComplexPole, QuantumMomentumFunction,
};
pub use spectrum::{
    monomial_operator, polynomial_spectrum, schrodinger_spectrum, sturm_liouville_spectrum,
    BoundState,
};
pub use susy::{build_wavefunction, susy_partners, SusyPartners, Wavefunction};
