pub mod electrostatics;
pub mod error;
pub mod numerics;
pub mod orthopoly;
pub mod qhj;
pub mod rmt;
pub mod xpoly;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/log-gas.md")]
    mod log_gas {}
    #[doc = include_str!("../../../book/src/orthogonal-polynomials.md")]
    mod orthogonal_polynomials {}
    #[doc = include_str!("../../../book/src/momentum-function.md")]
    mod momentum_function {}
    #[doc = include_str!("../../../book/src/random-matrices.md")]
    mod random_matrices {}
    #[doc = include_str!("../../../book/src/exceptional.md")]
    mod exceptional {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
