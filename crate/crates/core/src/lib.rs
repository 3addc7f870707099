//! Exact initial spaces and generic initial spaces of vector spaces of
//! homogeneous forms under the reverse lexicographic order.

pub mod change;
pub mod cli;
pub mod error;
pub mod formspace;
pub mod gin;
pub mod io;
pub mod linalg;
pub mod monomial;
pub mod polynomial;
pub mod scalar;
pub mod stable;
pub mod verify;

pub use change::LinearChange;
pub use error::{Error, Result};
pub use formspace::{build_colon_ideal, ColonIdeal, FormSpace, GradedIdealSlice};
pub use linalg::Matrix;
pub use monomial::{revlex_compare, Monomial};
pub use polynomial::{expand_t_coefficients, Polynomial};
pub use scalar::Scalar;
pub use stable::{borel_closure, build_j, green_predicate, minimal_generators, JIdeal, MonomialIdeal, MonomialSpace};
pub use gin::{gin, generify, random_change, Arithmetic, GinConfig, GinResult};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/revlex.md")]
    mod revlex {}
    #[doc = include_str!("../../../book/src/gin.md")]
    mod gin {}
    #[doc = include_str!("../../../book/src/stable.md")]
    mod stable {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
