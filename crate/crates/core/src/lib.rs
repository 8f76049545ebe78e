//! Exact computations in module categories of finite-dimensional algebras
//! over the rationals, with a focus on morphism categories, monomorphism
//! categories and triangular matrix algebras.

pub mod algcore;
pub mod approx;
pub mod cotilt;
pub mod error;
pub mod exactla;
pub mod fintype;
pub mod fixtures;
pub mod goren;
pub mod io;
pub mod modrep;
pub mod morcat;
pub mod selftest;

pub use error::{Error, Result};

/// Bounds on resolution length, search depth and enumeration dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Caps {
    pub res: usize,
    pub depth: usize,
    pub dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { res: 32, depth: 16, dim: 6 }
    }
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/algebras.md")]
mod book_algebras {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/chains.md")]
mod book_chains {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/approximations.md")]
mod book_approximations {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cotilting.md")]
mod book_cotilting {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/gorenstein.md")]
mod book_gorenstein {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/finite_type.md")]
mod book_finite_type {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}
