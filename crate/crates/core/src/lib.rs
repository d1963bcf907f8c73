//! Exact workbench for Hall algebras of finitary proto-abelian categories,
//! the pull-push calculus on finite groupoids, Hecke convolution algebras,
//! wreath-product character theory and the Schur-Weyl counting identities.
//!
//! Everything is computed with exact arithmetic (big rationals and
//! cyclotomic numbers); there is no floating point anywhere in the crate.

pub mod error;
pub mod exactmath;
pub mod groupoid;
pub mod hall;
pub mod par;
pub mod protoab;
pub mod schurweyl;
pub mod waldhausen;
pub mod wreath;

pub use error::{Error, Result};

/// Default cap on the number of morphism records a single groupoid
/// construction may materialize.
pub const DEFAULT_BUDGET: usize = 1_000_000;
