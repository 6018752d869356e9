//! fubinilab: an exact, finite laboratory for commutation of distribution
//! monads on convergence spaces.
//!
//! The crate builds finite convergence spaces, convergence vector spaces
//! over a prime field, the distribution and double-dualization monads on
//! them, and the orthogonality/completion machinery connecting the two.
//! Everything is computed exactly (field tables, bitmask set families,
//! rationals), so every categorical identity exercised by the harness is a
//! literal equality of finite tables.

pub mod convspace;
pub mod convvect;
pub mod error;
pub mod factorlab;
pub mod harness;
pub mod monadlab;
pub mod scalars;

pub use error::{Error, Result};
