//! Bent Boolean functions of the generalized Maiorana-McFarland kind:
//! construction from partitions of `F_2^{m+1}` into 2-dimensional flats,
//! closed-form duals, 4-concatenations and completed-class membership
//! tests via M-subspace search.
//!
//! The global index convention used everywhere: a point
//! `v = (v_1, ..., v_n)` has index `idx(v) = sum v_i * 2^(n-i)`, i.e.
//! `v_1` is the most significant bit. Bit strings printed as `00101`
//! therefore read directly as integers.

pub mod boolfn;
pub mod classify;
pub mod cli;
mod error;
pub mod gf2;
pub mod gmm;
pub mod partitions;

pub(crate) mod bits;

#[cfg(test)]
pub(crate) mod testdata;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
