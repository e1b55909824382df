//! Exact constructions for nilpotent orbits in so_N and sp_N: pyramids,
//! representatives, centralisers, slices, finite W-algebra generators and
//! modular induced modules.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod centralizer;
pub mod enveloping;
pub mod error;
pub mod exact;
pub mod matrix;
pub mod modular;
pub mod orbits;
pub mod partitions;
pub mod report;
pub mod slice;
pub mod verify;

pub use error::{Error, Result};

/// Caps the global worker pool used by the single-orbit computations.
/// Only the first call has an effect.
pub fn set_global_threads(n: usize) -> std::result::Result<(), rayon::ThreadPoolBuildError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n.max(1))
        .build_global()
}
