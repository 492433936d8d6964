//! Peeling over derived characters: full-peelability tests, hash graphs,
//! uniform hashing on a given set, and an invertible Bloom filter whose
//! decoder is the same peeling process.

mod graph;
mod ibf;
mod peel;
mod uniform;

pub use graph::{Component, HashGraph};
pub use ibf::{IbfListing, IbfTable, FINGERPRINT_BITS};
pub use peel::{is_fully_peelable, peel, peel_parallel, peel_shuffled, OutputCharIncidence, PeelResult};
pub use uniform::{build_uniform_hash, UniformHash, DEFAULT_EPSILON};
