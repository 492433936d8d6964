//! Tabulation hashing (simple, double and mixed), k-partition sketches built
//! on it, exhaustive dependency oracles, peeling-based uniform hashing with an
//! invertible Bloom filter, and the seeded experiments that compare the hash
//! families against a truly random baseline.
//!
//! ```
//! use tabhash::{MixedTabulation, TabulationParams};
//!
//! let params = TabulationParams::new(4, 8, 4, 32, 42);
//! let h = MixedTabulation::new(&params).unwrap();
//! assert_eq!(h.hash(7), h.hash_definitional(7));
//! ```

pub mod distinct;
pub mod error;
pub mod experiment;
pub mod hasher;
pub mod minhash;
pub mod moments;
pub mod oracle;
pub mod partition;
pub mod peeling;
pub mod rng;
pub mod stats;
pub mod tabulation;

pub use distinct::{HllRegisters, PcsaBitmaps};
pub use error::{Error, Result};
pub use experiment::{Command, ExperimentOutput, ExperimentSpec};
pub use hasher::{AnyHasher, FullyRandom, HashFunction, HashKind, KeyHasher};
pub use minhash::{estimate_fraction, estimate_similarity, MinHashSketch, SimilarityEstimate};
pub use moments::{Dyadic, MomentEstimate, MomentExperimentConfig};
pub use oracle::{DependencyOracle, Independence, KeyTuple};
pub use partition::{check_parameter_constraint, PartitionParams, PartitionedHash};
pub use peeling::{build_uniform_hash, is_fully_peelable, HashGraph, IbfListing, IbfTable, PeelResult, UniformHash};
pub use tabulation::{
    CharTabulation, DoubleTabulation, MixedTabulation, PositionChar, PositionSet, SimpleTabulation, TabulationParams,
};
