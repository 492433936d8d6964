use super::peel::is_fully_peelable;
use crate::error::{Error, Result};
use crate::rng::derive_seed;
use crate::tabulation::{MixedTabulation, TabulationParams};

/// Slack in the capacity check `|S| ≤ |Σ|/(1 + ε)`.
pub const DEFAULT_EPSILON: f64 = 1.0;

/// A tabulation function whose inner map peels the target set, so its
/// values on that set are independent and uniform.
#[derive(Debug, Clone)]
pub struct UniformHash {
    pub function: MixedTabulation,
    /// Number of rejected inner functions before success.
    pub retries: u32,
    /// Whether `|S|` respected the capacity bound. Advisory only.
    pub within_capacity: bool,
}

/// Draws fresh tables until the inner function is fully peelable on `keys`.
///
/// Attempt `a` uses seed `derive_seed(params.seed, a)`; at most
/// `max_retries + 1` attempts are made.
pub fn build_uniform_hash(
    keys: &[u64],
    params: &TabulationParams,
    max_retries: u32,
    epsilon: f64,
) -> Result<UniformHash> {
    params.validate()?;
    if params.d == 0 {
        return Err(Error::params("uniform hashing needs d ≥ 1 derived characters"));
    }
    let capacity = params.derived_alphabet_size() as f64 / (1.0 + epsilon);
    let within_capacity = keys.len() as f64 <= capacity;
    for attempt in 0..=max_retries {
        let candidate = MixedTabulation::new(&params.with_seed(derive_seed(params.seed, attempt as u64)))?;
        if is_fully_peelable(keys, candidate.inner()) {
            return Ok(UniformHash {
                function: candidate,
                retries: attempt,
                within_capacity,
            });
        }
    }
    Err(Error::RetriesExhausted {
        attempts: max_retries + 1,
    })
}
