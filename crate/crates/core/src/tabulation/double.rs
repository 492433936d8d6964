use super::{CharTabulation, SimpleTabulation, TabulationParams};
use crate::error::{Error, Result};
use crate::rng::TableRole;

/// Double tabulation `h(x) = h₂(h₁(x))`: like mixed tabulation but the outer
/// function sees only the derived characters, not the key.
#[derive(Debug, Clone)]
pub struct DoubleTabulation {
    h1: CharTabulation,
    h2: SimpleTabulation,
}

impl DoubleTabulation {
    pub fn new(params: &TabulationParams) -> Result<Self> {
        params.validate()?;
        if params.d == 0 {
            return Err(Error::params("double tabulation needs d ≥ 1 derived characters"));
        }
        let h1 = CharTabulation::generate(
            params.c,
            params.b,
            params.d,
            params.derived_bits,
            params.seed,
            TableRole::DoubleInner,
        );
        let h2 = SimpleTabulation::generate(
            vec![params.derived_bits; params.d as usize],
            params.r,
            params.seed,
            TableRole::DoubleOuter,
        );
        Ok(DoubleTabulation { h1, h2 })
    }

    /// Composes `h2 ∘ h1`; `h2` must read exactly the `d` characters `h1` emits.
    pub fn from_parts(h1: CharTabulation, h2: SimpleTabulation) -> Result<Self> {
        let expected = vec![h1.out_char_bits(); h1.out_chars() as usize];
        if h2.char_bits() != expected.as_slice() {
            return Err(Error::WidthMismatch(format!(
                "outer function reads {:?}, inner emits {:?}",
                h2.char_bits(),
                expected
            )));
        }
        Ok(DoubleTabulation { h1, h2 })
    }

    #[inline]
    pub fn hash(&self, key: u64) -> u64 {
        self.h2.hash(self.h1.hash(key))
    }

    pub fn inner(&self) -> &CharTabulation {
        &self.h1
    }

    pub fn outer(&self) -> &SimpleTabulation {
        &self.h2
    }
}
