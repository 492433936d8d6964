//! Persistence for tabulation functions. Only `(params, seed)` is stored;
//! tables are always regenerated.
//!
//! Binary layout (18 bytes, little-endian):
//! `"TABH"`, version `u8 = 1`, `c`, `b`, `d`, `r`, `derived_bits` as `u8`, `seed: u64`.
//!
//! Test vectors are text, one per line: `c,b,d,r,seed,key → hash` with
//! `seed`, `key` and `hash` in `0x`-prefixed hex. `d = 0` selects simple
//! tabulation, otherwise mixed tabulation. `->` is accepted in place of `→`.

use super::{MixedTabulation, SimpleTabulation, TabulationParams};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"TABH";
const VERSION: u8 = 1;
pub(crate) const ENCODED_LEN: usize = 18;

impl TabulationParams {
    pub fn to_bytes(&self) -> [u8; ENCODED_LEN] {
        let mut out = [0u8; ENCODED_LEN];
        out[..4].copy_from_slice(MAGIC);
        out[4] = VERSION;
        out[5] = self.c as u8;
        out[6] = self.b as u8;
        out[7] = self.d as u8;
        out[8] = self.r as u8;
        out[9] = self.derived_bits as u8;
        out[10..].copy_from_slice(&self.seed.to_le_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != ENCODED_LEN {
            return Err(Error::Decode(format!("expected {ENCODED_LEN} bytes, got {}", bytes.len())));
        }
        if &bytes[..4] != MAGIC {
            return Err(Error::Decode("bad magic".into()));
        }
        if bytes[4] != VERSION {
            return Err(Error::Decode(format!("unsupported version {}", bytes[4])));
        }
        let seed = u64::from_le_bytes(bytes[10..18].try_into().expect("8 bytes"));
        let p = TabulationParams {
            c: bytes[5] as u32,
            b: bytes[6] as u32,
            d: bytes[7] as u32,
            r: bytes[8] as u32,
            derived_bits: bytes[9] as u32,
            seed,
        };
        p.validate()?;
        Ok(p)
    }

    /// Evaluates the function these params describe: simple tabulation for
    /// `d = 0`, mixed tabulation otherwise.
    pub fn evaluate(&self, key: u64) -> Result<u64> {
        if self.d == 0 {
            Ok(SimpleTabulation::new(self)?.hash(key))
        } else {
            Ok(MixedTabulation::new(self)?.hash(key))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TestVector {
    pub params: TabulationParams,
    pub key: u64,
    pub hash: u64,
}

impl TestVector {
    /// Computes the expected hash for each key, building the function once.
    pub fn compute(params: &TabulationParams, keys: &[u64]) -> Result<Vec<TestVector>> {
        let eval: Box<dyn Fn(u64) -> u64> = if params.d == 0 {
            let h = SimpleTabulation::new(params)?;
            Box::new(move |x| h.hash(x))
        } else {
            let h = MixedTabulation::new(params)?;
            Box::new(move |x| h.hash(x))
        };
        Ok(keys
            .iter()
            .map(|&key| TestVector {
                params: *params,
                key,
                hash: eval(key),
            })
            .collect())
    }

    pub fn verify(&self) -> Result<bool> {
        Ok(self.params.evaluate(self.key)? == self.hash)
    }
}

pub fn format_vectors(vectors: &[TestVector]) -> Result<String> {
    let mut out = String::new();
    for v in vectors {
        let p = &v.params;
        if p.derived_bits != p.b {
            return Err(Error::params(
                "test-vector lines cannot express a derived width different from b",
            ));
        }
        out.push_str(&format!(
            "{},{},{},{},{:#x},{:#x} → {:#x}\n",
            p.c, p.b, p.d, p.r, p.seed, v.key, v.hash
        ));
    }
    Ok(out)
}

pub fn parse_vectors(text: &str) -> Result<Vec<TestVector>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (lhs, rhs) = line
            .split_once('→')
            .or_else(|| line.split_once("->"))
            .ok_or_else(|| Error::parse(line_no, "missing arrow"))?;
        let fields: Vec<&str> = lhs.split(',').map(str::trim).collect();
        if fields.len() != 6 {
            return Err(Error::parse(line_no, format!("expected 6 fields, got {}", fields.len())));
        }
        let small = |s: &str| -> Result<u32> {
            s.parse::<u32>()
                .map_err(|e| Error::parse(line_no, format!("{s:?}: {e}")))
        };
        let params = TabulationParams::new(
            small(fields[0])?,
            small(fields[1])?,
            small(fields[2])?,
            small(fields[3])?,
            parse_hex(fields[4], line_no)?,
        );
        params
            .validate()
            .map_err(|e| Error::parse(line_no, e.to_string()))?;
        out.push(TestVector {
            params,
            key: parse_hex(fields[5], line_no)?,
            hash: parse_hex(rhs.trim(), line_no)?,
        });
    }
    Ok(out)
}

fn parse_hex(s: &str, line: usize) -> Result<u64> {
    let digits = s
        .strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .ok_or_else(|| Error::parse(line, format!("{s:?} is not 0x-prefixed hex")))?;
    u64::from_str_radix(digits, 16).map_err(|e| Error::parse(line, format!("{s:?}: {e}")))
}
