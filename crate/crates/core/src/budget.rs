//! Enumeration caps shared by every census.
//!
//! The cap is expressed in bits: a census may visit at most `2^bits` points.
//! It defaults to 24, can be overridden with `QBURGE_CAP_BITS`, and never
//! exceeds 30.

use std::sync::atomic::{AtomicU32, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_CAP_BITS: u32 = 24;
pub const MAX_CAP_BITS: u32 = 30;
pub const CAP_ENV: &str = "QBURGE_CAP_BITS";

static OVERRIDE: AtomicU32 = AtomicU32::new(0);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    bits: u32,
}

impl Budget {
    pub fn new(bits: u32) -> Result<Self> {
        if bits == 0 || bits > MAX_CAP_BITS {
            return Err(Error::Invalid(format!(
                "cap must be between 1 and {MAX_CAP_BITS} bits, got {bits}"
            )));
        }
        Ok(Budget { bits })
    }

    /// The process-wide cap: an explicit override, else the environment, else 24.
    pub fn current() -> Self {
        let o = OVERRIDE.load(Ordering::Relaxed);
        if o != 0 {
            return Budget { bits: o };
        }
        match std::env::var(CAP_ENV) {
            Ok(v) => v
                .trim()
                .parse::<u32>()
                .ok()
                .and_then(|b| Budget::new(b).ok())
                .unwrap_or(Budget {
                    bits: DEFAULT_CAP_BITS,
                }),
            Err(_) => Budget {
                bits: DEFAULT_CAP_BITS,
            },
        }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn limit(self) -> u128 {
        1u128 << self.bits
    }

    /// Fails unless `steps` fits under the cap.
    pub fn check(self, what: &str, free_dim: usize, steps: u128) -> Result<()> {
        if steps <= self.limit() {
            Ok(())
        } else {
            Err(Error::CapExceeded {
                what: what.to_string(),
                free_dim,
                bits: ceil_log2(steps),
                cap: self.bits,
            })
        }
    }

    /// `base^exp` checked against the cap without overflowing.
    pub fn check_pow(self, what: &str, base: u64, exp: usize) -> Result<u128> {
        let mut acc: u128 = 1;
        for _ in 0..exp {
            acc = acc.saturating_mul(base as u128);
            if acc > self.limit() {
                let bits = (exp as f64 * (base as f64).log2()).ceil() as u32;
                return Err(Error::CapExceeded {
                    what: what.to_string(),
                    free_dim: exp,
                    bits,
                    cap: self.bits,
                });
            }
        }
        Ok(acc)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::current()
    }
}

/// Sets a process-wide cap that takes precedence over the environment.
pub fn set_cap_bits(bits: u32) -> Result<()> {
    let b = Budget::new(bits)?;
    OVERRIDE.store(b.bits, Ordering::Relaxed);
    Ok(())
}

fn ceil_log2(x: u128) -> u32 {
    if x <= 1 {
        0
    } else {
        128 - (x - 1).leading_zeros()
    }
}
