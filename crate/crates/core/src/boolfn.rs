//! Boolean functions on {0,1}^n stored as packed truth tables.
//!
//! Input `x` is an integer whose bit `i` is the value of variable `x_{i+1}`,
//! so `x_1` is the least significant bit. Bit `x` of the table is `F(x)`.

use std::io::{Read, Write};

use rand::RngCore;

use crate::error::{Error, Result};
use crate::rng;

pub const MAX_VARS: u32 = 30;
const MAGIC: &[u8; 4] = b"BFN1";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoolFn {
    n: u32,
    words: Vec<u64>,
}

pub(crate) fn check_vars(n: u32) -> Result<()> {
    if n > MAX_VARS {
        return Err(Error::TooManyVars { n, max: MAX_VARS });
    }
    Ok(())
}

/// Mask of the valid bits in the last word of a 2^n-bit table.
pub(crate) fn tail_mask(n: u32) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

pub(crate) fn word_count(n: u32) -> usize {
    if n >= 6 {
        1usize << (n - 6)
    } else {
        1
    }
}

impl BoolFn {
    pub fn zero(n: u32) -> Result<Self> {
        check_vars(n)?;
        Ok(BoolFn {
            n,
            words: vec![0; word_count(n)],
        })
    }

    pub fn from_fn(n: u32, mut f: impl FnMut(u32) -> bool) -> Result<Self> {
        let mut out = Self::zero(n)?;
        for x in 0..out.len() as u32 {
            if f(x) {
                out.words[(x >> 6) as usize] |= 1 << (x & 63);
            }
        }
        Ok(out)
    }

    pub fn from_bits(n: u32, bits: &[bool]) -> Result<Self> {
        check_vars(n)?;
        if bits.len() != 1usize << n {
            return Err(Error::LengthMismatch {
                left: bits.len(),
                right: 1usize << n,
            });
        }
        Self::from_fn(n, |x| bits[x as usize])
    }

    /// Takes ownership of packed words; bits beyond 2^n must be clear.
    pub fn from_words(n: u32, words: Vec<u64>) -> Result<Self> {
        check_vars(n)?;
        if words.len() != word_count(n) {
            return Err(Error::LengthMismatch {
                left: words.len(),
                right: word_count(n),
            });
        }
        if words[words.len() - 1] & !tail_mask(n) != 0 {
            return Err(Error::Format("bits set beyond the table length".into()));
        }
        Ok(BoolFn { n, words })
    }

    /// Every table bit an independent fair coin from the seeded generator.
    pub fn random(n: u32, seed: u64) -> Result<Self> {
        check_vars(n)?;
        let mut rng = rng::seeded(seed);
        let mut words = vec![0u64; word_count(n)];
        for w in words.iter_mut() {
            *w = rng.next_u64();
        }
        let last = words.len() - 1;
        words[last] &= tail_mask(n);
        Ok(BoolFn { n, words })
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Table length, 2^n.
    #[inline]
    pub fn len(&self) -> usize {
        1usize << self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, x: u32) -> bool {
        debug_assert!((x as usize) < self.len());
        (self.words[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    pub fn set(&mut self, x: u32, value: bool) {
        assert!((x as usize) < self.len(), "input {x} out of range");
        let w = &mut self.words[(x >> 6) as usize];
        if value {
            *w |= 1 << (x & 63);
        } else {
            *w &= !(1 << (x & 63));
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len() as u32).map(move |x| self.get(x))
    }

    /// Encodes as `BFN1`, one byte n, then ceil(2^n/8) table bytes with the
    /// bit for input x at byte x>>3, bit x&7.
    pub fn to_bytes(&self) -> Vec<u8> {
        let nbytes = self.len().div_ceil(8);
        let mut out = Vec::with_capacity(5 + nbytes);
        out.extend_from_slice(MAGIC);
        out.push(self.n as u8);
        for i in 0..nbytes {
            out.push((self.words[i / 8] >> ((i % 8) * 8)) as u8);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 5 || &bytes[..4] != MAGIC {
            return Err(Error::Format("missing BFN1 header".into()));
        }
        let n = u32::from(bytes[4]);
        check_vars(n)?;
        let nbytes = (1usize << n).div_ceil(8);
        let body = &bytes[5..];
        if body.len() != nbytes {
            return Err(Error::Format(format!(
                "expected {nbytes} table bytes for n={n}, found {}",
                body.len()
            )));
        }
        let mut words = vec![0u64; word_count(n)];
        for (i, b) in body.iter().enumerate() {
            words[i / 8] |= u64::from(*b) << ((i % 8) * 8);
        }
        Self::from_words(n, words)
    }

    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        w.write_all(&self.to_bytes())?;
        Ok(())
    }

    pub fn read_from(mut r: impl Read) -> Result<Self> {
        let mut buf = Vec::new();
        r.read_to_end(&mut buf)?;
        Self::from_bytes(&buf)
    }
}
