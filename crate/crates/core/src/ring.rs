//! Arithmetic in Z/2^k for 1 <= k <= 16.
//!
//! Elements are stored canonically as `u16` values in `[0, 2^k)`. Every
//! operation masks its result to `k` bits, so wrapping `u16` arithmetic
//! followed by a mask is exact.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of Z/2^k in canonical form.
pub type Elem = u16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Ring {
    k: u32,
}

impl Ring {
    pub const MAX_K: u32 = 16;

    pub fn new(k: u32) -> Result<Self> {
        if k == 0 || k > Self::MAX_K {
            return Err(Error::InvalidRing(k));
        }
        Ok(Ring { k })
    }

    /// The two-element field, Z/2.
    pub fn binary() -> Self {
        Ring { k: 1 }
    }

    #[inline]
    pub fn k(self) -> u32 {
        self.k
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        1 << self.k
    }

    #[inline]
    pub fn mask(self) -> Elem {
        ((1u32 << self.k) - 1) as Elem
    }

    /// 2^(k-1), the image of a Boolean 1 under the k-lift.
    #[inline]
    pub fn half(self) -> Elem {
        1 << (self.k - 1)
    }

    #[inline]
    pub fn reduce(self, v: u64) -> Elem {
        (v & u64::from(self.mask())) as Elem
    }

    #[inline]
    pub fn reduce_signed(self, v: i64) -> Elem {
        (v as u64 & u64::from(self.mask())) as Elem
    }

    #[inline]
    pub fn add(self, a: Elem, b: Elem) -> Elem {
        a.wrapping_add(b) & self.mask()
    }

    #[inline]
    pub fn sub(self, a: Elem, b: Elem) -> Elem {
        a.wrapping_sub(b) & self.mask()
    }

    #[inline]
    pub fn neg(self, a: Elem) -> Elem {
        a.wrapping_neg() & self.mask()
    }

    #[inline]
    pub fn mul(self, a: Elem, b: Elem) -> Elem {
        ((u32::from(a) * u32::from(b)) as Elem) & self.mask()
    }

    /// Inverse of an odd element. Newton iteration doubles the number of
    /// correct low bits each round; five rounds cover 32 bits.
    pub fn inv_unit(self, a: Elem) -> Option<Elem> {
        if a & 1 == 0 {
            return None;
        }
        let a = u32::from(a);
        let mut x = a;
        for _ in 0..5 {
            x = x.wrapping_mul(2u32.wrapping_sub(a.wrapping_mul(x)));
        }
        Some((x as Elem) & self.mask())
    }

    /// 2-adic valuation; `None` for zero.
    #[inline]
    pub fn valuation(self, a: Elem) -> Option<u32> {
        if a & self.mask() == 0 {
            None
        } else {
            Some(a.trailing_zeros())
        }
    }

    pub fn contains(self, a: u64) -> bool {
        a < u64::from(self.modulus())
    }
}

impl TryFrom<u32> for Ring {
    type Error = Error;

    fn try_from(k: u32) -> Result<Self> {
        Ring::new(k)
    }
}

impl From<Ring> for u32 {
    fn from(r: Ring) -> u32 {
        r.k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_exponents() {
        assert!(Ring::new(0).is_err());
        assert!(Ring::new(17).is_err());
        assert!(Ring::new(16).is_ok());
    }

    #[test]
    fn arithmetic_wraps_at_modulus() {
        let r = Ring::new(2).unwrap();
        assert_eq!(r.add(3, 2), 1);
        assert_eq!(r.sub(0, 1), 3);
        assert_eq!(r.mul(2, 2), 0);
        assert_eq!(r.neg(1), 3);
        let r16 = Ring::new(16).unwrap();
        assert_eq!(r16.add(0xffff, 1), 0);
    }

    #[test]
    fn unit_inverses() {
        for k in 1..=16 {
            let r = Ring::new(k).unwrap();
            for a in (1..r.modulus().min(4096)).step_by(2) {
                let inv = r.inv_unit(a as Elem).unwrap();
                assert_eq!(r.mul(a as Elem, inv), 1, "k={k} a={a}");
            }
            assert_eq!(r.inv_unit(2 & r.mask()), None);
        }
    }
}
