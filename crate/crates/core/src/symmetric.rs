//! Weight bits, binomial coefficients modulo powers of two, and agreement of
//! symmetric functions computed one Hamming-weight class at a time.
//!
//! A symmetric function on {0,1}^n depends only on |x|, so its agreement with
//! another symmetric function is a sum of binom(n, w) over the weights where
//! the two coincide. This keeps exact computations feasible for n in the
//! thousands.

use num_bigint::BigUint;
use num_traits::One;

use crate::agreement::Agreement;
use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

/// Bit `i` of `n` (|x|_i when `n` is a Hamming weight).
#[inline]
pub fn weight_bit(n: u64, i: u32) -> u8 {
    if i >= 64 {
        0
    } else {
        ((n >> i) & 1) as u8
    }
}

/// S_t evaluated at an input of weight `w`: binom(w, t) mod 2, which by
/// Lucas is the product of |x|_i over the set bits i of t.
#[inline]
pub fn elem_sym_mod2(t: u64, w: u64) -> u8 {
    u8::from(t & !w == 0)
}

/// Borrows in the base-2 subtraction n - m. By Kummer this is the 2-adic
/// valuation of binom(n, m).
pub fn borrow_count(n: u64, m: u64) -> Result<u32> {
    if m > n {
        return Err(Error::Underflow { n, m });
    }
    let mut borrows = 0;
    let mut borrow = 0u64;
    for i in 0..64 {
        let a = (n >> i) & 1;
        let b = ((m >> i) & 1) + borrow;
        borrow = u64::from(a < b);
        borrows += borrow as u32;
    }
    Ok(borrows)
}

/// 2-adic valuation; `None` for zero.
pub fn valuation2(v: u64) -> Option<u32> {
    (v != 0).then(|| v.trailing_zeros())
}

/// binom(n, m) mod 2^k.
///
/// Multiplies the odd parts of numerator and denominator factors modulo 2^k
/// and tracks the power of two separately, so no intermediate value grows
/// beyond 32 bits: binom(n, m) = 2^v * (odd numerator) * (odd denominator)^-1.
pub fn binom_mod_2k(n: u64, m: u64, k: u32) -> Result<Elem> {
    let ring = Ring::new(k)?;
    if m > n {
        return Err(Error::Underflow { n, m });
    }
    let m = m.min(n - m);
    let mask = u64::from(ring.mask());
    let mut v: u64 = 0;
    let mut num: u64 = 1;
    let mut den: u64 = 1;
    for i in 1..=m {
        let top = n - m + i;
        let tz_top = top.trailing_zeros();
        let tz_i = i.trailing_zeros();
        v += u64::from(tz_top);
        v -= u64::from(tz_i);
        num = (num * ((top >> tz_top) & mask)) & mask;
        den = (den * ((i >> tz_i) & mask)) & mask;
    }
    if v >= u64::from(k) {
        return Ok(0);
    }
    let inv = ring.inv_unit(den as Elem).expect("odd denominator");
    let odd = ring.mul(num as Elem, inv);
    Ok(ring.mul(odd, 1 << v))
}

/// Checks that the borrows in n - d equal the 2-adic valuation of ⌊n/d⌋
/// for a power of two d.
pub fn corollary_kummer_check(n: u64, d: u64) -> Result<bool> {
    if !d.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(d));
    }
    if n < d {
        return Err(Error::Underflow { n, m: d });
    }
    Ok(Some(borrow_count(n, d)?) == valuation2(n / d))
}

/// binom(n, w) for every weight w, as exact integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightProfile {
    n: u64,
    counts: Vec<BigUint>,
}

impl WeightProfile {
    pub fn new(n: u64) -> Self {
        let mut counts = Vec::with_capacity(n as usize + 1);
        let mut c = BigUint::one();
        for w in 0..=n {
            counts.push(c.clone());
            c = c * (n - w) / (w + 1);
        }
        WeightProfile { n, counts }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn total(&self) -> BigUint {
        BigUint::one() << self.n
    }

    /// Sum of binom(n, w) over the weights selected by `pred`.
    pub fn mass(&self, mut pred: impl FnMut(u64) -> bool) -> BigUint {
        self.counts
            .iter()
            .enumerate()
            .filter(|(w, _)| pred(*w as u64))
            .map(|(_, c)| c)
            .sum()
    }
}

/// Agreement of two symmetric functions given by their values per weight.
pub fn weight_agreement(
    n: u64,
    mut value_a: impl FnMut(u64) -> Elem,
    mut value_b: impl FnMut(u64) -> Elem,
) -> Agreement {
    let profile = WeightProfile::new(n);
    weight_agreement_with(&profile, |w| value_a(w) == value_b(w))
}

pub(crate) fn weight_agreement_with(
    profile: &WeightProfile,
    pred: impl FnMut(u64) -> bool,
) -> Agreement {
    Agreement::from_big(profile.mass(pred), profile.total()).expect("mass never exceeds 2^n")
}
