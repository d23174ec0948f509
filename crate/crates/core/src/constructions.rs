//! Explicit functions and witness polynomials: Majority, elementary
//! symmetric functions, the S_{2^l} witness over Z/8, and the F_H family
//! with its quadratic witness over Z/4.
//!
//! Functions on 2n variables split their input as x = low n bits,
//! y = high n bits.

use num_bigint::BigUint;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::agreement::Agreement;
use crate::algebra::PointSet;
use crate::boolfn::{check_vars, BoolFn};
use crate::error::{Error, Result};
use crate::poly::RingPoly;
use crate::ring::Elem;
use crate::rng;
use crate::symmetric::{
    binom_mod_2k, elem_sym_mod2, weight_agreement_with, weight_bit, WeightProfile,
};

/// Largest number of monomials a generated witness may have.
pub const MAX_WITNESS_TERMS: u64 = 1 << 24;

pub fn majority(n: u32) -> Result<BoolFn> {
    BoolFn::from_fn(n, |x| 2 * x.count_ones() > n)
}

/// S_t as a Boolean function: binom(|x|, t) mod 2.
pub fn elem_sym_fn(n: u32, t: u32) -> Result<BoolFn> {
    if t > n {
        return Err(Error::invalid(format!("t={t} exceeds n={n}")));
    }
    BoolFn::from_fn(n, |x| elem_sym_mod2(t.into(), x.count_ones().into()) == 1)
}

/// Masks of popcount exactly `t` below 2^n, increasing.
fn masks_of_weight(n: u32, t: u32) -> impl Iterator<Item = u32> {
    let end = 1u64 << n;
    let mut next = (t <= n).then(|| (1u64 << t) - 1);
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= end {
            return None;
        }
        next = if cur == 0 {
            None
        } else {
            // next integer with the same popcount
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            Some(ripple | (((cur ^ ripple) >> 2) / low))
        };
        Some(cur as u32)
    })
}

fn binom_u64(n: u32, t: u32) -> u64 {
    (0..t.min(n)).fold(1u64, |c, i| c * u64::from(n - i) / u64::from(i + 1))
}

/// 2^(l-1) + 2^(l-2).
pub fn sym_degree(ell: u32) -> Result<u32> {
    if !(2..=30).contains(&ell) {
        return Err(Error::invalid(format!("ell={ell} must lie in 2..=30")));
    }
    Ok((1 << (ell - 1)) + (1 << (ell - 2)))
}

/// Sum of all degree-d monomials over Z/8, d = 2^(l-1) + 2^(l-2). Its value
/// at x is binom(|x|, d) mod 8.
pub fn sym_witness(n: u32, ell: u32) -> Result<RingPoly> {
    check_vars(n)?;
    let d = sym_degree(ell)?;
    if d > n {
        return Err(Error::invalid(format!("degree {d} exceeds n={n}")));
    }
    if binom_u64(n, d) > MAX_WITNESS_TERMS {
        return Err(Error::invalid(format!(
            "binom({n}, {d}) monomials exceed the limit of {MAX_WITNESS_TERMS}"
        )));
    }
    RingPoly::from_terms(n, 3, d, masks_of_weight(n, d).map(|m| (m, 1)))
}

/// Exact agreement of the 3-lift of S_{2^l} on n variables with the
/// symmetric witness, summed over Hamming weights.
pub fn sym_separation_agreement(n: u64, ell: u32) -> Result<Agreement> {
    let d = u64::from(sym_degree(ell)?);
    if n < 1 << ell {
        return Err(Error::invalid(format!("2^{ell} exceeds n={n}")));
    }
    let profile = WeightProfile::new(n);
    Ok(weight_agreement_with(&profile, |w| {
        let p = if w < d { 0 } else { binom_mod_2k(w, d, 3).expect("w >= d") };
        p == 4 * Elem::from(weight_bit(w, ell))
    }))
}

/// Weights covered by either sufficient condition for the witness to match:
/// bit l-2 of w is 0, or bits l-2..=l+1 of w read (1, 0, 0, 0).
pub fn lemma_match_condition(w: u64, ell: u32) -> bool {
    let b = |i: u32| weight_bit(w, i);
    b(ell - 2) == 0 || (b(ell - 2) == 1 && b(ell - 1) == 0 && b(ell) == 0 && b(ell + 1) == 0)
}

/// binom(n, w) summed over the weights meeting [`lemma_match_condition`].
pub fn lemma_match_mass(n: u64, ell: u32) -> Result<Agreement> {
    sym_degree(ell)?;
    let profile = WeightProfile::new(n);
    Ok(weight_agreement_with(&profile, |w| {
        lemma_match_condition(w, ell)
    }))
}

/// Monte Carlo estimate of [`sym_separation_agreement`]: the number of
/// matches among `samples` uniform inputs.
pub fn sym_separation_monte_carlo(n: u64, ell: u32, samples: u64, seed: u64) -> Result<u64> {
    let d = u64::from(sym_degree(ell)?);
    let mut prng = rng::seeded(seed);
    let full_words = n / 64;
    let tail = n % 64;
    let mut hits = 0;
    for _ in 0..samples {
        let mut w = 0u64;
        for _ in 0..full_words {
            w += u64::from(prng.next_u64().count_ones());
        }
        if tail > 0 {
            w += u64::from((prng.next_u64() & ((1u64 << tail) - 1)).count_ones());
        }
        let p = if w < d { 0 } else { binom_mod_2k(w, d, 3)? };
        hits += u64::from(p == 4 * Elem::from(weight_bit(w, ell)));
    }
    Ok(hits)
}

/// A d-simple function: a truth table over the low `ell` bits of |x|.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleShift {
    ell: u32,
    table: Vec<bool>,
}

impl SimpleShift {
    pub fn new(ell: u32, table: Vec<bool>) -> Result<Self> {
        if ell > 16 || table.len() != 1 << ell {
            return Err(Error::invalid(format!(
                "shift table needs 2^{ell} entries, got {}",
                table.len()
            )));
        }
        Ok(SimpleShift { ell, table })
    }

    pub fn zero(ell: u32) -> Self {
        Self::constant(ell, false)
    }

    pub fn constant(ell: u32, value: bool) -> Self {
        SimpleShift {
            ell,
            table: vec![value; 1 << ell],
        }
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    /// Value at an input of Hamming weight `w`.
    pub fn at_weight(&self, w: u64) -> bool {
        self.table[(w & ((1 << self.ell) - 1)) as usize]
    }
}

/// (first, second) components of Phi or Psi.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShiftPair {
    pub first: SimpleShift,
    pub second: SimpleShift,
}

impl ShiftPair {
    pub fn zero(ell: u32) -> Self {
        ShiftPair {
            first: SimpleShift::zero(ell),
            second: SimpleShift::zero(ell),
        }
    }
}

fn check_power_of_two_degree(n: u32, d: u32) -> Result<u32> {
    if !d.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(d.into()));
    }
    if 2 * d > n {
        return Err(Error::invalid(format!("2d={} exceeds n={n}", 2 * d)));
    }
    if 2 * n > crate::boolfn::MAX_VARS {
        return Err(Error::TooManyVars {
            n: 2 * n,
            max: crate::boolfn::MAX_VARS,
        });
    }
    Ok(d.trailing_zeros())
}

fn check_h(n: u32, h: &BoolFn) -> Result<()> {
    if h.n() != 2 * n {
        return Err(Error::invalid(format!(
            "H must have 2n={} variables, got {}",
            2 * n,
            h.n()
        )));
    }
    Ok(())
}

fn halves(n: u32, input: u32) -> (u64, u64) {
    let low = input & ((1 << n) - 1);
    (low.count_ones().into(), (input >> n).count_ones().into())
}

/// F_H on 2n variables for a power of two d.
pub fn construct_f_h(n: u32, d: u32, h: &BoolFn) -> Result<BoolFn> {
    check_power_of_two_degree(n, d)?;
    check_h(n, h)?;
    let (d, d2) = (u64::from(d), 2 * u64::from(d));
    BoolFn::from_fn(2 * n, |input| {
        let (wx, wy) = halves(n, input);
        match (elem_sym_mod2(d, wx), elem_sym_mod2(d, wy)) {
            (0, 0) => false,
            (1, 0) => elem_sym_mod2(d2, wy) == 1,
            (0, 1) => elem_sym_mod2(d2, wx) == 1,
            _ => h.get(input),
        }
    })
}

fn check_shifts(ell: u32, phi: &ShiftPair, psi: &ShiftPair) -> Result<()> {
    for s in [&phi.first, &phi.second, &psi.first, &psi.second] {
        if s.ell() != ell {
            return Err(Error::invalid(format!(
                "shift depends on {} weight bits, expected {ell}",
                s.ell()
            )));
        }
    }
    Ok(())
}

/// F_{H,Phi,Psi}; equals F_H when both shift pairs are zero.
pub fn construct_f_h_general(
    n: u32,
    d: u32,
    h: &BoolFn,
    phi: &ShiftPair,
    psi: &ShiftPair,
) -> Result<BoolFn> {
    let ell = check_power_of_two_degree(n, d)?;
    check_h(n, h)?;
    check_shifts(ell, phi, psi)?;
    let (d, d2) = (u64::from(d), 2 * u64::from(d));
    BoolFn::from_fn(2 * n, |input| {
        let (wx, wy) = halves(n, input);
        let sx = elem_sym_mod2(d, wx) == 1;
        let sy = elem_sym_mod2(d, wy) == 1;
        let x_off = sx != phi.first.at_weight(wx);
        let y_off = sy != psi.first.at_weight(wy);
        match (x_off, y_off) {
            (false, false) => false,
            (true, false) => (elem_sym_mod2(d2, wy) == 1) ^ psi.second.at_weight(wy),
            (false, true) => (elem_sym_mod2(d2, wx) == 1) ^ phi.second.at_weight(wx),
            (true, true) => h.get(input),
        }
    })
}

/// binom(|x|, d) * binom(|y|, d) expanded over Z/4 on 2n variables.
pub fn quad_witness(n: u32, d: u32) -> Result<RingPoly> {
    if 2 * n > crate::boolfn::MAX_VARS {
        return Err(Error::TooManyVars {
            n: 2 * n,
            max: crate::boolfn::MAX_VARS,
        });
    }
    if d > n {
        return Err(Error::invalid(format!("d={d} exceeds n={n}")));
    }
    let side = binom_u64(n, d);
    if side.saturating_mul(side) > MAX_WITNESS_TERMS {
        return Err(Error::invalid("quadratic witness has too many monomials"));
    }
    let xs: Vec<u32> = masks_of_weight(n, d).collect();
    let terms = xs
        .iter()
        .flat_map(|a| xs.iter().map(move |b| (a | (b << n), 1)))
        .collect::<Vec<_>>();
    RingPoly::from_terms(2 * n, 2, 2 * d, terms)
}

/// Points where F_{H,Phi,Psi} outputs H.
pub fn exception_set(n: u32, d: u32, phi: &ShiftPair, psi: &ShiftPair) -> Result<PointSet> {
    let ell = check_power_of_two_degree(n, d)?;
    check_shifts(ell, phi, psi)?;
    let d = u64::from(d);
    PointSet::new(
        2 * n,
        (0..(1u32 << (2 * n))).filter(|input| {
            let (wx, wy) = halves(n, *input);
            (elem_sym_mod2(d, wx) == 1) != phi.first.at_weight(wx)
                && (elem_sym_mod2(d, wy) == 1) != psi.first.at_weight(wy)
        }),
    )
}

/// |{(x, y) : S_d(x) = S_d(y) = 1}| on 2n variables.
pub fn both_odd_count(n: u32, d: u32) -> Result<BigUint> {
    let profile = WeightProfile::new(n.into());
    let side = profile.mass(|w| elem_sym_mod2(d.into(), w) == 1);
    Ok(&side * &side)
}

/// Agreement of F with G over the points of S only.
pub fn agr_restricted(f: &BoolFn, g: &[Elem], s: &PointSet) -> Result<Agreement> {
    if g.len() != f.len() {
        return Err(Error::LengthMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    if s.n() != f.n() {
        return Err(Error::invalid(format!(
            "point set has {} variables, function has {}",
            s.n(),
            f.n()
        )));
    }
    let matches = s
        .points()
        .iter()
        .filter(|x| Elem::from(f.get(**x)) == g[**x as usize])
        .count();
    Agreement::restricted(matches as u64, s.len() as u64)
}
