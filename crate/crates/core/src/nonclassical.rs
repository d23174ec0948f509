//! Non-classical polynomials: torus-valued functions
//! alpha + sum over (mask, level) of x^mask / 2^level (mod 1), with every
//! value a dyadic rational.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::agreement::Agreement;
use crate::boolfn::{check_vars, BoolFn};
use crate::error::{Error, Result};
use crate::poly::{mobius_interpolate, RingPoly, DEFAULT_TABLE_BUDGET};
use crate::ring::{Elem, Ring};

/// `num / 2^log_den` in [0, 1), always in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dyadic {
    num: u32,
    log_den: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, log_den: 0 };

    /// Reduces `num / 2^log_den` mod 1.
    pub fn new(num: u64, log_den: u32) -> Result<Self> {
        if log_den > Ring::MAX_K {
            return Err(Error::invalid(format!(
                "denominator 2^{log_den} above 2^{}",
                Ring::MAX_K
            )));
        }
        let mut num = num & ((1u64 << log_den) - 1);
        let mut log_den = log_den;
        if num == 0 {
            return Ok(Self::ZERO);
        }
        let tz = num.trailing_zeros();
        num >>= tz;
        log_den -= tz;
        Ok(Dyadic {
            num: num as u32,
            log_den,
        })
    }

    pub fn num(self) -> u32 {
        self.num
    }

    pub fn log_den(self) -> u32 {
        self.log_den
    }

    /// Numerator over 2^depth, for depth >= log_den.
    pub fn numerator_at(self, depth: u32) -> u32 {
        debug_assert!(depth >= self.log_den);
        self.num << (depth - self.log_den)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.log_den == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, 1u64 << self.log_den)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "NcRepr", into = "NcRepr")]
pub struct NCPoly {
    n: u32,
    depth: u32,
    shift_num: u32,
    terms: BTreeSet<(u32, u32)>,
}

impl NCPoly {
    /// Builds the polynomial `shift + sum x^mask / 2^level`. A term with
    /// mask 0 is a constant and is folded into the shift; repeated terms are
    /// rejected since normal-form coefficients are 0 or 1.
    pub fn new(n: u32, shift: Dyadic, terms: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        check_vars(n)?;
        let mut set = BTreeSet::new();
        let mut constants = Vec::new();
        for (mask, level) in terms {
            if u64::from(mask) >= 1u64 << n {
                return Err(Error::OutOfRange {
                    value: mask.into(),
                    n,
                });
            }
            if !(1..=Ring::MAX_K).contains(&level) {
                return Err(Error::invalid(format!("level {level} outside 1..=16")));
            }
            if mask == 0 {
                constants.push(level);
            } else if !set.insert((mask, level)) {
                return Err(Error::invalid(format!(
                    "term (mask {mask:#x}, level {level}) repeated"
                )));
            }
        }
        let mut shift = shift;
        for level in constants {
            let depth = shift.log_den().max(level);
            shift = Dyadic::new(
                u64::from(shift.numerator_at(depth)) + (1u64 << (depth - level)),
                depth,
            )?;
        }
        let depth = set
            .iter()
            .map(|(_, l)| *l)
            .max()
            .unwrap_or(0)
            .max(shift.log_den())
            .max(1);
        Ok(NCPoly {
            n,
            depth,
            shift_num: shift.numerator_at(depth),
            terms: set,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn shift(&self) -> Dyadic {
        Dyadic::new(self.shift_num.into(), self.depth).expect("depth within range")
    }

    pub fn shift_num(&self) -> u32 {
        self.shift_num
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.terms.iter().copied()
    }

    /// max over terms of popcount(mask) + level - 1; 0 for a bare shift.
    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, l)| m.count_ones() + l - 1)
            .max()
            .unwrap_or(0)
    }

    /// Value at x as a numerator over 2^depth.
    pub fn eval_numerator(&self, x: u32) -> u32 {
        let modulus_mask = (1u64 << self.depth) - 1;
        let sum = self
            .terms
            .iter()
            .filter(|(m, _)| m & !x == 0)
            .fold(u64::from(self.shift_num), |acc, (_, l)| {
                acc + (1u64 << (self.depth - l))
            });
        (sum & modulus_mask) as u32
    }

    pub fn eval(&self, x: u32) -> Dyadic {
        Dyadic::new(self.eval_numerator(x).into(), self.depth).expect("depth within range")
    }

    fn numerators(&self) -> Result<Vec<Elem>> {
        if 1u64 << self.n > DEFAULT_TABLE_BUDGET {
            return Err(Error::Capacity {
                n: self.n,
                budget: DEFAULT_TABLE_BUDGET,
            });
        }
        Ok((0..(1u32 << self.n))
            .map(|x| self.eval_numerator(x) as Elem)
            .collect())
    }
}

/// P(x) / 2^k as a non-classical polynomial: bit j of a coefficient c on
/// mask S contributes the term x^S / 2^(k-j).
pub fn nc_from_ring(p: &RingPoly) -> Result<NCPoly> {
    let k = p.k();
    let mut shift = Dyadic::ZERO;
    let mut terms = Vec::new();
    for (mask, c) in p.terms() {
        if mask == 0 {
            shift = Dyadic::new(c.into(), k)?;
            continue;
        }
        for j in 0..k {
            if c >> j & 1 == 1 {
                terms.push((mask, k - j));
            }
        }
    }
    NCPoly::new(p.n(), shift, terms)
}

/// The ring polynomial over Z/2^depth whose value at x is the numerator of
/// P(x) over 2^depth, found by interpolating those numerators.
pub fn nc_to_ring(p: &NCPoly, target_d: u32) -> Result<RingPoly> {
    mobius_interpolate(&p.numerators()?, p.depth(), target_d)
}

/// Fraction of x with P(x) = F(x)/2.
pub fn nc_boolean_agreement(p: &NCPoly, f: &BoolFn) -> Result<Agreement> {
    if p.n() != f.n() {
        return Err(Error::LengthMismatch {
            left: 1 << p.n(),
            right: f.len(),
        });
    }
    let half = 1u32 << (p.depth() - 1);
    let matches = (0..(1u32 << p.n()))
        .filter(|x| p.eval_numerator(*x) == if f.get(*x) { half } else { 0 })
        .count();
    Agreement::new(matches as u64, 1u64 << p.n())
}

#[derive(Serialize, Deserialize)]
struct NcTerm {
    mask: u32,
    level: u32,
}

#[derive(Serialize, Deserialize)]
struct NcRepr {
    n: u32,
    depth: u32,
    shift_num: u32,
    terms: Vec<NcTerm>,
}

impl TryFrom<NcRepr> for NCPoly {
    type Error = Error;

    fn try_from(r: NcRepr) -> Result<Self> {
        if !(1..=Ring::MAX_K).contains(&r.depth) || u64::from(r.shift_num) >= 1u64 << r.depth {
            return Err(Error::Format(format!(
                "shift numerator {} does not fit depth {}",
                r.shift_num, r.depth
            )));
        }
        if r.terms.iter().any(|t| t.mask == 0) {
            return Err(Error::Format("constant terms belong in the shift".into()));
        }
        let p = NCPoly::new(
            r.n,
            Dyadic::new(r.shift_num.into(), r.depth)?,
            r.terms.iter().map(|t| (t.mask, t.level)),
        )?;
        if p.depth != r.depth {
            return Err(Error::Format(format!(
                "stated depth {} but the polynomial has depth {}",
                r.depth, p.depth
            )));
        }
        Ok(p)
    }
}

impl From<NCPoly> for NcRepr {
    fn from(p: NCPoly) -> Self {
        NcRepr {
            n: p.n,
            depth: p.depth,
            shift_num: p.shift_num,
            terms: p
                .terms
                .iter()
                .map(|(mask, level)| NcTerm {
                    mask: *mask,
                    level: *level,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::sym_witness;
    use crate::lift::k_lift;
    use proptest::prelude::*;

    fn dy(num: u64, log_den: u32) -> Dyadic {
        Dyadic::new(num, log_den).unwrap()
    }

    #[test]
    fn dyadic_normalises() {
        assert_eq!(dy(2, 2), dy(1, 1));
        assert_eq!(dy(4, 2), Dyadic::ZERO);
        assert_eq!(dy(5, 2), dy(1, 2));
        assert_eq!(dy(3, 3).to_string(), "3/8");
        assert_eq!(Dyadic::ZERO.to_string(), "0");
    }

    #[test]
    fn eval_examples() {
        let half_x1 = NCPoly::new(1, Dyadic::ZERO, [(1, 1)]).unwrap();
        assert_eq!(half_x1.eval(1), dy(1, 1));
        let quarter_x1 = NCPoly::new(1, Dyadic::ZERO, [(1, 2)]).unwrap();
        assert_eq!(quarter_x1.eval(1), dy(1, 2));
        assert_eq!(quarter_x1.eval(0), Dyadic::ZERO);
        let c = NCPoly::new(3, dy(1, 2), []).unwrap();
        assert!((0..8).all(|x| c.eval(x) == dy(1, 2)));
        assert_eq!(c.depth(), 2);
        assert_eq!(c.degree(), 0);
    }

    #[test]
    fn degree_and_depth() {
        let p = NCPoly::new(2, Dyadic::ZERO, [(1, 2)]).unwrap();
        assert_eq!((p.degree(), p.depth()), (2, 2));
        let classical = NCPoly::new(3, Dyadic::ZERO, [(0b011, 1), (0b110, 1), (0b100, 1)]).unwrap();
        assert_eq!((classical.degree(), classical.depth()), (2, 1));
        assert!(NCPoly::new(2, Dyadic::ZERO, [(1, 2), (1, 2)]).is_err());
        assert!(NCPoly::new(2, Dyadic::ZERO, [(1, 17)]).is_err());
        // a constant term folds into the shift
        let folded = NCPoly::new(1, dy(1, 2), [(0, 2)]).unwrap();
        assert_eq!(folded.shift(), dy(1, 1));
        assert_eq!(folded.depth(), 1);
    }

    #[test]
    fn from_ring_examples() {
        let x1 = RingPoly::from_terms(1, 2, 1, [(1, 1)]).unwrap();
        assert_eq!(nc_from_ring(&x1).unwrap().eval(1), dy(1, 2));
        let p = RingPoly::from_terms(2, 2, 1, [(1, 2), (2, 1)]).unwrap();
        let q = nc_from_ring(&p).unwrap();
        assert!(q.degree() <= 2);
        for x in 0..4 {
            assert_eq!(q.eval(x), dy(p.eval(x).into(), 2));
        }
        let zero = nc_from_ring(&RingPoly::zero(3, 2, 1).unwrap()).unwrap();
        assert_eq!(zero.shift(), Dyadic::ZERO);
        assert_eq!(zero.terms().count(), 0);
    }

    #[test]
    fn to_ring_examples() {
        let half_x1 = NCPoly::new(1, Dyadic::ZERO, [(1, 1)]).unwrap();
        assert_eq!(nc_to_ring(&half_x1, 1).unwrap(), RingPoly::from_terms(1, 1, 1, [(1, 1)]).unwrap());
        // x1/4 has degree 2 but its numerator over Z/4 is x1
        let quarter = NCPoly::new(2, Dyadic::ZERO, [(1, 2)]).unwrap();
        assert_eq!(nc_to_ring(&quarter, 1).unwrap(), RingPoly::from_terms(2, 2, 1, [(1, 1)]).unwrap());
        let cross = NCPoly::new(2, Dyadic::ZERO, [(0b11, 2), (1, 1)]).unwrap();
        assert!(matches!(nc_to_ring(&cross, 1), Err(Error::DegreeExceeded { actual: 2, bound: 1 })));
    }

    #[test]
    fn boolean_agreement_examples() {
        let f = BoolFn::random(4, 3).unwrap();
        let classical = nc_from_ring(&crate::poly::mobius_interpolate(&f.iter().map(Elem::from).collect::<Vec<_>>(), 1, 4).unwrap()).unwrap();
        assert!(nc_boolean_agreement(&classical, &f).unwrap().is_perfect());
        let quarter = NCPoly::new(4, dy(1, 2), []).unwrap();
        assert_eq!(nc_boolean_agreement(&quarter, &f).unwrap(), Agreement::new(0, 16).unwrap());
    }

    #[test]
    fn witness_from_symmetric_polynomial() {
        for (n, ell) in [(4u32, 2u32), (7, 2), (6, 3), (9, 3)] {
            let p = nc_from_ring(&sym_witness(n, ell).unwrap()).unwrap();
            assert_eq!(p.depth(), 3);
            assert!(p.degree() <= (1 << (ell - 1)) + (1 << (ell - 2)) + 2);
        }
    }

    #[test]
    fn json_shape() {
        let p = NCPoly::new(2, dy(1, 2), [(1, 2), (3, 1)]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"n":2,"depth":2,"shift_num":1,"terms":[{"mask":1,"level":2},{"mask":3,"level":1}]}"#);
        assert_eq!(serde_json::from_str::<NCPoly>(&s).unwrap(), p);
        assert!(serde_json::from_str::<NCPoly>(r#"{"n":2,"depth":3,"shift_num":2,"terms":[]}"#).is_err());
        assert!(serde_json::from_str::<NCPoly>(r#"{"n":2,"depth":1,"shift_num":0,"terms":[{"mask":0,"level":1}]}"#).is_err());
    }

    proptest! {
        #[test]
        fn round_trip_preserves_values(p in crate::poly::tests::arb_poly(6)) {
            let nc = nc_from_ring(&p).unwrap();
            prop_assert!(nc.degree() < p.degree() + p.k());
            for x in 0..(1u32 << p.n()) {
                prop_assert_eq!(nc.eval(x), dy(p.eval(x).into(), p.k()));
            }
            let back = nc_to_ring(&nc, p.degree() + p.k() - 1).unwrap();
            for x in 0..(1u32 << p.n()) {
                prop_assert_eq!(dy(back.eval(x).into(), nc.depth()), nc.eval(x));
            }
        }

        #[test]
        fn conversions_preserve_agreement(p in crate::poly::tests::arb_poly(6), seed in any::<u64>()) {
            let f = BoolFn::random(p.n(), seed).unwrap();
            let nc = nc_from_ring(&p).unwrap();
            let ring_side = k_lift(&f, p.k()).unwrap().agreement_with(&p).unwrap();
            prop_assert_eq!(&nc_boolean_agreement(&nc, &f).unwrap(), &ring_side);
            let back = nc_to_ring(&nc, p.n()).unwrap();
            let back_side = k_lift(&f, back.k()).unwrap().agreement_with(&back).unwrap();
            prop_assert_eq!(&back_side, &ring_side);
        }
    }
}
