//! Multilinear polynomials of bounded degree over Z/2^k.
//!
//! A polynomial is a sparse map from variable-subset masks to nonzero
//! coefficients. Evaluation at `x` sums the coefficients of every mask
//! contained in `x`, so the dense evaluation table is the subset-sum (zeta)
//! transform of the coefficient table and interpolation is its inverse.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::boolfn::check_vars;
use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

/// Default cap on dense tables, in entries (2^28 `u16`s = 512 MiB).
pub const DEFAULT_TABLE_BUDGET: u64 = 1 << 28;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingPoly {
    n: u32,
    ring: Ring,
    d: u32,
    coeffs: BTreeMap<u32, Elem>,
}

impl RingPoly {
    pub fn zero(n: u32, k: u32, d: u32) -> Result<Self> {
        check_vars(n)?;
        Ok(RingPoly {
            n,
            ring: Ring::new(k)?,
            d,
            coeffs: BTreeMap::new(),
        })
    }

    /// Builds a polynomial from `(mask, coeff)` terms. Coefficients are
    /// reduced mod 2^k and repeated masks accumulate.
    pub fn from_terms(
        n: u32,
        k: u32,
        d: u32,
        terms: impl IntoIterator<Item = (u32, u64)>,
    ) -> Result<Self> {
        let mut p = Self::zero(n, k, d)?;
        for (mask, c) in terms {
            p.check_mask(mask)?;
            let c = p.ring.reduce(c);
            let e = p.coeffs.entry(mask).or_insert(0);
            *e = p.ring.add(*e, c);
        }
        p.coeffs.retain(|_, c| *c != 0);
        Ok(p)
    }

    pub fn constant(n: u32, k: u32, d: u32, c: u64) -> Result<Self> {
        Self::from_terms(n, k, d, [(0, c)])
    }

    fn check_mask(&self, mask: u32) -> Result<()> {
        if u64::from(mask) >= 1u64 << self.n {
            return Err(Error::OutOfRange {
                value: mask.into(),
                n: self.n,
            });
        }
        if mask.count_ones() > self.d {
            return Err(Error::MaskAboveDegree {
                mask,
                popcount: mask.count_ones(),
                d: self.d,
            });
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.ring.k()
    }

    #[inline]
    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Degree bound carried by the type.
    #[inline]
    pub fn d(&self) -> u32 {
        self.d
    }

    /// Actual degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(|m| m.count_ones()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, mask: u32) -> Elem {
        self.coeffs.get(&mask).copied().unwrap_or(0)
    }

    /// Nonzero terms in increasing mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, Elem)> + '_ {
        self.coeffs.iter().map(|(m, c)| (*m, *c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Value at input `x` (x_1 is bit 0).
    pub fn eval(&self, x: u32) -> Elem {
        debug_assert!(u64::from(x) < 1u64 << self.n);
        self.coeffs
            .iter()
            .filter(|(m, _)| *m & !x == 0)
            .fold(0, |acc, (_, c)| self.ring.add(acc, *c))
    }

    /// Values at all 2^n inputs via the subset-sum transform.
    pub fn eval_all(&self) -> Result<Vec<Elem>> {
        self.eval_all_with_budget(DEFAULT_TABLE_BUDGET)
    }

    pub fn eval_all_with_budget(&self, budget: u64) -> Result<Vec<Elem>> {
        let len = 1u64 << self.n;
        if len > budget {
            return Err(Error::Capacity {
                n: self.n,
                budget,
            });
        }
        let mut table = vec![0 as Elem; len as usize];
        for (m, c) in &self.coeffs {
            table[*m as usize] = *c;
        }
        zeta_transform(&mut table, self.ring);
        Ok(table)
    }

    /// Coefficientwise reduction to Z/2.
    pub fn project_mod2(&self) -> RingPoly {
        RingPoly {
            n: self.n,
            ring: Ring::binary(),
            d: self.d,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(_, c)| *c & 1 == 1)
                .map(|(m, _)| (*m, 1))
                .collect(),
        }
    }

    /// The image of the polynomial under multiplication by 2^shift into
    /// Z/2^(k+shift), i.e. the embedding used to compare lifts across k.
    pub fn scale_up(&self, shift: u32) -> Result<RingPoly> {
        let ring = Ring::new(self.k() + shift)?;
        Ok(RingPoly {
            n: self.n,
            ring,
            d: self.d,
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, c)| (*m, ((u32::from(*c)) << shift) as Elem & ring.mask()))
                .collect(),
        })
    }

    /// Same polynomial with a different degree bound.
    pub fn with_degree_bound(&self, d: u32) -> Result<RingPoly> {
        Self::from_terms(
            self.n,
            self.k(),
            d,
            self.terms().map(|(m, c)| (m, u64::from(c))),
        )
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// In-place subset-sum transform: `t[x] <- sum_{s ⊆ x} t[s]` mod 2^k.
pub fn zeta_transform(table: &mut [Elem], ring: Ring) {
    debug_assert!(table.len().is_power_of_two());
    let mut step = 1;
    while step < table.len() {
        for block in table.chunks_exact_mut(2 * step) {
            let (lo, hi) = block.split_at_mut(step);
            for (l, h) in lo.iter().zip(hi.iter_mut()) {
                *h = ring.add(*h, *l);
            }
        }
        step *= 2;
    }
}

/// Inverse of [`zeta_transform`].
pub fn mobius_transform(table: &mut [Elem], ring: Ring) {
    debug_assert!(table.len().is_power_of_two());
    let mut step = 1;
    while step < table.len() {
        for block in table.chunks_exact_mut(2 * step) {
            let (lo, hi) = block.split_at_mut(step);
            for (l, h) in lo.iter().zip(hi.iter_mut()) {
                *h = ring.sub(*h, *l);
            }
        }
        step *= 2;
    }
}

/// The unique multilinear polynomial over Z/2^k taking the given values.
/// Values are reduced mod 2^k first.
pub fn mobius_interpolate(values: &[Elem], k: u32, d_max: u32) -> Result<RingPoly> {
    let ring = Ring::new(k)?;
    if !values.len().is_power_of_two() {
        return Err(Error::NotPowerOfTwoLength(values.len()));
    }
    let n = values.len().trailing_zeros();
    check_vars(n)?;
    let mut table: Vec<Elem> = values.iter().map(|v| v & ring.mask()).collect();
    mobius_transform(&mut table, ring);
    let actual = table
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(m, _)| m.count_ones())
        .max()
        .unwrap_or(0);
    if actual > d_max {
        return Err(Error::DegreeExceeded {
            actual,
            bound: d_max,
        });
    }
    Ok(RingPoly {
        n,
        ring,
        d: d_max,
        coeffs: table
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != 0)
            .map(|(m, c)| (m as u32, c))
            .collect(),
    })
}

/// Masks of popcount at most `d` over `n` variables, ordered by
/// (popcount, mask value).
pub fn masks_up_to_degree(n: u32, d: u32) -> Vec<u32> {
    let mut masks: Vec<u32> = (0..(1u32 << n)).filter(|m| m.count_ones() <= d).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
}

/// binom(n, <= d), the number of monomials of degree at most d.
pub fn monomial_count(n: u32, d: u32) -> u64 {
    let mut total = 0u64;
    let mut c = 1u64;
    for i in 0..=d.min(n) {
        total += c;
        c = c * u64::from(n - i) / u64::from(i + 1);
    }
    total
}

#[derive(Serialize, Deserialize)]
struct Term {
    mask: u32,
    coeff: u64,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    n: u32,
    k: u32,
    d: u32,
    terms: Vec<Term>,
}

impl Serialize for RingPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            n: self.n,
            k: self.k(),
            d: self.d,
            terms: self
                .terms()
                .map(|(mask, c)| Term {
                    mask,
                    coeff: c.into(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = PolyRepr::deserialize(d)?;
        if r.terms.windows(2).any(|w| w[0].mask >= w[1].mask) {
            return Err(D::Error::custom("term masks must be strictly increasing"));
        }
        let ring = Ring::new(r.k).map_err(D::Error::custom)?;
        if let Some(t) = r.terms.iter().find(|t| !ring.contains(t.coeff) || t.coeff == 0) {
            return Err(D::Error::custom(format!(
                "coefficient {} for mask {} is not a nonzero element of Z/2^{}",
                t.coeff, t.mask, r.k
            )));
        }
        RingPoly::from_terms(r.n, r.k, r.d, r.terms.into_iter().map(|t| (t.mask, t.coeff)))
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(n: u32, k: u32, d: u32, terms: &[(u32, u64)]) -> RingPoly {
        RingPoly::from_terms(n, k, d, terms.iter().copied()).unwrap()
    }

    #[test]
    fn eval_examples() {
        // 2·x1x2 over Z/4 at (1,1)
        assert_eq!(poly(2, 2, 2, &[(0b11, 2)]).eval(0b11), 2);
        let z = RingPoly::zero(3, 2, 1).unwrap();
        assert!((0..8).all(|x| z.eval(x) == 0));
        // 2x1 + 2x2 over Z/4 at (1,1) wraps to 0
        assert_eq!(poly(2, 2, 1, &[(0b01, 2), (0b10, 2)]).eval(0b11), 0);
    }

    #[test]
    fn eval_all_examples() {
        assert_eq!(poly(1, 1, 1, &[(1, 1)]).eval_all().unwrap(), vec![0, 1]);
        assert_eq!(
            poly(2, 2, 1, &[(0b01, 2), (0b10, 1)]).eval_all().unwrap(),
            vec![0, 2, 1, 3]
        );
        assert_eq!(poly(3, 3, 0, &[(0, 5)]).eval_all().unwrap(), vec![5; 8]);
    }

    #[test]
    fn eval_all_respects_budget() {
        let p = RingPoly::zero(12, 2, 1).unwrap();
        assert!(matches!(
            p.eval_all_with_budget(1 << 11),
            Err(Error::Capacity { .. })
        ));
        assert_eq!(p.eval_all_with_budget(1 << 12).unwrap().len(), 4096);
    }

    #[test]
    fn interpolation_examples() {
        // 2-lift of XOR on two variables
        assert_eq!(
            mobius_interpolate(&[0, 2, 2, 0], 2, 2).unwrap(),
            poly(2, 2, 2, &[(0b01, 2), (0b10, 2)])
        );
        assert_eq!(
            mobius_interpolate(&[3; 8], 2, 0).unwrap(),
            poly(3, 2, 0, &[(0, 3)])
        );
        // over Z/2 the x1x2 coefficient 0-1-1+0 vanishes
        assert_eq!(
            mobius_interpolate(&[0, 1, 1, 0], 1, 1).unwrap(),
            poly(2, 1, 1, &[(0b01, 1), (0b10, 1)])
        );
        // same values over Z/4 need the x1x2 term
        assert!(matches!(
            mobius_interpolate(&[0, 1, 1, 0], 2, 1),
            Err(Error::DegreeExceeded { actual: 2, bound: 1 })
        ));
        assert!(mobius_interpolate(&[0, 1, 1], 2, 1).is_err());
    }

    #[test]
    fn projection_examples() {
        assert_eq!(
            poly(2, 2, 1, &[(0b01, 2), (0b10, 1)]).project_mod2(),
            poly(2, 1, 1, &[(0b10, 1)])
        );
        let q = poly(3, 3, 2, &[(0b011, 4), (0b100, 4), (0, 4)]);
        assert!(q.project_mod2().is_zero());
        assert_eq!(
            poly(2, 3, 2, &[(0b11, 3)]).project_mod2(),
            poly(2, 1, 2, &[(0b11, 1)])
        );
    }

    #[test]
    fn construction_invariants() {
        assert!(matches!(
            RingPoly::from_terms(3, 2, 1, [(0b011, 1)]),
            Err(Error::MaskAboveDegree { .. })
        ));
        assert!(RingPoly::from_terms(2, 2, 2, [(0b100, 1)]).is_err());
        // coefficients reduce and zeros vanish
        let p = poly(2, 2, 1, &[(1, 4), (2, 5), (2, 3)]);
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn json_format() {
        let p = poly(3, 2, 2, &[(0b101, 3), (0b001, 1)]);
        let s = p.to_json().unwrap();
        assert_eq!(
            s,
            r#"{"n":3,"k":2,"d":2,"terms":[{"mask":1,"coeff":1},{"mask":5,"coeff":3}]}"#
        );
        assert_eq!(RingPoly::from_json(&s).unwrap(), p);
        let unsorted = r#"{"n":3,"k":2,"d":2,"terms":[{"mask":5,"coeff":3},{"mask":1,"coeff":1}]}"#;
        assert!(RingPoly::from_json(unsorted).is_err());
        let big = r#"{"n":3,"k":2,"d":2,"terms":[{"mask":1,"coeff":4}]}"#;
        assert!(RingPoly::from_json(big).is_err());
    }

    #[test]
    fn masks_and_counts() {
        assert_eq!(masks_up_to_degree(3, 1), vec![0, 1, 2, 4]);
        assert_eq!(masks_up_to_degree(3, 2), vec![0, 1, 2, 4, 3, 5, 6]);
        assert_eq!(monomial_count(5, 2), 16);
        assert_eq!(monomial_count(4, 9), 16);
        assert_eq!(monomial_count(6, 0), 1);
    }

    pub(crate) fn arb_poly(max_n: u32) -> impl Strategy<Value = RingPoly> {
        (1..=max_n, 1u32..=4)
            .prop_flat_map(|(n, k)| (Just(n), Just(k), 0..=n))
            .prop_flat_map(|(n, k, d)| {
                let masks = masks_up_to_degree(n, d);
                let len = masks.len();
                (
                    Just((n, k, d)),
                    proptest::collection::vec(0u64..(1 << k), len),
                    Just(masks),
                )
            })
            .prop_map(|((n, k, d), coeffs, masks)| {
                RingPoly::from_terms(n, k, d, masks.into_iter().zip(coeffs)).unwrap()
            })
    }

    proptest! {
        #[test]
        fn eval_all_matches_pointwise(p in arb_poly(7)) {
            let all = p.eval_all().unwrap();
            for x in 0..(1u32 << p.n()) {
                prop_assert_eq!(all[x as usize], p.eval(x));
            }
        }

        #[test]
        fn interpolation_round_trip(p in arb_poly(10)) {
            let back = mobius_interpolate(&p.eval_all().unwrap(), p.k(), p.n()).unwrap();
            prop_assert_eq!(back.with_degree_bound(p.d()).unwrap(), p);
        }

        #[test]
        fn zero_iff_no_terms(p in arb_poly(8)) {
            let all_zero = p.eval_all().unwrap().iter().all(|v| *v == 0);
            prop_assert_eq!(all_zero, p.is_zero());
        }

        #[test]
        fn schwartz_zippel(p in arb_poly(10)) {
            prop_assume!(!p.is_zero());
            let nonzero = p.eval_all().unwrap().iter().filter(|v| **v != 0).count();
            // fraction of nonzero values is at least 2^-d
            prop_assert!((nonzero as u64) << p.degree() >= 1u64 << p.n());
        }
    }
}
