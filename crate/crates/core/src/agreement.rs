//! Exact agreement fractions.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Elem;

/// `matches / total`, kept as two exact integers.
///
/// Full-cube agreements have a power-of-two total. Agreements over an
/// arbitrary subset of inputs carry the `restricted` marker and may have any
/// positive total.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AgreementRepr", into = "AgreementRepr")]
pub struct Agreement {
    matches: BigUint,
    total: BigUint,
    restricted: bool,
}

fn is_power_of_two(v: &BigUint) -> bool {
    !v.is_zero() && v.count_ones() == 1
}

impl Agreement {
    pub fn new(matches: u64, total: u64) -> Result<Self> {
        Self::from_big(matches.into(), total.into())
    }

    pub fn from_big(matches: BigUint, total: BigUint) -> Result<Self> {
        if !is_power_of_two(&total) {
            return Err(Error::InvalidAgreement {
                matches,
                total,
                reason: "total is not a power of two",
            });
        }
        Self::build(matches, total, false)
    }

    pub fn restricted(matches: u64, total: u64) -> Result<Self> {
        Self::restricted_big(matches.into(), total.into())
    }

    pub fn restricted_big(matches: BigUint, total: BigUint) -> Result<Self> {
        if total.is_zero() {
            return Err(Error::InvalidAgreement {
                matches,
                total,
                reason: "empty domain",
            });
        }
        Self::build(matches, total, true)
    }

    fn build(matches: BigUint, total: BigUint, restricted: bool) -> Result<Self> {
        if matches > total {
            return Err(Error::InvalidAgreement {
                matches,
                total,
                reason: "matches exceed total",
            });
        }
        Ok(Agreement {
            matches,
            total,
            restricted,
        })
    }

    pub fn matches(&self) -> &BigUint {
        &self.matches
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn is_restricted(&self) -> bool {
        self.restricted
    }

    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.matches.clone().into(), self.total.clone().into())
    }

    /// Float value, for reports only.
    pub fn to_f64(&self) -> f64 {
        match (self.matches.to_f64(), self.total.to_f64()) {
            (Some(m), Some(t)) if t.is_finite() => m / t,
            _ => {
                // totals beyond f64 range: shift both down to keep 64 significant bits
                let shift = self.total.bits().saturating_sub(64);
                let m = (&self.matches >> shift).to_f64().unwrap_or(0.0);
                let t = (&self.total >> shift).to_f64().unwrap_or(1.0);
                m / t
            }
        }
    }

    /// Compares the two fractions by value.
    pub fn cmp_value(&self, other: &Agreement) -> Ordering {
        (&self.matches * &other.total).cmp(&(&other.matches * &self.total))
    }

    pub fn cmp_ratio(&self, value: &BigRational) -> Ordering {
        self.ratio().cmp(value)
    }

    pub fn is_perfect(&self) -> bool {
        self.matches == self.total
    }

    pub fn at_least_half(&self) -> bool {
        &self.matches * 2u32 >= self.total
    }

    pub fn one_half() -> BigRational {
        BigRational::new(One::one(), 2.into())
    }
}

impl fmt::Display for Agreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.matches, self.total)
    }
}

/// Exact agreement between two equal-length vectors of ring elements.
pub fn agreement(a: &[Elem], b: &[Elem]) -> Result<Agreement> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if !a.len().is_power_of_two() {
        return Err(Error::NotPowerOfTwoLength(a.len()));
    }
    let matches = a.iter().zip(b).filter(|(x, y)| x == y).count();
    Agreement::new(matches as u64, a.len() as u64)
}

/// Integers that fit in a u64 serialize as JSON numbers, larger ones as
/// decimal strings.
pub(crate) mod big_json {
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Small(u64),
        Big(String),
    }

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        match v.to_u64() {
            Some(x) => Repr::Small(x),
            None => Repr::Big(v.to_str_radix(10)),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Small(x) => Ok(x.into()),
            Repr::Big(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct AgreementRepr {
    #[serde(with = "big_json")]
    matches: BigUint,
    #[serde(with = "big_json")]
    total: BigUint,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    restricted: bool,
}

impl TryFrom<AgreementRepr> for Agreement {
    type Error = Error;

    fn try_from(r: AgreementRepr) -> Result<Self> {
        if r.restricted {
            Agreement::restricted_big(r.matches, r.total)
        } else {
            Agreement::from_big(r.matches, r.total)
        }
    }
}

impl From<Agreement> for AgreementRepr {
    fn from(a: Agreement) -> Self {
        AgreementRepr {
            matches: a.matches,
            total: a.total,
            restricted: a.restricted,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_and_opposite_vectors() {
        let a = vec![0, 1, 2, 3];
        assert_eq!(agreement(&a, &a).unwrap(), Agreement::new(4, 4).unwrap());
        let b = vec![1, 2, 3, 0];
        assert_eq!(agreement(&a, &b).unwrap(), Agreement::new(0, 4).unwrap());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(matches!(
            agreement(&[0, 1], &[0]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn invariants_enforced() {
        assert!(Agreement::new(5, 4).is_err());
        assert!(Agreement::new(1, 6).is_err());
        assert!(Agreement::restricted(1, 6).is_ok());
        assert!(Agreement::restricted(0, 0).is_err());
    }

    #[test]
    fn comparison_is_by_value() {
        let a = Agreement::new(2, 4).unwrap();
        let b = Agreement::new(4, 8).unwrap();
        assert_eq!(a.cmp_value(&b), Ordering::Equal);
        assert_ne!(a, b);
        assert!(a.at_least_half());
    }

    #[test]
    fn json_shape() {
        let a = Agreement::new(6, 8).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"matches":6,"total":8}"#);
        let huge = Agreement::from_big(BigUint::from(1u8) << 100, BigUint::from(1u8) << 100).unwrap();
        let s = serde_json::to_string(&huge).unwrap();
        assert!(s.contains("\"1267650600228229401496703205376\""));
        let back: Agreement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, huge);
        let r = Agreement::restricted(3, 5).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"matches":3,"total":5,"restricted":true}"#);
        assert!(serde_json::from_str::<Agreement>(r#"{"matches":3,"total":5}"#).is_err());
    }

    #[test]
    fn float_conversion_of_huge_totals() {
        let total = BigUint::from(1u8) << 2000;
        let matches = &total >> 1;
        let a = Agreement::from_big(matches, total).unwrap();
        assert!((a.to_f64() - 0.5).abs() < 1e-12);
    }
}
