//! Best agreement between a lifted Boolean function and degree-d
//! polynomials over Z/2^k.

mod exact;
mod heuristic;

use std::cmp::Ordering;
use std::time::Duration;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::agreement::{big_json, Agreement};
use crate::boolfn::BoolFn;
use crate::error::Result;
use crate::lift::k_lift;
use crate::poly::{monomial_count, RingPoly};

pub use exact::{gamma_exact, gamma_exact_with, ExactOptions, DEFAULT_BUDGET};
pub use heuristic::{gamma_heuristic, MAX_HEURISTIC_VARS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exact,
    Heuristic,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GammaResult {
    pub gamma: Agreement,
    pub witness: RingPoly,
    pub mode: SearchMode,
    #[serde(with = "big_json")]
    pub search_space_size: BigUint,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl GammaResult {
    /// Recomputes the witness's agreement with the k-lift of `f`.
    pub fn recheck(&self, f: &BoolFn) -> Result<bool> {
        let lifted = k_lift(f, self.witness.k())?;
        Ok(lifted.agreement_with(&self.witness)? == self.gamma)
    }
}

/// (2^k)^binom(n, <= d).
pub fn search_space_size(n: u32, d: u32, k: u32) -> BigUint {
    BigUint::from(1u8) << (u64::from(k) * monomial_count(n, d))
}

/// gamma_{d,k+1}(F) >= gamma_{d,k}(F).
pub fn gamma_monotone_check(f: &BoolFn, d: u32, k: u32, budget: u128) -> Result<bool> {
    let lo = gamma_exact(f, d, k, budget)?;
    let hi = gamma_exact(f, d, k + 1, budget)?;
    Ok(hi.gamma.cmp_value(&lo.gamma) != Ordering::Less)
}

/// Above 1 - 2^-d the best agreement over Z/2^k equals the binary one, and
/// for d = 1 they are always equal.
pub fn gamma_collapse_check(f: &BoolFn, d: u32, k: u32, budget: u128) -> Result<bool> {
    let gk = gamma_exact(f, d, k, budget)?.gamma;
    let g1 = gamma_exact(f, d, 1, budget)?.gamma;
    Ok(collapse_holds(&gk, &g1, d))
}

pub(crate) fn collapse_holds(gk: &Agreement, g1: &Agreement, d: u32) -> bool {
    let equal = gk.cmp_value(g1) == Ordering::Equal;
    // gk > 1 - 2^-d  <=>  (total - matches) * 2^d < total
    let above = (gk.total() - gk.matches()) << d < *gk.total();
    (!above || equal) && (d != 1 || equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::majority;

    #[test]
    fn collapse_predicate() {
        let a = |m, t| Agreement::new(m, t).unwrap();
        assert!(collapse_holds(&a(7, 8), &a(7, 8), 2));
        assert!(!collapse_holds(&a(7, 8), &a(6, 8), 2));
        // 3/4 is not above 1 - 1/4
        assert!(collapse_holds(&a(6, 8), &a(5, 8), 2));
        assert!(!collapse_holds(&a(6, 8), &a(5, 8), 1));
    }

    #[test]
    fn checks_on_majority() {
        let maj = majority(3).unwrap();
        assert!(gamma_monotone_check(&maj, 1, 1, DEFAULT_BUDGET).unwrap());
        assert!(gamma_collapse_check(&maj, 1, 2, DEFAULT_BUDGET).unwrap());
        let one = BoolFn::from_fn(3, |_| true).unwrap();
        assert!(gamma_monotone_check(&one, 2, 1, DEFAULT_BUDGET).unwrap());
        assert!(gamma_collapse_check(&one, 2, 3, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn parity_pair_collapses() {
        let f = BoolFn::from_fn(4, |x| (x & 0b11).count_ones() % 2 == 1).unwrap();
        let g = gamma_exact(&f, 2, 2, DEFAULT_BUDGET).unwrap();
        assert!(g.gamma.is_perfect());
        assert!(gamma_collapse_check(&f, 2, 2, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn monotone_on_random_functions() {
        for seed in 0..5 {
            let f = BoolFn::random(4, seed).unwrap();
            assert!(gamma_monotone_check(&f, 2, 1, DEFAULT_BUDGET).unwrap());
        }
    }

    #[test]
    fn space_size() {
        assert_eq!(search_space_size(3, 1, 2), BigUint::from(256u32));
        assert_eq!(search_space_size(5, 2, 2), BigUint::from(1u64 << 32));
    }
}
