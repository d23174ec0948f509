use serde::Serialize;

use crate::agreement::{agreement, Agreement};
use crate::boolfn::BoolFn;
use crate::error::{Error, Result};
use crate::poly::RingPoly;
use crate::ring::{Elem, Ring};

/// The k-lift of a Boolean function: 0 where F is 0, 2^(k-1) where F is 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedFn {
    n: u32,
    k: u32,
    values: Vec<Elem>,
}

pub fn k_lift(f: &BoolFn, k: u32) -> Result<LiftedFn> {
    let ring = Ring::new(k)?;
    let half = ring.half();
    Ok(LiftedFn {
        n: f.n(),
        k,
        values: f.iter().map(|b| if b { half } else { 0 }).collect(),
    })
}

impl LiftedFn {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    /// agr(F_k, P), requiring P to live over the same ring and cube.
    pub fn agreement_with(&self, p: &RingPoly) -> Result<Agreement> {
        if p.k() != self.k {
            return Err(Error::RingMismatch {
                left: self.k,
                right: p.k(),
            });
        }
        if p.n() != self.n {
            return Err(Error::LengthMismatch {
                left: 1 << self.n,
                right: 1 << p.n(),
            });
        }
        agreement(&self.values, &p.eval_all()?)
    }
}
