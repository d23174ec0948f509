//! Exhaustive search over every coefficient vector.
//!
//! Evaluations of the current polynomial on all 2^n inputs are held
//! bit-sliced: for each 64-input word there are k planes, plane i holding
//! bit i of the value at each input. Coefficient vectors are visited in a
//! modular Gray code of radix 2^k, so every step adds 1 to exactly one
//! coefficient, which adds the monomial's indicator to the evaluations with
//! a ripple carry across the planes.
//!
//! Gray digit j is the coefficient at lex position m-1-j, so the leading lex
//! positions change slowest. Parallel work fixes a prefix of those positions
//! per task; each task keeps its own best and the results are reduced in
//! task order. The winner is the largest agreement with the lexicographically
//! smallest coefficient vector, independent of how the work is split.

use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{search_space_size, GammaResult, SearchMode};
use crate::agreement::Agreement;
use crate::boolfn::{tail_mask, BoolFn};
use crate::error::{Error, Result};
use crate::poly::{masks_up_to_degree, RingPoly};
use crate::ring::{Elem, Ring};

/// Default enumeration cap: 2^36 coefficient vectors.
pub const DEFAULT_BUDGET: u128 = 1 << 36;

/// Hard cap on the number of Gray-code steps a single search may take.
const MAX_SPACE_BITS: u64 = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    pub budget: u128,
    /// Number of leading lex positions fixed per parallel task. `None`
    /// picks a value from the size of the space.
    pub prefix: Option<u32>,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            budget: DEFAULT_BUDGET,
            prefix: None,
        }
    }
}

pub fn gamma_exact(f: &BoolFn, d: u32, k: u32, budget: u128) -> Result<GammaResult> {
    gamma_exact_with(
        f,
        d,
        k,
        ExactOptions {
            budget,
            prefix: None,
        },
    )
}

pub fn gamma_exact_with(f: &BoolFn, d: u32, k: u32, opts: ExactOptions) -> Result<GammaResult> {
    let start = Instant::now();
    let ring = Ring::new(k)?;
    let n = f.n();
    let masks = masks_up_to_degree(n, d);
    let m = masks.len() as u32;
    let size = search_space_size(n, d, k);
    let bits = u64::from(k) * u64::from(m);
    if size > BigUint::from(opts.budget) || bits > MAX_SPACE_BITS {
        return Err(Error::BudgetExceeded {
            size,
            budget: opts.budget,
        });
    }

    let prefix = opts
        .prefix
        .unwrap_or_else(|| default_prefix(bits, k, m))
        .min(m);
    let searcher = Searcher::new(f, ring, &masks, prefix);
    let tasks = 1u64 << (u64::from(k) * u64::from(prefix));
    let locals: Vec<Best> = (0..tasks)
        .into_par_iter()
        .map(|task| searcher.run(task))
        .collect();
    let best = locals
        .into_iter()
        .reduce(|a, b| if b.beats(&a) { b } else { a })
        .expect("at least one task");

    let witness = RingPoly::from_terms(
        n,
        k,
        d,
        masks
            .iter()
            .copied()
            .zip(best.coeffs.iter().map(|c| u64::from(*c))),
    )?;
    let gamma = Agreement::new(best.matches, 1u64 << n)?;
    debug_assert!(gamma.at_least_half());
    Ok(GammaResult {
        gamma,
        witness,
        mode: SearchMode::Exact,
        search_space_size: size,
        elapsed: start.elapsed(),
    })
}

/// Enough tasks to spread over a machine's cores, without making tiny
/// searches pay for task setup.
fn default_prefix(bits: u64, k: u32, m: u32) -> u32 {
    if bits < 20 {
        return 0;
    }
    let want = 8u32.div_ceil(k);
    want.min(m.saturating_sub(1))
}

#[derive(Debug, Clone)]
struct Best {
    matches: u64,
    coeffs: Vec<Elem>,
}

impl Best {
    fn beats(&self, other: &Best) -> bool {
        self.matches > other.matches
            || (self.matches == other.matches && self.coeffs < other.coeffs)
    }
}

struct Searcher<'a> {
    ring: Ring,
    k: usize,
    words: usize,
    masks: &'a [u32],
    prefix: usize,
    /// Target planes, laid out like the evaluation planes.
    target: Vec<u64>,
    valid: Vec<u64>,
    /// Indicator words of each monomial, indexed by Gray digit, `words`
    /// entries per digit.
    indicators: Vec<u64>,
}

/// Lex key of the Gray-code state after `t` steps: digit j of the key is
/// the coefficient at Gray digit j, namely (t / r^j - t / r^(j+1)) mod r
/// with r = 2^k. Computed as a digit-wise subtraction without borrows.
#[inline(always)]
fn gray_key(t: u64, k: u32, high: u64) -> u64 {
    let b = t >> k;
    ((t | high) - (b & !high)) ^ ((t ^ !b) & high)
}

impl<'a> Searcher<'a> {
    fn new(f: &BoolFn, ring: Ring, masks: &'a [u32], prefix: u32) -> Self {
        let k = ring.k() as usize;
        let n = f.n();
        let words = f.words().len();
        let m = masks.len();
        let mut target = vec![0u64; words * k];
        for (w, word) in f.words().iter().enumerate() {
            target[w * k + k - 1] = *word;
        }
        let mut valid = vec![u64::MAX; words];
        *valid.last_mut().expect("at least one word") = tail_mask(n);
        let mut indicators = vec![0u64; m * words];
        for j in 0..m {
            let mask = masks[m - 1 - j];
            for x in 0..(1u32 << n) {
                if mask & !x == 0 {
                    indicators[j * words + (x as usize >> 6)] |= 1 << (x & 63);
                }
            }
        }
        Searcher {
            ring,
            k,
            words,
            masks,
            prefix: prefix as usize,
            target,
            valid,
            indicators,
        }
    }

    fn count(&self, planes: &[u64]) -> u64 {
        let k = self.k;
        let mut total = 0;
        for w in 0..self.words {
            let mut eq = self.valid[w];
            for i in 0..k {
                eq &= !(planes[w * k + i] ^ self.target[w * k + i]);
            }
            total += u64::from(eq.count_ones());
        }
        total
    }

    /// Searches all vectors whose leading `prefix` lex positions spell out
    /// `task` (first position in the high digits).
    fn run(&self, task: u64) -> Best {
        let k = self.k;
        let m = self.masks.len();
        let free = m - self.prefix;
        let digit_mask = u64::from(self.ring.mask());

        let mut coeffs = vec![0 as Elem; m];
        for p in 0..self.prefix {
            let shift = k * (self.prefix - 1 - p);
            coeffs[p] = ((task >> shift) & digit_mask) as Elem;
        }
        let mut planes = vec![0u64; self.words * k];
        for (p, c) in coeffs.iter().enumerate().take(self.prefix) {
            let j = m - 1 - p;
            let ind = &self.indicators[j * self.words..(j + 1) * self.words];
            for _ in 0..*c {
                add_indicator(&mut planes, ind, k);
            }
        }

        let steps = 1u64 << (k * free);
        let high = (0..free).fold(0u64, |h, j| h | 1 << (k * j + k - 1));
        let (matches, t) = match (self.words, k) {
            (1, 1) => self.scan_word::<1>(planes[0..1].try_into().expect("k planes"), steps, high),
            (1, 2) => self.scan_word::<2>(planes[0..2].try_into().expect("k planes"), steps, high),
            (1, 3) => self.scan_word::<3>(planes[0..3].try_into().expect("k planes"), steps, high),
            (1, 4) => self.scan_word::<4>(planes[0..4].try_into().expect("k planes"), steps, high),
            _ => self.scan(planes, steps, high),
        };
        let key = gray_key(t, k as u32, high);
        for j in 0..free {
            coeffs[m - 1 - j] = ((key >> (k * j)) & digit_mask) as Elem;
        }
        Best { matches, coeffs }
    }

    /// Best (matches, steps) over the free digits; ties go to the smaller
    /// lex key.
    fn scan(&self, mut planes: Vec<u64>, steps: u64, high: u64) -> (u64, u64) {
        let k = self.k;
        let words = self.words;
        let mut best = (self.count(&planes), 0u64, 0u64);
        for t in 1..steps {
            let j = ((t - 1).trailing_ones() as usize) / k;
            add_indicator(&mut planes, &self.indicators[j * words..(j + 1) * words], k);
            let c = self.count(&planes);
            if c >= best.0 {
                let key = gray_key(t, k as u32, high);
                if c > best.0 || key < best.2 {
                    best = (c, t, key);
                }
            }
        }
        (best.0, best.1)
    }

    /// [`Self::scan`] for n <= 6 with the planes held in registers.
    fn scan_word<const K: usize>(&self, mut planes: [u64; K], steps: u64, high: u64) -> (u64, u64) {
        let target: [u64; K] = self.target[..K].try_into().expect("k planes");
        let valid = self.valid[0];
        let ind = &self.indicators;
        let matches = |planes: &[u64; K]| {
            let mut eq = valid;
            for i in 0..K {
                eq &= !(planes[i] ^ target[i]);
            }
            u64::from(eq.count_ones())
        };
        let mut best = (matches(&planes), 0u64, 0u64);
        for t in 1..steps {
            let j = ((t - 1).trailing_ones() as usize) / K;
            let mut carry = ind[j];
            for p in planes.iter_mut() {
                let next = *p ^ carry;
                carry &= *p;
                *p = next;
            }
            let c = matches(&planes);
            if c >= best.0 {
                let key = gray_key(t, K as u32, high);
                if c > best.0 || key < best.2 {
                    best = (c, t, key);
                }
            }
        }
        (best.0, best.1)
    }
}

/// planes += indicator (mod 2^k), bit-sliced.
#[inline]
fn add_indicator(planes: &mut [u64], ind: &[u64], k: usize) {
    for (w, word) in ind.iter().enumerate() {
        let mut carry = *word;
        for p in &mut planes[w * k..(w + 1) * k] {
            let next = *p ^ carry;
            carry &= *p;
            *p = next;
        }
    }
}
