use std::time::Instant;

use rand::Rng;

use super::{search_space_size, GammaResult, SearchMode};
use crate::agreement::Agreement;
use crate::boolfn::BoolFn;
use crate::error::{Error, Result};
use crate::poly::{masks_up_to_degree, RingPoly};
use crate::ring::{Elem, Ring};
use crate::rng;

pub const MAX_HEURISTIC_VARS: u32 = 24;

/// Coordinate ascent from the zero polynomial plus `restarts` random
/// starting points. The result is a lower bound on gamma.
///
/// Each move sets one coefficient to the value with the most matches,
/// preferring the smaller value on ties. A move is taken only if it gains
/// matches or keeps them while lowering the coefficient, so every pass
/// either stops or strictly improves (matches, then reversed lex order).
pub fn gamma_heuristic(
    f: &BoolFn,
    d: u32,
    k: u32,
    restarts: u32,
    seed: u64,
) -> Result<GammaResult> {
    let start = Instant::now();
    let ring = Ring::new(k)?;
    let n = f.n();
    if n > MAX_HEURISTIC_VARS {
        return Err(Error::TooManyVars {
            n,
            max: MAX_HEURISTIC_VARS,
        });
    }
    let masks = masks_up_to_degree(n, d);
    let target: Vec<Elem> = f.iter().map(|b| if b { ring.half() } else { 0 }).collect();
    let mut prng = rng::seeded(seed);

    let mut best: Option<(u64, Vec<Elem>)> = None;
    for restart in 0..=restarts {
        let init: Vec<Elem> = if restart == 0 {
            vec![0; masks.len()]
        } else {
            (0..masks.len())
                .map(|_| prng.gen_range(0..=ring.mask()))
                .collect()
        };
        let (matches, coeffs) = ascend(ring, n, &masks, &target, init);
        let better = match &best {
            None => true,
            Some((bm, bc)) => matches > *bm || (matches == *bm && coeffs < *bc),
        };
        if better {
            best = Some((matches, coeffs));
        }
    }
    let (matches, coeffs) = best.expect("at least one start");

    let witness = RingPoly::from_terms(
        n,
        k,
        d,
        masks.iter().copied().zip(coeffs.iter().map(|c| u64::from(*c))),
    )?;
    Ok(GammaResult {
        gamma: Agreement::new(matches, 1u64 << n)?,
        witness,
        mode: SearchMode::Heuristic,
        search_space_size: search_space_size(n, d, k),
        elapsed: start.elapsed(),
    })
}

/// Iterates the supersets of `mask` within n bits.
fn supersets(mask: u32, n: u32) -> impl Iterator<Item = u32> {
    let free = ((1u64 << n) - 1) as u32 & !mask;
    let mut sub = Some(free);
    std::iter::from_fn(move || {
        let s = sub?;
        sub = (s != 0).then(|| (s - 1) & free);
        Some(mask | s)
    })
}

fn ascend(
    ring: Ring,
    n: u32,
    masks: &[u32],
    target: &[Elem],
    mut coeffs: Vec<Elem>,
) -> (u64, Vec<Elem>) {
    let mut table = vec![0 as Elem; 1 << n];
    for (mask, c) in masks.iter().zip(&coeffs) {
        for x in supersets(*mask, n) {
            table[x as usize] = ring.add(table[x as usize], *c);
        }
    }
    let mut matches = table.iter().zip(target).filter(|(a, b)| a == b).count() as u64;
    let mut hist = vec![0u64; ring.modulus() as usize];

    loop {
        let mut changed = false;
        for (p, mask) in masks.iter().enumerate() {
            hist.iter_mut().for_each(|h| *h = 0);
            let cur = coeffs[p];
            let mut inside_now = 0u64;
            for x in supersets(*mask, n) {
                let x = x as usize;
                let base = ring.sub(table[x], cur);
                hist[ring.sub(target[x], base) as usize] += 1;
                inside_now += u64::from(table[x] == target[x]);
            }
            // first maximum, i.e. the smallest value among ties
            let (c, &count) = hist
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
                .expect("nonempty histogram");
            let c = c as Elem;
            if count > inside_now || (count == inside_now && c < cur) {
                for x in supersets(*mask, n) {
                    let x = x as usize;
                    table[x] = ring.add(ring.sub(table[x], cur), c);
                }
                matches = matches - inside_now + count;
                coeffs[p] = c;
                changed = true;
            }
        }
        if !changed {
            return (matches, coeffs);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{gamma_exact, DEFAULT_BUDGET};
    use proptest::prelude::*;

    #[test]
    fn superset_enumeration() {
        let mut s: Vec<u32> = supersets(0b010, 3).collect();
        s.sort();
        assert_eq!(s, vec![0b010, 0b011, 0b110, 0b111]);
        assert_eq!(supersets(0, 0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn single_variable_from_zero_start() {
        for n in 1..=8 {
            let f = BoolFn::from_fn(n, |x| x & 1 == 1).unwrap();
            assert!(gamma_heuristic(&f, 1, 1, 0, 0).unwrap().gamma.is_perfect());
        }
    }

    #[test]
    fn zero_start_stalls_on_two_variable_parity() {
        // every single-coefficient move from 0 ties at 1/2
        let f = BoolFn::from_fn(2, |x| x.count_ones() == 1).unwrap();
        let g = gamma_heuristic(&f, 2, 1, 0, 0).unwrap();
        assert_eq!(g.gamma, Agreement::new(2, 4).unwrap());
    }

    #[test]
    fn parity_of_few_variables_is_found() {
        for n in 2..=5 {
            for d in 1..=2 {
                let vars = (1u32 << d) - 1;
                let f = BoolFn::from_fn(n, |x| (x & vars).count_ones() % 2 == 1).unwrap();
                let g = gamma_heuristic(&f, d, 1, 32, u64::from(n)).unwrap();
                assert!(g.gamma.is_perfect(), "n={n} d={d}");
                assert!(g.recheck(&f).unwrap());
            }
        }
    }

    #[test]
    fn deterministic() {
        let f = BoolFn::random(10, 5).unwrap();
        let a = gamma_heuristic(&f, 2, 2, 4, 99).unwrap();
        let b = gamma_heuristic(&f, 2, 2, 4, 99).unwrap();
        assert_eq!(a.gamma, b.gamma);
        assert_eq!(a.witness, b.witness);
    }

    #[test]
    fn too_many_vars() {
        let f = BoolFn::zero(25).unwrap();
        assert!(matches!(gamma_heuristic(&f, 1, 1, 0, 0), Err(Error::TooManyVars { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn never_beats_exact(seed in any::<u64>(), d in 0u32..3, k in 1u32..3) {
            let f = BoolFn::random(4, seed).unwrap();
            let h = gamma_heuristic(&f, d, k, 3, seed).unwrap();
            let e = gamma_exact(&f, d, k, DEFAULT_BUDGET).unwrap();
            prop_assert!(h.gamma.cmp_value(&e.gamma) != std::cmp::Ordering::Greater);
            prop_assert!(h.recheck(&f).unwrap());
        }
    }
}
