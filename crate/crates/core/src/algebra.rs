//! Linear algebra over the chain ring Z/2^k: which polynomials of degree at
//! most d vanish on a point set, and whether the set is interpolating or
//! forcing.
//!
//! The evaluation matrix has one row per point and one column per monomial
//! (masks ordered by popcount, then value). It is brought to diagonal form
//! `U A V = D` by row and column operations that are invertible over
//! Z/2^k. Each pivot is an entry of minimal 2-adic valuation in the
//! remaining block: odd pivots are eliminated first, then entries divisible
//! by 2, then by 4, and so on, so every elimination factor is exact. The
//! kernel of `A` is `V` applied to the kernel of `D`, which gives an explicit
//! generating set.

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use crate::boolfn::check_vars;
use crate::error::{Error, Result};
use crate::poly::{masks_up_to_degree, monomial_count, RingPoly};
use crate::ring::{Elem, Ring};
use crate::rng;

/// Default cap on evaluation-matrix entries.
pub const DEFAULT_MATRIX_BUDGET: u64 = 1 << 20;

/// A set of points of {0,1}^n, kept sorted and distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PointSetRepr")]
pub struct PointSet {
    n: u32,
    points: Vec<u32>,
}

#[derive(Deserialize)]
struct PointSetRepr {
    n: u32,
    points: Vec<u32>,
}

impl TryFrom<PointSetRepr> for PointSet {
    type Error = Error;

    fn try_from(r: PointSetRepr) -> Result<Self> {
        if r.points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Format("points must be strictly increasing".into()));
        }
        PointSet::new(r.n, r.points)
    }
}

impl PointSet {
    /// Sorts and deduplicates; rejects points outside the cube.
    pub fn new(n: u32, points: impl IntoIterator<Item = u32>) -> Result<Self> {
        check_vars(n)?;
        let mut points: Vec<u32> = points.into_iter().collect();
        if let Some(p) = points.iter().find(|p| u64::from(**p) >= 1u64 << n) {
            return Err(Error::OutOfRange {
                value: (*p).into(),
                n,
            });
        }
        points.sort_unstable();
        points.dedup();
        Ok(PointSet { n, points })
    }

    pub fn empty(n: u32) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn full(n: u32) -> Result<Self> {
        check_vars(n)?;
        Self::new(n, 0..(1u32 << n))
    }

    /// Hamming ball of the given radius around `center`.
    pub fn hamming_ball(n: u32, center: u32, radius: u32) -> Result<Self> {
        check_vars(n)?;
        Self::new(
            n,
            (0..(1u32 << n)).filter(|x| (x ^ center).count_ones() <= radius),
        )
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn points(&self) -> &[u32] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.points.binary_search(&x).is_ok()
    }

    pub fn with_point(&self, x: u32) -> Result<Self> {
        Self::new(self.n, self.points.iter().copied().chain([x]))
    }
}

struct Diagonalised {
    ring: Ring,
    masks: Vec<u32>,
    /// Nonzero diagonal entries, in pivot order.
    diag: Vec<Elem>,
    /// Column transform; `v[row * m + col]`.
    v: Vec<Elem>,
}

fn diagonalise(s: &PointSet, d: u32, k: u32, budget: u64) -> Result<Diagonalised> {
    let ring = Ring::new(k)?;
    let masks = masks_up_to_degree(s.n(), d);
    let rows = s.len();
    let m = masks.len();
    let entries = (rows.max(m) as u64) * (m as u64);
    if entries > budget {
        return Err(Error::MatrixCapacity {
            rows,
            cols: m,
            budget,
        });
    }

    let mut a: Vec<Elem> = Vec::with_capacity(rows * m);
    for &x in s.points() {
        a.extend(masks.iter().map(|mask| Elem::from(mask & !x == 0)));
    }
    let mut v = vec![0 as Elem; m * m];
    for i in 0..m {
        v[i * m + i] = 1;
    }

    let mut diag = Vec::new();
    for t in 0..rows.min(m) {
        // pivot of minimal valuation in the block [t.., t..]
        let mut pivot: Option<(u32, usize, usize)> = None;
        'scan: for i in t..rows {
            for j in t..m {
                if let Some(val) = ring.valuation(a[i * m + j]) {
                    if pivot.is_none_or(|(pv, _, _)| val < pv) {
                        pivot = Some((val, i, j));
                        if val == 0 {
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((val, pi, pj)) = pivot else { break };

        if pi != t {
            for j in 0..m {
                a.swap(t * m + j, pi * m + j);
            }
        }
        if pj != t {
            for i in 0..rows {
                a.swap(i * m + t, i * m + pj);
            }
            for i in 0..m {
                v.swap(i * m + t, i * m + pj);
            }
        }

        let p = a[t * m + t];
        let unit_inv = ring.inv_unit(p >> val).expect("odd part is a unit");

        for i in (t + 1)..rows {
            let e = a[i * m + t];
            if e == 0 {
                continue;
            }
            let f = ring.mul(e >> val, unit_inv);
            for j in t..m {
                let sub = ring.mul(f, a[t * m + j]);
                a[i * m + j] = ring.sub(a[i * m + j], sub);
            }
        }
        for j in (t + 1)..m {
            let e = a[t * m + j];
            if e == 0 {
                continue;
            }
            let f = ring.mul(e >> val, unit_inv);
            // rows below t already have a zero in column t
            a[t * m + j] = ring.sub(e, ring.mul(f, p));
            for i in 0..m {
                let sub = ring.mul(f, v[i * m + t]);
                v[i * m + j] = ring.sub(v[i * m + j], sub);
            }
        }
        diag.push(p);
    }

    Ok(Diagonalised {
        ring,
        masks,
        diag,
        v,
    })
}

/// Generators of the polynomials of degree at most `d` over Z/2^k that
/// vanish on every point of `s`. Empty exactly when only zero vanishes.
pub fn vanishing_basis(s: &PointSet, d: u32, k: u32) -> Result<Vec<RingPoly>> {
    vanishing_basis_with_budget(s, d, k, DEFAULT_MATRIX_BUDGET)
}

pub fn vanishing_basis_with_budget(
    s: &PointSet,
    d: u32,
    k: u32,
    budget: u64,
) -> Result<Vec<RingPoly>> {
    let Diagonalised {
        ring,
        masks,
        diag,
        v,
    } = diagonalise(s, d, k, budget)?;
    let m = masks.len();
    let column = |j: usize, scale: Elem| -> Result<RingPoly> {
        RingPoly::from_terms(
            s.n(),
            k,
            d,
            (0..m).map(|i| (masks[i], u64::from(ring.mul(v[i * m + j], scale)))),
        )
    };

    let mut gens = Vec::new();
    for (t, p) in diag.iter().enumerate() {
        let val = ring.valuation(*p).expect("pivots are nonzero");
        if val > 0 {
            gens.push(column(t, 1 << (k - val))?);
        }
    }
    for j in diag.len()..m {
        gens.push(column(j, 1)?);
    }
    Ok(gens)
}

pub fn is_interpolating(s: &PointSet, d: u32, k: u32) -> Result<bool> {
    Ok(vanishing_basis(s, d, k)?.is_empty())
}

/// Every polynomial vanishing on `s` has all coefficients even.
pub fn is_forcing(s: &PointSet, d: u32, k: u32) -> Result<bool> {
    Ok(vanishing_basis(s, d, k)?
        .iter()
        .all(|g| g.project_mod2().is_zero()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub size: usize,
    pub sampled: usize,
    pub forcing: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcingProbeReport {
    pub n: u32,
    pub d: u32,
    pub k: u32,
    pub trials: usize,
    pub seed: u64,
    /// binom(n, <= d); sets below this size must never be forcing.
    pub threshold: usize,
    pub rows: Vec<ProbeRow>,
    /// Forcing sets found below the threshold. Always empty for a correct
    /// implementation.
    pub counterexamples: Vec<PointSet>,
    /// Smallest sampled size at which some sampled set was forcing.
    pub min_observed_forcing_size: Option<usize>,
    pub low_weight_ball_interpolating: bool,
    pub low_weight_ball_forcing: bool,
}

impl ForcingProbeReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
            && self.low_weight_ball_interpolating
            && self.low_weight_ball_forcing
    }
}

/// Samples `trials` random point sets of every size up to binom(n, <= d)
/// and records which are forcing.
pub fn min_forcing_probe(
    n: u32,
    d: u32,
    k: u32,
    trials: usize,
    seed: u64,
) -> Result<ForcingProbeReport> {
    if n > 5 || d > 2 {
        return Err(Error::invalid(format!(
            "forcing probe supports n <= 5 and d <= 2, got n={n} d={d}"
        )));
    }
    Ring::new(k)?;
    let threshold = monomial_count(n, d) as usize;
    let cube = 1usize << n;
    let mut rng = rng::seeded(seed);
    let mut rows = Vec::new();
    let mut counterexamples = Vec::new();
    let mut min_observed = None;

    for size in 0..=threshold.min(cube) {
        let mut forcing = 0;
        for _ in 0..trials {
            let pts = sample(&mut rng, cube, size).into_iter().map(|p| p as u32);
            let set = PointSet::new(n, pts)?;
            if is_forcing(&set, d, k)? {
                forcing += 1;
                if size < threshold {
                    counterexamples.push(set);
                }
            }
        }
        if forcing > 0 && min_observed.is_none() {
            min_observed = Some(size);
        }
        rows.push(ProbeRow {
            size,
            sampled: trials,
            forcing,
        });
    }

    let ball = PointSet::hamming_ball(n, 0, d)?;
    Ok(ForcingProbeReport {
        n,
        d,
        k,
        trials,
        seed,
        threshold,
        rows,
        counterexamples,
        min_observed_forcing_size: min_observed,
        low_weight_ball_interpolating: is_interpolating(&ball, d, k)?,
        low_weight_ball_forcing: is_forcing(&ball, d, k)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vanishes_on(p: &RingPoly, s: &PointSet) -> bool {
        s.points().iter().all(|x| p.eval(*x) == 0)
    }

    /// Enumerates every polynomial of degree <= d over Z/2 and counts those
    /// vanishing on s.
    fn brute_vanishing_count_gf2(s: &PointSet, d: u32) -> u64 {
        let masks = masks_up_to_degree(s.n(), d);
        let m = masks.len();
        (0u64..(1 << m))
            .filter(|bits| {
                s.points().iter().all(|x| {
                    masks
                        .iter()
                        .enumerate()
                        .filter(|(i, mask)| bits >> i & 1 == 1 && *mask & !x == 0)
                        .count()
                        % 2
                        == 0
                })
            })
            .count() as u64
    }

    #[test]
    fn point_set_normalises() {
        let s = PointSet::new(3, [5, 1, 5, 0]).unwrap();
        assert_eq!(s.points(), &[0, 1, 5]);
        assert!(PointSet::new(2, [4]).is_err());
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"n":3,"points":[0,1,5]}"#);
        assert_eq!(serde_json::from_str::<PointSet>(&json).unwrap(), s);
        assert!(serde_json::from_str::<PointSet>(r#"{"n":3,"points":[1,0]}"#).is_err());
    }

    #[test]
    fn full_cube_is_interpolating() {
        for n in 1..=4 {
            for d in 0..=n {
                for k in 1..=3 {
                    let full = PointSet::full(n).unwrap();
                    assert!(vanishing_basis(&full, d, k).unwrap().is_empty());
                }
            }
        }
    }

    #[test]
    fn empty_set_admits_constant() {
        let empty = PointSet::empty(1).unwrap();
        let basis = vanishing_basis(&empty, 0, 1).unwrap();
        assert_eq!(basis, vec![RingPoly::constant(1, 1, 0, 1).unwrap()]);
        assert!(!is_interpolating(&empty, 1, 2).unwrap());
        assert!(!is_forcing(&empty, 0, 1).unwrap());
        assert!(!is_forcing(&empty, 2, 3).unwrap());
    }

    #[test]
    fn hamming_balls_interpolate() {
        for n in 1..=6 {
            for d in 0..=2.min(n) {
                for k in 1..=3 {
                    for center in [0u32, (1 << n) - 1, 0b1 % (1 << n), 0b101 % (1 << n)] {
                        let ball = PointSet::hamming_ball(n, center, d).unwrap();
                        assert!(is_interpolating(&ball, d, k).unwrap(), "n={n} d={d} k={k}");
                        assert!(is_forcing(&ball, d, k).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn small_sets_are_not_interpolating() {
        let mut rng = rng::seeded(11);
        let m = monomial_count(5, 2) as usize;
        for _ in 0..50 {
            let pts = sample(&mut rng, 32, m - 1).into_iter().map(|p| p as u32);
            let s = PointSet::new(5, pts).unwrap();
            assert!(!is_interpolating(&s, 2, 2).unwrap());
        }
    }

    /// Every polynomial over Z/4 vanishing on s has even coefficients.
    fn brute_forcing_z4(s: &PointSet, d: u32) -> bool {
        let masks = masks_up_to_degree(s.n(), d);
        (0u64..(1 << (2 * masks.len()))).all(|code| {
            let coeffs: Vec<u64> = (0..masks.len()).map(|i| code >> (2 * i) & 3).collect();
            let p = RingPoly::from_terms(s.n(), 2, d, masks.iter().copied().zip(coeffs.iter().copied())).unwrap();
            !vanishes_on(&p, s) || coeffs.iter().all(|c| c % 2 == 0)
        })
    }

    #[test]
    fn forcing_matches_enumeration_over_z4() {
        let mut strict = 0;
        for (n, d) in [(2u32, 0u32), (2, 1), (2, 2), (3, 1)] {
            for bits in 0u32..(1 << (1 << n)) {
                let s = PointSet::new(n, (0..(1u32 << n)).filter(|x| bits >> x & 1 == 1)).unwrap();
                let forcing = is_forcing(&s, d, 2).unwrap();
                assert_eq!(forcing, brute_forcing_z4(&s, d), "n={n} d={d} S={:?}", s.points());
                if forcing && !is_interpolating(&s, d, 2).unwrap() {
                    strict += 1;
                }
            }
        }
        // over Z/4 some forcing sets are not interpolating
        assert!(strict > 0);
    }

    #[test]
    fn capacity_is_enforced() {
        let s = PointSet::full(6).unwrap();
        assert!(matches!(
            vanishing_basis_with_budget(&s, 6, 2, 100),
            Err(Error::MatrixCapacity { .. })
        ));
    }

    #[test]
    fn probe_examples() {
        let r = min_forcing_probe(4, 1, 2, 200, 1).unwrap();
        assert_eq!(r.threshold, 5);
        assert!(r.rows.iter().filter(|row| row.size < 5).all(|row| row.forcing == 0));
        assert!(r.passed());
        let r0 = min_forcing_probe(3, 0, 1, 50, 2).unwrap();
        assert_eq!(r0.rows[0].forcing, 0);
        assert!(r0.passed());
        let r1 = min_forcing_probe(4, 1, 1, 200, 3).unwrap();
        assert!(r1.passed());
        assert!(min_forcing_probe(6, 1, 1, 1, 0).is_err());
    }

    fn arb_set(max_n: u32) -> impl Strategy<Value = PointSet> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(0u32..(1 << n), 0..=(1usize << n))
                .prop_map(move |pts| PointSet::new(n, pts).unwrap())
        })
    }

    proptest! {
        #[test]
        fn basis_is_sound(s in arb_set(5), d in 0u32..4, k in 1u32..5) {
            for g in vanishing_basis(&s, d, k).unwrap() {
                prop_assert!(!g.is_zero());
                prop_assert!(vanishes_on(&g, &s));
            }
        }

        #[test]
        fn binary_kernel_size_matches_enumeration(s in arb_set(4), d in 0u32..3) {
            let gens = vanishing_basis(&s, d, 1).unwrap();
            prop_assert_eq!(1u64 << gens.len(), brute_vanishing_count_gf2(&s, d));
        }

        #[test]
        fn forcing_is_monotone(s in arb_set(4), extra in 0u32..16, d in 0u32..3, k in 1u32..4) {
            let extra = extra % (1 << s.n());
            if is_forcing(&s, d, k).unwrap() {
                prop_assert!(is_forcing(&s.with_point(extra).unwrap(), d, k).unwrap());
            }
        }

        // Over Z/2^k the kernel generated by the basis contains every
        // vanishing polynomial; checked by brute force on tiny cases.
        #[test]
        fn basis_spans_kernel(s in arb_set(2), d in 0u32..3, k in 1u32..3) {
            let d = d.min(s.n());
            let masks = masks_up_to_degree(s.n(), d);
            let gens = vanishing_basis(&s, d, k).unwrap();
            let q = 1u64 << k;
            let total = q.pow(masks.len() as u32);
            let mut span = std::collections::HashSet::new();
            let g_count = gens.len() as u32;
            for combo in 0..q.pow(g_count) {
                let mut c = combo;
                let mut acc = vec![0u64; masks.len()];
                for g in &gens {
                    let f = c % q;
                    c /= q;
                    for (i, mask) in masks.iter().enumerate() {
                        acc[i] = (acc[i] + f * u64::from(g.coeff(*mask))) % q;
                    }
                }
                span.insert(acc);
            }
            for code in 0..total {
                let mut c = code;
                let coeffs: Vec<u64> = masks.iter().map(|_| { let v = c % q; c /= q; v }).collect();
                let p = RingPoly::from_terms(s.n(), k, d, masks.iter().copied().zip(coeffs.iter().copied())).unwrap();
                if vanishes_on(&p, &s) {
                    prop_assert!(span.contains(&coeffs));
                }
            }
        }
    }
}
