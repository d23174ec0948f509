//! Exhaustive checks of finite statements: the five-variable agreement
//! bound, the binomial identity behind the S_{2^l} witness, the gamma facts
//! over all functions on three variables, monochromatic grids in colourings
//! of subset pairs, and hardness of a function on an exception set.

use std::cmp::Ordering;

use itertools::Itertools;
use num_bigint::BigUint;
use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::agreement::Agreement;
use crate::boolfn::BoolFn;
use crate::constructions::{exception_set, sym_degree, ShiftPair};
use crate::error::{Error, Result};
use crate::poly::masks_up_to_degree;
use crate::rng;
use crate::search::{collapse_holds, gamma_exact};
use crate::symmetric::{binom_mod_2k, weight_bit};

/// An input (a1, a2, b1, b2, z); as an index a1 is bit 0, a2 bit 1, b1 bit
/// 2, b2 bit 3 and z bit 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FivePoint {
    pub a1: bool,
    pub a2: bool,
    pub b1: bool,
    pub b2: bool,
    pub z: bool,
}

impl FivePoint {
    pub fn from_index(i: u8) -> Self {
        let bit = |j: u8| i >> j & 1 == 1;
        FivePoint {
            a1: bit(0),
            a2: bit(1),
            b1: bit(2),
            b2: bit(3),
            z: bit(4),
        }
    }

    pub fn index(self) -> u8 {
        u8::from(self.a1)
            | u8::from(self.a2) << 1
            | u8::from(self.b1) << 2
            | u8::from(self.b2) << 3
            | u8::from(self.z) << 4
    }

    pub fn all() -> impl Iterator<Item = FivePoint> {
        (0..32).map(FivePoint::from_index)
    }
}

pub fn f_phi_psi(phi: (bool, bool), psi: (bool, bool), p: FivePoint) -> bool {
    match (p.a1 != phi.0, p.b1 != psi.0) {
        (false, false) => false,
        (true, false) => p.b2 ^ psi.1,
        (false, true) => p.a2 ^ phi.1,
        (true, true) => p.z,
    }
}

pub const RELEVANT_MONOMIALS: [&str; 6] = ["1", "a1", "a2", "b1", "b2", "a1b1"];

/// A sum over GF(2) of a subset of [`RELEVANT_MONOMIALS`]; bit i selects
/// monomial i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RelevantPoly(u8);

impl RelevantPoly {
    pub fn new(bits: u8) -> Result<Self> {
        if bits >= 64 {
            return Err(Error::invalid(format!("relevant polynomial index {bits} >= 64")));
        }
        Ok(RelevantPoly(bits))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn eval(self, p: FivePoint) -> bool {
        let values = [true, p.a1, p.a2, p.b1, p.b2, p.a1 && p.b1];
        values
            .iter()
            .enumerate()
            .filter(|(i, _)| self.0 >> i & 1 == 1)
            .fold(false, |acc, (_, v)| acc ^ v)
    }

    pub fn uses(self, monomial: usize) -> bool {
        self.0 >> monomial & 1 == 1
    }

    pub fn monomials(self) -> Vec<&'static str> {
        (0..6)
            .filter(|i| self.uses(*i))
            .map(|i| RELEVANT_MONOMIALS[i])
            .collect()
    }
}

pub fn enumerate_relevant() -> Vec<RelevantPoly> {
    (0..64).map(RelevantPoly).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelLbdReport {
    pub cases: u64,
    pub max: Agreement,
    pub phi: (bool, bool),
    pub psi: (bool, bool),
    pub q: RelevantPoly,
    pub q_monomials: Vec<String>,
    /// Best agreement among polynomials using a2.
    pub max_with_a2: Agreement,
    pub bound: Agreement,
}

impl RelLbdReport {
    pub fn holds(&self) -> bool {
        self.max.cmp_value(&self.bound) != Ordering::Greater
    }
}

/// Best agreement of any relevant polynomial with any f_{phi,psi}, over all
/// 32 inputs. The first maximiser in (phi, psi, q) order is reported.
pub fn verify_rel_lbd() -> RelLbdReport {
    let bools = [false, true];
    let pairs: Vec<(bool, bool)> = bools.iter().flat_map(|a| bools.iter().map(move |b| (*a, *b))).collect();
    let mut best: Option<(u64, (bool, bool), (bool, bool), RelevantPoly)> = None;
    let mut best_a2 = 0;
    let mut cases = 0;
    for &phi in &pairs {
        for &psi in &pairs {
            for q in enumerate_relevant() {
                let matches = FivePoint::all()
                    .filter(|p| q.eval(*p) == f_phi_psi(phi, psi, *p))
                    .count() as u64;
                cases += 32;
                if best.as_ref().is_none_or(|b| matches > b.0) {
                    best = Some((matches, phi, psi, q));
                }
                if q.uses(2) {
                    best_a2 = best_a2.max(matches);
                }
            }
        }
    }
    let (matches, phi, psi, q) = best.expect("nonempty enumeration");
    RelLbdReport {
        cases,
        max: Agreement::new(matches, 32).expect("valid"),
        phi,
        psi,
        q,
        q_monomials: q.monomials().into_iter().map(String::from).collect(),
        max_with_a2: Agreement::new(best_a2, 32).expect("valid"),
        bound: Agreement::new(5, 8).expect("valid"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemMainReport {
    pub ell: u32,
    pub width: u32,
    pub d: u32,
    pub checked: u64,
    pub covered: u64,
    pub violations: Vec<u64>,
}

impl LemMainReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every weight w in [d, 2^width) meeting either sufficient condition,
/// checks binom(w, d) mod 8 = 4 |w|_l with d = 2^(l-1) + 2^(l-2).
pub fn verify_lem_main(ell: u32, width: u32) -> Result<LemMainReport> {
    let d = sym_degree(ell)?;
    if width < ell + 2 || width > 40 {
        return Err(Error::invalid(format!(
            "width {width} must lie in {}..=40",
            ell + 2
        )));
    }
    let mut report = LemMainReport {
        ell,
        width,
        d,
        checked: 0,
        covered: 0,
        violations: Vec::new(),
    };
    for w in u64::from(d)..(1u64 << width) {
        report.checked += 1;
        if !crate::constructions::lemma_match_condition(w, ell) {
            continue;
        }
        report.covered += 1;
        if binom_mod_2k(w, d.into(), 3)? != 4 * u16::from(weight_bit(w, ell)) {
            report.violations.push(w);
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaFactsReport {
    pub n: u32,
    pub functions: u64,
    /// gamma_{1,k} = gamma_{1,1}
    pub degree_one_violations: u64,
    /// gamma_{d,k+1} >= gamma_{d,k}
    pub monotone_violations: u64,
    /// above 1 - 2^-d, gamma_{d,k} = gamma_{d,1}
    pub collapse_violations: u64,
    /// gamma >= 1/2
    pub half_violations: u64,
    /// Number of (F, d, k) with gamma_{d,k} > gamma_{d,1}.
    pub ring_gains: u64,
}

impl GammaFactsReport {
    pub fn holds(&self) -> bool {
        self.degree_one_violations == 0
            && self.monotone_violations == 0
            && self.collapse_violations == 0
            && self.half_violations == 0
    }
}

/// Exhausts every Boolean function on n <= 3 variables, computing
/// gamma_{d,k} for d in 0..=2 and k in 1..=3.
pub fn verify_gamma_facts(n: u32, budget: u128) -> Result<GammaFactsReport> {
    if !(1..=3).contains(&n) {
        return Err(Error::invalid(format!("gamma facts need 1 <= n <= 3, got {n}")));
    }
    let functions = 1u64 << (1u32 << n);
    let mut r = GammaFactsReport {
        n,
        functions,
        degree_one_violations: 0,
        monotone_violations: 0,
        collapse_violations: 0,
        half_violations: 0,
        ring_gains: 0,
    };
    for table in 0..functions {
        let f = BoolFn::from_fn(n, |x| table >> x & 1 == 1)?;
        for d in 0..=2u32.min(n) {
            let g: Vec<Agreement> = (1..=3)
                .map(|k| gamma_exact(&f, d, k, budget).map(|res| res.gamma))
                .collect::<Result<_>>()?;
            for (i, gk) in g.iter().enumerate() {
                if !gk.at_least_half() {
                    r.half_violations += 1;
                }
                if !collapse_holds(gk, &g[0], d) {
                    r.collapse_violations += 1;
                }
                if d == 1 && gk.cmp_value(&g[0]) != Ordering::Equal {
                    r.degree_one_violations += 1;
                }
                if gk.cmp_value(&g[0]) == Ordering::Greater {
                    r.ring_gains += 1;
                }
                if i > 0 && gk.cmp_value(&g[i - 1]) == Ordering::Less {
                    r.monotone_violations += 1;
                }
            }
        }
    }
    Ok(r)
}

/// A 0/1 colouring of pairs (A, B) with A an i-subset of {0..i_size} and B
/// a j-subset of {0..j_size}. Cells are stored in the lexicographic order
/// of A, then B.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Colouring {
    i_size: u32,
    j_size: u32,
    i: u32,
    j: u32,
    values: Vec<bool>,
}

fn subsets(size: u32, r: u32) -> Vec<u32> {
    (0..size)
        .combinations(r as usize)
        .map(|c| c.iter().fold(0u32, |m, v| m | 1 << v))
        .collect()
}

impl Colouring {
    pub fn from_fn(
        i_size: u32,
        j_size: u32,
        i: u32,
        j: u32,
        mut colour: impl FnMut(u32, u32) -> bool,
    ) -> Result<Self> {
        if i_size > 20 || j_size > 20 || i > i_size || j > j_size {
            return Err(Error::invalid(format!(
                "colouring shape ({i_size} choose {i}) x ({j_size} choose {j}) unsupported"
            )));
        }
        let a_sets = subsets(i_size, i);
        let b_sets = subsets(j_size, j);
        if (a_sets.len() as u64) * (b_sets.len() as u64) > 1 << 24 {
            return Err(Error::invalid("colouring has too many cells"));
        }
        let values = a_sets
            .iter()
            .flat_map(|a| b_sets.iter().map(|b| (*a, *b)).collect::<Vec<_>>())
            .map(|(a, b)| colour(a, b))
            .collect();
        Ok(Colouring {
            i_size,
            j_size,
            i,
            j,
            values,
        })
    }

    pub fn random(i_size: u32, j_size: u32, i: u32, j: u32, seed: u64) -> Result<Self> {
        let mut prng = rng::seeded(seed);
        Self::from_fn(i_size, j_size, i, j, |_, _| prng.gen())
    }

    pub fn shape(&self) -> (u32, u32, u32, u32) {
        (self.i_size, self.j_size, self.i, self.j)
    }

    fn rank(size: u32, r: u32, set: u32) -> usize {
        // position of `set` among the r-subsets of 0..size in lex order
        let mut rank = 0u64;
        let mut remaining = r;
        let mut prev: i64 = -1;
        for v in (0..size).filter(|v| set >> v & 1 == 1) {
            for skipped in (prev + 1) as u32..v {
                rank += binom(size - skipped - 1, remaining - 1);
            }
            prev = v.into();
            remaining -= 1;
        }
        rank as usize
    }

    /// Colour of (A, B), given as bit masks.
    pub fn get(&self, a: u32, b: u32) -> bool {
        let per_a = binom(self.j_size, self.j) as usize;
        self.values[Self::rank(self.i_size, self.i, a) * per_a + Self::rank(self.j_size, self.j, b)]
    }

    /// The colouring induced on I' x J', relabelled so element t of I' (in
    /// increasing order) becomes t.
    pub fn restrict(&self, i_sub: &[u32], j_sub: &[u32]) -> Result<Colouring> {
        let lift = |set: u32, sub: &[u32]| {
            sub.iter()
                .enumerate()
                .filter(|(t, _)| set >> t & 1 == 1)
                .fold(0u32, |m, (_, v)| m | 1 << v)
        };
        if i_sub.iter().any(|v| *v >= self.i_size) || j_sub.iter().any(|v| *v >= self.j_size) {
            return Err(Error::invalid("restriction outside the ground sets"));
        }
        Colouring::from_fn(i_sub.len() as u32, j_sub.len() as u32, self.i, self.j, |a, b| {
            self.get(lift(a, i_sub), lift(b, j_sub))
        })
    }
}

fn binom(n: u32, r: u32) -> u64 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u64, |c, t| c * u64::from(n - t) / u64::from(t + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub i_sub: Vec<u32>,
    pub j_sub: Vec<u32>,
    pub colour: bool,
}

/// First pair of r-subsets (I', J'), in lexicographic order, on which the
/// colouring is constant. `None` when no such pair exists.
pub fn find_monochromatic_grid(c: &Colouring, r: u32, budget: u64) -> Result<Option<Grid>> {
    if r < c.i.max(c.j) || r > c.i_size.min(c.j_size) {
        return Err(Error::invalid(format!(
            "r={r} must lie between max(i, j) and min(|I|, |J|)"
        )));
    }
    let space = binom(c.i_size, r).saturating_mul(binom(c.j_size, r));
    if space > budget {
        return Err(Error::BudgetExceeded {
            size: space.into(),
            budget: budget.into(),
        });
    }
    let inner_a = subsets(r, c.i);
    let inner_b = subsets(r, c.j);
    let spread = |set: u32, sub: &[u32]| {
        sub.iter()
            .enumerate()
            .filter(|(t, _)| set >> t & 1 == 1)
            .fold(0u32, |m, (_, v)| m | 1 << v)
    };
    for i_sub in (0..c.i_size).combinations(r as usize) {
        for j_sub in (0..c.j_size).combinations(r as usize) {
            let mut colours = inner_a.iter().flat_map(|a| {
                inner_b
                    .iter()
                    .map(|b| c.get(spread(*a, &i_sub), spread(*b, &j_sub)))
                    .collect::<Vec<_>>()
            });
            let first = colours.next().expect("r >= i, j so cells exist");
            if colours.all(|v| v == first) {
                return Ok(Some(Grid {
                    i_sub,
                    j_sub,
                    colour: first,
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsHardReport {
    pub hard: bool,
    pub exception_points: u64,
    pub polynomials_checked: u64,
    /// Restricted agreement of the first polynomial found outside the band.
    pub violation: Option<Agreement>,
}

/// Whether every GF(2) polynomial of degree <= 3d - 1 on 2n variables has
/// restricted agreement with H within `eps` of 1/2 on the exception set.
///
/// Polynomials are enumerated in binary Gray-code order with evaluations on
/// the exception points packed into words, and the scan stops at the first
/// polynomial outside the band.
pub fn epsilon_hard_check(
    h: &BoolFn,
    d: u32,
    eps: &BigRational,
    phi: &ShiftPair,
    psi: &ShiftPair,
    budget: u128,
) -> Result<EpsHardReport> {
    if !h.n().is_multiple_of(2) {
        return Err(Error::invalid("H must have an even number of variables"));
    }
    let n = h.n() / 2;
    let s = exception_set(n, d, phi, psi)?;
    if s.is_empty() {
        return Err(Error::invalid("exception set is empty"));
    }
    let size = s.len() as u64;
    if *eps >= Agreement::one_half() {
        return Ok(EpsHardReport {
            hard: true,
            exception_points: size,
            polynomials_checked: 0,
            violation: None,
        });
    }
    let masks = masks_up_to_degree(2 * n, (3 * d).saturating_sub(1));
    let m = masks.len() as u32;
    if m >= 63 || (1u128 << m) > budget {
        return Err(Error::BudgetExceeded {
            size: BigUint::from(1u8) << m,
            budget,
        });
    }

    let words = s.len().div_ceil(64);
    let mut target = vec![0u64; words];
    let mut valid = vec![0u64; words];
    for (t, x) in s.points().iter().enumerate() {
        valid[t >> 6] |= 1 << (t & 63);
        if h.get(*x) {
            target[t >> 6] |= 1 << (t & 63);
        }
    }
    let indicators: Vec<Vec<u64>> = masks
        .iter()
        .map(|mask| {
            let mut ind = vec![0u64; words];
            for (t, x) in s.points().iter().enumerate() {
                if mask & !x == 0 {
                    ind[t >> 6] |= 1 << (t & 63);
                }
            }
            ind
        })
        .collect();

    // |matches/size - 1/2| <= eps  <=>  |2 matches - size| <= 2 eps size
    let limit = eps * BigRational::from_integer((2 * size).into());
    let within = |matches: u64| {
        let dev = (2 * matches as i64 - size as i64).unsigned_abs();
        BigRational::from_integer(dev.into()) <= limit
    };

    let mut eval = vec![0u64; words];
    let count = |eval: &[u64]| -> u64 {
        (0..words)
            .map(|w| u64::from((!(eval[w] ^ target[w]) & valid[w]).count_ones()))
            .sum()
    };
    let total = 1u64 << m;
    let mut checked = 0;
    for step in 0..total {
        if step > 0 {
            let j = step.trailing_zeros() as usize;
            for (e, i) in eval.iter_mut().zip(&indicators[j]) {
                *e ^= i;
            }
        }
        checked += 1;
        let matches = count(&eval);
        if !within(matches) {
            return Ok(EpsHardReport {
                hard: false,
                exception_points: size,
                polynomials_checked: checked,
                violation: Some(Agreement::restricted(matches, size)?),
            });
        }
    }
    Ok(EpsHardReport {
        hard: true,
        exception_points: size,
        polynomials_checked: checked,
        violation: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialReport {
    pub limit: u64,
    pub t_max: u64,
    pub kummer_pairs: u64,
    pub kummer_violations: Vec<(u64, u64)>,
    pub lucas_pairs: u64,
    pub lucas_violations: Vec<(u64, u64)>,
}

impl BinomialReport {
    pub fn holds(&self) -> bool {
        self.kummer_violations.is_empty() && self.lucas_violations.is_empty()
    }
}

/// Compares borrow counts with 2-adic valuations of binom(N, M) for all
/// M <= N < limit, and the weight-bit formula for S_t with binom(w, t) mod 2
/// for t < t_max and w < limit. The binomials come from Pascal's triangle in
/// big integers.
pub fn verify_binomials(limit: u64, t_max: u64) -> Result<BinomialReport> {
    if limit > 1 << 14 {
        return Err(Error::invalid(format!("limit {limit} above 2^14")));
    }
    let mut report = BinomialReport {
        limit,
        t_max,
        kummer_pairs: 0,
        kummer_violations: Vec::new(),
        lucas_pairs: 0,
        lucas_violations: Vec::new(),
    };
    let mut row: Vec<BigUint> = vec![BigUint::from(1u8)];
    for n in 0..limit {
        if n > 0 {
            let mut next = Vec::with_capacity(row.len() + 1);
            next.push(BigUint::from(1u8));
            for m in 1..row.len() {
                next.push(&row[m - 1] + &row[m]);
            }
            next.push(BigUint::from(1u8));
            row = next;
        }
        for (m, c) in row.iter().enumerate() {
            let m = m as u64;
            report.kummer_pairs += 1;
            let v = c.trailing_zeros().expect("binomials are positive");
            if u64::from(crate::symmetric::borrow_count(n, m)?) != v {
                report.kummer_violations.push((n, m));
            }
        }
        for t in 0..t_max {
            report.lucas_pairs += 1;
            let parity = if t > n { 0 } else { u8::from(row[t as usize].bit(0)) };
            if crate::symmetric::elem_sym_mod2(t, n) != parity {
                report.lucas_violations.push((t, n));
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcRoundTripReport {
    pub trials: u64,
    pub seed: u64,
    pub value_failures: u64,
    pub degree_failures: u64,
    pub inverse_failures: u64,
    pub agreement_failures: u64,
}

impl NcRoundTripReport {
    pub fn holds(&self) -> bool {
        self.value_failures == 0
            && self.degree_failures == 0
            && self.inverse_failures == 0
            && self.agreement_failures == 0
    }
}

/// Random ring polynomials (n <= 6, d <= 3, k <= 3) converted to
/// non-classical form and back, each paired with a random Boolean function.
pub fn verify_nc_roundtrip(trials: u64, seed: u64) -> Result<NcRoundTripReport> {
    use crate::lift::k_lift;
    use crate::nonclassical::{nc_boolean_agreement, nc_from_ring, nc_to_ring, Dyadic};
    use crate::poly::RingPoly;

    let mut prng = rng::seeded(seed);
    let mut r = NcRoundTripReport {
        trials,
        seed,
        value_failures: 0,
        degree_failures: 0,
        inverse_failures: 0,
        agreement_failures: 0,
    };
    for _ in 0..trials {
        let n = prng.gen_range(1..=6u32);
        let d = prng.gen_range(0..=3u32.min(n));
        let k = prng.gen_range(1..=3u32);
        let mut terms = Vec::new();
        for m in masks_up_to_degree(n, d) {
            if prng.gen_bool(0.5) {
                terms.push((m, prng.gen_range(0..(1u64 << k))));
            }
        }
        let p = RingPoly::from_terms(n, k, d, terms)?;
        let f = BoolFn::random(n, prng.gen())?;

        let nc = nc_from_ring(&p)?;
        let points = 0..(1u32 << n);
        if points
            .clone()
            .any(|x| nc.eval(x) != Dyadic::new(p.eval(x).into(), k).expect("k <= 16"))
        {
            r.value_failures += 1;
        }
        if nc.degree() > d + k - 1 {
            r.degree_failures += 1;
        }
        let back = nc_to_ring(&nc, d + k - 1)?;
        if points
            .clone()
            .any(|x| Dyadic::new(back.eval(x).into(), back.k()).expect("k <= 16") != nc.eval(x))
        {
            r.inverse_failures += 1;
        }
        let ring_side = k_lift(&f, k)?.agreement_with(&p)?;
        let nc_side = nc_boolean_agreement(&nc, &f)?;
        let back_side = k_lift(&f, back.k())?.agreement_with(&back)?;
        if nc_side != ring_side || back_side != nc_side {
            r.agreement_failures += 1;
        }
    }
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MajBoundRow {
    pub n: u32,
    pub d: u32,
    pub k: u32,
    pub gamma: Agreement,
    /// gamma_{d,1}, recorded for comparison.
    pub gamma_binary: Agreement,
    pub equals_binary: bool,
    /// 1/2 + 10d/sqrt(n) >= 1, so the bound says nothing.
    pub vacuous: bool,
    pub satisfied: bool,
    pub bound_f64: f64,
}

/// gamma - 1/2 <= 10 d / sqrt(n), decided in exact arithmetic.
pub fn maj_bound_holds(gamma: &Agreement, n: u32, d: u32) -> bool {
    let excess = gamma.ratio() - Agreement::one_half();
    if excess <= BigRational::from_integer(0.into()) {
        return true;
    }
    let lhs = &excess * &excess * BigRational::from_integer(n.into());
    lhs <= BigRational::from_integer((100 * u64::from(d) * u64::from(d)).into())
}

pub fn maj_bound_row(n: u32, d: u32, k: u32, budget: u128) -> Result<MajBoundRow> {
    if d == 0 {
        return Err(Error::invalid("the Majority bound needs d >= 1"));
    }
    let maj = crate::constructions::majority(n)?;
    let gamma = gamma_exact(&maj, d, k, budget)?.gamma;
    let gamma_binary = if k == 1 {
        gamma.clone()
    } else {
        gamma_exact(&maj, d, 1, budget)?.gamma
    };
    Ok(MajBoundRow {
        n,
        d,
        k,
        equals_binary: gamma.cmp_value(&gamma_binary) == Ordering::Equal,
        vacuous: 400 * u64::from(d) * u64::from(d) >= u64::from(n),
        satisfied: maj_bound_holds(&gamma, n, d),
        bound_f64: 0.5 + 10.0 * f64::from(d) / f64::from(n).sqrt(),
        gamma,
        gamma_binary,
    })
}

/// The exhaustively feasible cells: odd n <= 5 with d <= 2, and every
/// n <= 9 with d = 1; k in {1, 2}; d <= n.
pub fn maj_bound_cells() -> Vec<(u32, u32, u32)> {
    let mut cells = Vec::new();
    for n in 1..=9u32 {
        for d in 1..=2u32 {
            if d > n || (d == 2 && (n > 5 || n % 2 == 0)) {
                continue;
            }
            for k in 1..=2 {
                cells.push((n, d, k));
            }
        }
    }
    cells
}
