use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Subcommand};
use serde_json::{json, Value};
use zkpoly::algebra::min_forcing_probe;
use zkpoly::search::DEFAULT_BUDGET;
use zkpoly::verify::{
    find_monochromatic_grid, verify_binomials, verify_gamma_facts, verify_lem_main,
    verify_nc_roundtrip, verify_rel_lbd, Colouring,
};

use crate::record::{frac, ExperimentRecord};

#[derive(Debug, Args)]
pub struct Out {
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// Five-variable base case: best relevant polynomial agreement
    RelLbd {
        #[command(flatten)]
        out: Out,
    },
    /// binom(w, d) mod 8 = 4 |w|_l on the weights meeting either condition
    LemMain {
        #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3, 4])]
        ell: Vec<u32>,
        /// Weights below 2^width; defaults to ell + 4
        #[arg(long)]
        width: Option<u32>,
        #[command(flatten)]
        out: Out,
    },
    /// Degree-one collapse, monotonicity in k and the collapse above 1 - 2^-d
    GammaFacts {
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[command(flatten)]
        out: Out,
    },
    /// Borrow counts against 2-adic valuations of binomials
    Kummer {
        #[arg(long, default_value_t = 4096)]
        limit: u64,
        #[command(flatten)]
        out: Out,
    },
    /// S_t(w) against binom(w, t) mod 2
    Lucas {
        #[arg(long, default_value_t = 4096)]
        limit: u64,
        #[arg(long, default_value_t = 64)]
        t_max: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Random point sets below binom(n, <=d) are never forcing
    ForcingProbe {
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2])]
        k: Vec<u32>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Ring to non-classical and back on random polynomials
    NcRoundtrip {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Monochromatic grids in random colourings, and their restrictions
    RamseyProbe {
        #[arg(long, default_value_t = 6)]
        i_size: u32,
        #[arg(long, default_value_t = 6)]
        j_size: u32,
        #[arg(long, default_value_t = 1)]
        i: u32,
        #[arg(long, default_value_t = 1)]
        j: u32,
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1 << 24)]
        budget: u64,
        #[command(flatten)]
        out: Out,
    },
}

fn finish(
    name: &str,
    passed: bool,
    summary: String,
    seed: Option<u64>,
    parameters: Value,
    evidence: Value,
    started: Instant,
    out: &Out,
) -> anyhow::Result<bool> {
    eprintln!("{} verify {name}: {summary}", if passed { "PASS" } else { "FAIL" });
    let result = json!({ "passed": passed, "evidence": evidence });
    ExperimentRecord::new(&format!("verify {name}"), seed, parameters, result, started)
        .emit(out.out.as_deref())?;
    Ok(passed)
}

pub fn run(v: &Verify) -> anyhow::Result<bool> {
    let started = Instant::now();
    match v {
        Verify::RelLbd { out } => {
            let r = verify_rel_lbd();
            let summary = format!("max {} over {} cases, bound {}", r.max, r.cases, r.bound);
            let evidence = json!({ "report": r, "max": frac(&r.max) });
            finish("rel-lbd", r.holds(), summary, None, json!({}), evidence, started, out)
        }
        Verify::LemMain { ell, width, out } => {
            let reports = ell
                .iter()
                .map(|&l| verify_lem_main(l, width.unwrap_or(l + 4)))
                .collect::<zkpoly::Result<Vec<_>>>()?;
            let passed = reports.iter().all(|r| r.holds());
            let covered: u64 = reports.iter().map(|r| r.covered).sum();
            let summary = format!("{covered} covered weights across ell={ell:?}");
            let parameters = json!({ "ell": ell, "width": width });
            finish("lem-main", passed, summary, None, parameters, json!(reports), started, out)
        }
        Verify::GammaFacts { n, budget, out } => {
            let r = verify_gamma_facts(*n, *budget)?;
            let summary = format!("{} functions on n={n}, {} ring gains", r.functions, r.ring_gains);
            let parameters = json!({ "n": n, "budget": budget.to_string() });
            finish("gamma-facts", r.holds(), summary, None, parameters, json!(r), started, out)
        }
        Verify::Kummer { limit, out } => {
            let r = verify_binomials(*limit, 0)?;
            let passed = r.kummer_violations.is_empty();
            let summary = format!("{} pairs, {} violations", r.kummer_pairs, r.kummer_violations.len());
            let evidence = json!({ "pairs": r.kummer_pairs, "violations": r.kummer_violations });
            finish("kummer", passed, summary, None, json!({ "limit": limit }), evidence, started, out)
        }
        Verify::Lucas { limit, t_max, out } => {
            let r = verify_binomials(*limit, *t_max)?;
            let passed = r.holds();
            let summary = format!(
                "{} (t, w) pairs, {} violations; {} Kummer pairs rechecked",
                r.lucas_pairs,
                r.lucas_violations.len(),
                r.kummer_pairs
            );
            let parameters = json!({ "limit": limit, "t_max": t_max });
            finish("lucas", passed, summary, None, parameters, json!(r), started, out)
        }
        Verify::ForcingProbe {
            n,
            d,
            k,
            trials,
            seed,
            out,
        } => {
            let reports = k
                .iter()
                .map(|&k| min_forcing_probe(*n, *d, k, *trials, *seed))
                .collect::<zkpoly::Result<Vec<_>>>()?;
            let passed = reports.iter().all(|r| r.passed());
            let summary = format!(
                "n={n} d={d} k={k:?}: {} counterexamples below threshold {}",
                reports.iter().map(|r| r.counterexamples.len()).sum::<usize>(),
                reports.first().map_or(0, |r| r.threshold)
            );
            let parameters = json!({ "n": n, "d": d, "k": k, "trials": trials });
            finish("forcing-probe", passed, summary, Some(*seed), parameters, json!(reports), started, out)
        }
        Verify::NcRoundtrip { trials, seed, out } => {
            let r = verify_nc_roundtrip(*trials, *seed)?;
            let summary = format!("{trials} random polynomials");
            let parameters = json!({ "trials": trials });
            finish("nc-roundtrip", r.holds(), summary, Some(*seed), parameters, json!(r), started, out)
        }
        Verify::RamseyProbe {
            i_size,
            j_size,
            i,
            j,
            r,
            trials,
            seed,
            budget,
            out,
        } => {
            let mut found = 0u64;
            let mut unstable = 0u64;
            let mut grids = Vec::new();
            for t in 0..*trials {
                let c = Colouring::random(*i_size, *j_size, *i, *j, seed.wrapping_add(t))?;
                let Some(g) = find_monochromatic_grid(&c, *r, *budget)? else {
                    grids.push(Value::Null);
                    continue;
                };
                found += 1;
                // the restriction to the grid is itself a full monochromatic grid
                let sub = c.restrict(&g.i_sub, &g.j_sub)?;
                let again = find_monochromatic_grid(&sub, *r, *budget)?;
                let whole: Vec<u32> = (0..*r).collect();
                if again.as_ref().map(|h| (&h.i_sub, &h.j_sub, h.colour))
                    != Some((&whole, &whole, g.colour))
                {
                    unstable += 1;
                }
                grids.push(json!(g));
            }
            let summary = format!("{found}/{trials} colourings had a grid, {unstable} restriction failures");
            let parameters = json!({
                "i_size": i_size, "j_size": j_size, "i": i, "j": j, "r": r, "trials": trials,
            });
            let evidence = json!({ "found": found, "restriction_failures": unstable, "grids": grids });
            finish("ramsey-probe", unstable == 0, summary, Some(*seed), parameters, evidence, started, out)
        }
    }
}
