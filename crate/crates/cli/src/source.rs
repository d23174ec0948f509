use anyhow::{bail, Context};
use clap::Args;
use serde_json::{json, Value};
use zkpoly::constructions::{
    construct_f_h, construct_f_h_general, elem_sym_fn, majority, ShiftPair, SimpleShift,
};
use zkpoly::BoolFn;

/// Where the Boolean function comes from.
#[derive(Debug, Clone, Args)]
pub struct FnArgs {
    /// maj, elemsym, parity, f_h, f_h_general or file:PATH (BFN1)
    #[arg(long = "fn", value_name = "SOURCE")]
    pub source: String,
    /// Number of variables (half the variables for f_h and f_h_general)
    #[arg(long)]
    pub n: Option<u32>,
    /// Degree of the elementary symmetric function
    #[arg(long)]
    pub t: Option<u32>,
    /// Power-of-two degree d used by the f_h constructions
    #[arg(long, default_value_t = 1)]
    pub hd: u32,
    /// Seed of the random function H inside f_h
    #[arg(long, default_value_t = 0)]
    pub hseed: u64,
    /// Shift pair Phi as FIRST:SECOND bit strings over the low weight bits
    #[arg(long)]
    pub phi: Option<String>,
    /// Shift pair Psi, same format as --phi
    #[arg(long)]
    pub psi: Option<String>,
}

fn need_n(a: &FnArgs) -> anyhow::Result<u32> {
    a.n.with_context(|| format!("--fn {} needs --n", a.source))
}

fn parse_shift(ell: u32, text: &str) -> anyhow::Result<SimpleShift> {
    let bits: Vec<bool> = text
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => bail!("shift tables are 0/1 strings, found {other:?}"),
        })
        .collect::<anyhow::Result<_>>()?;
    Ok(SimpleShift::new(ell, bits)?)
}

fn parse_pair(ell: u32, text: Option<&str>) -> anyhow::Result<ShiftPair> {
    let Some(text) = text else {
        return Ok(ShiftPair::zero(ell));
    };
    let (a, b) = text
        .split_once(':')
        .context("shift pairs are written FIRST:SECOND")?;
    Ok(ShiftPair {
        first: parse_shift(ell, a)?,
        second: parse_shift(ell, b)?,
    })
}

/// Builds the function and a JSON description of it.
pub fn load(a: &FnArgs) -> anyhow::Result<(BoolFn, Value)> {
    if let Some(path) = a.source.strip_prefix("file:") {
        let bytes = std::fs::read(path).with_context(|| format!("reading {path}"))?;
        let f = BoolFn::from_bytes(&bytes)?;
        return Ok((f, json!({ "source": "file", "path": path })));
    }
    match a.source.as_str() {
        "maj" => {
            let n = need_n(a)?;
            Ok((majority(n)?, json!({ "source": "maj", "n": n })))
        }
        "elemsym" => {
            let n = need_n(a)?;
            let t = a.t.context("--fn elemsym needs --t")?;
            Ok((elem_sym_fn(n, t)?, json!({ "source": "elemsym", "n": n, "t": t })))
        }
        "parity" => {
            let n = need_n(a)?;
            let f = BoolFn::from_fn(n, |x| x.count_ones() % 2 == 1)?;
            Ok((f, json!({ "source": "parity", "n": n })))
        }
        "f_h" => {
            let n = need_n(a)?;
            let h = BoolFn::random(2 * n, a.hseed)?;
            let f = construct_f_h(n, a.hd, &h)?;
            Ok((f, json!({ "source": "f_h", "n": n, "hd": a.hd, "hseed": a.hseed })))
        }
        "f_h_general" => {
            let n = need_n(a)?;
            if !a.hd.is_power_of_two() {
                bail!("--hd must be a power of two");
            }
            let ell = a.hd.trailing_zeros();
            let phi = parse_pair(ell, a.phi.as_deref())?;
            let psi = parse_pair(ell, a.psi.as_deref())?;
            let h = BoolFn::random(2 * n, a.hseed)?;
            let f = construct_f_h_general(n, a.hd, &h, &phi, &psi)?;
            Ok((
                f,
                json!({
                    "source": "f_h_general", "n": n, "hd": a.hd, "hseed": a.hseed,
                    "phi": phi, "psi": psi,
                }),
            ))
        }
        other => bail!("unknown function source {other:?}"),
    }
}
