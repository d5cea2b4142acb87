//! Grid sweeps written as CSV. Rows are computed in parallel and written in
//! grid order, so output depends only on the flags.

use crate::error::{CliError, CliResult};
use clap::ValueEnum;
use magnus2::bch_min::{discont_search, wedge_cap, wedge_cap_params};
use magnus2::geometry::Model;
use magnus2::magnus::optimal_ridge;
use magnus2::schur_bch::{moment_atlas, Sheet};
use magnus2::specfun::{g_loxo, j_upper};
use magnus2::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};
use std::io::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepTarget {
    WedgeCap,
    MomentAtlas,
    Ridge,
    JCurve,
    GCurve,
    Discont,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepParams {
    pub pmin: f64,
    pub pmax: f64,
    pub n: usize,
    pub norm: f64,
    pub grid: usize,
    pub model: Model,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SweepParams {
    fn default() -> Self {
        SweepParams {
            pmin: 0.1,
            pmax: 3.1,
            n: 100,
            norm: FRAC_PI_2,
            grid: 100,
            model: Model::Ckb,
            alpha_min: -1.5,
            alpha_max: 1.5,
            samples: 10_000,
            seed: 1,
        }
    }
}

/// A header and its rows, each already formatted.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

fn num(x: f64) -> String {
    x.to_string()
}

// `n` evenly spaced points of `[lo, hi]`, both ends included.
fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

fn check(p: &SweepParams) -> CliResult<()> {
    let bad = |what: &str| Err(CliError::Parse(format!("invalid sweep grid: {what}")));
    if p.n == 0 || p.grid == 0 {
        return bad("--n and --grid must be positive");
    }
    if !(p.pmin <= p.pmax) {
        return bad("--pmin must not exceed --pmax");
    }
    if !(p.alpha_min <= p.alpha_max) {
        return bad("--alpha-min must not exceed --alpha-max");
    }
    if !(p.norm > 0.0 && p.norm.is_finite()) {
        return bad("--N must be positive");
    }
    Ok(())
}

// Soft failures drop the grid point; anything else aborts the sweep.
fn soft(e: &Error) -> bool {
    matches!(
        e,
        Error::NotLogable | Error::Domain(_) | Error::WrongStratum(_)
    )
}

fn collect<T: Sync, F>(items: &[T], f: F) -> CliResult<Vec<Vec<String>>>
where
    F: Fn(&T) -> magnus2::Result<Option<Vec<String>>> + Sync + Send,
{
    let rows: Vec<magnus2::Result<Option<Vec<String>>>> = items.par_iter().map(f).collect();
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        match r {
            Ok(Some(row)) => out.push(row),
            Ok(None) => {}
            Err(e) if soft(&e) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

// Typed approximations of π/2 such as 1.5708 select the critical cap.
const CRITICAL_INPUT_BAND: f64 = 1e-4;

fn cap_norm(n: f64) -> CliResult<f64> {
    if (n - FRAC_PI_2).abs() <= CRITICAL_INPUT_BAND {
        Ok(FRAC_PI_2)
    } else if n > FRAC_PI_2 {
        Err(CliError::Parse(format!(
            "wedge-cap needs --N <= pi/2, got {n}"
        )))
    } else {
        Ok(n)
    }
}

pub fn sweep(target: SweepTarget, p: &SweepParams) -> CliResult<Table> {
    check(p)?;
    match target {
        SweepTarget::Ridge => {
            let ps = linspace(p.pmin, p.pmax, p.n);
            let rows = collect(&ps, |&x| {
                let r = optimal_ridge(x)?;
                Ok(Some(vec![num(x), num(r.s), num(r.norm)]))
            })?;
            Ok(Table {
                header: vec!["p", "s", "norm"],
                rows,
            })
        }
        SweepTarget::JCurve => {
            let ps = linspace(p.pmin, p.pmax, p.n);
            let rows = collect(&ps, |&x| Ok(Some(vec![num(x), num(j_upper(x)?)])))?;
            Ok(Table {
                header: vec!["p", "j"],
                rows,
            })
        }
        SweepTarget::GCurve => {
            let ps = linspace(p.pmin, p.pmax, p.n);
            let rows = collect(&ps, |&x| Ok(Some(vec![num(x), num(g_loxo(x)?)])))?;
            Ok(Table {
                header: vec!["p", "g"],
                rows,
            })
        }
        SweepTarget::WedgeCap => {
            let n = cap_norm(p.norm)?;
            let params = wedge_cap_params(n, p.grid);
            let rows = collect(&params, |&cp| {
                let w = wedge_cap(n, cp)?;
                let (u, v) = cp.uv();
                Ok(Some(vec![
                    cp.patch().name().to_string(),
                    num(u),
                    num(v),
                    num(w.image.x),
                    num(w.image.y),
                    num(w.image.z),
                ]))
            })?;
            Ok(Table {
                header: vec!["patch", "u", "v", "x", "y", "z"],
                rows,
            })
        }
        SweepTarget::MomentAtlas => {
            let g = p.grid;
            let cells: Vec<(usize, usize)> =
                (0..g).flat_map(|i| (0..g).map(move |j| (i, j))).collect();
            let rows = collect(&cells, |&(i, j)| {
                let t = (i as f64 + 0.5) / g as f64;
                let theta = 2.0 * PI * (j as f64 + 0.5) / g as f64;
                let (s, r) = (p.norm * t, p.norm * (1.0 - t));
                let sheet = if theta <= PI {
                    Sheet::Plus
                } else {
                    Sheet::Minus
                };
                let img = moment_atlas(s, r, theta, sheet)?;
                let point = match p.model {
                    Model::Ckb => Some(img.ckb),
                    Model::Hp => img.hp,
                    Model::Ackb => Some(img.ackb),
                    Model::Ahp => img.ahp,
                };
                Ok(point.map(|q| vec![num(s), num(r), num(theta), num(q.x), num(q.y)]))
            })?;
            Ok(Table {
                header: vec!["s", "r", "theta", "x", "y"],
                rows,
            })
        }
        SweepTarget::Discont => {
            let alphas = linspace(p.alpha_min, p.alpha_max, p.n);
            let indexed: Vec<(usize, f64)> = alphas.into_iter().enumerate().collect();
            let rows = collect(&indexed, |&(k, a)| {
                // One stream per row keeps the output independent of scheduling.
                let mut rng = ChaCha8Rng::seed_from_u64(p.seed.wrapping_add(k as u64));
                let s = discont_search(a, p.samples, &mut rng)?;
                Ok(Some(vec![
                    num(a),
                    num(s.bound),
                    num(s.best),
                    num(s.max_excess),
                ]))
            })?;
            Ok(Table {
                header: vec!["alpha0", "bound", "best", "excess"],
                rows,
            })
        }
    }
}

pub fn write_csv(table: &Table, out: impl Write) -> CliResult<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}
