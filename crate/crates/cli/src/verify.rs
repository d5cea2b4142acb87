//! Self-checks against known values, grouped by library area.

use crate::matrix::sig15;
use clap::ValueEnum;
use magnus2::bch_min::{cap_supremum, discont_limsup, discont_search, ridge_crossover, CapPatch};
use magnus2::counterexample::verify_counterexample;
use magnus2::explog::{exp2, log2};
use magnus2::magnus::{
    classify_magnus, complex_magnus_candidate, critical_development, dev_w, lexp, magnus_exponent,
    magnus_exponent_lifted, optimal_ridge, MagnusClass,
};
use magnus2::schur_bch::bch_closed;
use magnus2::specfun::{as_at, ell, g_loxo, j_pi_constant, j_upper};
use magnus2::M2R;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Specfun,
    Explog,
    Bch,
    Magnus,
    Bchmin,
    Counterexample,
}

/// One named check with the numbers behind its verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn line(&self) -> String {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        format!("{verdict} {}/{} {}", self.suite, self.name, self.detail)
    }
}

struct Collector {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Collector {
    fn new(suite: &'static str) -> Self {
        Collector {
            suite,
            checks: Vec::new(),
        }
    }

    // |got - want| ≤ tol, reporting the error and the tolerance.
    fn close(&mut self, name: &str, got: magnus2::Result<f64>, want: f64, tol: f64) {
        let (pass, detail) = match got {
            Ok(g) => {
                let err = (g - want).abs();
                (
                    err <= tol,
                    format!(
                        "value {} want {} error {:e} tol {tol:e}",
                        sig15(g),
                        sig15(want),
                        err
                    ),
                )
            }
            Err(e) => (false, format!("error {e}")),
        };
        self.push(name, pass, detail);
    }

    fn push(&mut self, name: &str, pass: bool, detail: String) {
        self.checks.push(Check {
            suite: self.suite,
            name: name.to_string(),
            pass,
            detail,
        });
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_matrix(r: &mut ChaCha8Rng, scale: f64) -> M2R {
    M2R::new(
        r.gen_range(-scale..scale),
        r.gen_range(-scale..scale),
        r.gen_range(-scale..scale),
        r.gen_range(-scale..scale),
    )
}

// Plain Taylor series with scaling and squaring.
fn exp_series(a: &M2R) -> M2R {
    let k = a.op_norm().log2().ceil().max(0.0) as i32 + 4;
    let small = a.scale_re(0.5f64.powi(k));
    let (mut sum, mut term) = (M2R::identity(), M2R::identity());
    for n in 1..30 {
        term = (term * small).scale_re(1.0 / n as f64);
        sum += term;
    }
    (0..k).fold(sum, |m, _| m * m)
}

fn specfun() -> Vec<Check> {
    let mut c = Collector::new("specfun");
    c.close("ell(pi)", ell(PI), 0.386519539, 1e-8);
    c.close("J_pi", j_pi_constant(), -3.0222, 5e-4);
    c.close("AS(1)", as_at(1.0).map(|v| v.0), 3f64.sqrt() / 3.0, 1e-12);
    c.close(
        "G(pi/2)",
        g_loxo(FRAC_PI_2),
        FRAC_PI_2 * FRAC_PI_2.exp(),
        1e-12,
    );
    c.checks
}

fn explog() -> Vec<Check> {
    let mut c = Collector::new("explog");
    let mut r = rng(11);
    let (mut exp_err, mut log_err) = (0.0f64, 0.0f64);
    for _ in 0..300 {
        let a = random_matrix(&mut r, 1.0);
        exp_err = exp_err.max(exp2(&a).max_abs_diff(&exp_series(&a)) / exp2(&a).max_abs().max(1.0));
        let small = random_matrix(&mut r, 0.7);
        if let Ok(l) = log2(&exp2(&small)) {
            log_err = log_err.max(l.max_abs_diff(&small));
        } else {
            log_err = f64::INFINITY;
        }
    }
    c.push(
        "exp-vs-series",
        exp_err <= 1e-11,
        format!("max error {exp_err:e} tol 1e-11"),
    );
    c.push(
        "log-round-trip",
        log_err <= 1e-9,
        format!("max error {log_err:e} tol 1e-9"),
    );
    c.checks
}

fn bch() -> Vec<Check> {
    let mut c = Collector::new("bch");
    let mut r = rng(13);
    let mut worst = 0.0f64;
    for _ in 0..300 {
        let (a, b) = (random_matrix(&mut r, 0.8), random_matrix(&mut r, 0.8));
        let err = match (bch_closed(&a, &b), log2(&(exp2(&a) * exp2(&b)))) {
            (Ok(x), Ok(y)) => x.max_abs_diff(&y),
            _ => f64::INFINITY,
        };
        worst = worst.max(err);
    }
    c.push(
        "closed-vs-log-product",
        worst <= 1e-10,
        format!("max error {worst:e} tol 1e-10"),
    );
    c.checks
}

// The root of tan z = z in (π, 3π/2).
fn tan_fixed_point() -> f64 {
    let f = |z: f64| z.sin() - z * z.cos();
    let (mut lo, mut hi) = (PI + 0.1, 1.5 * PI - 1e-9);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(lo) * f(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn magnus() -> Vec<Check> {
    let mut c = Collector::new("magnus");
    for p in [1.0, 2.0, 3.0] {
        let got = critical_development(p)
            .and_then(|phi| lexp(&phi))
            .and_then(|x| log2(&x))
            .map(|l| l.op_norm());
        let want = PI * ((PI + p) / (PI - p)).sqrt() - PI - p;
        c.close(&format!("critical-closed-form p={p}"), got, want, 1e-7);
    }
    for p in [0.05f64, 0.1] {
        let got =
            log2(&dev_w(p, p)).map(|l| l.op_norm() - (p + p.powi(3) / 6.0 - p.powi(5) / 72.0));
        let want = 17.0 * p.powi(7) / 3024.0;
        c.close(&format!("parabolic-series p={p}"), got, want, 0.05 * want);
    }
    let mut worst = f64::INFINITY;
    for k in 1..=20 {
        let p = 0.1 + 3.0 * k as f64 / 21.0;
        let gap = (|| -> magnus2::Result<f64> {
            let w = log2(&dev_w(p, p))?.op_norm();
            let ridge = optimal_ridge(p)?.norm;
            Ok((ridge - w).min(j_upper(p)? - ridge))
        })();
        worst = worst.min(gap.unwrap_or(f64::NEG_INFINITY));
    }
    c.push(
        "upper-bound-sandwich",
        worst > 1e-9,
        format!("smallest gap {worst:e} tol 1e-9"),
    );
    let z = tan_fixed_point();
    let w = (1.0 + z * z).sqrt();
    let big = M2R::from_entries(-w - z, 0.0, 0.0, -w + z);
    c.close("tan-fixed-point", Ok(z), 4.4934, 1e-4);
    c.close(
        "lifted-exponent",
        magnus_exponent_lifted(&big).map(|l| l.value),
        z,
        1e-4,
    );
    c.close(
        "complex-candidate",
        complex_magnus_candidate(&big),
        3.839,
        1e-3,
    );
    let w11 = dev_w(1.0, 1.0);
    c.close("W(1,1)-exponent", magnus_exponent(&w11), 1.0, 1e-9);
    let class = classify_magnus(&w11);
    c.push(
        "W(1,1)-class",
        class == Ok(MagnusClass::Parabolic),
        format!("class {class:?}"),
    );
    c.checks
}

fn bchmin() -> Vec<Check> {
    let mut c = Collector::new("bchmin");
    c.close(
        "discont-limsup",
        discont_limsup(0.0),
        PI * ((PI + 2.0) / (PI - 2.0)).sqrt(),
        1e-15,
    );
    match discont_search(0.0, 10_000, &mut rng(1)) {
        Ok(s) => c.push(
            "discont-search",
            s.best >= 0.98 * s.bound && s.max_excess <= 1e-6,
            format!(
                "best/bound {} excess {:e}",
                sig15(s.best / s.bound),
                s.max_excess
            ),
        ),
        Err(e) => c.push("discont-search", false, format!("error {e}")),
    }
    match cap_supremum(FRAC_PI_2, 100) {
        Ok((sup, at)) => {
            let want = FRAC_PI_2 * FRAC_PI_2.exp();
            let err = (sup - want).abs();
            c.push(
                "cap-supremum",
                err <= 1e-3 && at.patch() == CapPatch::EllHyp,
                format!(
                    "value {} want {} error {err:e} on {}",
                    sig15(sup),
                    sig15(want),
                    at.patch().name()
                ),
            );
        }
        Err(e) => c.push("cap-supremum", false, format!("error {e}")),
    }
    c.close(
        "ridge-crossover/pi",
        ridge_crossover().map(|x| x / PI),
        0.392744,
        1e-4,
    );
    c.checks
}

fn counterexample() -> Vec<Check> {
    let mut c = Collector::new("counterexample");
    match verify_counterexample() {
        Ok(rep) => {
            c.push(
                "in-disk",
                rep.in_disk,
                format!("margin {}", sig15(rep.disk_margin)),
            );
            let sharpness = rep
                .contacts
                .iter()
                .map(|k| k.curvature)
                .fold(f64::INFINITY, f64::min);
            c.push(
                "in-range",
                rep.contained,
                format!(
                    "contacts {} min distance {:e} smallest contact curvature {}",
                    rep.contacts.len(),
                    rep.min_distance,
                    sig15(sharpness)
                ),
            );
            let w = rep.half_witness;
            c.push(
                "half-escapes",
                rep.half_escapes,
                format!(
                    "witness ({}, {}) radius {}",
                    sig15(w.x),
                    sig15(w.y),
                    sig15(w.x.hypot(w.y))
                ),
            );
        }
        Err(e) => c.push("report", false, format!("error {e}")),
    }
    c.checks
}

type SuiteFn = fn() -> Vec<Check>;

pub fn run(suite: Suite) -> Vec<Check> {
    let all = suite == Suite::All;
    let mut out = Vec::new();
    let table: [(Suite, SuiteFn); 6] = [
        (Suite::Specfun, specfun),
        (Suite::Explog, explog),
        (Suite::Bch, bch),
        (Suite::Magnus, magnus),
        (Suite::Bchmin, bchmin),
        (Suite::Counterexample, counterexample),
    ];
    for (s, f) in table {
        if all || s == suite {
            out.extend(f());
        }
    }
    out
}
