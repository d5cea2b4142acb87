//! The balanced critical case: the discontinuity of BCH at `±(π/2)Ĩ` pairs,
//! the supremum bound `G(p)`, and the canonical parametrizations of the
//! wedge cap `∂Ξ^PH B_{N,N}`.

use super::seh::seh_image;
use crate::error::{Error, Result};
use crate::explog::{exp2, log2};
use crate::geometry::{xi_ph, PHPoint};
use crate::m2::M2R;
use crate::optim::{golden_max, grid_brackets};
use crate::specfun::g_loxo;
use rand::Rng;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

/// `π√((π - |α₀| + 2cos(α₀/2))/(π - |α₀| - 2cos(α₀/2)))`, the limsup of
/// `‖log(exp((π-α)A/2) exp((π+α)B/2))‖₂` as `(α, A, B) → (α₀, ±Ĩ, ±Ĩ)`.
pub fn discont_limsup(alpha0: f64) -> Result<f64> {
    if !(alpha0.abs() < PI) {
        return Err(Error::Domain(format!(
            "alpha0 = {alpha0} outside (-pi, pi)"
        )));
    }
    let gap = PI - alpha0.abs();
    let c = 2.0 * (alpha0 / 2.0).cos();
    Ok(PI * ((gap + c) / (gap - c)).sqrt())
}

/// The three quantities compared around `sup ‖BCH‖₂` at `p = max` of the
/// two norms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupBound {
    /// `G(p)`, a lower bound of the supremum.
    pub g: f64,
    /// `π√((π - p + sin p)/(π - p - sin p))`, the discontinuity value.
    pub discont: f64,
    /// `2π√3/(π - p)`.
    pub crude: f64,
}

pub fn sup_bch_norm_bound(p: f64) -> Result<SupBound> {
    let g = g_loxo(p)?;
    let gap = PI - p;
    Ok(SupBound {
        g,
        discont: PI * ((gap + p.sin()) / (gap - p.sin())).sqrt(),
        crude: 2.0 * PI * 3f64.sqrt() / gap,
    })
}

/// Result of the random search near the exceptional pairs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscontSearch {
    pub bound: f64,
    pub best: f64,
    /// Largest `value - bound` seen; negative when the bound was never
    /// reached.
    pub max_excess: f64,
    pub samples: usize,
}

/// A pair near `(σĨ, σĨ)` weighted for the balanced critical product:
/// `A = σ(1 - e_A)Ĩ + e_A(s₁J̃ + s₂K̃)`, `B = σ(1 - e_B)Ĩ + e_B(r₁J̃ + r₂K̃)`
/// with unit `s`, `r`, and the product `exp((π-α₀)A/2) exp((π+α₀)B/2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalPair {
    pub alpha0: f64,
    pub sigma: f64,
    pub ea: f64,
    pub eb: f64,
    pub s: (f64, f64),
    pub r: (f64, f64),
}

impl CriticalPair {
    fn weights(&self) -> (f64, f64) {
        ((PI - self.alpha0) / 2.0, (PI + self.alpha0) / 2.0)
    }

    /// The weighted exponents `((π-α₀)A/2, (π+α₀)B/2)`.
    pub fn exponents(&self) -> (M2R, M2R) {
        let (wa, wb) = self.weights();
        let a = M2R::new(
            0.0,
            self.sigma * (1.0 - self.ea),
            self.ea * self.s.0,
            self.ea * self.s.1,
        );
        let b = M2R::new(
            0.0,
            self.sigma * (1.0 - self.eb),
            self.eb * self.r.0,
            self.eb * self.r.1,
        );
        (a.scale_re(wa), b.scale_re(wb))
    }

    /// `‖log(exp X exp Y)‖₂` for the weighted exponents, evaluated without
    /// forming the product. The product is `-Id + O(e)`, where the generic
    /// logarithm loses about `1/e²` of relative accuracy; here every
    /// small quantity is computed directly.
    pub fn log_norm(&self) -> Result<f64> {
        let (wa, wb) = self.weights();
        let (ea, eb) = (self.ea, self.eb);
        if !(0.0..0.5).contains(&ea) || !(0.0..0.5).contains(&eb) || wa <= 0.0 || wb <= 0.0 {
            return Err(Error::Domain(
                "critical pair needs 0 <= e < 1/2 and |alpha0| < pi".into(),
            ));
        }
        // √D of each factor and the angles μ, ν with μ + ν = π - δ.
        let (ga, gb) = ((1.0 - 2.0 * ea).sqrt(), (1.0 - 2.0 * eb).sqrt());
        let (mu, nu) = (wa * ga, wb * gb);
        let delta = wa * 2.0 * ea / (1.0 + ga) + wb * 2.0 * eb / (1.0 + gb);
        // 1 - κ with -κ = ½tr(ÂB̂) for the unit-determinant directions.
        let (ua, ub) = ((1.0 - ea) * (1.0 - ea), (1.0 - eb) * (1.0 - eb));
        let (q, g) = ((1.0 - ea) * (1.0 - eb), ga * gb);
        let q_minus_g = (ua * eb * eb + ub * ea * ea - ea * ea * eb * eb) / (q + g);
        let sr = self.s.0 * self.r.0 + self.s.1 * self.r.1;
        let one_minus_kappa = (ea * eb * sr - q_minus_g) / g;
        // h = 1 + ½tr P.
        let h = 2.0 * (delta / 2.0).sin().powi(2) + mu.sin() * nu.sin() * one_minus_kappa;
        if !(h > 0.0 && h < 2.0) {
            return Err(Error::NotLogable);
        }
        let phi = 2.0 * (h / 2.0).sqrt().asin();
        let theta = PI - phi;
        let sin_theta = (h * (2.0 - h)).sqrt();
        // Traceless part of P: sinc μ cos ν X + cos μ sinc ν Y + ½ sinc μ sinc ν [X, Y].
        let (x, y) = self.exponents();
        let (sx, sy) = (mu.sin() / mu, nu.sin() / nu);
        let comm = x.commutator(&y).scale_re(0.5 * sx * sy);
        // The Ĩ parts cancel to sin δ; (1 - e)/g = 1 + η keeps the remainder.
        let (eta_a, eta_b) = (
            ea * ea / (ga * (1.0 - ea + ga)),
            eb * eb / (gb * (1.0 - eb + gb)),
        );
        let tb = self.sigma
            * (delta.sin() + mu.sin() * nu.cos() * eta_a + mu.cos() * nu.sin() * eta_b)
            + comm.tb;
        let tc = sx * nu.cos() * x.tc + mu.cos() * sy * y.tc + comm.tc;
        let td = sx * nu.cos() * x.td + mu.cos() * sy * y.td + comm.td;
        Ok(theta / sin_theta * (tb.abs() + tc.hypot(td)))
    }
}

// Perturbation size range, sampled log-uniformly. Small enough that the
// O(ξ) correction stays below 1e-6.
const XI_RANGE: (f64, f64) = (1e-8, 1e-7);

fn unit_circle(rng: &mut impl Rng) -> (f64, f64) {
    let phi: f64 = rng.gen_range(0.0..2.0 * PI);
    (phi.cos(), phi.sin())
}

/// Samples `‖log(exp((π-α₀)A/2) exp((π+α₀)B/2))‖₂` over critical pairs with
/// `e_A = (1+t)ξ/2`, `e_B = (1-t)ξ/2` for random `t`, unit `s`, `r`, sign
/// `σ` and small `ξ`. Non-logable products are skipped.
pub fn discont_search<R: Rng>(alpha0: f64, samples: usize, rng: &mut R) -> Result<DiscontSearch> {
    let bound = discont_limsup(alpha0)?;
    let mut best = f64::NEG_INFINITY;
    for _ in 0..samples {
        let t: f64 = rng.gen_range(-1.0..=1.0);
        let s = unit_circle(rng);
        let r = unit_circle(rng);
        let xi = XI_RANGE.0 * (XI_RANGE.1 / XI_RANGE.0).powf(rng.gen::<f64>());
        let sigma = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let pair = CriticalPair {
            alpha0,
            sigma,
            ea: (1.0 + t) * xi / 2.0,
            eb: (1.0 - t) * xi / 2.0,
            s,
            r,
        };
        match pair.log_norm() {
            Ok(n) => best = best.max(n),
            Err(Error::NotLogable) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(DiscontSearch {
        bound,
        best,
        max_excess: best - bound,
        samples,
    })
}

/// The canonical pieces of the wedge cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CapPatch {
    Bihyperbolic,
    Parabolic,
    EllHyp,
    Closure,
    Bielliptic,
    SmoothHyp,
    SmoothEll,
}

impl CapPatch {
    pub const ALL: [CapPatch; 7] = [
        CapPatch::Bihyperbolic,
        CapPatch::Parabolic,
        CapPatch::EllHyp,
        CapPatch::Closure,
        CapPatch::Bielliptic,
        CapPatch::SmoothHyp,
        CapPatch::SmoothEll,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CapPatch::Bihyperbolic => "bihyperbolic",
            CapPatch::Parabolic => "parabolic",
            CapPatch::EllHyp => "ell*-hyp",
            CapPatch::Closure => "closure",
            CapPatch::Bielliptic => "bielliptic",
            CapPatch::SmoothHyp => "smooth-hyp",
            CapPatch::SmoothEll => "smooth-ell",
        }
    }
}

impl fmt::Display for CapPatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Arguments of one canonical parametrization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CapParams {
    /// `ψ ∈ [-2 arctan N, 2 arctan N]`.
    Bihyperbolic {
        psi: f64,
    },
    /// `t ∈ (-1, 1)`.
    Parabolic {
        sigma: Sign,
        t: f64,
    },
    /// `ψ ∈ (0, π) ∪ (π, 2π)`.
    EllHyp {
        psi: f64,
    },
    /// `r ∈ [0, 2π/√(π² - 4)]`; only at `N = π/2`.
    Closure {
        sigma: Sign,
        r: f64,
    },
    /// `ψ` off `±π/2` at `N = π/2`, any `ψ` below.
    Bielliptic {
        psi: f64,
    },
    /// Level-set parameters `t ∈ (0, 1)`, `sin θ ≠ 0`.
    SmoothHyp {
        t: f64,
        theta: f64,
    },
    SmoothEll {
        t: f64,
        theta: f64,
    },
}

impl CapParams {
    pub fn patch(&self) -> CapPatch {
        match self {
            CapParams::Bihyperbolic { .. } => CapPatch::Bihyperbolic,
            CapParams::Parabolic { .. } => CapPatch::Parabolic,
            CapParams::EllHyp { .. } => CapPatch::EllHyp,
            CapParams::Closure { .. } => CapPatch::Closure,
            CapParams::Bielliptic { .. } => CapPatch::Bielliptic,
            CapParams::SmoothHyp { .. } => CapPatch::SmoothHyp,
            CapParams::SmoothEll { .. } => CapPatch::SmoothEll,
        }
    }

    /// The two numeric parameters `(u, v)`; one-parameter maps report their
    /// discrete sign (or 0) as `v`.
    pub fn uv(&self) -> (f64, f64) {
        match *self {
            CapParams::Bihyperbolic { psi }
            | CapParams::EllHyp { psi }
            | CapParams::Bielliptic { psi } => (psi, 0.0),
            CapParams::Parabolic { sigma, t } => (t, sigma.value()),
            CapParams::Closure { sigma, r } => (r, sigma.value()),
            CapParams::SmoothHyp { t, theta } | CapParams::SmoothEll { t, theta } => (t, theta),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WedgeCapPoint {
    pub params: CapParams,
    pub image: PHPoint,
}

impl WedgeCapPoint {
    pub fn patch(&self) -> CapPatch {
        self.params.patch()
    }
}

/// Largest closure parameter, where the norm reaches the discontinuity bound.
pub fn closure_r_max() -> f64 {
    2.0 * PI / (PI * PI - 4.0).sqrt()
}

const CRITICAL_BAND: f64 = 1e-12;

fn is_critical(n: f64) -> bool {
    (n - FRAC_PI_2).abs() <= CRITICAL_BAND
}

fn rotation(n: f64, psi: f64) -> M2R {
    let (s, c) = psi.sin_cos();
    M2R::new(n * c, n * s, 0.0, 0.0)
}

fn bihyperbolic_raw(n: f64, psi: f64) -> Result<PHPoint> {
    let (s, c) = psi.sin_cos();
    let prod = exp2(&M2R::unit_j().scale_re(n)) * exp2(&M2R::new(0.0, 0.0, n * c, n * s));
    Ok(xi_ph(&log2(&prod)?))
}

fn ell_hyp_raw(n: f64, psi: f64) -> Result<PHPoint> {
    let prod = exp2(&rotation(n, psi)) * exp2(&M2R::unit_j().scale_re(n));
    Ok(xi_ph(&log2(&prod)?))
}

fn domain(ok: bool, params: &CapParams, n: f64) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{params:?} outside its domain at N = {n}"
        )))
    }
}

/// Evaluates one canonical parametrization of the cap of `B_{N,N}`,
/// `0 < N ≤ π/2`.
pub fn wedge_cap(n: f64, params: CapParams) -> Result<WedgeCapPoint> {
    if !(n > 0.0 && n <= FRAC_PI_2 + CRITICAL_BAND) {
        return Err(Error::Domain(format!(
            "wedge cap needs 0 < N <= pi/2, got {n}"
        )));
    }
    let image = match params {
        CapParams::Bihyperbolic { psi } => {
            domain(psi.abs() <= 2.0 * n.atan(), &params, n)?;
            bihyperbolic_raw(n, psi)?
        }
        CapParams::Parabolic { sigma, t } => {
            domain(t.abs() < 1.0, &params, n)?;
            // The doubled aligned pair σN diag(1, t).
            let k = 2.0 * n * sigma.value();
            xi_ph(&M2R::from_entries(k, 0.0, 0.0, k * t))
        }
        CapParams::EllHyp { psi } => {
            domain(psi.sin().abs() > 1e-12, &params, n)?;
            ell_hyp_raw(n, psi)?
        }
        CapParams::Closure { sigma, r } => {
            domain(
                is_critical(n) && (0.0..=closure_r_max()).contains(&r),
                &params,
                n,
            )?;
            PHPoint {
                x: 0.0,
                y: sigma.value() * (PI * PI + r * r).sqrt(),
                z: r,
            }
        }
        CapParams::Bielliptic { psi } => {
            domain(!is_critical(n) || psi.cos().abs() > 1e-12, &params, n)?;
            xi_ph(&rotation(2.0 * n, psi))
        }
        CapParams::SmoothHyp { t, theta } => seh_image(true, n, n, t, theta)?,
        CapParams::SmoothEll { t, theta } => seh_image(false, n, n, t, theta)?,
    };
    Ok(WedgeCapPoint { params, image })
}

/// All canonical parametrizations sampled at `N`: the two-parameter maps on a
/// `grid × grid` midpoint grid, the one-parameter maps at `grid²` points.
/// Points whose product is not log-able are counted, not returned.
#[derive(Clone, Debug, PartialEq)]
pub struct CapSweep {
    pub points: Vec<WedgeCapPoint>,
    pub skipped: usize,
}

pub fn wedge_cap_params(n: f64, grid: usize) -> Vec<CapParams> {
    let m = grid * grid;
    let mid = |k: usize, count: usize| (k as f64 + 0.5) / count as f64;
    let mut out = Vec::with_capacity(3 * m + 2 * grid * grid);
    let span = 2.0 * n.atan();
    for k in 0..=m {
        out.push(CapParams::Bihyperbolic {
            psi: -span + 2.0 * span * k as f64 / m as f64,
        });
    }
    for sigma in [Sign::Plus, Sign::Minus] {
        for k in 0..m / 2 {
            out.push(CapParams::Parabolic {
                sigma,
                t: -1.0 + 2.0 * mid(k, m / 2),
            });
        }
    }
    for k in 0..m {
        let psi = 2.0 * PI * mid(k, m);
        if psi.sin().abs() > 0.0 {
            out.push(CapParams::EllHyp { psi });
        }
    }
    if is_critical(n) {
        for sigma in [Sign::Plus, Sign::Minus] {
            for k in 0..=m / 2 {
                out.push(CapParams::Closure {
                    sigma,
                    r: closure_r_max() * k as f64 / (m / 2) as f64,
                });
            }
        }
    }
    for k in 0..m {
        out.push(CapParams::Bielliptic {
            psi: 2.0 * PI * k as f64 / m as f64,
        });
    }
    for i in 0..grid {
        for j in 0..grid {
            let (t, theta) = (mid(i, grid), 2.0 * PI * mid(j, grid) - PI);
            out.push(CapParams::SmoothHyp { t, theta });
            out.push(CapParams::SmoothEll { t, theta });
        }
    }
    out
}

pub fn wedge_cap_sweep(n: f64, grid: usize) -> Result<CapSweep> {
    let mut sweep = CapSweep {
        points: Vec::new(),
        skipped: 0,
    };
    for params in wedge_cap_params(n, grid) {
        match wedge_cap(n, params) {
            Ok(p) => sweep.points.push(p),
            Err(Error::NotLogable | Error::Domain(_)) => sweep.skipped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(sweep)
}

/// Largest `‖·‖₂` over the sampled cap, with the point attaining it.
pub fn cap_supremum(n: f64, grid: usize) -> Result<(f64, WedgeCapPoint)> {
    let sweep = wedge_cap_sweep(n, grid)?;
    sweep
        .points
        .into_iter()
        .map(|p| (p.image.norm(), p))
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .ok_or_else(|| Error::Degenerate("empty wedge cap sweep".into()))
}

fn ridge_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, periodic: bool) -> f64 {
    grid_brackets(&f, lo, hi, 400, periodic)
        .into_iter()
        .take(4)
        .map(|(a, b, _)| golden_max(&f, a, b, 1e-12).1)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Largest norm on the bihyperbolic ridge and on the ell*-hyperbolic ridge
/// of the cap at `N`.
pub fn ridge_maxima(n: f64) -> (f64, f64) {
    let norm_or_zero = |p: Result<PHPoint>| p.map(|p| p.norm()).unwrap_or(0.0);
    let span = 2.0 * n.atan();
    let bi = ridge_max(
        |psi| norm_or_zero(bihyperbolic_raw(n, psi)),
        -span,
        span,
        false,
    );
    let eh = ridge_max(|psi| norm_or_zero(ell_hyp_raw(n, psi)), 0.0, 2.0 * PI, true);
    (bi, eh)
}

/// The `N` below which the bihyperbolic ridge carries the maximum norm of
/// the cap and above which the ell*-hyperbolic ridge does.
pub fn ridge_crossover() -> Result<f64> {
    let gap = |n: f64| {
        let (bi, eh) = ridge_maxima(n);
        bi - eh
    };
    let (mut lo, mut hi) = (0.5, FRAC_PI_2);
    if !(gap(lo) > 0.0 && gap(hi) < 0.0) {
        return Err(Error::NonConvergent(
            "ridge maxima do not cross on [0.5, pi/2]".into(),
        ));
    }
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if gap(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
