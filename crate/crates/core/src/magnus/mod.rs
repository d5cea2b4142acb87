//! Magnus exponents of real 2×2 matrices: the canonical developments, the
//! maximal disks of `exp D̄(0, p)`, the exponent itself, the classification,
//! normal forms, and the optimal ridge.

mod measure;
mod normal;

pub use measure::{
    lexp, lexp_product, magnus_terms, DensityFn, Piece, PiecewiseMeasure, CELL_BUDGET, LEXP_REL_TOL,
};
pub use normal::{normal_form, nw_eval, NormalForm};

use crate::error::{Error, Result};
use crate::explog::{exp2, log2};
use crate::geometry::{chiral_disk, Disk};
use crate::m2::M2R;
use crate::optim::{golden_max, grid_brackets};
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use std::fmt;

/// Band around `φ = r` in the parabolic test.
pub const PARABOLIC_BAND: f64 = 1e-10;
/// Chiral disks smaller than this are treated as points.
pub const POINT_DISK_RADIUS: f64 = 1e-12;
/// `|det A - 1|` below this counts as unimodular.
pub const UNIMODULAR_BAND: f64 = 1e-10;

/// `sinh(x)/x`, continuous at 0.
pub(crate) fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 + x2 / 6.0 * (1.0 + x2 / 20.0)
    } else {
        x.sinh() / x
    }
}

/// `F(s, p, w) = exp(wĨ)·exp(-(w - s)Ĩ + pK̃)`.
pub fn dev_f(s: f64, p: f64, w: f64) -> M2R {
    exp2(&M2R::unit_i().scale(w)) * exp2(&M2R::new(0.0, s - w, 0.0, p))
}

/// `W(p, w) = F(0, p, w)`.
pub fn dev_w(p: f64, w: f64) -> M2R {
    dev_f(0.0, p, w)
}

/// `exp(αĨ)·K̃·exp(-αĨ) = -sin 2α J̃ + cos 2α K̃`.
pub fn rotated_k(alpha: f64) -> M2R {
    let (s, c) = (2.0 * alpha).sin_cos();
    M2R::new(0.0, 0.0, -s, c)
}

/// `a Ĩ + b·exp(cθĨ)K̃exp(-cθĨ)`, the generator whose solution is `F(aθ, bθ, cθ)`.
pub fn dev_generator(a: f64, b: f64, c: f64, theta: f64) -> M2R {
    M2R::unit_i().scale(a) + rotated_k(c * theta).scale(b)
}

/// `Φ_{sin t}|_{[0, p]}`: density `exp(θ sin t Ĩ)K̃exp(-θ sin t Ĩ)`.
/// `sin t = 1` is the parabolic development, `|sin t| < 1` the hyperbolic one.
pub fn hyperbolic_development(p: f64, sin_t: f64) -> Result<PiecewiseMeasure<f64>> {
    PiecewiseMeasure::density(move |th| rotated_k(th * sin_t), 0.0, p, 16)
}

/// `Φ|_{[0, p]}`.
pub fn parabolic_development(p: f64) -> Result<PiecewiseMeasure<f64>> {
    hyperbolic_development(p, 1.0)
}

/// `Φ̂_h|_{[0, p]}` with density `(1 - h)Ĩ + hΦ(θ)`.
pub fn elliptic_development(h: f64, p: f64) -> Result<PiecewiseMeasure<f64>> {
    PiecewiseMeasure::density(move |th| dev_generator(1.0 - h, h, 1.0, th), 0.0, p, 16)
}

/// `(p/π)·Φ` on `[0, π]`.
pub fn critical_development(p: f64) -> Result<PiecewiseMeasure<f64>> {
    let q = p / PI;
    PiecewiseMeasure::density(move |th| rotated_k(th).scale(q), 0.0, PI, 16)
}

/// The maximal disk `D̄(Ω_p(t), ω_p(t))` of `exp D̄(0, p)`.
pub fn maximal_disk(p: f64, t: f64) -> Disk {
    let (s, c) = t.sin_cos();
    let x = p * c;
    let k = p * sinhc(x);
    let center = Complex64::from_polar(1.0, p * s) * Complex64::new(x.cosh(), -k * s);
    Disk::new(center, k)
}

/// `γ_p(t) = e^{p cos t + ip sin t}`.
pub fn boundary_curve(p: f64, t: f64) -> Complex64 {
    Complex64::new(p * t.cos(), p * t.sin()).exp()
}

/// Where the supremum of `|log z|` over a disk is attained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskSup {
    /// The supremum.
    pub value: f64,
    /// A maximizing point of the boundary circle.
    pub point: Complex64,
    /// The chosen logarithm of `point`.
    pub log: Complex64,
}

// Continuous logarithm on a disk avoiding 0, on the sheet where the center
// has argument `arg c + 2πk`.
fn sheet_log(z: Complex64, center: Complex64, k: i32) -> Complex64 {
    let arg = center.arg() + TAU * f64::from(k) + (z / center).arg();
    Complex64::new(z.norm().ln(), arg)
}

fn disk_sup(d: &Disk, k: i32) -> DiskSup {
    let c = d.center;
    let r = d.radius;
    let at = |al: f64| sheet_log(d.boundary_point(al), c, k);
    if r == 0.0 {
        let l = sheet_log(c, c, k);
        return DiskSup {
            value: l.norm(),
            point: c,
            log: l,
        };
    }
    let g = |al: f64| at(al).norm();
    let mut best = (0.0, f64::NEG_INFINITY);
    for (lo, hi, _) in grid_brackets(g, 0.0, TAU, 128, true).into_iter().take(3) {
        let (al0, v0) = golden_max(g, lo, hi, 1e-9);
        // Newton on the derivative of |log z|²/2 along the circle. The
        // first-order condition stays well conditioned where the values
        // themselves only agree to rounding.
        let mut al = al0;
        for _ in 0..8 {
            let e = Complex64::from_polar(r, al);
            let z = c + e;
            let l = sheet_log(z, c, k);
            let dz = Complex64::i() * e;
            let dl = dz / z;
            let ddl = -e / z - dl * dl;
            let h1 = (l.conj() * dl).re;
            let h2 = dl.norm_sqr() + (l.conj() * ddl).re;
            if h2 >= 0.0 {
                break;
            }
            let step = h1 / h2;
            if step.abs() > hi - lo {
                break;
            }
            al -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let mut v = g(al);
        if v < v0 - 1e-12 * v0.max(1.0) {
            al = al0;
            v = v0;
        }
        if v > best.1 {
            best = (al, v);
        }
    }
    let point = d.boundary_point(best.0);
    let log = sheet_log(point, c, k);
    // |log z|² is subharmonic, so the center cannot beat the boundary; it is
    // compared anyway as a guard against a missed bracket.
    let at_center = sheet_log(c, c, k);
    if at_center.norm() > log.norm() {
        return DiskSup {
            value: at_center.norm(),
            point: c,
            log: at_center,
        };
    }
    DiskSup {
        value: log.norm(),
        point,
        log,
    }
}

/// `sup{|log z| : z ∈ CD(A)}` with the maximizing point.
pub fn magnus_sup(a: &M2R) -> Result<DiskSup> {
    let d = chiral_disk(a);
    if d.touches_cut() {
        return Err(Error::DiskTouchesCut);
    }
    let s = disk_sup(&d, 0);
    if s.value >= PI {
        return Err(Error::Domain(format!(
            "Magnus exponent {} is not below pi",
            s.value
        )));
    }
    Ok(s)
}

/// The real Magnus exponent `𝓜(A) = sup{|log z| : z ∈ CD(A)}`, for
/// `CD(A) ⊂ exp D(0, π)`.
pub fn magnus_exponent(a: &M2R) -> Result<f64> {
    Ok(magnus_sup(a)?.value)
}

/// The exponent of the best lift to the universal cover.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LiftedExponent {
    pub value: f64,
    /// Sheet index: the center of the chiral disk has argument `arg c + 2πk`.
    pub sheet: i32,
}

/// Minimum over the lifts `k ∈ {-2, …, 2}` of `sup |log z|` over the lifted
/// chiral disk. Agrees with [`magnus_exponent`] on its domain.
pub fn magnus_exponent_lifted(a: &M2R) -> Result<LiftedExponent> {
    let d = chiral_disk(a);
    if d.center.norm() <= d.radius {
        return Err(Error::Domain("the chiral disk contains 0".into()));
    }
    let mut best = LiftedExponent {
        value: f64::INFINITY,
        sheet: 0,
    };
    for k in -2..=2 {
        let v = disk_sup(&d, k).value;
        if v < best.value {
            best = LiftedExponent { value: v, sheet: k };
        }
    }
    Ok(best)
}

/// `max |Log λ|` over the eigenvalues, with `arg ∈ (-π, π]`: the exponent one
/// would get with complex presentations.
pub fn complex_magnus_candidate(a: &M2R) -> Result<f64> {
    let (l1, l2) = a.eigenvalues();
    let mut best: f64 = 0.0;
    for l in [l1, l2] {
        if l.norm() == 0.0 {
            return Err(Error::Domain("singular matrix".into()));
        }
        let arg = if l.im == 0.0 && l.re < 0.0 {
            PI
        } else {
            l.arg()
        };
        best = best.max(l.norm().ln().hypot(arg));
    }
    Ok(best)
}

/// Magnus type of a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MagnusClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
    Loxodromic,
    Quasicomplex,
    Identity,
}

impl fmt::Display for MagnusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MagnusClass::Elliptic => "elliptic",
            MagnusClass::Parabolic => "parabolic",
            MagnusClass::Hyperbolic => "hyperbolic",
            MagnusClass::Loxodromic => "loxodromic",
            MagnusClass::Quasicomplex => "quasicomplex",
            MagnusClass::Identity => "identity",
        };
        f.write_str(s)
    }
}

/// `2·arctan((r + |b|)/(a + 1))` for `CD(A) = D̄(a + bi, r)`: the larger
/// arc angle at which the chiral circle meets the unit circle.
pub fn unit_circle_angle(a: &M2R) -> f64 {
    let d = chiral_disk(a);
    2.0 * ((d.radius + d.center.im.abs()) / (d.center.re + 1.0)).atan()
}

pub fn classify_magnus(a: &M2R) -> Result<MagnusClass> {
    magnus_sup(a)?;
    if a.max_abs_diff(&M2R::identity()) < POINT_DISK_RADIUS {
        return Ok(MagnusClass::Identity);
    }
    let d = chiral_disk(a);
    if d.radius < POINT_DISK_RADIUS {
        return Ok(MagnusClass::Quasicomplex);
    }
    if (a.det() - 1.0).abs() > UNIMODULAR_BAND {
        return Ok(MagnusClass::Loxodromic);
    }
    let gap = unit_circle_angle(a) - d.radius;
    Ok(if gap.abs() <= PARABOLIC_BAND {
        MagnusClass::Parabolic
    } else if gap < 0.0 {
        MagnusClass::Hyperbolic
    } else {
        MagnusClass::Elliptic
    })
}

/// A point of the optimal ridge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RidgePoint {
    /// The maximizing `sin t`.
    pub s: f64,
    /// `max_s ‖log W(p, ps)‖₂`.
    pub norm: f64,
}

/// Maximizes `‖log W(p, ps)‖₂` over `s ∈ [0, 1]`.
pub fn optimal_ridge(p: f64) -> Result<RidgePoint> {
    if !(p > 0.0 && p < PI) {
        return Err(Error::Domain(format!(
            "optimal_ridge needs 0 < p < pi, got {p}"
        )));
    }
    let f = |s: f64| {
        log2(&dev_w(p, p * s))
            .map(|l| l.op_norm())
            .unwrap_or(f64::NAN)
    };
    let mut best = RidgePoint {
        s: 0.0,
        norm: f64::NEG_INFINITY,
    };
    for (lo, hi, _) in grid_brackets(f, 0.0, 1.0, 64, false).into_iter().take(2) {
        let (mut s, mut v) = golden_max(f, lo, hi, 1e-10);
        // One Newton polish from central differences.
        let h = 1e-4_f64.min(s).min(1.0 - s);
        if h > 1e-7 {
            let (fm, fp) = (f(s - h), f(s + h));
            let d2 = (fp - 2.0 * v + fm) / (h * h);
            if d2 < 0.0 {
                let cand = (s - (fp - fm) / (2.0 * h) / d2).clamp(lo, hi);
                let vc = f(cand);
                if vc > v {
                    s = cand;
                    v = vc;
                }
            }
        }
        if v > best.norm {
            best = RidgePoint { s, norm: v };
        }
    }
    if !best.norm.is_finite() {
        return Err(Error::NotLogable);
    }
    Ok(best)
}

/// `‖log W(p, p)‖₂ = AC(cos p + p sin p)·(sin p - p cos p + p)`.
pub fn parabolic_log_norm(p: f64) -> Result<f64> {
    let (s, c) = p.sin_cos();
    Ok(crate::specfun::ac(c + p * s)? * (s - p * c + p))
}

/// The closed form `‖log W(p, p sin t)‖₂` of the hyperbolic development.
pub fn hyperbolic_log_norm(p: f64, t: f64) -> Result<f64> {
    let (st, ct) = t.sin_cos();
    let x = p * ct;
    let k = p * sinhc(x);
    let (ss, cs) = (p * st).sin_cos();
    let arg = x.cosh() * cs + k * ss * st;
    let side = x.cosh() * ss - k * cs * st;
    Ok(crate::specfun::ac(arg)? * (side.abs() + k))
}

/// The left-hand side of the positivity remark:
/// `cosh(p cos t) sin(p sin t) - (sinh(p cos t)/cos t) cos(p sin t) sin t`.
pub fn hyperbolic_side_term(p: f64, t: f64) -> f64 {
    let (st, ct) = t.sin_cos();
    let x = p * ct;
    let (ss, cs) = (p * st).sin_cos();
    x.cosh() * ss - p * sinhc(x) * cs * st
}

/// Chiral disk of `W(p, p sin t)` written as `D̄((1 + â, b̂), r)`, returned
/// as `(â, b̂)`.
pub fn hyperbolic_center_offsets(p: f64, t: f64) -> (f64, f64) {
    let c = maximal_disk(p, t).center;
    (c.re - 1.0, c.im)
}
