//! Normal forms `NW(p₁, p₂, t, F̃)` and their presentations as measures.

use super::{classify_magnus, magnus_sup, sinhc, unit_circle_angle, MagnusClass, PiecewiseMeasure};
use crate::error::Result;
use crate::geometry::chiral_disk;
use crate::m2::M2R;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

/// `A = NW(p₁, p₂, t, F̃)` with `F̃ = -sin β J̃ + cos β K̃`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalForm {
    pub p1: f64,
    pub p2: f64,
    /// Magnus direction angle.
    pub t: f64,
    pub beta: f64,
    /// Set for Magnus hyperbolic input, where `t` and `π - t` give the same
    /// matrix; `t` is then the representative with `cos t ≥ 0`.
    pub hyperbolic_degenerate: bool,
}

fn f_tilde(beta: f64) -> M2R {
    let (s, c) = beta.sin_cos();
    M2R::new(0.0, 0.0, -s, c)
}

fn rotate(alpha: f64, z: Complex64) -> Complex64 {
    Complex64::from_polar(1.0, alpha) * z
}

// Radius of the chiral disk of NW(p - p₂, p₂, t, ·).
fn nw_radius(p: f64, p2: f64, cos_t: f64) -> f64 {
    ((p - p2) * cos_t).exp() * p2 * sinhc(p2 * cos_t)
}

impl NormalForm {
    /// `p₁ + p₂`, the Magnus exponent.
    pub fn exponent(&self) -> f64 {
        self.p1 + self.p2
    }

    /// The elliptic component `p₁(cos t + i sin t)`.
    pub fn ellip(&self) -> Complex64 {
        Complex64::from_polar(self.p1, self.t)
    }

    /// The hyperbolic length `p₂`.
    pub fn hyper(&self) -> f64 {
        self.p2
    }

    pub fn f_tilde(&self) -> M2R {
        f_tilde(self.beta)
    }

    /// Density `p₁ exp(tĨ) + p₂ exp(2pθ sin t Ĩ)F̃` on `[-1/2, 1/2]`.
    pub fn noruni(&self) -> Result<PiecewiseMeasure<f64>> {
        let (p1, p2, t, beta) = (self.p1, self.p2, self.t, self.beta);
        let (st, ct) = t.sin_cos();
        let w = 2.0 * self.exponent() * st;
        let ell = M2R::new(ct, st, 0.0, 0.0).scale(p1);
        PiecewiseMeasure::density(
            move |th| ell + f_tilde(beta + w * th).scale(p2),
            -0.5,
            0.5,
            16,
        )
    }

    /// `Lexp(exp(tĨ)|_{[0,p₁]})·Lexp(exp((2θ - p)sin t Ĩ)F̃|_{[0,p₂]})`: the
    /// hyperbolic part runs first.
    pub fn norleft(&self) -> Result<PiecewiseMeasure<f64>> {
        let (p, beta) = (self.exponent(), self.beta);
        let st = self.t.sin();
        let hyper = PiecewiseMeasure::density(
            move |th| f_tilde(beta + (2.0 * th - p) * st),
            0.0,
            self.p2,
            16,
        )?;
        let ell = PiecewiseMeasure::steps([(M2R::new(self.t.cos(), st, 0.0, 0.0), self.p1)])?;
        Ok(hyper.then(ell))
    }

    /// `Lexp(exp((2θ + p₁ - p₂)sin t Ĩ)F̃|_{[0,p₂]})·Lexp(exp(tĨ)|_{[0,p₁]})`:
    /// the elliptic part runs first.
    pub fn norright(&self) -> Result<PiecewiseMeasure<f64>> {
        let (p1, p2, beta) = (self.p1, self.p2, self.beta);
        let st = self.t.sin();
        let ell = PiecewiseMeasure::steps([(M2R::new(self.t.cos(), st, 0.0, 0.0), p1)])?;
        let hyper = PiecewiseMeasure::density(
            move |th| f_tilde(beta + (2.0 * th + p1 - p2) * st),
            0.0,
            p2,
            16,
        )?;
        Ok(ell.then(hyper))
    }
}

/// `e^{p₁cos t}·[exp(p sin t Ĩ)(cosh(p₂cos t) - (sinh(p₂cos t)/cos t) sin t Ĩ)
/// + (sinh(p₂cos t)/cos t) F̃]` with `p = p₁ + p₂`.
pub fn nw_eval(nf: &NormalForm) -> M2R {
    let p = nf.exponent();
    let (st, ct) = nf.t.sin_cos();
    let x = nf.p2 * ct;
    let k = nf.p2 * sinhc(x);
    let z = rotate(p * st, Complex64::new(x.cosh(), -k * st));
    let scale = (nf.p1 * ct).exp();
    (M2R::new(z.re, z.im, 0.0, 0.0) + f_tilde(nf.beta).scale(k)).scale(scale)
}

/// Decomposes `A` with `CD(A) ⊂ exp D(0, π)` into its normal form.
pub fn normal_form(a: &M2R) -> Result<NormalForm> {
    let sup = magnus_sup(a)?;
    let class = classify_magnus(a)?;
    let d = chiral_disk(a);
    let beta = if d.radius > 0.0 {
        (-a.tc).atan2(a.td)
    } else {
        0.0
    };
    let mut nf = NormalForm {
        p1: 0.0,
        p2: 0.0,
        t: 0.0,
        beta,
        hyperbolic_degenerate: false,
    };
    match class {
        MagnusClass::Identity => {
            nf.beta = 0.0;
            return Ok(nf);
        }
        MagnusClass::Quasicomplex => {
            let l = d.center.ln();
            nf.p1 = l.norm();
            nf.t = l.arg();
            nf.beta = 0.0;
            return Ok(nf);
        }
        MagnusClass::Hyperbolic => {
            let mut t = sup.log.arg();
            if t.cos() < 0.0 {
                t = PI - t;
                if t > PI {
                    t -= 2.0 * PI;
                }
            }
            nf.t = t;
            nf.p2 = sup.value;
            nf.hyperbolic_degenerate = true;
            return Ok(nf);
        }
        MagnusClass::Parabolic => {
            nf.t = FRAC_PI_2.copysign(d.center.im);
            nf.p2 = unit_circle_angle(a);
            return Ok(nf);
        }
        MagnusClass::Elliptic => {
            nf.t = FRAC_PI_2.copysign(d.center.im);
            nf.p1 = unit_circle_angle(a);
        }
        MagnusClass::Loxodromic => {
            nf.t = sup.log.arg();
            nf.p1 = sup.value;
        }
    }
    // Split p between the parts: the radius grows strictly with p₂.
    let p = nf.p1;
    let ct = nf.t.cos();
    let (mut lo, mut hi) = (0.0, p);
    if nw_radius(p, p, ct) <= d.radius {
        lo = p;
    } else {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if nw_radius(p, mid, ct) < d.radius {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-16 * p {
                break;
            }
        }
    }
    nf.p2 = if lo == p { p } else { 0.5 * (lo + hi) };
    nf.p1 = p - nf.p2;
    Ok(nf)
}
