//! The maps `SE` and `SH`: a regular interior factor `A = aId + bĨ + rJ̃`
//! of norm `N` followed by the elliptic or hyperbolic partner of norm `N′`
//! that the minimality conditions force.
//!
//! Points of the level set are parametrized as
//! `a = Nt cos θ`, `b = Nt sin θ`, `r = N(1 - t)` with `0 < t < 1`.

use crate::error::{Error, Result};
use crate::explog::{exp2, log2};
use crate::geometry::{xi_ph, PHPoint};
use crate::m2::M2R;
use crate::schur_bch::{moment_mr, MomentVector};
use crate::specfun::{ac, cos_big, re_family, sin_big, ReFamily};
use std::f64::consts::PI;

/// `(a, b, r)` for the level-set parameters `(t, θ)`.
pub fn level_point(n: f64, t: f64, theta: f64) -> (f64, f64, f64) {
    let (s, c) = theta.sin_cos();
    (n * t * c, n * t * s, n * (1.0 - t))
}

fn interior(n: f64, a: f64, b: f64, r: f64) -> Result<M2R> {
    if !(n > 0.0) || !(r > 0.0) || a.hypot(b) == 0.0 {
        return Err(Error::Domain(format!(
            "({a}, {b}, {r}) is not a regular interior point"
        )));
    }
    if (a.hypot(b) + r - n).abs() > 1e-12 * n {
        return Err(Error::Domain(format!(
            "({a}, {b}, {r}) does not have norm {n}"
        )));
    }
    if b * b - r * r >= PI * PI {
        return Err(Error::Domain("D_A must stay below pi^2".into()));
    }
    Ok(M2R::new(a, b, r, 0.0))
}

/// `(âId + b̂Ĩ)/√(â² + b̂²)·N′`.
pub fn se_partner(m: &MomentVector, n_partner: f64) -> M2R {
    let rho = m.a_hat.hypot(m.b_hat);
    M2R::new(m.a_hat, m.b_hat, 0.0, 0.0).scale_re(n_partner / rho)
}

/// `(Z - S b̂ Ĩ)(c̆ + d̆ Ĩ)/(c̆² + d̆²)·N′J̃` with `S = tanh N′` and
/// `Z = √(c̆² + d̆² - S²b̂²)`.
pub fn sh_partner(m: &MomentVector, n_partner: f64) -> Result<M2R> {
    let s = n_partner.tanh();
    let p = m.c_breve * m.c_breve + m.d_breve * m.d_breve;
    let z2 = p - s * s * m.b_hat * m.b_hat;
    if z2 < 0.0 {
        return Err(Error::Domain(
            "hyperbolic partner undefined: Z^2 < 0".into(),
        ));
    }
    let z = z2.sqrt();
    let sb = s * m.b_hat;
    let x = (z * m.c_breve + sb * m.d_breve) / p;
    let y = (z * m.d_breve - sb * m.c_breve) / p;
    Ok(M2R::new(0.0, 0.0, x * n_partner, y * n_partner))
}

/// `exp(aId + bĨ + rJ̃)·exp(elliptic partner)` with `N = √(a² + b²) + r`.
pub fn se_map(n: f64, n_partner: f64, a: f64, b: f64, r: f64) -> Result<M2R> {
    let x = interior(n, a, b, r)?;
    Ok(exp2(&x) * exp2(&se_partner(&moment_mr(&x)?, n_partner)))
}

/// `exp(aId + bĨ + rJ̃)·exp(hyperbolic partner)`.
pub fn sh_map(n: f64, n_partner: f64, a: f64, b: f64, r: f64) -> Result<M2R> {
    let x = interior(n, a, b, r)?;
    Ok(exp2(&x) * exp2(&sh_partner(&moment_mr(&x)?, n_partner)?))
}

fn fam(tag: ReFamily, z: f64) -> Result<f64> {
    re_family(tag, z)
}

// Quantities shared by the closed forms at one parameter point.
struct Frame {
    n: f64,
    t: f64,
    sin: f64,
    cos: f64,
    b: f64,
    r: f64,
    disc: f64,
    m: MomentVector,
}

impl Frame {
    fn new(n: f64, t: f64, theta: f64) -> Result<Self> {
        if !(0.0 < t && t < 1.0) {
            return Err(Error::Domain(format!("t = {t} outside (0, 1)")));
        }
        let (a, b, r) = level_point(n, t, theta);
        let x = interior(n, a, b, r)?;
        let (sin, cos) = theta.sin_cos();
        Ok(Frame {
            n,
            t,
            sin,
            cos,
            b,
            r,
            disc: b * b - r * r,
            m: moment_mr(&x)?,
        })
    }

    fn rho_hat(&self) -> f64 {
        self.m.a_hat.hypot(self.m.b_hat)
    }
}

/// `r·Sin(b² - r²)`.
pub fn se_mdist(n: f64, t: f64, theta: f64) -> Result<f64> {
    let f = Frame::new(n, t, theta)?;
    Ok(f.r * sin_big(f.disc))
}

/// The auxiliary quantities of the `SH` closed forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShTerms {
    /// `tanh N′`.
    pub s: f64,
    /// `√(P - S²b̂²)`.
    pub z: f64,
    /// `c̆² + d̆²`, in closed form.
    pub p: f64,
    /// `b̂c̆(1 - t)/sin θ + Pt`, in closed form.
    pub h: f64,
    pub f: f64,
}

pub fn sh_terms(n: f64, n_partner: f64, t: f64, theta: f64) -> Result<ShTerms> {
    let fr = Frame::new(n, t, theta)?;
    sh_terms_of(&fr, n_partner)
}

fn sh_terms_of(fr: &Frame, n_partner: f64) -> Result<ShTerms> {
    let (n, t, s2, c2) = (fr.n, fr.t, fr.sin * fr.sin, fr.cos * fr.cos);
    let c = fam(ReFamily::C, fr.disc)?;
    let d = fam(ReFamily::D, fr.disc)?;
    let w = fam(ReFamily::W, fr.disc)?;
    let n2 = n * n;
    let u = 1.0 - t;
    let p = 1.0 + 2.0 * u * s2 * n2 * c + s2 * n2 * d + u * u * s2 * n2 * n2 * c * c;
    let h = 1.0 + u * (1.0 - t * c2) * n2 * c + t * s2 * n2 * d;
    let f = c2 + t * s2 * n2 * c + t * t * s2 * s2 * n2 * n2 * w;
    let s = n_partner.tanh();
    let z2 = p - s * s * fr.m.b_hat * fr.m.b_hat;
    if z2 < 0.0 {
        return Err(Error::Domain(
            "hyperbolic partner undefined: Z^2 < 0".into(),
        ));
    }
    Ok(ShTerms {
        s,
        z: z2.sqrt(),
        p,
        h,
        f,
    })
}

/// `cosh N′·Sin(b² - r²)·(rZ + SH)/√P`.
pub fn sh_mdist(n: f64, n_partner: f64, t: f64, theta: f64) -> Result<f64> {
    let fr = Frame::new(n, t, theta)?;
    let k = sh_terms_of(&fr, n_partner)?;
    Ok(n_partner.cosh() * sin_big(fr.disc) * (fr.r * k.z + k.s * k.h) / k.p.sqrt())
}

/// Half trace over `√det` of the `SE` product; log-able iff `> -1`.
pub fn se_log_argument(n: f64, n_partner: f64, t: f64, theta: f64) -> Result<f64> {
    let fr = Frame::new(n, t, theta)?;
    Ok(se_arg(&fr, n_partner))
}

fn se_arg(fr: &Frame, n_partner: f64) -> f64 {
    let phase = fr.m.b_hat * n_partner / fr.rho_hat();
    cos_big(fr.disc) * phase.cos() - fr.b * sin_big(fr.disc) * phase.sin()
}

/// Half trace over `√det` of the `SH` product; log-able iff `> -1`.
pub fn sh_log_argument(n: f64, n_partner: f64, t: f64, theta: f64) -> Result<f64> {
    let fr = Frame::new(n, t, theta)?;
    let k = sh_terms_of(&fr, n_partner)?;
    Ok(sh_arg(&fr, n_partner, &k))
}

fn sh_arg(fr: &Frame, n_partner: f64, k: &ShTerms) -> f64 {
    let m = &fr.m;
    n_partner.cosh() * cos_big(fr.disc)
        + n_partner.sinh() * fr.r * sin_big(fr.disc) * (m.b_hat * m.d_breve * k.s + m.c_breve * k.z)
            / k.p
}

/// `∂(y, z)/∂(t, θ)` of `Ξ^PH ∘ log ∘ SE` along the level set, in closed form.
pub fn se_jacobian(t: f64, theta: f64, n: f64, n_partner: f64) -> Result<f64> {
    let fr = Frame::new(n, t, theta)?;
    let (s2, c2) = (fr.sin * fr.sin, fr.cos * fr.cos);
    let c = fam(ReFamily::C, fr.disc)?;
    let w = fam(ReFamily::W, fr.disc)?;
    let (n2, u) = (n * n, 1.0 - t);
    let n4 = n2 * n2;
    let inner = 1.0
        + u * (2.0 - t * c2) * n2 * c
        + t * t * u * s2 * c2 * n4 * w
        + u * (u * s2 + u * u * c2 + t * t * s2 * c2) * n4 * c * c;
    let tail = n2 * t + n * n_partner / fr.rho_hat().powi(3) * inner;
    Ok(fr.cos * ac(se_arg(&fr, n_partner))? * sin_big(fr.disc) * tail)
}

/// `∂(y, z)/∂(t, θ)` of `Ξ^PH ∘ log ∘ SH` along the level set, in closed form.
pub fn sh_jacobian(t: f64, theta: f64, n: f64, n_partner: f64) -> Result<f64> {
    let fr = Frame::new(n, t, theta)?;
    let k = sh_terms_of(&fr, n_partner)?;
    let lead = n * n * n_partner.cosh() / (k.p * k.p.sqrt());
    let body = fr.r * k.s * k.f + (k.s * k.s * k.f * k.h + t * (1.0 - k.s * k.s) * k.p * k.p) / k.z;
    Ok(fr.cos * ac(sh_arg(&fr, n_partner, &k))? * sin_big(fr.disc) * lead * body)
}

/// `Ξ^PH(log(SE))` or `Ξ^PH(log(SH))` at level-set parameters.
pub fn seh_image(hyperbolic: bool, n: f64, n_partner: f64, t: f64, theta: f64) -> Result<PHPoint> {
    let (a, b, r) = level_point(n, t, theta);
    let m = if hyperbolic {
        sh_map(n, n_partner, a, b, r)?
    } else {
        se_map(n, n_partner, a, b, r)?
    };
    Ok(xi_ph(&log2(&m)?))
}

const FD_STEP: f64 = 1e-6;

// Central-difference Jacobian of (t, θ) ↦ proj(image).
fn fd_jacobian(
    hyperbolic: bool,
    n: f64,
    n_partner: f64,
    t: f64,
    theta: f64,
    proj: impl Fn(&PHPoint) -> (f64, f64),
) -> Result<f64> {
    let h = FD_STEP;
    let at = |t: f64, th: f64| seh_image(hyperbolic, n, n_partner, t, th).map(|p| proj(&p));
    let (tp, tm) = (at(t + h, theta)?, at(t - h, theta)?);
    let (hp, hm) = (at(t, theta + h)?, at(t, theta - h)?);
    let dt = ((tp.0 - tm.0) / (2.0 * h), (tp.1 - tm.1) / (2.0 * h));
    let dth = ((hp.0 - hm.0) / (2.0 * h), (hp.1 - hm.1) / (2.0 * h));
    Ok(dt.0 * dth.1 - dt.1 * dth.0)
}

/// Empirical range of the two ratios that are expected to stay bounded
/// away from 0 and infinity. Never asserted.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndestProbe {
    pub se_min: f64,
    pub se_max: f64,
    pub sh_min: f64,
    pub sh_max: f64,
    /// Grid points skipped because a product was not log-able.
    pub skipped: usize,
}

/// Samples the `π_(12)3` Jacobian ratios on a `grid × grid` midpoint grid
/// of `(0, 1) × (0, π)`.
pub fn indest_probe(n: f64, n_partner: f64, grid: usize) -> Result<IndestProbe> {
    let radial = |p: &PHPoint| (p.x.hypot(p.y), p.z);
    let mut out = IndestProbe {
        se_min: f64::INFINITY,
        se_max: f64::NEG_INFINITY,
        sh_min: f64::INFINITY,
        sh_max: f64::NEG_INFINITY,
        skipped: 0,
    };
    for i in 0..grid {
        let t = (i as f64 + 0.5) / grid as f64;
        for j in 0..grid {
            let theta = PI * (j as f64 + 0.5) / grid as f64;
            let (s, c) = theta.sin_cos();
            let se = fd_jacobian(false, n, n_partner, t, theta, radial).and_then(|jac| {
                let fr = Frame::new(n, t, theta)?;
                let acv = ac(se_arg(&fr, n_partner))?;
                Ok(jac / (s * c * (1.0 - t) * acv * acv))
            });
            let sh = fd_jacobian(true, n, n_partner, t, theta, radial)
                .map(|jac| jac / (s * c * (t * t + c * c)) * (t * t + s * s).sqrt());
            match (se, sh) {
                (Ok(a), Ok(b)) => {
                    out.se_min = out.se_min.min(a);
                    out.se_max = out.se_max.max(a);
                    out.sh_min = out.sh_min.min(b);
                    out.sh_max = out.sh_max.max(b);
                }
                _ => out.skipped += 1,
            }
        }
    }
    Ok(out)
}
