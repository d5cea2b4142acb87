use super::{check_strip, Side};
use crate::error::{Error, Result};
use crate::geometry::ModelPoint;
use crate::m2::moment_mn;
use crate::m2::{Skew, M2R};
use crate::scalar::Scalar;
use crate::specfun::{re_family, script_ef, ReFamily};
use crate::tol::degeneracy_band;
use std::f64::consts::{FRAC_PI_2, PI};

/// `MR(A)` or `ML(A)` as `âId + b̂Ĩ + (cos ψ Id + sin ψ Ĩ)(c̆J̃ + d̆K̃)`.
///
/// For the left moment `d_breve` already carries the sign flip.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentVector {
    pub a_hat: f64,
    pub b_hat: f64,
    pub c_breve: f64,
    pub d_breve: f64,
    pub psi: f64,
}

impl MomentVector {
    pub fn matrix(&self) -> M2R {
        let (s, c) = self.psi.sin_cos();
        M2R::new(
            self.a_hat,
            self.b_hat,
            c * self.c_breve - s * self.d_breve,
            c * self.d_breve + s * self.c_breve,
        )
    }

    /// `â² + b̂² - c̆² - d̆²`, never positive.
    pub fn hyprad(&self) -> f64 {
        self.a_hat * self.a_hat + self.b_hat * self.b_hat
            - self.c_breve * self.c_breve
            - self.d_breve * self.d_breve
    }

    /// `(â, b̂)/√(c̆² + d̆²)`.
    pub fn ckb(&self) -> ModelPoint {
        let n = self.c_breve.hypot(self.d_breve);
        ModelPoint::new(self.a_hat / n, self.b_hat / n)
    }

    /// `(â, b̂)/√(c̆² + d̆² - â² - b̂²)`; undefined when that vanishes.
    pub fn hp(&self) -> Option<ModelPoint> {
        let h = -self.hyprad();
        (h > 0.0).then(|| ModelPoint::new(self.a_hat / h.sqrt(), self.b_hat / h.sqrt()))
    }
}

fn moment_vector(a: &M2R, side: Side) -> Result<MomentVector> {
    let (x, b) = (a.ta, a.tb);
    let r = a.tc.hypot(a.td);
    let big = x.hypot(b);
    if big == 0.0 {
        return Err(Error::Domain("moment needs a^2 + b^2 > 0".into()));
    }
    if r <= degeneracy_band() * (big + r) {
        return Err(Error::Domain("moment needs r > 0".into()));
    }
    let c = re_family(ReFamily::C, b * b - r * r)?;
    let lean = b / big * (big + r);
    let d_breve = -lean;
    Ok(MomentVector {
        a_hat: x / big,
        b_hat: b / big * (1.0 + (big + r) * r * c),
        c_breve: 1.0 - lean * b * c,
        d_breve: match side {
            Side::Right => d_breve,
            Side::Left => -d_breve,
        },
        psi: a.td.atan2(a.tc),
    })
}

/// Gradient of `v ↦ ‖log(exp A exp v)‖₂` at `v = 0`.
pub fn moment_mr(a: &M2R) -> Result<MomentVector> {
    moment_vector(a, Side::Right)
}

/// Gradient of `v ↦ ‖log(exp v exp A)‖₂` at `v = 0`.
pub fn moment_ml(a: &M2R) -> Result<MomentVector> {
    moment_vector(a, Side::Left)
}

/// General (complex) moment `MN + ±½[A*,MN] + conj ℭ(D_A)/4 [A*,[A*,MN]]`,
/// paired through `½ Re tr(M* v)`.
pub fn moment_matrix<T: Scalar>(a: &Skew<T>, side: Side) -> Result<Skew<T>> {
    check_strip(a)?;
    let mn = moment_mn(a)?;
    let c = re_family(ReFamily::C, a.disc())?;
    let star = a.adjoint();
    let k = star.commutator(&mn);
    let sign = match side {
        Side::Right => 0.5,
        Side::Left => -0.5,
    };
    Ok(mn + k.scale_re(sign) + star.commutator(&k).scale(c.conj() * T::from_re(0.25)))
}

/// Which copy of the cut-open parameter domain: `θ ∈ [0, π]` for `Plus`,
/// `θ ∈ [π, 2π]` for `Minus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sheet {
    Plus,
    Minus,
}

impl Sheet {
    pub fn sign(self) -> f64 {
        match self {
            Sheet::Plus => 1.0,
            Sheet::Minus => -1.0,
        }
    }
}

/// The blown-up moment `(s, r, θ)` in the four charts. `hp` is absent when
/// `s + r = 0` or `sin θ = 0`, `ahp` when `s + r = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AtlasImage {
    pub ckb: ModelPoint,
    pub hp: Option<ModelPoint>,
    pub ackb: ModelPoint,
    pub ahp: Option<ModelPoint>,
}

// sin θ below this is taken as an exact zero.
const SIN_ZERO: f64 = 4.0 * f64::EPSILON;

pub fn moment_atlas(s: f64, r: f64, theta: f64, sheet: Sheet) -> Result<AtlasImage> {
    if !(s >= 0.0 && r >= 0.0) || !theta.is_finite() {
        return Err(Error::Domain(format!(
            "atlas needs s, r >= 0, got ({s}, {r})"
        )));
    }
    let (mut sn, cs) = theta.sin_cos();
    if sn.abs() < SIN_ZERO {
        sn = 0.0;
    }
    let (e, f) = script_ef((s * sn).powi(2) - r * r);
    let big_a = cs * e;
    let b0 = e + r * (s + r) * f;
    let g0 = s + r;
    let (big_b, big_g) = (sn * b0, sn * g0);
    let n = (big_a * big_a + big_b * big_b + big_g * big_g).sqrt();
    let sigma = sheet.sign();
    let ckb = ModelPoint::new(big_a / n, big_b / n);
    let ackb = ModelPoint::new(
        (big_a / n).clamp(-1.0, 1.0).asin(),
        sigma * b0 / b0.hypot(g0),
    );
    let positive = g0 > 0.0;
    let hp = (positive && sn != 0.0)
        .then(|| ModelPoint::new(big_a / big_g.abs(), sn.signum() * b0 / g0));
    let ahp = positive.then(|| {
        let x = if big_g == 0.0 {
            FRAC_PI_2 * big_a.signum()
        } else {
            (big_a / big_g.abs()).atan()
        };
        ModelPoint::new(x, sigma * b0 / g0)
    });
    Ok(AtlasImage { ckb, hp, ackb, ahp })
}

struct Family {
    c: f64,
    d: f64,
    g: f64,
    l: f64,
}

fn family_at(t: f64, theta: f64, n: f64) -> Result<(Family, f64, f64)> {
    if !(t > 0.0 && t < 1.0 && n > 0.0) {
        return Err(Error::Domain(format!(
            "needs 0 < t < 1 and N > 0, got t={t}, N={n}"
        )));
    }
    let (sn, cs) = theta.sin_cos();
    if sn.abs() < SIN_ZERO {
        return Err(Error::Domain("needs sin theta != 0".into()));
    }
    let x = (t * n * sn).powi(2) - ((1.0 - t) * n).powi(2);
    let fam = Family {
        c: re_family(ReFamily::C, x)?,
        d: re_family(ReFamily::D, x)?,
        g: re_family(ReFamily::G, x)?,
        l: re_family(ReFamily::L, x)?,
    };
    Ok((fam, sn * sn, cs * cs))
}

/// Jacobian `∂(â^HP, b̂^HP)/∂(t, θ)` of the moment on the norm level `N`,
/// with `a = tN cos θ`, `b = tN sin θ`, `r = (1-t)N`.
pub fn moment_jacobian_hp(t: f64, theta: f64, n: f64) -> Result<f64> {
    let (Family { c, d, g, l }, s2, c2) = family_at(t, theta, n)?;
    let lean = 1.0 - t * c2;
    let d2 = d * d;
    Ok(-c / d / s2
        - lean / s2 * g / d2
        - lean / s2 * (1.0 - t) * n * n * l / d2
        - n * n * t * t * c2 * c * g / d2)
}

/// `d²/dt² ‖log(exp A exp(t NR(A)))‖₂` at `t = 0`, where `NR(A)` spans the
/// kernel of the right moment.
pub fn cogradient_second_derivative(t: f64, theta: f64, n: f64) -> Result<f64> {
    let (Family { c, d, g, l }, s2, c2) = family_at(t, theta, n)?;
    let lean = 1.0 - t * c2;
    let d2 = d * d;
    let u = 1.0 - t;
    Ok(-1.0 / n
        - lean / n * g / d2
        - 2.0 * n * u * lean * g * c / d2
        - 2.0 * n * t * s2 * g / d
        - n * u * c * c / d
        - n.powi(3) * u * u * lean * c * l / d2
        - n.powi(3) * t * u * s2 * l / d)
}

/// One-sided derivative of `‖log(exp A exp tv)‖₂` (right) or
/// `‖log(exp tv exp A)‖₂` (left) at `t = 0⁺` on the boundary strata where
/// it is not linear in `v`: conform-rotations `aId + bĨ` with `|b| < π`,
/// conform-reflections `cJ̃ + dK̃`, and `aId ± πĨ` with `v ∈ span{Id, Ĩ}`.
pub fn moment_degenerate(a: &M2R, v: &M2R, side: Side) -> Result<f64> {
    let r = a.tc.hypot(a.td);
    let big = a.ta.hypot(a.tb);
    let scale = big + r;
    if scale == 0.0 {
        return Err(Error::WrongStratum("zero matrix".into()));
    }
    let band = degeneracy_band() * scale.max(1.0);
    if r <= band {
        let b = a.tb;
        if b.abs() < PI - band {
            let ratio = if b == 0.0 { 1.0 } else { b / b.sin() };
            return Ok((a.ta * v.ta + b * v.tb) / big + ratio * v.tc.hypot(v.td));
        }
        if (b.abs() - PI).abs() <= band {
            if v.tc.hypot(v.td) > band * v.max_abs().max(1.0) {
                return Err(Error::Domain(
                    "at a +- pi I the direction must lie in span{Id, I}".into(),
                ));
            }
            return Ok((a.ta * v.ta - PI * v.tb.abs()) / a.ta.hypot(PI));
        }
        return Err(Error::WrongStratum(format!(
            "conform-rotation with |b| = {} > pi",
            b.abs()
        )));
    }
    if big <= band {
        let (c, d) = (a.tc, a.td);
        let twist = match side {
            Side::Right => -c * v.td + d * v.tc,
            Side::Left => c * v.td - d * v.tc,
        };
        let inner = r / r.tanh() * v.tb + twist;
        return Ok((c * v.tc + d * v.td) / r + v.ta.hypot(inner));
    }
    Err(Error::WrongStratum(
        "moment is linear here; use moment_mr or moment_ml".into(),
    ))
}
