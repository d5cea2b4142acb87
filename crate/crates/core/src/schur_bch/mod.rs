//! Schur derivative maps, the closed 2×2 BCH formula and its commutator
//! coefficients, and the moments of `‖log(exp A · exp M)‖₂`.

mod moment;

pub use moment::{
    cogradient_second_derivative, moment_atlas, moment_degenerate, moment_jacobian_hp,
    moment_matrix, moment_ml, moment_mr, AtlasImage, MomentVector, Sheet,
};

use crate::error::{Error, Result};
use crate::m2::Skew;
use crate::quad::{integrate_with, QuadOptions};
use crate::scalar::Scalar;
use crate::specfun::{ac, cos_big, re_family, sin_big, ReFamily};
use std::f64::consts::PI;

/// Which factor of the product is perturbed: `exp A · exp M` (right) or
/// `exp M · exp A` (left).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    fn sign(self) -> f64 {
        match self {
            Side::Right => 1.0,
            Side::Left => -1.0,
        }
    }
}

/// Requires `spec A ⊂ {|Im z| < π}`.
pub(crate) fn check_strip<T: Scalar>(a: &Skew<T>) -> Result<()> {
    let (l1, l2) = a.eigenvalues();
    if l1.im.abs() < PI && l2.im.abs() < PI {
        Ok(())
    } else {
        Err(Error::SpectralStrip)
    }
}

fn quarter<T: Scalar>(x: T) -> T {
    x * T::from_re(0.25)
}

/// `d/dt log(exp A exp tv)|₀` (right) or `d/dt log(exp tv exp A)|₀` (left):
/// `v ± ½[A,v] + ℭ(D_A)/4 [A,[A,v]]`.
pub fn schur<T: Scalar>(a: &Skew<T>, v: &Skew<T>, side: Side) -> Result<Skew<T>> {
    check_strip(a)?;
    let c = re_family(ReFamily::C, a.disc())?;
    let av = a.commutator(v);
    Ok(*v + av.scale_re(0.5 * side.sign()) + a.commutator(&av).scale(quarter(c)))
}

pub fn schur_right<T: Scalar>(a: &Skew<T>, v: &Skew<T>) -> Result<Skew<T>> {
    schur(a, v, Side::Right)
}

pub fn schur_left<T: Scalar>(a: &Skew<T>, v: &Skew<T>) -> Result<Skew<T>> {
    schur(a, v, Side::Left)
}

/// Second `t`-derivative at `t = 0` of `log(exp A exp tv)` (right) or
/// `log(exp tv exp A)` (left).
pub fn schur_second<T: Scalar>(a: &Skew<T>, v: &Skew<T>, side: Side) -> Result<Skew<T>> {
    check_strip(a)?;
    let d_a = a.disc();
    let c = re_family(ReFamily::C, d_a)?;
    let d = re_family(ReFamily::D, d_a)?;
    let p = re_family(ReFamily::P, d_a)?;
    let w = re_family(ReFamily::W, d_a)?;
    let vva = v.commutator(&v.commutator(a));
    let avva = a.commutator(&vva);
    let aavva = a.commutator(&avva);
    let k3 = (p * T::from_re(2.0) + w * T::from_re(3.0)) * T::from_re(1.0 / 16.0);
    Ok(vva.scale(quarter(c + d))
        + avva.scale(quarter(c) * T::from_re(side.sign()))
        + aavva.scale(k3))
}

pub fn schur_second_right<T: Scalar>(a: &Skew<T>, v: &Skew<T>) -> Result<Skew<T>> {
    schur_second(a, v, Side::Right)
}

pub fn schur_second_left<T: Scalar>(a: &Skew<T>, v: &Skew<T>) -> Result<Skew<T>> {
    schur_second(a, v, Side::Left)
}

struct Trig<T> {
    cos_a: T,
    sin_a: T,
    cos_b: T,
    sin_b: T,
}

impl<T: Scalar> Trig<T> {
    fn new(d_a: T, d_b: T) -> Self {
        Trig {
            cos_a: cos_big(d_a),
            sin_a: sin_big(d_a),
            cos_b: cos_big(d_b),
            sin_b: sin_big(d_b),
        }
    }

    /// `Cos D_A Cos D_B + Sin D_A Sin D_B T`, half the trace of `exp Â exp B̂`.
    fn half_trace(&self, t: T) -> T {
        self.cos_a * self.cos_b + self.sin_a * self.sin_b * t
    }
}

/// `log(exp A exp B)` in closed form.
pub fn bch_closed<T: Scalar>(a: &Skew<T>, b: &Skew<T>) -> Result<Skew<T>> {
    let tr = Trig::new(a.disc(), b.disc());
    let k = ac(tr.half_trace(a.pair(b))).map_err(|_| Error::NotLogable)?;
    let c = a.detraced().scale(tr.cos_b * tr.sin_a)
        + b.detraced().scale(tr.cos_a * tr.sin_b)
        + a.commutator(b).scale(tr.sin_a * tr.sin_b * T::from_re(0.5));
    Ok(Skew::scalar(a.ta + b.ta) + c.scale(k))
}

/// Coefficients of `BCH(A,v) = A + v + f₁[A,v] + f₂[A,[A,v]] + f₃[v,[v,A]]`
/// as functions of `(D_A, T_{A,v}, D_v)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BchCoeffs<T> {
    pub f1: T,
    pub f2: T,
    pub f3: T,
}

impl<T: Scalar> BchCoeffs<T> {
    pub fn evaluate(&self, a: &Skew<T>, v: &Skew<T>) -> Skew<T> {
        let av = a.commutator(v);
        *a + *v
            + av.scale(self.f1)
            + a.commutator(&av).scale(self.f2)
            + v.commutator(&-av).scale(self.f3)
    }
}

// Below this |D_A D_v - T²| the linear solve is left to the quadrature.
const SOLVE_THRESHOLD: f64 = 1e-8;
const SOLVE_DEGENERATE: f64 = 1e-10;

/// Picks the linear-solve route when it is well conditioned and the
/// quadrature route otherwise.
pub fn bch_coeffs<T: Scalar>(d_a: T, t: T, d_v: T) -> Result<BchCoeffs<T>> {
    if (d_a * d_v - t * t).abs() > SOLVE_THRESHOLD {
        bch_coeffs_solve(d_a, t, d_v)
    } else {
        bch_coeffs_quadrature(d_a, t, d_v)
    }
}

/// Reads the coefficients off the closed form by solving for `f₂`, `f₃`.
pub fn bch_coeffs_solve<T: Scalar>(d_a: T, t: T, d_v: T) -> Result<BchCoeffs<T>> {
    let delta = d_a * d_v - t * t;
    if delta.abs() < SOLVE_DEGENERATE {
        return Err(Error::Degenerate(format!(
            "D_A D_v - T^2 = {:e} is too small to solve for f2, f3",
            delta.abs()
        )));
    }
    let tr = Trig::new(d_a, d_v);
    let k = ac(tr.half_trace(t)).map_err(|_| Error::NotLogable)?;
    let one = T::one();
    let g1 = k * tr.cos_b * tr.sin_a - one;
    let g2 = k * tr.cos_a * tr.sin_b - one;
    let four = delta * T::from_re(4.0);
    Ok(BchCoeffs {
        f1: k * tr.sin_a * tr.sin_b * T::from_re(0.5),
        f2: (t * g1 - d_v * g2) / four,
        f3: (t * g2 - d_a * g1) / four,
    })
}

/// The integral representation; valid for small arguments, enforced as
/// `|D_A|, |T|, |D_v| < 1`.
pub fn bch_coeffs_quadrature<T: Scalar>(d_a: T, t: T, d_v: T) -> Result<BchCoeffs<T>> {
    if [d_a, t, d_v].iter().any(|x| x.abs() >= 1.0) {
        return Err(Error::Domain(
            "quadrature route needs |D_A|, |T|, |D_v| < 1".into(),
        ));
    }
    let tr = Trig::new(d_a, d_v);
    let one = T::one();
    let half = T::from_re(0.5);
    let two = T::from_re(2.0);
    let delta = |s: f64| {
        let w = T::from_re(s * (1.0 - s));
        one + two * w * (tr.half_trace(t) - one)
    };
    let eta = |s: f64| {
        let (p, q) = (T::from_re(s), T::from_re(1.0 - s));
        let w = T::from_re(4.0 * s * (1.0 - s));
        one - w * (one - (p * tr.cos_a + q * tr.cos_b) * (p * tr.cos_b + q * tr.cos_a))
    };
    let opts = QuadOptions {
        abs_tol: 1e-12,
        rel_tol: 1e-10,
        ..QuadOptions::default()
    };
    let f1 = integrate_with(|s| tr.sin_a * tr.sin_b * half / delta(s), 0.0, 1.0, opts)?;
    let f2 = integrate_with(
        |s| {
            let w = T::from_re(s * (1.0 - s));
            let kappa = tr.cos_b + two * w * (tr.cos_a - tr.cos_b);
            w * kappa * half * tr.sin_a * tr.sin_a * tr.sin_b / (eta(s) * delta(s))
        },
        0.0,
        1.0,
        opts,
    )?;
    let f3 = integrate_with(
        |s| {
            let w = T::from_re(s * (1.0 - s));
            let kappa = tr.cos_a + two * w * (tr.cos_b - tr.cos_a);
            w * kappa * half * tr.sin_b * tr.sin_b * tr.sin_a / (eta(s) * delta(s))
        },
        0.0,
        1.0,
        opts,
    )?;
    Ok(BchCoeffs { f1, f2, f3 })
}
