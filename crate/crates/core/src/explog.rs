//! Closed-form exponential and logarithm of 2×2 matrices.

use crate::error::{Error, Result};
use crate::m2::{Skew, M2R};
use crate::scalar::Scalar;
use crate::specfun::{ac, cos_big, sin_big};
use crate::tol::CUT_BAND;
use num_complex::Complex64;
use std::f64::consts::PI;

// |D_A| below this multiple of ‖A‖² is treated as exactly parabolic.
const PARABOLIC_BAND: f64 = 1e-12;

/// `exp A = e^{tr A/2}(Cos(D_A) Id + Sin(D_A)(A - tr A/2))`.
pub fn exp2<T: Scalar>(a: &Skew<T>) -> Skew<T> {
    let mut d = a.disc();
    if d.abs() < PARABOLIC_BAND * a.half_frob_sq() {
        d = T::zero();
    }
    let e = a.ta.exp();
    let hat = a.detraced().scale(sin_big(d));
    (Skew::scalar(cos_big(d)) + hat).scale(e)
}

fn on_cut(z: Complex64) -> bool {
    z.im.abs() <= CUT_BAND * (1.0 + z.re.abs()) && z.re <= 0.0
}

/// Whether the spectrum of `A` avoids `(-∞, 0]`.
pub fn is_logable<T: Scalar>(a: &Skew<T>) -> bool {
    if T::IS_REAL {
        let det = a.det().re();
        return det > 0.0 && a.ta.re() / det.sqrt() > -1.0;
    }
    let (l1, l2) = a.eigenvalues();
    !on_cut(l1) && !on_cut(l2)
}

/// `√dett A`, the product of the principal square roots of the eigenvalues.
pub fn sqrt_dett<T: Scalar>(a: &Skew<T>) -> Result<T> {
    if !is_logable(a) {
        return Err(Error::NotLogable);
    }
    if T::IS_REAL {
        return Ok(T::from_re(a.det().re().sqrt()));
    }
    let (l1, l2) = a.eigenvalues();
    Ok(T::from_c64(l1.sqrt() * l2.sqrt()))
}

/// Principal logarithm
/// `log A = (log √dett A) Id + AC(tr A/(2√dett A))/√dett A · (A - tr A/2)`.
pub fn log2<T: Scalar>(a: &Skew<T>) -> Result<Skew<T>> {
    let s = sqrt_dett(a)?;
    let k = ac(a.ta / s).map_err(|_| Error::NotLogable)? / s;
    Ok(Skew::scalar(s.ln()) + a.detraced().scale(k))
}

/// A real `L` with `L² = -Id`: `L = bĨ + cJ̃ + dK̃`, `b² - c² - d² = 1`, `b > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SkewInvolution {
    b: f64,
    c: f64,
    d: f64,
}

impl SkewInvolution {
    /// The canonical involution with the given `J̃`, `K̃` coefficients.
    pub fn new(c: f64, d: f64) -> Self {
        SkewInvolution {
            b: (1.0 + c * c + d * d).sqrt(),
            c,
            d,
        }
    }

    pub fn rotation() -> Self {
        Self::new(0.0, 0.0)
    }

    pub fn matrix(&self) -> M2R {
        Skew::new(0.0, self.b, self.c, self.d)
    }
}

/// Shape of the set of real logarithms of a real matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogSetKind {
    Unique,
    Empty,
    /// `(log a) Id + 2kπ L`.
    ScalarFamily,
    /// `(log -a) Id + (2k+1)π L`.
    NegativeScalarFamily,
    /// `(log r) Id + (φ + 2kπ) I_A`.
    EllipticFamily,
}

/// `{M real : exp M = A}`, with families given by their parameterization.
#[derive(Clone, Debug, PartialEq)]
pub struct RealLogSet {
    pub kind: LogSetKind,
    /// The principal logarithm, when `A` is log-able.
    pub principal: Option<M2R>,
    /// Scalar part shared by every member.
    pub base: M2R,
    /// `I_A` for the elliptic family.
    pub involution: Option<M2R>,
    /// Rotation angle `φ ∈ (0, π)` for the elliptic family.
    pub phi: f64,
}

impl RealLogSet {
    fn single(kind: LogSetKind, principal: Option<M2R>) -> Self {
        RealLogSet {
            kind,
            principal,
            base: principal.unwrap_or_else(M2R::zero),
            involution: None,
            phi: 0.0,
        }
    }

    /// The member with index `k`; `l` picks the involution for the scalar
    /// families and is ignored otherwise.
    pub fn member(&self, k: i64, l: &SkewInvolution) -> Option<M2R> {
        let kf = k as f64;
        match self.kind {
            LogSetKind::Empty => None,
            LogSetKind::Unique => (k == 0).then_some(self.base),
            LogSetKind::ScalarFamily => Some(self.base + l.matrix().scale(2.0 * kf * PI)),
            LogSetKind::NegativeScalarFamily => {
                Some(self.base + l.matrix().scale((2.0 * kf + 1.0) * PI))
            }
            LogSetKind::EllipticFamily => {
                let i = self.involution.expect("elliptic family carries I_A");
                Some(self.base + i.scale(self.phi + 2.0 * kf * PI))
            }
        }
    }

    /// Members of least operator norm.
    pub fn lowest_norm(&self) -> Vec<M2R> {
        match self.kind {
            LogSetKind::Empty => vec![],
            LogSetKind::NegativeScalarFamily => vec![
                self.base + M2R::unit_i().scale(PI),
                self.base - M2R::unit_i().scale(PI),
            ],
            _ => self.principal.into_iter().collect(),
        }
    }
}

/// Classifies and parameterizes all real logarithms of `A`.
pub fn real_log_set(a: &M2R) -> RealLogSet {
    let scale = a.half_frob_sq();
    let d = a.disc();
    let hat = a.detraced();
    if hat.max_abs() <= PARABOLIC_BAND * a.max_abs() {
        return match a.ta {
            x if x > 0.0 => RealLogSet::single(LogSetKind::ScalarFamily, Some(M2R::scalar(x.ln()))),
            x if x < 0.0 => RealLogSet {
                kind: LogSetKind::NegativeScalarFamily,
                principal: None,
                base: M2R::scalar((-x).ln()),
                involution: None,
                phi: 0.0,
            },
            _ => RealLogSet::single(LogSetKind::Empty, None),
        };
    }
    if d.abs() < PARABOLIC_BAND * scale {
        // Non-scalar parabolic: a real logarithm exists exactly when the
        // double eigenvalue is positive, and it is then unique.
        return if a.ta > 0.0 {
            RealLogSet::single(LogSetKind::Unique, log2(a).ok())
        } else {
            RealLogSet::single(LogSetKind::Empty, None)
        };
    }
    if d < 0.0 {
        return if a.ta > (-d).sqrt() {
            RealLogSet::single(LogSetKind::Unique, log2(a).ok())
        } else {
            RealLogSet::single(LogSetKind::Empty, None)
        };
    }
    let root = d.sqrt();
    let r = a.det().sqrt();
    let phi = root.atan2(a.ta);
    RealLogSet {
        kind: LogSetKind::EllipticFamily,
        principal: log2(a).ok(),
        base: M2R::scalar(r.ln()),
        involution: Some(hat.scale(1.0 / root)),
        phi,
    }
}
