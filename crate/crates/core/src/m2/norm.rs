use super::{Skew, M2R};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tol::degeneracy_band;

/// Which branch of the norm-derivative formula applies at `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormCase {
    Zero,
    /// Scalar multiple of a unitary: `-D_{A*A} = 0`, `A ≠ 0`.
    ConformUnitary,
    Generic,
    /// `-D_{A*A}` is neither clearly zero nor clearly positive.
    Ambiguous,
}

/// `√(-D_{A*A})` relative to `tr(A*A)/2`; lies in `[0, 1]`.
fn relative_disc<T: Scalar>(a: &Skew<T>) -> f64 {
    let f = a.half_frob_sq();
    if f == 0.0 {
        0.0
    } else {
        a.norm_disc().sqrt() / f
    }
}

impl<T: Scalar> Skew<T> {
    pub fn norm_case(&self) -> NormCase {
        if self.half_frob_sq() == 0.0 {
            return NormCase::Zero;
        }
        let r = relative_disc(self);
        if r <= 64.0 * f64::EPSILON {
            NormCase::ConformUnitary
        } else if r < degeneracy_band() {
            NormCase::Ambiguous
        } else {
            NormCase::Generic
        }
    }
}

/// Largest eigenvalue of the Hermitian part `(v + v*)/2`.
pub fn upper_symbol<T: Scalar>(v: &Skew<T>) -> f64 {
    let (b, c, d) = (v.tb.im(), v.tc.re(), v.td.re());
    v.ta.re() + (b * b + c * c + d * d).sqrt()
}

fn lower_symbol_real(v: &M2R) -> f64 {
    v.ta - v.tc.hypot(v.td)
}

fn tr<T: Scalar>(x: &Skew<T>) -> T {
    x.trace()
}

/// Directional derivative of `M ↦ ‖M‖₂` at `A` along `v`.
pub fn norm_directional_derivative<T: Scalar>(a: &Skew<T>, v: &Skew<T>) -> Result<f64> {
    match a.norm_case() {
        NormCase::Zero => Ok(v.op_norm()),
        NormCase::ConformUnitary => Ok(upper_symbol(&(a.adjoint() * *v)) / a.op_norm()),
        NormCase::Ambiguous => Err(Error::AmbiguousCase(a.norm_disc())),
        NormCase::Generic => {
            let n = a.op_norm();
            let nd = a.norm_disc().sqrt();
            let av = tr(&(a.adjoint() * *v)).re();
            let mixed = tr(a) * tr(v) - tr(&(*a * *v));
            let cross = (a.adjoint().det() * mixed).re();
            Ok((n * av - cross / n) / (2.0 * nd))
        }
    }
}

/// Directional derivative of the signed co-norm `⌊M⌋₂` at a real `A` along `v`.
pub fn signed_conorm_directional_derivative(a: &M2R, v: &M2R) -> Result<f64> {
    match a.norm_case() {
        NormCase::Zero => Ok(v.signed_conorm()),
        NormCase::ConformUnitary => Ok(lower_symbol_real(&(a.adjoint() * *v)) / a.signed_conorm()),
        NormCase::Ambiguous => Err(Error::AmbiguousCase(a.norm_disc())),
        NormCase::Generic => {
            let n = a.op_norm();
            let sc = a.signed_conorm();
            let nd = a.norm_disc().sqrt();
            let mixed = tr(a) * tr(v) - tr(&(*a * *v));
            let av = tr(&(a.adjoint() * *v));
            Ok((n * mixed - sc * av) / (2.0 * nd))
        }
    }
}

/// The moment `MN(A)` of the norm derivative: `D_v‖M‖₂ = ½ Re tr(MN(A)* v)`.
pub fn moment_mn<T: Scalar>(a: &Skew<T>) -> Result<Skew<T>> {
    let f = a.half_frob_sq();
    if f == 0.0 || a.norm_disc() < 1e-12 * f * f {
        return Err(Error::Degenerate(
            "norm discriminant vanishes (conform-unitary or zero)".into(),
        ));
    }
    let nd = a.norm_disc().sqrt();
    let cubic = *a * a.adjoint() * *a - a.scale_re(f);
    let m = *a + cubic.scale_re(1.0 / nd);
    Ok(m.scale_re(1.0 / a.op_norm()))
}
