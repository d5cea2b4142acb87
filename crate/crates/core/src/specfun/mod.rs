//! Scalar special functions behind the closed forms.
//!
//! `Cos(z) = cos √z` and `Sin(z) = sin √z / √z` are entire in `z`; everything
//! else is built from them and evaluated by a Taylor series near its removable
//! singularity.

mod ac;
mod biestimate;
mod family;
mod series;

pub use ac::{ac, as_at};
pub use biestimate::{ell, g_loxo, j_pi_constant, j_upper, jj};
pub use family::{re_family, script_ef, ReFamily};

use crate::scalar::Scalar;
use num_complex::Complex64;

// Below this modulus the defining series beat the √z route.
const ENTIRE_SERIES_RADIUS: f64 = 1.0;

fn entire_series<T: Scalar>(z: T, odd: bool) -> T {
    // sum (-z)^n / (2n + odd)!
    let mut term = T::one();
    let mut sum = T::one();
    let shift = if odd { 1.0 } else { 0.0 };
    for n in 1..24 {
        let k = 2.0 * n as f64 + shift;
        term = -term * z / T::from_re(k * (k - 1.0));
        sum = sum + term;
    }
    sum
}

fn root(z: Complex64) -> Complex64 {
    z.sqrt()
}

/// `Cos(z) = cos √z`, entire.
pub fn cos_big<T: Scalar>(z: T) -> T {
    if z.abs() < ENTIRE_SERIES_RADIUS {
        return entire_series(z, false);
    }
    if T::IS_REAL {
        let x = z.re();
        return T::from_re(if x > 0.0 {
            x.sqrt().cos()
        } else {
            (-x).sqrt().cosh()
        });
    }
    T::from_c64(root(z.to_c64()).cos())
}

/// `Sin(z) = sin √z / √z`, entire.
pub fn sin_big<T: Scalar>(z: T) -> T {
    if z.abs() < ENTIRE_SERIES_RADIUS {
        return entire_series(z, true);
    }
    if T::IS_REAL {
        let x = z.re();
        let v = if x > 0.0 {
            let s = x.sqrt();
            s.sin() / s
        } else {
            let s = (-x).sqrt();
            s.sinh() / s
        };
        return T::from_re(v);
    }
    let s = root(z.to_c64());
    T::from_c64(s.sin() / s)
}

/// `Cot(z) = Cos(z)/Sin(z) = √z cot √z` and `q(z) = 1/Sin(z)²`, computed so
/// that neither overflows for large negative real `z`.
pub(crate) fn cot_q<T: Scalar>(z: T) -> (T, T) {
    if T::IS_REAL && z.re() < -1.0 {
        let y = (-z.re()).sqrt();
        let r = y / y.sinh();
        return (T::from_re(y / y.tanh()), T::from_re(r * r));
    }
    let (c, s) = (cos_big(z), sin_big(z));
    (c / s, T::one() / (s * s))
}
