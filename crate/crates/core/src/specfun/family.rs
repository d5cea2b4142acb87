use super::{cos_big, cot_q, series, sin_big};
use crate::error::{Error, Result};
use crate::scalar::{horner, Scalar};
use crate::tol::POLE_BAND;
use std::f64::consts::PI;

/// The meromorphic functions built from `Cot` and `1/Sin²`.
///
/// Pole orders at `(kπ)²`, `k ≥ 1`: C 1, D 2, W 2, P 1, G 3, L 3, X 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReFamily {
    C,
    D,
    W,
    P,
    G,
    L,
    X,
}

impl ReFamily {
    pub const ALL: [ReFamily; 7] = [
        ReFamily::C,
        ReFamily::D,
        ReFamily::W,
        ReFamily::P,
        ReFamily::G,
        ReFamily::L,
        ReFamily::X,
    ];

    pub fn pole_order(self) -> u32 {
        match self {
            ReFamily::C | ReFamily::P => 1,
            ReFamily::D | ReFamily::W => 2,
            ReFamily::G | ReFamily::L | ReFamily::X => 3,
        }
    }

    fn series(self) -> &'static [f64] {
        match self {
            ReFamily::C => &series::C,
            ReFamily::D => &series::D,
            ReFamily::W => &series::W,
            ReFamily::P => &series::P,
            ReFamily::G => &series::G,
            ReFamily::L => &series::L,
            ReFamily::X => &series::X,
        }
    }
}

// Inside this disk the closed forms lose digits to cancellation; the series
// converges like (|z|/π²)^n there.
const FAMILY_SERIES_RADIUS: f64 = 3.0;

fn check_pole<T: Scalar>(z: T) -> Result<()> {
    let re = z.re();
    if re <= 0.0 {
        return Ok(());
    }
    let k = (re.sqrt() / PI).round().max(1.0);
    let pole = (k * PI) * (k * PI);
    if (z - T::from_re(pole)).abs() < POLE_BAND {
        return Err(Error::PoleProximity(re));
    }
    Ok(())
}

/// Evaluates one member of the family at `z`.
pub fn re_family<T: Scalar>(tag: ReFamily, z: T) -> Result<T> {
    check_pole(z)?;
    if z.abs() < FAMILY_SERIES_RADIUS {
        return Ok(horner(tag.series(), z));
    }
    let (cot, q) = cot_q(z);
    let one = T::one();
    let k = |x: f64| T::from_re(x);
    let z2 = z * z;
    Ok(match tag {
        ReFamily::C => (one - cot) / z,
        ReFamily::D => (q - one) / z,
        ReFamily::W => (q + cot - k(2.0)) / z2,
        ReFamily::P => (k(3.0) - k(3.0) * cot - z) / z2,
        ReFamily::G => (one - cot * q) / z2,
        ReFamily::L => (q * (k(3.0) - z - k(2.0) * cot) - one) / (z2 * z),
        ReFamily::X => (k(8.0) - k(3.0) * cot - q * (k(3.0) + k(2.0) * cot)) / (k(3.0) * z2 * z),
    })
}

// (1 - Sin²)/z and (Sin - Cos)/z, both entire; the first is positive on ℝ.
fn g_aux(x: f64) -> f64 {
    if x.abs() < FAMILY_SERIES_RADIUS {
        return horner(&series::G_AUX, x);
    }
    let s = sin_big(x);
    (1.0 - s * s) / x
}

fn h_aux(x: f64) -> f64 {
    if x.abs() < FAMILY_SERIES_RADIUS {
        return horner(&series::H_AUX, x);
    }
    (sin_big(x) - cos_big(x)) / x
}

/// `(𝓔(x), 𝓕(x))`, the analytic continuations of `1/√𝔇` and `ℭ/√𝔇`.
///
/// Both are finite on the whole real line; past `π²` they follow the sign of
/// `sin √x`.
pub fn script_ef(x: f64) -> (f64, f64) {
    if x < -FAMILY_SERIES_RADIUS {
        // Sin overflows long before 𝔇 does.
        let d = re_family(ReFamily::D, x).expect("no poles on the negative axis");
        let c = re_family(ReFamily::C, x).expect("no poles on the negative axis");
        let r = d.sqrt();
        return (1.0 / r, c / r);
    }
    let g = g_aux(x).sqrt();
    (sin_big(x) / g, h_aux(x) / g)
}
