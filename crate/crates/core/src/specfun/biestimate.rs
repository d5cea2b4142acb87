use super::ac;
use crate::error::{Error, Result};
use crate::quad::integrate;
use std::f64::consts::{FRAC_PI_2, PI};

/// Root `ℓ ∈ (0, π/2)` of `ℓ + p sin ℓ = π/2`.
pub fn ell(p: f64) -> Result<f64> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::Domain(format!("ell needs p > 0, got {p}")));
    }
    let f = |l: f64| l + p * l.sin() - FRAC_PI_2;
    let (mut lo, mut hi) = (0.0, FRAC_PI_2);
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut l = 0.5 * (lo + hi);
    for _ in 0..20 {
        let step = f(l) / (1.0 + p * l.cos());
        l -= step;
        if step.abs() < 1e-13 {
            break;
        }
    }
    Ok(l)
}

/// The integrand `JJ(p, t)` of the upper estimate.
pub fn jj(p: f64, t: f64) -> f64 {
    let x = p * t.sin();
    (p + x.sin() - x.cos() * x) / (2.0 * x.sin())
}

/// `J(p) = ∫_{ℓ(p)}^{π-ℓ(p)} JJ(p, t) dt` for `0 < p < π`.
pub fn j_upper(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < PI) {
        return Err(Error::Domain(format!("j_upper needs 0 < p < pi, got {p}")));
    }
    let l = ell(p)?;
    // The integrand is symmetric about π/2, where it peaks as p → π.
    let half = integrate(|t| jj(p, t), l, FRAC_PI_2)?;
    Ok(2.0 * half)
}

// Taylor coefficients in u = t - π/2 of JJ(π, t) - 2/cos²t (even powers only).
const JPI_SERIES: [f64; 7] = [
    -0.5,
    -0.536_233_516_712_056_6,
    0.424_669_643_104_728,
    -0.089_543_924_191_835_02,
    0.076_649_420_082_288_52,
    -0.024_314_160_833_704_05,
    0.019_917_225_316_312_21,
];

const JPI_SERIES_RADIUS: f64 = 0.05;

fn jpi_regularized(t: f64) -> f64 {
    let u = t - FRAC_PI_2;
    if u.abs() < JPI_SERIES_RADIUS {
        let u2 = u * u;
        return JPI_SERIES.iter().rev().fold(0.0, |acc, &c| acc * u2 + c);
    }
    let c = t.cos();
    jj(PI, t) - 2.0 / (c * c)
}

/// `J_π = -4 tan ℓ(π) + ∫_{ℓ(π)}^{π-ℓ(π)} (JJ(π,t) - 2/cos²t) dt`.
pub fn j_pi_constant() -> Result<f64> {
    let l = ell(PI)?;
    let half = integrate(jpi_regularized, l, FRAC_PI_2)?;
    Ok(-4.0 * l.tan() + 2.0 * half)
}

/// `G(p) = AC(cosh(π-p) cos p)·(sinh(π-p) + cosh(π-p) sin p)` on `[π/2, π)`.
pub fn g_loxo(p: f64) -> Result<f64> {
    if !(FRAC_PI_2..PI).contains(&p) {
        return Err(Error::Domain(format!(
            "g_loxo needs pi/2 <= p < pi, got {p}"
        )));
    }
    let (ch, sh) = ((PI - p).cosh(), (PI - p).sinh());
    Ok(ac(ch * p.cos())? * (sh + ch * p.sin()))
}
