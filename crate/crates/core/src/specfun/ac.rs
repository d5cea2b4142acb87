use super::series;
use crate::error::{Error, Result};
use crate::scalar::{horner, Scalar};
use crate::tol::CUT_BAND;

// AC(1 + w) = sum (-2)^n (n!)² / (2n+1)! w^n, radius 2.
fn ac_series<T: Scalar>(w: T) -> T {
    let mut c = 1.0;
    let mut sum = T::one();
    let mut pow = T::one();
    for n in 1..48 {
        let nf = n as f64;
        c *= -2.0 * nf * nf / ((2.0 * nf) * (2.0 * nf + 1.0));
        pow = pow * w;
        sum = sum + pow * T::from_re(c);
    }
    sum
}

const AC_SERIES_RADIUS: f64 = 0.5;

fn check_cut<T: Scalar>(z: T) -> Result<()> {
    let zc = z.to_c64();
    if zc.im.abs() <= CUT_BAND && zc.re <= -1.0 {
        return Err(Error::CutViolation(format!("{zc}")));
    }
    Ok(())
}

/// `AC(z)`, the analytic extension of `arccos z / √(1 - z²)` off `(-∞, -1]`.
pub fn ac<T: Scalar>(z: T) -> Result<T> {
    check_cut(z)?;
    let w = z - T::one();
    if w.abs() < AC_SERIES_RADIUS {
        return Ok(ac_series(w));
    }
    if T::IS_REAL {
        let x = z.re();
        let v = if x < 1.0 {
            x.acos() / ((1.0 - x) * (1.0 + x)).sqrt()
        } else {
            x.acosh() / ((x - 1.0) * (x + 1.0)).sqrt()
        };
        return Ok(T::from_re(v));
    }
    // θ/sin θ is even in θ, so the branch of arccos is immaterial.
    let theta = z.to_c64().acos();
    Ok(T::from_c64(theta / theta.sin()))
}

const AS_SERIES_RADIUS: f64 = 0.5;

/// `(AS(z), AT(z))` with `AS = √((AC² - 1)/(1 - z²))` and `AT = (AC - 1)/AS`.
pub fn as_at<T: Scalar>(z: T) -> Result<(T, T)> {
    let a = ac(z)?;
    let w = z - T::one();
    let s = if w.abs() < AS_SERIES_RADIUS {
        horner(&series::AS_SQ, w).sqrt()
    } else {
        let one = T::one();
        ((a - one) / (one - z)).sqrt() * ((a + one) / (one + z)).sqrt()
    };
    Ok((s, (a - T::one()) / s))
}
