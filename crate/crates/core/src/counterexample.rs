//! A complex 2×2 matrix whose conformal range sits in `exp D̄(0, p₀)` but
//! whose Magnus exponent exceeds `p₀`.
//!
//! Everything happens in the CKB disk. `S_p` is the image of the upper
//! half-disk `{z : Im z ≥ 0, |z| ≤ p}` under `a + ib ↦ (cos b / cosh a, tanh a)`,
//! and an ellipse tangent to its hyperbolic boundary at three points is
//! shown to fit inside `S_{p₀}` while the corresponding ellipse for `p₀/2`
//! leaves the unit disk.

use crate::error::{Error, Result};
use crate::geometry::ModelPoint;
use crate::optim::golden_max;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

/// The point `s_p(t) = (cos(p sin t)/cosh(p cos t), tanh(p cos t))` of `∂S_p`.
pub fn boundary_curve(p: f64, t: f64) -> ModelPoint {
    let (st, ct) = t.sin_cos();
    ModelPoint::new((p * st).cos() / (p * ct).cosh(), (p * ct).tanh())
}

/// Coefficients of the tangent line `A x + B y + C = 0` to `s_p` at `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentLine {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl TangentLine {
    pub fn eval(&self, q: ModelPoint) -> f64 {
        self.a * q.x + self.b * q.y + self.c
    }
}

pub fn tangent_coeffs(p: f64, t: f64) -> TangentLine {
    let (st, ct) = t.sin_cos();
    let (ch, sh) = ((p * ct).cosh(), (p * ct).sinh());
    let (cs, sn) = ((p * st).cos(), (p * st).sin());
    TangentLine {
        a: st,
        b: st * sh * cs - ct * ch * sn,
        c: -st * ch * cs + ct * sh * sn,
    }
}

/// Inverse of the strip map: the `z = a + ib` with `0 < b < π` sent to `q`.
/// Only defined in the open unit disk.
pub fn exponent_of(q: ModelPoint) -> Result<Complex64> {
    if !(q.x * q.x + q.y * q.y < 1.0) {
        return Err(Error::Domain(format!(
            "({}, {}) is not in the open unit disk",
            q.x, q.y
        )));
    }
    let a = q.y.atanh();
    let b = (q.x * a.cosh()).clamp(-1.0, 1.0).acos();
    Ok(Complex64::new(a, b))
}

/// `p - |z(q)|`: positive inside `S_p`, zero on its hyperbolic boundary.
pub fn range_margin(p: f64, q: ModelPoint) -> Result<f64> {
    Ok(p - exponent_of(q)?.norm())
}

/// A conic `xx·x² + xy·xy + yy·y² + x·x + y·y + one = 0` in CKB coordinates;
/// the closed region is where the form is `≤ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipseQuadric {
    pub xx: f64,
    pub xy: f64,
    pub yy: f64,
    pub x: f64,
    pub y: f64,
    pub one: f64,
}

impl EllipseQuadric {
    pub fn eval(&self, q: ModelPoint) -> f64 {
        let (x, y) = (q.x, q.y);
        self.xx * x * x + self.xy * x * y + self.yy * y * y + self.x * x + self.y * y + self.one
    }

    pub fn gradient(&self, q: ModelPoint) -> (f64, f64) {
        (
            2.0 * self.xx * q.x + self.xy * q.y + self.x,
            self.xy * q.x + 2.0 * self.yy * q.y + self.y,
        )
    }

    /// First-order signed distance `E/|∇E|`, negative inside.
    pub fn signed_distance(&self, q: ModelPoint) -> f64 {
        let (gx, gy) = self.gradient(q);
        self.eval(q) / gx.hypot(gy)
    }

    /// Center, semi-axes and the angle of the first axis, when the conic is
    /// a real ellipse.
    pub fn axes(&self) -> Result<(ModelPoint, f64, f64, f64)> {
        let det = 4.0 * self.xx * self.yy - self.xy * self.xy;
        if !(det > 0.0) || self.xx + self.yy <= 0.0 {
            return Err(Error::Degenerate("quadric is not an ellipse".into()));
        }
        let cx = (self.xy * self.y - 2.0 * self.yy * self.x) / det;
        let cy = (self.xy * self.x - 2.0 * self.xx * self.y) / det;
        let center = ModelPoint::new(cx, cy);
        let level = -self.eval(center);
        if !(level > 0.0) {
            return Err(Error::Degenerate("ellipse is empty".into()));
        }
        let angle = 0.5 * self.xy.atan2(self.xx - self.yy);
        let (s, c) = angle.sin_cos();
        let l1 = self.xx * c * c + self.xy * s * c + self.yy * s * s;
        let l2 = self.xx * s * s - self.xy * s * c + self.yy * c * c;
        Ok((center, (level / l1).sqrt(), (level / l2).sqrt(), angle))
    }

    /// Boundary point at parameter `phi`.
    pub fn point(&self, phi: f64) -> Result<ModelPoint> {
        let (c, u, v, angle) = self.axes()?;
        let (sa, ca) = angle.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Ok(ModelPoint::new(
            c.x + u * cp * ca - v * sp * sa,
            c.y + u * cp * sa + v * sp * ca,
        ))
    }

    /// The boundary point farthest from the origin.
    pub fn farthest_point(&self) -> Result<ModelPoint> {
        let (c, _, _, _) = self.axes()?;
        if self.xy == 0.0 && self.y == 0.0 {
            // Axis-aligned and symmetric in y: |q|² is a quadratic in cos φ.
            let level = -self.eval(c);
            let (u, v) = ((level / self.xx).sqrt(), (level / self.yy).sqrt());
            let radius2 = |w: f64| (c.x + u * w).powi(2) + v * v * (1.0 - w * w);
            let mut best = if radius2(1.0) >= radius2(-1.0) {
                1.0
            } else {
                -1.0
            };
            let curv = u * u - v * v;
            if curv < 0.0 {
                let w = (-c.x * u / curv).clamp(-1.0, 1.0);
                if radius2(w) > radius2(best) {
                    best = w;
                }
            }
            let (x, y) = (c.x + u * best, v * (1.0 - best * best).max(0.0).sqrt());
            return Ok(ModelPoint::new(x, y));
        }
        let r2 = |phi: f64| {
            self.point(phi)
                .map(|q| q.x * q.x + q.y * q.y)
                .unwrap_or(f64::NAN)
        };
        const SAMPLES: usize = 100_000;
        let h = 2.0 * PI / SAMPLES as f64;
        let start = (0..SAMPLES)
            .map(|i| i as f64 * h)
            .max_by(|a, b| r2(*a).total_cmp(&r2(*b)))
            .unwrap_or(0.0);
        let (phi, _) = golden_max(r2, start - h, start + h, 1e-14);
        self.point(phi)
    }
}

/// The ellipse tangent to `s_p` at `t`, `π/2` and `π - t`.
pub fn ellipse(p: f64, t: f64) -> Result<EllipseQuadric> {
    if !(t > 0.0 && t < FRAC_PI_2) || !(p > 0.0 && p < PI) {
        return Err(Error::Domain(format!(
            "ellipse needs 0 < p < pi and 0 < t < pi/2, got ({p}, {t})"
        )));
    }
    let line = tangent_coeffs(p, t);
    let (st, ct) = t.sin_cos();
    let ch = (p * ct).cosh();
    let cs = (p * st).cos();
    let k = cs - ch * p.cos();
    let l = line.a * p.cos() + line.c;
    // (cs - ch x)² L² - K²((A x + C)² - (B y)²)
    let q = EllipseQuadric {
        xx: ch * ch * l * l - k * k * line.a * line.a,
        xy: 0.0,
        yy: k * k * line.b * line.b,
        x: -2.0 * cs * ch * l * l - 2.0 * k * k * line.a * line.c,
        y: 0.0,
        one: cs * cs * l * l - k * k * line.c * line.c,
    };
    q.axes()?;
    Ok(q)
}

/// The parameters of the worked example, `(14π/15, 7π/15)`.
pub const P0: f64 = 14.0 * PI / 15.0;
pub const T0: f64 = 7.0 * PI / 15.0;

/// Samples of `∂S_{p₀}` used for the containment check.
pub const CONTAINMENT_SAMPLES: usize = 10_000;
/// Signed distances below this count as contact.
pub const CONTACT_BAND: f64 = 1e-8;

/// A point where the ellipse touches `∂S_{p₀}`, refined from a sampled
/// cluster.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Contact {
    pub t: f64,
    pub distance: f64,
    /// Second derivative of the signed distance along `s_{p₀}`.
    pub curvature: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CounterexampleReport {
    pub ellipse: EllipseQuadric,
    /// `1 - max |q|` over the ellipse.
    pub disk_margin: f64,
    pub in_disk: bool,
    /// Smallest sampled signed distance of `∂S_{p₀}` to the ellipse.
    pub min_distance: f64,
    pub contacts: Vec<Contact>,
    pub contained: bool,
    pub half_ellipse: EllipseQuadric,
    /// A boundary point of the `p₀/2` ellipse outside the unit disk.
    pub half_witness: ModelPoint,
    pub half_escapes: bool,
}

impl CounterexampleReport {
    pub fn all_hold(&self) -> bool {
        self.in_disk && self.contained && self.half_escapes
    }
}

fn contact_at(q: &EllipseQuadric, lo: f64, hi: f64) -> Contact {
    let dist = |t: f64| q.signed_distance(boundary_curve(P0, t));
    let (t, neg) = golden_max(|t| -dist(t), lo, hi, 1e-12);
    let h = 1e-3;
    Contact {
        t,
        distance: -neg,
        curvature: (dist(t + h) - 2.0 * dist(t) + dist(t - h)) / (h * h),
    }
}

/// Checks the three claims of the example at `(p₀, t₀)`:
/// the ellipse lies in the open unit disk, it lies in `S_{p₀}` touching
/// `∂S_{p₀}` only at `s_{p₀}(t₀)`, `s_{p₀}(π/2)`, `s_{p₀}(π - t₀)`, and the
/// ellipse for `p₀/2` does not lie in the unit disk.
pub fn verify_counterexample() -> Result<CounterexampleReport> {
    let q = ellipse(P0, T0)?;
    let far = q.farthest_point()?;
    let disk_margin = 1.0 - far.x.hypot(far.y);

    let h = PI / CONTAINMENT_SAMPLES as f64;
    let dist: Vec<f64> = (0..CONTAINMENT_SAMPLES)
        .map(|i| q.signed_distance(boundary_curve(P0, (i as f64 + 0.5) * h)))
        .collect();
    let min_distance = dist.iter().copied().fold(f64::INFINITY, f64::min);
    let mut clusters: Vec<(usize, usize)> = Vec::new();
    for (i, d) in dist.iter().enumerate() {
        if *d < CONTACT_BAND {
            match clusters.last_mut() {
                Some(c) if c.1 + 1 == i => c.1 = i,
                _ => clusters.push((i, i)),
            }
        }
    }
    let contacts: Vec<Contact> = clusters
        .iter()
        .map(|&(a, b)| contact_at(&q, a as f64 * h, (b as f64 + 1.0) * h))
        .collect();
    let expected = [T0, FRAC_PI_2, PI - T0];
    let contained = min_distance >= -1e-9
        && contacts.len() == 3
        && contacts
            .iter()
            .zip(expected)
            .all(|(c, t)| (c.t - t).abs() < 1e-5 && c.distance >= -1e-9 && c.curvature > 0.0);

    let half = ellipse(P0 / 2.0, T0)?;
    let half_witness = half.farthest_point()?;
    Ok(CounterexampleReport {
        ellipse: q,
        disk_margin,
        in_disk: disk_margin > 0.0,
        min_distance,
        contacts,
        contained,
        half_ellipse: half,
        half_escapes: half_witness.x.hypot(half_witness.y) > 1.0,
        half_witness,
    })
}
