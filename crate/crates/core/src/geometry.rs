//! Principal and chiral disks, conformal-range circles, and the hyperbolic
//! chart conversions used to plot moment maps.

use crate::error::{Error, Result};
use crate::m2::M2R;
use crate::specfun::ac;
use num_complex::Complex64;

/// Closed disk in the complex plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Disk {
    pub center: Complex64,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Complex64, radius: f64) -> Self {
        debug_assert!(radius >= 0.0);
        Disk { center, radius }
    }

    pub fn point(z: Complex64) -> Self {
        Disk::new(z, 0.0)
    }

    pub fn contains(&self, z: Complex64, slack: f64) -> bool {
        (z - self.center).norm() <= self.radius + slack
    }

    pub fn boundary_point(&self, angle: f64) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, angle)
    }

    /// The rotation-orbit representative `a Id + b Ĩ + r J̃` with this chiral disk.
    pub fn representative(&self) -> M2R {
        M2R::new(self.center.re, self.center.im, self.radius, 0.0)
    }

    /// Distance from the center to `(-∞, 0]`.
    fn cut_distance(&self) -> f64 {
        let (a, b) = (self.center.re, self.center.im);
        (a - a.min(0.0)).hypot(b)
    }

    /// Whether the closed disk meets `(-∞, 0]`.
    pub fn touches_cut(&self) -> bool {
        self.cut_distance() <= self.radius
    }
}

/// `CD(A) = D̄(ã + b̃i, √(c̃² + d̃²))`.
pub fn chiral_disk(a: &M2R) -> Disk {
    Disk::new(Complex64::new(a.ta, a.tb), a.tc.hypot(a.td))
}

/// `PD(A) = D̄(ã + |b̃|i, √(c̃² + d̃²))`.
pub fn principal_disk(a: &M2R) -> Disk {
    Disk::new(Complex64::new(a.ta, a.tb.abs()), a.tc.hypot(a.td))
}

/// The two circles whose union is the extended conformal range of `A` on ℝ².
pub fn conformal_range_circles(a: &M2R) -> (Disk, Disk) {
    let r = a.tc.hypot(a.td);
    (
        Disk::new(Complex64::new(a.ta, a.tb), r),
        Disk::new(Complex64::new(a.ta, -a.tb), r),
    )
}

/// `(‖log A‖₂, ⌊log A⌋₂)` from the principal (or chiral) disk of a log-able `A`.
pub fn log_norm_from_disk(d: &Disk) -> Result<(f64, f64)> {
    if d.touches_cut() {
        return Err(Error::DiskTouchesCut);
    }
    let (a, b, r) = (d.center.re, d.center.im, d.radius);
    let s = ((a * a + b * b) - r * r).sqrt();
    let k = ac(a / s)? / s;
    let f_ca = s.ln().hypot(b * k);
    let f_rd = r * k;
    Ok((f_ca + f_rd, f_ca - f_rd))
}

/// `(ã, b̃, √(c̃² + d̃²))`, a point of the closed upper half-space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PHPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl PHPoint {
    /// Operator norm of any matrix with this image.
    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y) + self.z
    }
}

pub fn xi_ph(a: &M2R) -> PHPoint {
    PHPoint {
        x: a.ta,
        y: a.tb,
        z: a.tc.hypot(a.td),
    }
}

/// Charts of the hyperbolic plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// Cayley–Klein–Beltrami disk.
    Ckb,
    /// Flattened hyperboloid.
    Hp,
    /// `(arctan x_HP, y_HP)`.
    Ahp,
    /// `(arcsin x_CKB, y_CKB/√(1 - x_CKB²))`.
    Ackb,
}

impl std::str::FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "CKB" => Ok(Model::Ckb),
            "HP" => Ok(Model::Hp),
            "AHP" => Ok(Model::Ahp),
            "ACKB" => Ok(Model::Ackb),
            _ => Err(Error::Domain(format!("unknown model {s}"))),
        }
    }
}

/// A point given in one of the charts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelPoint {
    pub x: f64,
    pub y: f64,
}

impl ModelPoint {
    pub fn new(x: f64, y: f64) -> Self {
        ModelPoint { x, y }
    }
}

fn out_of_domain(p: ModelPoint, m: Model) -> Error {
    Error::Domain(format!("({}, {}) is outside the {m:?} chart", p.x, p.y))
}

fn to_ckb(p: ModelPoint, from: Model) -> Result<ModelPoint> {
    match from {
        Model::Ckb => {
            if p.x * p.x + p.y * p.y > 1.0 {
                return Err(out_of_domain(p, from));
            }
            Ok(p)
        }
        Model::Hp => {
            let n = (1.0 + p.x * p.x + p.y * p.y).sqrt();
            Ok(ModelPoint::new(p.x / n, p.y / n))
        }
        Model::Ahp => {
            if p.x.abs() >= std::f64::consts::FRAC_PI_2 {
                return Err(out_of_domain(p, from));
            }
            to_ckb(ModelPoint::new(p.x.tan(), p.y), Model::Hp)
        }
        Model::Ackb => {
            if p.x.abs() > std::f64::consts::FRAC_PI_2 || p.y.abs() > 1.0 {
                return Err(out_of_domain(p, from));
            }
            Ok(ModelPoint::new(p.x.sin(), p.y * p.x.cos()))
        }
    }
}

fn from_ckb(p: ModelPoint, to: Model) -> Result<ModelPoint> {
    let rest = 1.0 - p.x * p.x - p.y * p.y;
    match to {
        Model::Ckb => Ok(p),
        Model::Hp => {
            if rest <= 0.0 {
                return Err(out_of_domain(p, Model::Ckb));
            }
            let n = rest.sqrt();
            Ok(ModelPoint::new(p.x / n, p.y / n))
        }
        Model::Ahp => {
            let h = from_ckb(p, Model::Hp)?;
            Ok(ModelPoint::new(h.x.atan(), h.y))
        }
        Model::Ackb => {
            let side = 1.0 - p.x * p.x;
            if side <= 0.0 {
                // The blown-up points (±1, 0).
                if p.y == 0.0 {
                    return Ok(ModelPoint::new(
                        p.x.signum() * std::f64::consts::FRAC_PI_2,
                        0.0,
                    ));
                }
                return Err(out_of_domain(p, Model::Ckb));
            }
            Ok(ModelPoint::new(p.x.asin(), p.y / side.sqrt()))
        }
    }
}

/// Converts a point between charts, passing through CKB.
pub fn model_convert(p: ModelPoint, from: Model, to: Model) -> Result<ModelPoint> {
    if from == to {
        return Ok(p);
    }
    from_ckb(to_ckb(p, from)?, to)
}

/// `D̄₁ ⊆ D̄₂` up to `1e-12`.
pub fn disk_inclusion(d1: &Disk, d2: &Disk) -> bool {
    (d1.center - d2.center).norm() + d1.radius <= d2.radius + 1e-12
}

/// `X⁺(A) = ab Id + (c² + d² - a²)Ĩ - bcJ̃ - bdK̃`, orthogonal to `A` under
/// `tr(A* ·)`.
pub fn x_plus(a: &M2R) -> M2R {
    let (x, b, c, d) = (a.ta, a.tb, a.tc, a.td);
    M2R::new(x * b, c * c + d * d - x * x, -b * c, -b * d)
}

/// `√(c̃² + d̃²)/√(ã² + b̃² - c̃² - d̃²)`, the eccentricity of the principal disk
/// relative to the determinant; `None` when `det A ≤ 0`.
pub fn m_distortion(a: &M2R) -> Option<f64> {
    let det = a.det();
    (det > 0.0).then(|| a.tc.hypot(a.td) / det.sqrt())
}
