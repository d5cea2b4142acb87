//! 2×2 matrices stored in the skew-quaternionic basis `Id, Ĩ, J̃, K̃`.
//!
//! With `Ĩ = [[0,-1],[1,0]]`, `J̃ = diag(1,-1)` and `K̃ = [[0,1],[1,0]]`, the
//! matrix `ta·Id + tb·Ĩ + tc·J̃ + td·K̃` has entries
//! `[[ta+tc, -tb+td], [tb+td, ta-tc]]`.

mod norm;
mod reduce;

pub use norm::{
    moment_mn, norm_directional_derivative, signed_conorm_directional_derivative, upper_symbol,
    NormCase,
};
pub use reduce::{commutator_reduce, BracketPoly, Reduced};

use crate::scalar::Scalar;
use num_complex::Complex64;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// A 2×2 matrix in skew-quaternionic coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Skew<T> {
    pub ta: T,
    pub tb: T,
    pub tc: T,
    pub td: T,
}

/// Real 2×2 matrix.
pub type M2R = Skew<f64>;
/// Complex 2×2 matrix.
pub type M2C = Skew<Complex64>;

/// Scalars attached to a pair `(A, v)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Discriminants<T> {
    /// `D_A = det(A - tr A/2)`.
    pub d_a: T,
    /// `T_{A,v}`, the polarization of `-D`.
    pub t_av: T,
    /// `-D_{A*A}`, never negative.
    pub norm_disc: f64,
}

impl<T: Scalar> Skew<T> {
    pub fn new(ta: T, tb: T, tc: T, td: T) -> Self {
        Skew { ta, tb, tc, td }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn identity() -> Self {
        Self::scalar(T::one())
    }

    pub fn scalar(x: T) -> Self {
        Self::new(x, T::zero(), T::zero(), T::zero())
    }

    pub fn unit_i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn unit_j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn unit_k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    /// Builds from real coordinates.
    pub fn from_re(ta: f64, tb: f64, tc: f64, td: f64) -> Self {
        Self::new(ta.into(), tb.into(), tc.into(), td.into())
    }

    pub fn from_entries(m11: T, m12: T, m21: T, m22: T) -> Self {
        let half = T::from_re(0.5);
        Self::new(
            (m11 + m22) * half,
            (m21 - m12) * half,
            (m11 - m22) * half,
            (m12 + m21) * half,
        )
    }

    /// Row-major entries.
    pub fn entries(&self) -> [[T; 2]; 2] {
        [
            [self.ta + self.tc, self.td - self.tb],
            [self.tb + self.td, self.ta - self.tc],
        ]
    }

    pub fn coords(&self) -> [T; 4] {
        [self.ta, self.tb, self.tc, self.td]
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Skew<U> {
        Skew::new(f(self.ta), f(self.tb), f(self.tc), f(self.td))
    }

    pub fn scale(&self, k: T) -> Self {
        self.map(|x| x * k)
    }

    pub fn scale_re(&self, k: f64) -> Self {
        self.scale(T::from_re(k))
    }

    pub fn trace(&self) -> T {
        self.ta + self.ta
    }

    pub fn det(&self) -> T {
        self.ta * self.ta + self.tb * self.tb - self.tc * self.tc - self.td * self.td
    }

    /// `D_A = tb² - tc² - td²`.
    pub fn disc(&self) -> T {
        self.tb * self.tb - self.tc * self.tc - self.td * self.td
    }

    /// `T_{A,v} = -tb·vb + tc·vc + td·vd`.
    pub fn pair(&self, v: &Self) -> T {
        -self.tb * v.tb + self.tc * v.tc + self.td * v.td
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(
            self.ta.conj(),
            -self.tb.conj(),
            self.tc.conj(),
            self.td.conj(),
        )
    }

    /// Classical adjugate, `det(A)·A⁻¹`.
    pub fn adjugate(&self) -> Self {
        Self::new(self.ta, -self.tb, -self.tc, -self.td)
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == T::zero() {
            return None;
        }
        Some(self.adjugate().scale(T::one() / d))
    }

    /// `A - (tr A/2)·Id`.
    pub fn detraced(&self) -> Self {
        Self::new(T::zero(), self.tb, self.tc, self.td)
    }

    pub fn commutator(&self, v: &Self) -> Self {
        *self * *v - *v * *self
    }

    /// `tr(A*A)/2 = Σ|coordinate|²`.
    pub fn half_frob_sq(&self) -> f64 {
        self.coords().iter().map(|x| x.abs() * x.abs()).sum()
    }

    /// `-D_{A*A}`. Computed from the coordinates of the Hermitian `A*A`, whose
    /// `Ĩ` coordinate is imaginary, so no cancellation against `|det A|²` occurs.
    pub fn norm_disc(&self) -> f64 {
        if T::IS_REAL {
            let p = self.ta.abs().powi(2) + self.tb.abs().powi(2);
            let q = self.tc.abs().powi(2) + self.td.abs().powi(2);
            return 4.0 * p * q;
        }
        let h = self.adjoint() * *self;
        h.tb.abs().powi(2) + h.tc.abs().powi(2) + h.td.abs().powi(2)
    }

    pub fn discriminants(&self, v: &Self) -> Discriminants<T> {
        Discriminants {
            d_a: self.disc(),
            t_av: self.pair(v),
            norm_disc: self.norm_disc(),
        }
    }

    /// Operator norm `‖A‖₂`.
    pub fn op_norm(&self) -> f64 {
        if T::IS_REAL {
            let (a, b, c, d) = (self.ta.re(), self.tb.re(), self.tc.re(), self.td.re());
            return a.hypot(b) + c.hypot(d);
        }
        (self.half_frob_sq() + self.norm_disc().sqrt()).sqrt()
    }

    /// Co-norm `‖A⁻¹‖₂⁻¹ = |det A|/‖A‖₂`.
    pub fn conorm(&self) -> f64 {
        if T::IS_REAL {
            let (a, b, c, d) = (self.ta.re(), self.tb.re(), self.tc.re(), self.td.re());
            return (a.hypot(b) - c.hypot(d)).abs();
        }
        let n = self.op_norm();
        if n == 0.0 {
            0.0
        } else {
            self.det().abs() / n
        }
    }

    /// Eigenvalues `tr A/2 ± √(-D_A)`.
    pub fn eigenvalues(&self) -> (Complex64, Complex64) {
        let c = self.ta.to_c64();
        let s = (-self.disc().to_c64()).sqrt();
        (c + s, c - s)
    }

    /// Coordinate-wise max-norm.
    pub fn max_abs(&self) -> f64 {
        self.coords().iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn to_complex(&self) -> M2C {
        self.map(|x| x.to_c64())
    }

    pub fn is_finite(&self) -> bool {
        self.coords().iter().all(|x| x.abs().is_finite())
    }
}

impl M2R {
    /// Signed co-norm `⌊A⌋₂ = det A/‖A‖₂`, zero for `A = 0`.
    pub fn signed_conorm(&self) -> f64 {
        self.ta.hypot(self.tb) - self.tc.hypot(self.td)
    }
}

impl M2C {
    /// Real part, coordinate-wise.
    pub fn re(&self) -> M2R {
        Skew::new(self.ta.re, self.tb.re, self.tc.re, self.td.re)
    }

    pub fn im(&self) -> M2R {
        Skew::new(self.ta.im, self.tb.im, self.tc.im, self.td.im)
    }
}

/// Entrywise form to skew coordinates.
pub fn skew_of_entries<T: Scalar>(m11: T, m12: T, m21: T, m22: T) -> Skew<T> {
    Skew::from_entries(m11, m12, m21, m22)
}

/// Skew coordinates to entrywise form `(m11, m12, m21, m22)`.
pub fn entries_of_skew<T: Scalar>(a: &Skew<T>) -> (T, T, T, T) {
    let e = a.entries();
    (e[0][0], e[0][1], e[1][0], e[1][1])
}

/// Operator norm, real or complex.
pub fn op_norm<T: Scalar>(a: &Skew<T>) -> f64 {
    a.op_norm()
}

/// Signed co-norm of a real matrix.
pub fn signed_conorm(a: &M2R) -> f64 {
    a.signed_conorm()
}

impl<T: Scalar> Add for Skew<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(
            self.ta + o.ta,
            self.tb + o.tb,
            self.tc + o.tc,
            self.td + o.td,
        )
    }
}

impl<T: Scalar> Sub for Skew<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(
            self.ta - o.ta,
            self.tb - o.tb,
            self.tc - o.tc,
            self.td - o.td,
        )
    }
}

impl<T: Scalar> Neg for Skew<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.ta, -self.tb, -self.tc, -self.td)
    }
}

impl<T: Scalar> AddAssign for Skew<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Scalar> SubAssign for Skew<T> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

// Multiplication table: ĨJ̃ = K̃, J̃K̃ = -Ĩ, K̃Ĩ = J̃, Ĩ² = -Id, J̃² = K̃² = Id.
impl<T: Scalar> Mul for Skew<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b, c, d) = (self.ta, self.tb, self.tc, self.td);
        let (e, f, g, h) = (o.ta, o.tb, o.tc, o.td);
        Self::new(
            a * e - b * f + c * g + d * h,
            a * f + b * e - c * h + d * g,
            a * g + c * e - b * h + d * f,
            a * h + d * e + b * g - c * f,
        )
    }
}
