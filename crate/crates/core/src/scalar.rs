//! The scalar field abstraction shared by the real and complex code paths.

use num_complex::Complex64;
use num_complex::ComplexFloat;
use std::fmt::Debug;

/// `f64` or `Complex64`. Everything transcendental is borrowed from
/// [`ComplexFloat`]; this trait only adds the conversions the closed forms need.
pub trait Scalar: ComplexFloat<Real = f64> + From<f64> + Debug + Send + Sync + 'static {
    const IS_REAL: bool;
    fn to_c64(self) -> Complex64;
    /// Real inputs keep only the real part.
    fn from_c64(z: Complex64) -> Self;
    fn from_re(x: f64) -> Self {
        <Self as From<f64>>::from(x)
    }
}

impl Scalar for f64 {
    const IS_REAL: bool = true;
    fn to_c64(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    fn from_c64(z: Complex64) -> Self {
        z.re
    }
}

impl Scalar for Complex64 {
    const IS_REAL: bool = false;
    fn to_c64(self) -> Complex64 {
        self
    }
    fn from_c64(z: Complex64) -> Self {
        z
    }
}

/// Evaluates `sum c[k] x^k` by Horner's rule.
pub fn horner<T: Scalar>(coeffs: &[f64], x: T) -> T {
    coeffs
        .iter()
        .rev()
        .fold(T::zero(), |acc, &c| acc * x + T::from_re(c))
}
