//! Globally adaptive 7/15-point Gauss–Kronrod quadrature.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

// Kronrod abscissae on [0, 1]; odd indices are the 7 Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Tolerances and budget for [`integrate`].
#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_intervals: 4000,
        }
    }
}

struct Piece<T> {
    a: f64,
    b: f64,
    value: T,
    err: f64,
}

impl<T> PartialEq for Piece<T> {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl<T> Eq for Piece<T> {}
impl<T> PartialOrd for Piece<T> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl<T> Ord for Piece<T> {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

fn kronrod<T: Scalar>(f: &impl Fn(f64) -> T, a: f64, b: f64) -> Piece<T> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * T::from_re(WGK[7]);
    let mut g = fc * T::from_re(WG[3]);
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k = k + s * T::from_re(WGK[i]);
        if i % 2 == 1 {
            g = g + s * T::from_re(WG[i / 2]);
        }
    }
    let value = k * T::from_re(h);
    let err = ((k - g) * T::from_re(h)).abs();
    Piece { a, b, value, err }
}

/// Integrates `f` over `[a, b]` with the given options.
pub fn integrate_with<T: Scalar>(
    f: impl Fn(f64) -> T,
    a: f64,
    b: f64,
    opts: QuadOptions,
) -> Result<T> {
    if a == b {
        return Ok(T::zero());
    }
    let mut heap = BinaryHeap::new();
    let first = kronrod(&f, a, b);
    let mut total = first.value;
    let mut err = first.err;
    heap.push(first);
    while err > opts.abs_tol.max(opts.rel_tol * total.abs()) {
        if !total.abs().is_finite() {
            return Err(Error::NonConvergent("integrand is not finite".into()));
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::NonConvergent(format!(
                "quadrature on [{a}, {b}] stalled at error {err:e}"
            )));
        }
        let worst = heap.pop().expect("heap is never empty");
        let m = 0.5 * (worst.a + worst.b);
        let (l, r) = (kronrod(&f, worst.a, m), kronrod(&f, m, worst.b));
        total = total - worst.value + l.value + r.value;
        err = err - worst.err + l.err + r.err;
        heap.push(l);
        heap.push(r);
    }
    // Re-sum to shed the drift of the running updates.
    Ok(heap.iter().fold(T::zero(), |s, p| s + p.value))
}

/// Integrates with absolute tolerance 1e-10 and relative tolerance 1e-9.
pub fn integrate<T: Scalar>(f: impl Fn(f64) -> T, a: f64, b: f64) -> Result<T> {
    integrate_with(f, a, b, QuadOptions::default())
}
