// Shared oracles for the integration tests. Everything here works on plain
// row-major entries so it shares no code with the library's coordinate forms.
#![allow(dead_code)]

use magnus2::{Skew, M2C, M2R};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C = Complex64;

pub fn cfg(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed_2024),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Row-major complex 2×2 matrix.
#[derive(Clone, Copy, Debug)]
pub struct Ent(pub [[C; 2]; 2]);

impl Ent {
    pub fn of<T: magnus2::Scalar>(a: &Skew<T>) -> Ent {
        let e = a.entries();
        Ent([
            [e[0][0].to_c64(), e[0][1].to_c64()],
            [e[1][0].to_c64(), e[1][1].to_c64()],
        ])
    }

    pub fn id() -> Ent {
        Ent([
            [C::new(1.0, 0.0), C::new(0.0, 0.0)],
            [C::new(0.0, 0.0), C::new(1.0, 0.0)],
        ])
    }

    pub fn mul(&self, o: &Ent) -> Ent {
        let (a, b) = (self.0, o.0);
        let mut out = [[C::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Ent(out)
    }

    pub fn add(&self, o: &Ent) -> Ent {
        let mut out = self.0;
        for (row, other) in out.iter_mut().zip(&o.0) {
            for (x, y) in row.iter_mut().zip(other) {
                *x += y;
            }
        }
        Ent(out)
    }

    pub fn scale(&self, k: C) -> Ent {
        let mut out = self.0;
        for row in out.iter_mut() {
            for x in row.iter_mut() {
                *x *= k;
            }
        }
        Ent(out)
    }

    pub fn sub(&self, o: &Ent) -> Ent {
        self.add(&o.scale(C::new(-1.0, 0.0)))
    }

    pub fn comm(&self, o: &Ent) -> Ent {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn adj(&self) -> Ent {
        let a = self.0;
        Ent([
            [a[0][0].conj(), a[1][0].conj()],
            [a[0][1].conj(), a[1][1].conj()],
        ])
    }

    pub fn tr(&self) -> C {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> C {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn max_diff(&self, o: &Ent) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.0[i][j] - o.0[i][j]).norm());
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|x| x.norm())
            .fold(0.0, f64::max)
    }

    /// Singular values from the eigenvalues of `A*A`.
    pub fn singular_values(&self) -> (f64, f64) {
        let h = self.adj().mul(self);
        let p = h.0[0][0].re;
        let q = h.0[1][1].re;
        let r = h.0[0][1].norm();
        let mid = 0.5 * (p + q);
        let rad = (0.25 * (p - q) * (p - q) + r * r).sqrt();
        ((mid + rad).sqrt(), (mid - rad).max(0.0).sqrt())
    }

    /// `max ‖Ax‖` over a grid of unit vectors `(cos α, e^{iφ} sin α)`.
    pub fn sampled_norm(&self, n: usize) -> f64 {
        let mut best: f64 = 0.0;
        for i in 0..n {
            let al = std::f64::consts::PI * i as f64 / n as f64;
            for j in 0..n {
                let ph = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                let x0 = C::new(al.cos(), 0.0);
                let x1 = C::from_polar(al.sin(), ph);
                let y0 = self.0[0][0] * x0 + self.0[0][1] * x1;
                let y1 = self.0[1][0] * x0 + self.0[1][1] * x1;
                best = best.max((y0.norm_sqr() + y1.norm_sqr()).sqrt());
            }
        }
        best
    }

    pub fn norm(&self) -> f64 {
        self.singular_values().0
    }

    /// Exponential by scaling and squaring of a 40-term Taylor series.
    pub fn exp_series(&self) -> Ent {
        let n = self.max_abs();
        let mut k = 0;
        while n / f64::powi(2.0, k) > 0.25 {
            k += 1;
        }
        let x = self.scale(C::new(f64::powi(2.0, -k), 0.0));
        let mut term = Ent::id();
        let mut sum = Ent::id();
        for i in 1..40 {
            term = term.mul(&x).scale(C::new(1.0 / i as f64, 0.0));
            sum = sum.add(&term);
        }
        for _ in 0..k {
            sum = sum.mul(&sum);
        }
        sum
    }
}

pub fn rand_real(r: &mut impl Rng, s: f64) -> M2R {
    Skew::new(
        r.gen_range(-s..s),
        r.gen_range(-s..s),
        r.gen_range(-s..s),
        r.gen_range(-s..s),
    )
}

pub fn rand_complex(r: &mut impl Rng, s: f64) -> M2C {
    let mut c = || C::new(r.gen_range(-s..s), r.gen_range(-s..s));
    Skew::new(c(), c(), c(), c())
}

pub fn real_strategy(s: f64) -> impl Strategy<Value = M2R> {
    (-s..s, -s..s, -s..s, -s..s).prop_map(|(a, b, c, d)| Skew::new(a, b, c, d))
}

pub fn complex_strategy(s: f64) -> impl Strategy<Value = M2C> {
    (real_strategy(s), real_strategy(s)).prop_map(|(x, y)| {
        Skew::new(
            C::new(x.ta, y.ta),
            C::new(x.tb, y.tb),
            C::new(x.tc, y.tc),
            C::new(x.td, y.td),
        )
    })
}

/// Richardson-extrapolated central difference of a scalar function.
pub fn deriv(f: impl Fn(f64) -> f64, h: f64) -> f64 {
    let d = |h: f64| (f(h) - f(-h)) / (2.0 * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}
