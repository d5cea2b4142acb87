//! Piecewise matrix-valued measures and their time-ordered exponentials.
//!
//! Later times multiply on the left: for consecutive pieces `φ₁, φ₂` the
//! exponential is `Lexp(φ₂)·Lexp(φ₁)`, so `A(θ)` solves `A′ = φ(θ)A`.

use crate::error::{Error, Result};
use crate::explog::{exp2, log2};
use crate::m2::Skew;
use crate::quad::integrate;
use crate::scalar::Scalar;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// Largest number of cells a density piece may be cut into.
pub const CELL_BUDGET: usize = 1 << 20;
/// Relative agreement of successive Richardson values that ends refinement.
pub const LEXP_REL_TOL: f64 = 1e-11;

pub type DensityFn<T> = Arc<dyn Fn(f64) -> Skew<T> + Send + Sync>;

/// One time-ordered piece of a measure.
#[derive(Clone)]
pub enum Piece<T> {
    /// The constant density `matrix` on an interval of length `len`.
    Step { matrix: Skew<T>, len: f64 },
    /// `f(θ) dθ` on `[start, end]`; `samples - 1` cells seed the refinement.
    Density {
        f: DensityFn<T>,
        start: f64,
        end: f64,
        samples: usize,
    },
}

impl<T: Scalar> Piece<T> {
    fn len(&self) -> f64 {
        match self {
            Piece::Step { len, .. } => *len,
            Piece::Density { start, end, .. } => end - start,
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for Piece<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Step { matrix, len } => write!(f, "Step({matrix:?}, {len})"),
            Piece::Density {
                start,
                end,
                samples,
                ..
            } => {
                write!(f, "Density([{start}, {end}], {samples} samples)")
            }
        }
    }
}

/// An ordered `M₂`-valued measure made of steps and sampled densities.
#[derive(Clone, Debug)]
pub struct PiecewiseMeasure<T> {
    pieces: Vec<Piece<T>>,
}

impl<T: Scalar> PiecewiseMeasure<T> {
    /// Steps `(matrix, length)` in time order.
    pub fn steps(steps: impl IntoIterator<Item = (Skew<T>, f64)>) -> Result<Self> {
        let pieces = steps
            .into_iter()
            .map(|(matrix, len)| Piece::Step { matrix, len })
            .collect();
        let m = PiecewiseMeasure { pieces };
        m.validate()?;
        Ok(m)
    }

    pub fn density(
        f: impl Fn(f64) -> Skew<T> + Send + Sync + 'static,
        start: f64,
        end: f64,
        samples: usize,
    ) -> Result<Self> {
        let m = PiecewiseMeasure {
            pieces: vec![Piece::Density {
                f: Arc::new(f),
                start,
                end,
                samples,
            }],
        };
        m.validate()?;
        Ok(m)
    }

    pub fn pieces(&self) -> &[Piece<T>] {
        &self.pieces
    }

    fn validate(&self) -> Result<()> {
        for p in &self.pieces {
            match p {
                Piece::Step { matrix, len } => {
                    if !(matrix.is_finite() && len.is_finite() && *len >= 0.0) {
                        return Err(Error::Domain(format!("bad step {p:?}")));
                    }
                }
                Piece::Density {
                    start,
                    end,
                    samples,
                    ..
                } => {
                    if !(start.is_finite() && end.is_finite() && end >= start) {
                        return Err(Error::Domain(format!("bad interval {p:?}")));
                    }
                    if *samples < 2 {
                        return Err(Error::Domain("a density needs at least 2 samples".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// `self` followed in time by `later`.
    pub fn then(mut self, later: Self) -> Self {
        self.pieces.extend(later.pieces);
        self
    }

    /// Total length of the parameter interval.
    pub fn length(&self) -> f64 {
        self.pieces.iter().map(Piece::len).sum()
    }

    /// `∫‖φ‖₂`.
    pub fn cumulative_norm(&self) -> Result<f64> {
        let mut total = 0.0;
        for p in &self.pieces {
            total += match p {
                Piece::Step { matrix, len } => matrix.op_norm() * len,
                Piece::Density { f, start, end, .. } => {
                    integrate(|x| f(x).op_norm(), *start, *end)?
                }
            };
        }
        Ok(total)
    }

    /// The measure `k·φ`.
    pub fn scaled(&self, k: T) -> Self {
        let pieces = self
            .pieces
            .iter()
            .map(|p| match p {
                Piece::Step { matrix, len } => Piece::Step {
                    matrix: matrix.scale(k),
                    len: *len,
                },
                Piece::Density {
                    f,
                    start,
                    end,
                    samples,
                } => {
                    let f = f.clone();
                    Piece::Density {
                        f: Arc::new(move |x| f(x).scale(k)),
                        start: *start,
                        end: *end,
                        samples: *samples,
                    }
                }
            })
            .collect();
        PiecewiseMeasure { pieces }
    }

    pub fn to_complex(&self) -> PiecewiseMeasure<Complex64> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| match p {
                Piece::Step { matrix, len } => Piece::Step {
                    matrix: matrix.to_complex(),
                    len: *len,
                },
                Piece::Density {
                    f,
                    start,
                    end,
                    samples,
                } => {
                    let f = f.clone();
                    Piece::Density {
                        f: Arc::new(move |x| f(x).to_complex()),
                        start: *start,
                        end: *end,
                        samples: *samples,
                    }
                }
            })
            .collect();
        PiecewiseMeasure { pieces }
    }

    /// Restrictions to `[0, x]` and `[x, length]` of the concatenated
    /// parameter.
    pub fn split_at(&self, x: f64) -> Result<(Self, Self)> {
        if !(0.0..=self.length()).contains(&x) {
            return Err(Error::Domain(format!(
                "split point {x} outside the support"
            )));
        }
        let (mut head, mut tail) = (Vec::new(), Vec::new());
        let mut pos = 0.0;
        for p in &self.pieces {
            let len = p.len();
            if pos + len <= x {
                head.push(p.clone());
            } else if pos >= x {
                tail.push(p.clone());
            } else {
                let cut = x - pos;
                match p {
                    Piece::Step { matrix, .. } => {
                        head.push(Piece::Step {
                            matrix: *matrix,
                            len: cut,
                        });
                        tail.push(Piece::Step {
                            matrix: *matrix,
                            len: len - cut,
                        });
                    }
                    Piece::Density {
                        f,
                        start,
                        end,
                        samples,
                    } => {
                        head.push(Piece::Density {
                            f: f.clone(),
                            start: *start,
                            end: start + cut,
                            samples: *samples,
                        });
                        tail.push(Piece::Density {
                            f: f.clone(),
                            start: start + cut,
                            end: *end,
                            samples: *samples,
                        });
                    }
                }
            }
            pos += len;
        }
        Ok((
            PiecewiseMeasure { pieces: head },
            PiecewiseMeasure { pieces: tail },
        ))
    }
}

// Two-point Gauss–Legendre Magnus step on one cell: the midpoint average plus
// the commutator correction, fourth order in the cell width.
fn gauss_magnus_cell<T: Scalar>(f: &DensityFn<T>, a: f64, h: f64) -> Skew<T> {
    let off = 3f64.sqrt() / 6.0;
    let a1 = f(a + (0.5 - off) * h);
    let a2 = f(a + (0.5 + off) * h);
    let first = (a1 + a2).scale_re(0.5 * h);
    let second = a2.commutator(&a1).scale_re(3f64.sqrt() * h * h / 12.0);
    first + second
}

fn gauss_magnus_product<T: Scalar>(
    f: &DensityFn<T>,
    start: f64,
    end: f64,
    cells: usize,
) -> Skew<T> {
    let h = (end - start) / cells as f64;
    let mut out = Skew::identity();
    for i in 0..cells {
        out = exp2(&gauss_magnus_cell(f, start + h * i as f64, h)) * out;
    }
    out
}

fn lexp_density<T: Scalar>(
    f: &DensityFn<T>,
    start: f64,
    end: f64,
    samples: usize,
) -> Result<Skew<T>> {
    if end == start {
        return Ok(Skew::identity());
    }
    let mut cells = (samples - 1).max(1);
    let mut coarse = gauss_magnus_product(f, start, end, cells);
    let mut prev: Option<Skew<T>> = None;
    loop {
        cells *= 2;
        if cells > CELL_BUDGET {
            return Err(Error::NonConvergent(format!(
                "lexp on [{start}, {end}] exceeded {CELL_BUDGET} cells"
            )));
        }
        let fine = gauss_magnus_product(f, start, end, cells);
        // The symmetric scheme has an h⁴, h⁶, ... error expansion.
        let rich = fine + (fine - coarse).scale_re(1.0 / 15.0);
        if let Some(p) = prev {
            if rich.max_abs_diff(&p) <= LEXP_REL_TOL * rich.max_abs().max(f64::MIN_POSITIVE) {
                return Ok(rich);
            }
        }
        prev = Some(rich);
        coarse = fine;
    }
}

/// `Lexp(φ)`, with later pieces multiplied on the left.
pub fn lexp<T: Scalar>(phi: &PiecewiseMeasure<T>) -> Result<Skew<T>> {
    phi.validate()?;
    let mut out = Skew::identity();
    for p in &phi.pieces {
        let e = match p {
            Piece::Step { matrix, len } => exp2(&matrix.scale_re(*len)),
            Piece::Density {
                f,
                start,
                end,
                samples,
            } => lexp_density(f, *start, *end, *samples)?,
        };
        out = e * out;
    }
    Ok(out)
}

/// Plain product of midpoint cell exponentials, `cells` per density piece.
/// Second order; kept as an independent check on [`lexp`].
pub fn lexp_product<T: Scalar>(phi: &PiecewiseMeasure<T>, cells: usize) -> Result<Skew<T>> {
    phi.validate()?;
    let cells = cells.max(1);
    let mut out = Skew::identity();
    for p in &phi.pieces {
        match p {
            Piece::Step { matrix, len } => out = exp2(&matrix.scale_re(*len)) * out,
            Piece::Density { f, start, end, .. } => {
                let h = (end - start) / cells as f64;
                for i in 0..cells {
                    let mid = start + h * (i as f64 + 0.5);
                    out = exp2(&f(mid).scale_re(h)) * out;
                }
            }
        }
    }
    Ok(out)
}

// Contour points for the term extraction.
const CONTOUR_POINTS: usize = 32;
// Contour radius as a multiple of 1/∫‖φ‖; the series converges out to π.
const CONTOUR_RADIUS: f64 = 1.5;

/// The Magnus terms `μ₁, …, μ_k` of `φ`, i.e. the Taylor coefficients of
/// `τ ↦ log Lexp(τφ)` at `τ = 0`.
///
/// Coefficients are read off by a discrete Cauchy integral on the circle
/// `|τ| = 1.5/∫‖φ‖`, which stays inside the disk of convergence.
pub fn magnus_terms<T: Scalar>(phi: &PiecewiseMeasure<T>, k_max: usize) -> Result<Vec<Skew<T>>> {
    if k_max > 8 {
        return Err(Error::Domain(format!(
            "magnus_terms supports k <= 8, got {k_max}"
        )));
    }
    let total = phi.cumulative_norm()?;
    if total == 0.0 {
        return Ok(vec![Skew::zero(); k_max]);
    }
    let rho = CONTOUR_RADIUS / total;
    let base = phi.to_complex();
    let n = CONTOUR_POINTS;
    let mut logs = Vec::with_capacity(n);
    for j in 0..n {
        let w = Complex64::from_polar(rho, 2.0 * PI * j as f64 / n as f64);
        logs.push((w, log2(&lexp(&base.scaled(w))?)?));
    }
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut acc = Skew::<Complex64>::zero();
        for (w, l) in &logs {
            acc += l.scale(w.powi(-(k as i32)));
        }
        let mu = acc.scale_re(1.0 / n as f64);
        out.push(mu.map(T::from_c64));
    }
    Ok(out)
}
