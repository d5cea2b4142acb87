//! Necessary conditions for BCH minimality of real 2×2 pairs and the
//! critical balanced case `‖A‖₂, ‖B‖₂ ≤ π/2`.
//!
//! A pair `(A, B)` is infinitesimally minimal when no `v` makes both
//! `MR_A(v) = D_v‖log(exp A exp ·)‖₂` and `ML_B(-v)` negative.

mod conditions;
mod critical;
mod seh;

pub use conditions::{
    elliptic_partner, hyperbolic_partner, reflection_pair, PartnerCondition, ReflectionPair,
};
pub use critical::{
    cap_supremum, closure_r_max, discont_limsup, discont_search, ridge_crossover, ridge_maxima,
    sup_bch_norm_bound, wedge_cap, wedge_cap_params, wedge_cap_sweep, CapParams, CapPatch,
    CapSweep, CriticalPair, DiscontSearch, Sign, SupBound, WedgeCapPoint,
};
pub use seh::{
    indest_probe, level_point, se_jacobian, se_log_argument, se_map, se_mdist, se_partner,
    seh_image, sh_jacobian, sh_log_argument, sh_map, sh_mdist, sh_partner, sh_terms, IndestProbe,
    ShTerms,
};

use crate::error::{Error, Result};
use crate::m2::{norm_directional_derivative, M2C, M2R};
use crate::magnus::{Piece, PiecewiseMeasure};
use crate::schur_bch::{moment_ml, moment_mr, schur, Side};
use crate::tol::degeneracy_band;
use std::f64::consts::PI;
use std::fmt;

/// Strata of `M₂(ℝ)` in the blown-up coordinates `(s, r, θ)`, where
/// `a + ib = s e^{iθ}` and `r = √(c² + d²)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stratum {
    /// Non-normal interior.
    Nn,
    /// Self-adjoint pseudo-boundary.
    Par,
    /// Scalar matrices.
    Ell1,
    /// Conform-rotations that are not scalar.
    EllStar,
    /// Degenerate conform-rotations `±πĨ`.
    Dell0,
    DellStar,
    /// Non-normal with `D_A = π²`.
    Dnn0,
    DnnStar,
    /// Conform-reflections, split by the blow-up angle.
    Hyp1,
    HypStar,
    Zero,
    /// Conform-rotations with `D_A > π²`.
    EllExt,
    NnExt,
}

impl Stratum {
    pub const ALL: [Stratum; 13] = [
        Stratum::Nn,
        Stratum::Par,
        Stratum::Ell1,
        Stratum::EllStar,
        Stratum::Dell0,
        Stratum::DellStar,
        Stratum::Dnn0,
        Stratum::DnnStar,
        Stratum::Hyp1,
        Stratum::HypStar,
        Stratum::Zero,
        Stratum::EllExt,
        Stratum::NnExt,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Stratum::Nn => "nn",
            Stratum::Par => "par",
            Stratum::Ell1 => "ell1",
            Stratum::EllStar => "ell*",
            Stratum::Dell0 => "dell0",
            Stratum::DellStar => "dell*",
            Stratum::Dnn0 => "dnn0",
            Stratum::DnnStar => "dnn*",
            Stratum::Hyp1 => "hyp1",
            Stratum::HypStar => "hyp*",
            Stratum::Zero => "zero",
            Stratum::EllExt => "ellext",
            Stratum::NnExt => "nnext",
        }
    }

    /// Classifies a point of the blown-up domain. Exact case splits are taken
    /// within the library degeneracy band.
    pub fn classify(s: f64, r: f64, theta: f64) -> Stratum {
        let band = degeneracy_band();
        let scale = s + r;
        if scale == 0.0 {
            return Stratum::Zero;
        }
        let s_zero = s <= band * scale;
        let r_zero = r <= band * scale;
        let (sin_t, cos_t) = theta.sin_cos();
        let sin_zero = sin_t.abs() <= band;
        let cos_zero = cos_t.abs() <= band;
        if s_zero {
            return if sin_zero {
                Stratum::Hyp1
            } else {
                Stratum::HypStar
            };
        }
        let b = s * sin_t;
        let d = b * b - r * r;
        let crit = PI * PI;
        if (d - crit).abs() <= band * crit.max(scale * scale) {
            return match (r_zero, cos_zero) {
                (true, true) => Stratum::Dell0,
                (true, false) => Stratum::DellStar,
                (false, true) => Stratum::Dnn0,
                (false, false) => Stratum::DnnStar,
            };
        }
        if d > crit {
            return if r_zero {
                Stratum::EllExt
            } else {
                Stratum::NnExt
            };
        }
        match (r_zero, sin_zero) {
            (true, true) => Stratum::Ell1,
            (true, false) => Stratum::EllStar,
            (false, true) => Stratum::Par,
            (false, false) => Stratum::Nn,
        }
    }

    /// The stratum of a matrix; at `s = 0` the blow-up angle is taken as 0.
    pub fn of(a: &M2R) -> Stratum {
        Stratum::classify(a.ta.hypot(a.tb), a.tc.hypot(a.td), a.tb.atan2(a.ta))
    }

    /// Membership in `S^acc`, the strata worth exponentiating.
    pub fn is_accessible(self) -> bool {
        !matches!(
            self,
            Stratum::Dnn0 | Stratum::DnnStar | Stratum::EllExt | Stratum::NnExt
        )
    }

    /// Row of the incidence table, for strata of positive norm in `S^acc`.
    pub fn class(self) -> Option<StratumClass> {
        Some(match self {
            Stratum::Nn => StratumClass::Nn,
            Stratum::Par => StratumClass::Par,
            Stratum::EllStar => StratumClass::EllStar,
            Stratum::Ell1 => StratumClass::Ell1,
            Stratum::Dell0 | Stratum::DellStar => StratumClass::Dell,
            Stratum::Hyp1 | Stratum::HypStar => StratumClass::Hyp,
            _ => return None,
        })
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The coarser classes used by the incidence table of minimal pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StratumClass {
    Nn,
    Par,
    EllStar,
    Ell1,
    Dell,
    Hyp,
}

impl StratumClass {
    pub const ALL: [StratumClass; 6] = [
        StratumClass::Nn,
        StratumClass::Par,
        StratumClass::EllStar,
        StratumClass::Ell1,
        StratumClass::Dell,
        StratumClass::Hyp,
    ];

    fn index(self) -> usize {
        self as usize
    }
}

const INCIDENCE: [[bool; 6]; 6] = [
    [false, false, true, false, false, true],
    [false, true, false, true, false, true],
    [true, false, true, false, false, true],
    [false, true, false, true, false, true],
    [false, false, false, false, false, true],
    [true, true, true, true, true, true],
];

const FACTOR_DIM: [[Option<u8>; 6]; 6] = [
    [None, None, Some(2), None, None, Some(2)],
    [None, Some(1), None, Some(1), None, Some(1)],
    [Some(2), None, Some(1), None, None, Some(1)],
    [None, Some(1), None, Some(0), None, Some(0)],
    [None, None, None, None, None, Some(0)],
    [Some(2), Some(1), Some(1), Some(0), Some(0), Some(1)],
];

/// Whether a minimal pair with factors in classes `(a, b)` may exist.
pub fn incidence(a: StratumClass, b: StratumClass) -> bool {
    INCIDENCE[a.index()][b.index()]
}

/// Factor dimension of the minimal pairs of fixed norms in `(a, b)`, where
/// such pairs exist.
pub fn factor_dimension(a: StratumClass, b: StratumClass) -> Option<u8> {
    FACTOR_DIM[a.index()][b.index()]
}

/// `MR_A(v)`, the one-sided derivative of `‖log(exp A exp tv)‖₂` at `t = 0⁺`.
pub fn moment_form_right(a: &M2R, v: &M2R) -> Result<f64> {
    norm_directional_derivative(a, &schur(a, v, Side::Right)?)
}

/// `ML_B(v)`, the one-sided derivative of `‖log(exp tv exp B)‖₂` at `t = 0⁺`.
pub fn moment_form_left(b: &M2R, v: &M2R) -> Result<f64> {
    norm_directional_derivative(b, &schur(b, v, Side::Left)?)
}

/// A direction `v = t₁U₁ + … + t₄U₄` with `α(v) < 0` and `β(-v) < 0`, where
/// `α(v) = t₁ + √(t₃² + t₄²)` and `β` is linear.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConeWitness {
    /// Which of the four constructions produced `v`, numbered from 1.
    pub branch: u8,
    pub v: [f64; 4],
}

/// `α(v) = t₁ + √(t₃² + t₄²)`.
pub fn cone_alpha(v: &[f64; 4]) -> f64 {
    v[0] + v[2].hypot(v[3])
}

/// Finds `v` with `α(v) < 0` and `β(-v) < 0`. Returns `None` exactly when
/// `β₂ = 0` and `β₁ ≥ √(β₃² + β₄²)`; the comparisons are exact.
pub fn cone_dual_feasible(beta: [f64; 4]) -> Option<ConeWitness> {
    let [b1, b2, b3, b4] = beta;
    let rho = b3.hypot(b4);
    let (branch, v) = if b2 != 0.0 {
        (1, [-1.0, (b1 + 1.0) / b2, 0.0, 0.0])
    } else if b1 < 0.0 {
        (2, [-1.0, 0.0, 0.0, 0.0])
    } else if b1 == 0.0 && rho > 0.0 {
        (3, [-2.0, 0.0, b3 / rho, b4 / rho])
    } else if b1 > 0.0 && b1 < rho {
        (4, [-(b1 + rho) / (2.0 * b1), 0.0, b3 / rho, b4 / rho])
    } else {
        return None;
    };
    Some(ConeWitness { branch, v })
}

/// Outcome of the infinitesimal minimality test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PairVerdict {
    /// No improving direction exists (within the test tolerance).
    Minimal,
    /// `MR_A(v) < 0` and `ML_B(-v) < 0` for this `v`.
    Witness(M2R),
}

impl PairVerdict {
    pub fn is_minimal(&self) -> bool {
        matches!(self, PairVerdict::Minimal)
    }
}

/// Tolerance of the proportionality and separation tests.
pub const MINIMALITY_TOL: f64 = 1e-8;

const SEPARATION_ITERATIONS: usize = 20_000;

type V4 = [f64; 4];

fn dot(x: &V4, y: &V4) -> f64 {
    x.iter().zip(y).map(|(p, q)| p * q).sum()
}

fn norm4(x: &V4) -> f64 {
    dot(x, x).sqrt()
}

fn unit(a: &M2R) -> M2R {
    a.scale_re(1.0 / a.coords().iter().map(|x| x * x).sum::<f64>().sqrt())
}

// One factor of the norm subdifferential: a fixed unit vector (the norm is
// smooth in that plane) or the closed unit disk.
#[derive(Clone, Copy, Debug)]
enum Block {
    Point([f64; 2]),
    Disk,
}

impl Block {
    fn of(x: f64, y: f64, scale: f64) -> Block {
        let h = x.hypot(y);
        if h <= degeneracy_band() * scale {
            Block::Disk
        } else {
            Block::Point([x / h, y / h])
        }
    }

    // argmin over the block of ⟨·, (x, y)⟩.
    fn argmin(&self, x: f64, y: f64) -> [f64; 2] {
        match self {
            Block::Point(p) => *p,
            Block::Disk => {
                let h = x.hypot(y);
                if h == 0.0 {
                    [0.0, 0.0]
                } else {
                    [-x / h, -y / h]
                }
            }
        }
    }
}

// The subdifferential at 0 of v ↦ ±D_{±L v}‖·‖₂ at A: the image of
// (rotation block) × (reflection block) under the transposed linear map.
struct Subdifferential {
    // Row k holds the coordinates of L e_k, already signed.
    rows: [V4; 4],
    rot: Block,
    refl: Block,
}

impl Subdifferential {
    fn new(a: &M2R, side: Side, sign: f64) -> Result<Self> {
        let basis = [M2R::identity(), M2R::unit_i(), M2R::unit_j(), M2R::unit_k()];
        let mut rows = [[0.0; 4]; 4];
        for (k, e) in basis.iter().enumerate() {
            let c = schur(a, e, side)?.coords();
            rows[k] = [sign * c[0], sign * c[1], sign * c[2], sign * c[3]];
        }
        let scale = a.op_norm();
        Ok(Subdifferential {
            rows,
            rot: Block::of(a.ta, a.tb, scale),
            refl: Block::of(a.tc, a.td, scale),
        })
    }

    // L d in skew coordinates.
    fn apply(&self, d: &V4) -> V4 {
        let mut out = [0.0; 4];
        for (k, row) in self.rows.iter().enumerate() {
            for j in 0..4 {
                out[j] += row[j] * d[k];
            }
        }
        out
    }

    // Lᵀ x.
    fn apply_t(&self, x: &V4) -> V4 {
        let mut out = [0.0; 4];
        for (k, row) in self.rows.iter().enumerate() {
            out[k] = dot(row, x);
        }
        out
    }

    // argmin over the subdifferential of ⟨·, d⟩.
    fn support(&self, d: &V4) -> V4 {
        let ld = self.apply(d);
        let u = self.rot.argmin(ld[0], ld[1]);
        let s = self.refl.argmin(ld[2], ld[3]);
        self.apply_t(&[u[0], u[1], s[0], s[1]])
    }
}

fn from_v4(v: &V4) -> M2R {
    M2R::new(v[0], v[1], v[2], v[3])
}

/// Decides infinitesimal minimality of `(A, B)`.
///
/// Smooth pairs reduce to positive proportionality of `MR(A)` and `ML(B)`.
/// Otherwise both forms are sublinear and an improving `v` exists exactly
/// when the origin is outside the convex hull of their subdifferentials;
/// the minimum-norm point of that hull is found by Wolfe's algorithm and
/// its negative is the witness.
pub fn infinitesimal_verdict(a: &M2R, b: &M2R) -> Result<PairVerdict> {
    let (sa, sb) = (Stratum::of(a), Stratum::of(b));
    for s in [sa, sb] {
        if matches!(
            s,
            Stratum::Dell0
                | Stratum::DellStar
                | Stratum::Dnn0
                | Stratum::DnnStar
                | Stratum::EllExt
                | Stratum::NnExt
        ) {
            return Err(Error::WrongStratum(format!(
                "moment forms are not defined on stratum {s}"
            )));
        }
    }
    if sa == Stratum::Zero || sb == Stratum::Zero {
        return Ok(PairVerdict::Minimal);
    }
    let smooth = |s| matches!(s, Stratum::Nn | Stratum::Par);
    if smooth(sa) && smooth(sb) {
        let m = unit(&moment_mr(a)?.matrix());
        let l = unit(&moment_ml(b)?.matrix());
        return Ok(if (m - l).max_abs() <= MINIMALITY_TOL {
            PairVerdict::Minimal
        } else {
            PairVerdict::Witness(l - m)
        });
    }
    let f = Subdifferential::new(a, Side::Right, 1.0)?;
    let g = Subdifferential::new(b, Side::Left, -1.0)?;
    let support = |d: &V4| {
        let (p, q) = (f.support(d), g.support(d));
        if dot(&p, d) <= dot(&q, d) {
            p
        } else {
            q
        }
    };
    let mut hull = MinNormHull::new(support(&[1.0, 0.0, 0.0, 0.0]));
    for _ in 0..SEPARATION_ITERATIONS {
        let z = hull.point;
        let zn = norm4(&z);
        if zn <= MINIMALITY_TOL {
            return Ok(PairVerdict::Minimal);
        }
        let s = support(&z);
        if dot(&s, &z) > MINIMALITY_TOL * zn {
            let v = [-z[0] / zn, -z[1] / zn, -z[2] / zn, -z[3] / zn];
            return Ok(PairVerdict::Witness(from_v4(&v)));
        }
        if !hull.insert(s) {
            break;
        }
    }
    // The hull comes within the tolerance band of the origin without
    // containing a separating direction of margin: treat as minimal.
    let zn = norm4(&hull.point);
    if zn <= 1e3 * MINIMALITY_TOL {
        return Ok(PairVerdict::Minimal);
    }
    Err(Error::NonConvergent(format!(
        "separation test for ({a:?}, {b:?}) stalled at distance {zn:e}"
    )))
}

// Active set of Wolfe's minimum-norm-point method: atoms with positive
// barycentric weights whose combination is the current point.
struct MinNormHull {
    atoms: Vec<V4>,
    weights: Vec<f64>,
    point: V4,
}

impl MinNormHull {
    fn new(first: V4) -> Self {
        MinNormHull {
            atoms: vec![first],
            weights: vec![1.0],
            point: first,
        }
    }

    // Adds a support point and runs the minor cycles. Returns false when the
    // point did not move, i.e. the atom was already in the affine hull.
    fn insert(&mut self, s: V4) -> bool {
        let before = self.point;
        self.atoms.push(s);
        self.weights.push(0.0);
        loop {
            let Some(w) = affine_min_norm(&self.atoms) else {
                // Degenerate system: drop the new atom and stop.
                self.atoms.pop();
                self.weights.pop();
                return false;
            };
            if w.iter().all(|&x| x > 0.0) {
                self.weights = w;
                break;
            }
            // Move from the current weights towards w until one hits zero.
            let mut theta = 1.0f64;
            for (l, x) in self.weights.iter().zip(&w) {
                if *x <= 0.0 && l - x > 0.0 {
                    theta = theta.min(l / (l - x));
                }
            }
            for (l, x) in self.weights.iter_mut().zip(&w) {
                *l += theta * (x - *l);
            }
            let mut k = 0;
            while k < self.atoms.len() {
                if self.weights[k] <= 1e-15 {
                    self.atoms.remove(k);
                    self.weights.remove(k);
                } else {
                    k += 1;
                }
            }
            let total: f64 = self.weights.iter().sum();
            self.weights.iter_mut().for_each(|l| *l /= total);
        }
        let mut z = [0.0; 4];
        for (atom, l) in self.atoms.iter().zip(&self.weights) {
            for j in 0..4 {
                z[j] += l * atom[j];
            }
        }
        self.point = z;
        dot(&z, &z) < dot(&before, &before)
    }
}

// Weights summing to one that minimize |Σ wᵢ aᵢ|, from the KKT system
// [G 1; 1ᵀ 0] with a tiny ridge on the Gram matrix G.
fn affine_min_norm(atoms: &[V4]) -> Option<Vec<f64>> {
    let m = atoms.len();
    let n = m + 1;
    let mut sys = vec![vec![0.0; n + 1]; n];
    let trace: f64 = atoms.iter().map(|a| dot(a, a)).sum();
    for i in 0..m {
        for j in 0..m {
            sys[i][j] = dot(&atoms[i], &atoms[j]);
        }
        sys[i][i] += 1e-13 * trace.max(1e-300);
        sys[i][m] = 1.0;
        sys[m][i] = 1.0;
    }
    sys[m][n] = 1.0;
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| sys[x][col].abs().total_cmp(&sys[y][col].abs()))?;
        if sys[piv][col].abs() < 1e-300 {
            return None;
        }
        sys.swap(col, piv);
        let pivot_row = sys[col].clone();
        for (row, eq) in sys.iter_mut().enumerate() {
            if row != col {
                let f = eq[col] / pivot_row[col];
                for (x, p) in eq[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= f * p;
                }
            }
        }
    }
    let w: Vec<f64> = (0..m).map(|i| sys[i][n] / sys[i][i]).collect();
    w.iter().all(|x| x.is_finite()).then_some(w)
}

/// Relative position of two normal matrices of positive norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alignment {
    /// Norm-additive and commuting.
    Aligned,
    /// Norm-additive and non-commuting.
    SkewAligned,
    Neither,
}

const ALIGNMENT_BAND: f64 = 1e-10;

fn is_normal(a: &M2C) -> bool {
    let n = a.op_norm();
    a.commutator(&a.adjoint()).op_norm() <= ALIGNMENT_BAND * n * n
}

/// Classifies a pair of nonzero normal matrices by norm additivity.
pub fn alignment(a: &M2C, b: &M2C) -> Result<Alignment> {
    if a.op_norm() == 0.0 || b.op_norm() == 0.0 {
        return Err(Error::Domain("alignment needs nonzero matrices".into()));
    }
    if !is_normal(a) || !is_normal(b) {
        return Err(Error::NonNormal);
    }
    let (na, nb) = (a.op_norm(), b.op_norm());
    if (*a + *b).op_norm() < na + nb - ALIGNMENT_BAND * (na + nb).max(1.0) {
        return Ok(Alignment::Neither);
    }
    if a.commutator(b).op_norm() <= ALIGNMENT_BAND * na * nb {
        Ok(Alignment::Aligned)
    } else {
        Ok(Alignment::SkewAligned)
    }
}

/// Shape of a mass-normalized mBCH measure that survives the necessary
/// conditions for Magnus minimality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinimalShape {
    /// Orthogonally a direct sum with a constant `±1` summand.
    Hyperbolic,
    /// A single constant orthogonal matrix.
    Elliptic,
}

/// Necessary-condition report for Magnus minimality of an mBCH measure.
#[derive(Clone, Debug, PartialEq)]
pub struct MbchReport {
    /// Normalized steps after merging repeats, in time order.
    pub steps: Vec<(M2R, f64)>,
    /// Indices of non-normal steps.
    pub non_normal: Vec<usize>,
    /// `i` such that steps `i` and `i + 1` are not norm-additive.
    pub contracting: Vec<usize>,
    /// `i` such that steps `i` and `i + 1` are skew-aligned.
    pub skew_aligned: Vec<usize>,
    pub shape: Option<MinimalShape>,
}

impl MbchReport {
    /// No flag raised and the survivor has one of the two minimal shapes.
    pub fn passes(&self) -> bool {
        self.non_normal.is_empty()
            && self.contracting.is_empty()
            && self.skew_aligned.is_empty()
            && self.shape.is_some()
    }
}

fn near(a: &M2R, b: &M2R) -> bool {
    (*a - *b).max_abs() <= ALIGNMENT_BAND
}

fn eigen_line(a: &M2R, e: [f64; 2], sigma: f64) -> bool {
    let m = a.entries();
    let img = [
        m[0][0] * e[0] + m[0][1] * e[1],
        m[1][0] * e[0] + m[1][1] * e[1],
    ];
    (img[0] - sigma * e[0]).abs() <= ALIGNMENT_BAND
        && (img[1] - sigma * e[1]).abs() <= ALIGNMENT_BAND
}

fn minimal_shape(steps: &[(M2R, f64)]) -> Option<MinimalShape> {
    let first = steps.first()?.0;
    let orthogonal = near(&(first.adjoint() * first), &M2R::identity());
    if orthogonal && steps.iter().all(|(m, _)| near(m, &first)) {
        return Some(MinimalShape::Elliptic);
    }
    // Candidate common eigenvectors come from the first non-scalar step.
    let pivot = steps
        .iter()
        .map(|(m, _)| *m)
        .find(|m| m.tb.abs() + m.tc.abs() + m.td.abs() > ALIGNMENT_BAND);
    let candidates: Vec<[f64; 2]> = match pivot {
        None => vec![[1.0, 0.0]],
        Some(p) => {
            let half = 0.5 * p.td.atan2(p.tc);
            let (s, c) = half.sin_cos();
            vec![[c, s], [-s, c]]
        }
    };
    for e in candidates {
        for sigma in [1.0, -1.0] {
            if steps.iter().all(|(m, _)| eigen_line(m, e, sigma)) {
                return Some(MinimalShape::Hyperbolic);
            }
        }
    }
    None
}

/// Runs the non-normal, contraction and skew-alignment tests on an mBCH
/// measure and matches the survivor against the two minimal shapes.
pub fn mbch_min_necessary(phi: &PiecewiseMeasure<f64>) -> Result<MbchReport> {
    let mut steps: Vec<(M2R, f64)> = Vec::new();
    for p in phi.pieces() {
        let Piece::Step { matrix, len } = p else {
            return Err(Error::Domain("mBCH measures are piecewise constant".into()));
        };
        let n = matrix.op_norm();
        if n == 0.0 || *len == 0.0 {
            continue;
        }
        let m = matrix.scale_re(1.0 / n);
        match steps.last_mut() {
            Some((prev, l)) if near(prev, &m) => *l += len * n,
            _ => steps.push((m, len * n)),
        }
    }
    let mut report = MbchReport {
        steps: steps.clone(),
        non_normal: Vec::new(),
        contracting: Vec::new(),
        skew_aligned: Vec::new(),
        shape: None,
    };
    for (i, (m, _)) in steps.iter().enumerate() {
        if !is_normal(&m.to_complex()) {
            report.non_normal.push(i);
        }
    }
    for i in 0..steps.len().saturating_sub(1) {
        let (a, b) = (steps[i].0, steps[i + 1].0);
        if (a + b).op_norm() < 2.0 - ALIGNMENT_BAND {
            report.contracting.push(i);
        } else if report.non_normal.binary_search(&i).is_err()
            && report.non_normal.binary_search(&(i + 1)).is_err()
            && alignment(&a.to_complex(), &b.to_complex())? == Alignment::SkewAligned
        {
            report.skew_aligned.push(i);
        }
    }
    report.shape = minimal_shape(&steps);
    Ok(report)
}
