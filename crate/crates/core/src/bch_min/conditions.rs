//! Stratum-wise necessary conditions for infinitesimal minimality, each
//! with the partner it forces.

use crate::error::{Error, Result};
use crate::m2::M2R;
use crate::schur_bch::{moment_mr, MomentVector};
use crate::tol::degeneracy_band;

/// A displayed inequality `lhs ≥ rhs` together with the forced partner.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartnerCondition {
    pub partner: M2R,
    pub lhs: f64,
    pub rhs: f64,
}

impl PartnerCondition {
    pub fn holds(&self) -> bool {
        self.lhs >= self.rhs
    }
}

// The regular-interior data of A: its right moment with a reflection part.
fn interior_moment(a: &M2R) -> Result<MomentVector> {
    let r = a.tc.hypot(a.td);
    let s = a.ta.hypot(a.tb);
    let band = degeneracy_band() * (r + s);
    if r <= band || s <= band || a.tb * a.tb - r * r >= std::f64::consts::PI.powi(2) {
        return Err(Error::WrongStratum(
            "partner conditions need aId + bI + cJ with a^2 + b^2 > 0, c > 0 and D_A < pi^2".into(),
        ));
    }
    moment_mr(a)
}

/// The only conform-rotation `B` of norm `n_partner` for which `(A, B)`
/// can be infinitesimally minimal, and the condition
/// `b̂N′/sin(b̂N′/ρ̂) ≥ √(c̆² + d̆²)` with `ρ̂ = √(â² + b̂²)`.
pub fn elliptic_partner(a: &M2R, n_partner: f64) -> Result<PartnerCondition> {
    let m = interior_moment(a)?;
    let rho = m.a_hat.hypot(m.b_hat);
    let partner = M2R::new(m.a_hat, m.b_hat, 0.0, 0.0).scale_re(n_partner / rho);
    let angle = m.b_hat * n_partner / rho;
    let lhs = if angle == 0.0 {
        rho
    } else {
        m.b_hat * n_partner / angle.sin()
    };
    Ok(PartnerCondition {
        partner,
        lhs,
        rhs: m.c_breve.hypot(m.d_breve),
    })
}

/// The only conform-reflection `B` of norm `n_partner` for which `(A, B)`
/// can be infinitesimally minimal, and the condition
/// `c̆² + d̆² ≥ â² + (S b̂)²(N′² + 1)/N′²` with `S = tanh N′`.
pub fn hyperbolic_partner(a: &M2R, n_partner: f64) -> Result<PartnerCondition> {
    if n_partner <= 0.0 {
        return Err(Error::Domain(
            "hyperbolic partner needs a positive norm".into(),
        ));
    }
    let m = interior_moment(a)?;
    let s = n_partner.tanh();
    let p = m.c_breve * m.c_breve + m.d_breve * m.d_breve;
    let sb = s * m.b_hat;
    let z2 = p - sb * sb;
    if z2 < 0.0 {
        return Err(Error::Domain(format!(
            "no hyperbolic partner of norm {n_partner}: c^2 + d^2 < (S b)^2"
        )));
    }
    // (Z - S b̂ Ĩ)(c̆ + d̆ Ĩ)/P as a complex number, then rotated by ψ.
    let (zr, zi) = (z2.sqrt(), -sb);
    let w = num_complex::Complex64::new(
        zr * m.c_breve - zi * m.d_breve,
        zr * m.d_breve + zi * m.c_breve,
    ) / p
        * num_complex::Complex64::from_polar(n_partner, m.psi);
    Ok(PartnerCondition {
        partner: M2R::new(0.0, 0.0, w.re, w.im),
        lhs: p,
        rhs: m.a_hat * m.a_hat + sb * sb * (n_partner * n_partner + 1.0) / (n_partner * n_partner),
    })
}

/// Data of the reflection-pair condition `tan(ψ/2) ≤ Q` for
/// `A₁ = c₁J̃ + d₁K̃`, `A₂ = c₂J̃ + d₂K̃`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReflectionPair {
    /// Angle between `(c₁, d₁)` and `(c₂, d₂)`, in `[0, π]`.
    pub psi: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// Direction improving both norms when the condition fails.
    pub witness: M2R,
    /// `(Q - tan(ψ/2)) sin ψ`, the common value of `MR_{A₁}(v)` and
    /// `ML_{A₂}(-v)` at the witness.
    pub predicted: f64,
}

impl ReflectionPair {
    pub fn holds(&self) -> bool {
        self.psi < std::f64::consts::PI && self.lhs <= self.rhs
    }
}

pub fn reflection_pair(a1: &M2R, a2: &M2R) -> Result<ReflectionPair> {
    let (n1, n2) = (a1.tc.hypot(a1.td), a2.tc.hypot(a2.td));
    let band = degeneracy_band();
    let off = |a: &M2R, n: f64| a.ta.hypot(a.tb) > band * n;
    if n1 == 0.0 || n2 == 0.0 || off(a1, n1) || off(a2, n2) {
        return Err(Error::WrongStratum(
            "reflection pair needs nonzero cJ + dK factors".into(),
        ));
    }
    let cross = a1.tc * a2.td - a1.td * a2.tc;
    let inner = a1.tc * a2.tc + a1.td * a2.td;
    let psi = cross.abs().atan2(inner);
    let (k1, k2) = (n1 / n1.tanh(), n2 / n2.tanh());
    let rhs = (1.0 / n1.tanh() + 1.0 / n2.tanh()) * n1 * n2 / (k1 + k2);
    let lhs = (psi / 2.0).tan();
    // Overall sign chosen so that ⟨A₁/N₁, v⟩ = cos ψ - 1 ≤ 0.
    let witness = a2.scale_re(1.0 / n2)
        - a1.scale_re(1.0 / n1)
        - a1.commutator(a2)
            .scale_re((n1 - n2) / (k1 + k2) / (2.0 * n1 * n2));
    Ok(ReflectionPair {
        psi,
        lhs,
        rhs,
        witness,
        predicted: (rhs - lhs) * psi.sin(),
    })
}
