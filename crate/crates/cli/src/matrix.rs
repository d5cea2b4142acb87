//! Matrix input and output: `a,b,c,d` in the skew or entry basis, with
//! `re:im` components for complex matrices.

use crate::error::{CliError, CliResult};
use clap::ValueEnum;
use magnus2::{Skew, M2C, M2R};
use num_complex::Complex64;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    /// Coordinates over Id, Ĩ, J̃, K̃.
    Skew,
    /// Row-major entries m11, m12, m21, m22.
    Entry,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Coeffs {
    Real([f64; 4]),
    Complex([Complex64; 4]),
}

/// A matrix as typed on the command line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatrixSpec {
    pub basis: Basis,
    pub coeffs: Coeffs,
}

fn parse_real(s: &str) -> CliResult<f64> {
    let x: f64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::Parse(format!("not a number: {s:?}")))?;
    if !x.is_finite() {
        return Err(CliError::Parse(format!("not a finite number: {s:?}")));
    }
    Ok(x)
}

fn parse_component(s: &str) -> CliResult<Complex64> {
    match s.split_once(':') {
        Some((re, im)) => Ok(Complex64::new(parse_real(re)?, parse_real(im)?)),
        None => Ok(Complex64::new(parse_real(s)?, 0.0)),
    }
}

impl MatrixSpec {
    pub fn parse(text: &str, basis: Basis, complex: bool) -> CliResult<Self> {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != 4 {
            return Err(CliError::Parse(format!(
                "expected four comma-separated components, got {text:?}"
            )));
        }
        let coeffs = if complex {
            let mut c = [Complex64::new(0.0, 0.0); 4];
            for (k, p) in parts.iter().enumerate() {
                c[k] = parse_component(p)?;
            }
            Coeffs::Complex(c)
        } else {
            let mut c = [0.0; 4];
            for (k, p) in parts.iter().enumerate() {
                if p.contains(':') {
                    return Err(CliError::Parse(format!(
                        "complex component {p:?} needs --complex"
                    )));
                }
                c[k] = parse_real(p)?;
            }
            Coeffs::Real(c)
        };
        Ok(MatrixSpec { basis, coeffs })
    }

    pub fn is_complex(&self) -> bool {
        matches!(self.coeffs, Coeffs::Complex(_))
    }

    fn build<T: magnus2::Scalar>(basis: Basis, c: [T; 4]) -> Skew<T> {
        match basis {
            Basis::Skew => Skew::new(c[0], c[1], c[2], c[3]),
            Basis::Entry => Skew::from_entries(c[0], c[1], c[2], c[3]),
        }
    }

    pub fn real(&self) -> CliResult<M2R> {
        match self.coeffs {
            Coeffs::Real(c) => Ok(Self::build(self.basis, c)),
            Coeffs::Complex(_) => Err(CliError::Parse("this command takes a real matrix".into())),
        }
    }

    pub fn complex(&self) -> M2C {
        match self.coeffs {
            Coeffs::Real(c) => Self::build(self.basis, c.map(|x| Complex64::new(x, 0.0))),
            Coeffs::Complex(c) => Self::build(self.basis, c),
        }
    }

    fn coords<T: magnus2::Scalar>(a: &Skew<T>, basis: Basis) -> [T; 4] {
        match basis {
            Basis::Skew => a.coords(),
            Basis::Entry => {
                let e = a.entries();
                [e[0][0], e[0][1], e[1][0], e[1][1]]
            }
        }
    }

    pub fn from_real(a: &M2R, basis: Basis) -> Self {
        MatrixSpec {
            basis,
            coeffs: Coeffs::Real(Self::coords(a, basis)),
        }
    }

    pub fn from_complex(a: &M2C, basis: Basis) -> Self {
        MatrixSpec {
            basis,
            coeffs: Coeffs::Complex(Self::coords(a, basis)),
        }
    }

    /// Components with 15 significant digits, for reports.
    pub fn report(&self) -> String {
        match self.coeffs {
            Coeffs::Real(c) => c.map(sig15).join(","),
            Coeffs::Complex(c) => c
                .map(|z| format!("{}:{}", sig15(z.re), sig15(z.im)))
                .join(","),
        }
    }
}

/// Shortest round-trip components; `parse` reads this back exactly.
impl fmt::Display for MatrixSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self.coeffs {
            Coeffs::Real(c) => c.map(|x| x.to_string()).join(","),
            Coeffs::Complex(c) => c.map(|z| format!("{}:{}", z.re, z.im)).join(","),
        };
        f.write_str(&text)
    }
}

/// `x` with 15 significant digits, positional for moderate exponents.
pub fn sig15(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        format!("{:.*}", (14 - exp).max(0) as usize, x)
    } else {
        format!("{x:.14e}")
    }
}
