//! Normal form of commutator words in two symbols `A`, `v`.
//!
//! Every pure commutator word reduces to a combination of
//! `B1 = [A,v]`, `B2 = [A,[A,v]]`, `B3 = [v,[v,A]]` with integer polynomial
//! coefficients in `(D_A, T_{A,v}, D_v)`.

use super::Skew;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Integer polynomial in `(D_A, T_{A,v}, D_v)`, keyed by exponent triples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BracketPoly(pub BTreeMap<(u32, u32, u32), i64>);

impl BracketPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coef: i64, e: (u32, u32, u32)) -> Self {
        let mut p = Self::zero();
        if coef != 0 {
            p.0.insert(e, coef);
        }
        p
    }

    pub fn one() -> Self {
        Self::monomial(1, (0, 0, 0))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&e, &c) in &o.0 {
            let v = out.0.entry(e).or_insert(0);
            *v += c;
            if *v == 0 {
                out.0.remove(&e);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        BracketPoly(self.0.iter().map(|(&e, &c)| (e, -c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a1, b1, c1), &x) in &self.0 {
            for (&(a2, b2, c2), &y) in &o.0 {
                out = out.add(&Self::monomial(x * y, (a1 + a2, b1 + b2, c1 + c2)));
            }
        }
        out
    }

    pub fn eval<T: Scalar>(&self, d_a: T, t_av: T, d_v: T) -> T {
        self.0.iter().fold(T::zero(), |acc, (&(i, j, k), &c)| {
            acc + T::from_re(c as f64)
                * d_a.powi(i as i32)
                * t_av.powi(j as i32)
                * d_v.powi(k as i32)
        })
    }
}

impl fmt::Display for BracketPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j, k), &c) in &self.0 {
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            write!(f, "{sign}")?;
            let mag = c.abs();
            let mut factors = Vec::new();
            for (name, p) in [("D_A", i), ("T", j), ("D_v", k)] {
                match p {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{p}")),
                }
            }
            if factors.is_empty() || mag != 1 {
                write!(f, "{mag}")?;
                if !factors.is_empty() {
                    write!(f, "*")?;
                }
            }
            write!(f, "{}", factors.join("*"))?;
            first = false;
        }
        Ok(())
    }
}

/// Coefficients over `([A,v], [A,[A,v]], [v,[v,A]])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub b1: BracketPoly,
    pub b2: BracketPoly,
    pub b3: BracketPoly,
}

impl Reduced {
    /// Evaluates the combination at a concrete pair.
    pub fn evaluate<T: Scalar>(&self, a: &Skew<T>, v: &Skew<T>) -> Skew<T> {
        let (da, t, dv) = (a.disc(), a.pair(v), v.disc());
        let b1 = a.commutator(v);
        let b2 = a.commutator(&b1);
        let b3 = v.commutator(&v.commutator(a));
        b1.scale(self.b1.eval(da, t, dv))
            + b2.scale(self.b2.eval(da, t, dv))
            + b3.scale(self.b3.eval(da, t, dv))
    }
}

impl fmt::Display for Reduced {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})·[A,v] + ({})·[A,[A,v]] + ({})·[v,[v,A]]",
            self.b1, self.b2, self.b3
        )
    }
}

// Coordinates over (A, v, B1, B2, B3).
type Lin = [BracketPoly; 5];

fn basis(i: usize) -> Lin {
    let mut l: Lin = Default::default();
    l[i] = BracketPoly::one();
    l
}

fn delta() -> BracketPoly {
    BracketPoly::monomial(1, (1, 0, 1)).add(&BracketPoly::monomial(-1, (0, 2, 0)))
}

// [e_i, e_j] for i < j.
fn table(i: usize, j: usize) -> Lin {
    let da = || BracketPoly::monomial(1, (1, 0, 0));
    let t = || BracketPoly::monomial(1, (0, 1, 0));
    let dv = || BracketPoly::monomial(1, (0, 0, 1));
    let k = |c: i64, p: BracketPoly| p.mul(&BracketPoly::monomial(c, (0, 0, 0)));
    let mut out: Lin = Default::default();
    match (i, j) {
        (0, 1) => out[2] = BracketPoly::one(),
        (0, 2) => out[3] = BracketPoly::one(),
        (0, 3) => out[2] = k(-4, da()),
        (0, 4) => out[2] = k(-4, t()),
        (1, 2) => out[4] = BracketPoly::monomial(-1, (0, 0, 0)),
        (1, 3) => out[2] = k(4, t()),
        (1, 4) => out[2] = k(4, dv()),
        (2, 3) => {
            out[3] = k(4, t());
            out[4] = k(-4, da());
        }
        (2, 4) => {
            out[3] = k(4, dv());
            out[4] = k(-4, t());
        }
        (3, 4) => out[2] = k(-16, delta()),
        _ => unreachable!(),
    }
    out
}

#[allow(clippy::needless_range_loop)]
fn bracket(x: &Lin, y: &Lin) -> Lin {
    let mut out: Lin = Default::default();
    for i in 0..5 {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..5 {
            if i == j || y[j].is_zero() {
                continue;
            }
            let (lo, hi, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
            let coef = x[i].mul(&y[j]).mul(&BracketPoly::monomial(sign, (0, 0, 0)));
            for (k, e) in table(lo, hi).iter().enumerate() {
                if !e.is_zero() {
                    out[k] = out[k].add(&coef.mul(e));
                }
            }
        }
    }
    out
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Malformed(format!("{what} at byte {}", self.pos))
    }

    fn word(&mut self) -> Result<Lin> {
        self.skip_ws();
        match self.s.get(self.pos) {
            Some(b'A') => {
                self.pos += 1;
                Ok(basis(0))
            }
            Some(b'v') => {
                self.pos += 1;
                Ok(basis(1))
            }
            Some(b'[') => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(b',')?;
                let y = self.word()?;
                self.expect(b']')?;
                Ok(bracket(&x, &y))
            }
            _ => Err(self.err("expected 'A', 'v' or '['")),
        }
    }
}

/// Reduces a nested bracket word such as `[A,[v,[A,v]]]` to normal form.
pub fn commutator_reduce(word: &str) -> Result<Reduced> {
    let mut p = Parser {
        s: word.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.s.get(p.pos) != Some(&b'[') {
        return Err(Error::Malformed(
            "a pure commutator word must start with '['".into(),
        ));
    }
    let lin = p.word()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    let [_, _, b1, b2, b3] = lin;
    Ok(Reduced { b1, b2, b3 })
}
