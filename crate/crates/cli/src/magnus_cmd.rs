use crate::error::CliResult;
use crate::matrix::{sig15, Basis, MatrixSpec};
use clap::ValueEnum;
use magnus2::magnus::{
    classify_magnus, complex_magnus_candidate, magnus_exponent, magnus_exponent_lifted,
    normal_form, Piece, PiecewiseMeasure,
};
use magnus2::M2R;
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MagnusSub {
    Exponent,
    Classify,
    NormalForm,
}

fn layout(name: &str, phi: &PiecewiseMeasure<f64>, out: &mut String) {
    let _ = writeln!(out, "{name}:");
    for piece in phi.pieces() {
        let _ = match piece {
            Piece::Step { matrix, len } => writeln!(
                out,
                "  step length {} density {}",
                sig15(*len),
                MatrixSpec::from_real(matrix, Basis::Skew).report()
            ),
            Piece::Density { f, start, end, .. } => writeln!(
                out,
                "  density on [{}, {}] from {} to {}",
                sig15(*start),
                sig15(*end),
                MatrixSpec::from_real(&f(*start), Basis::Skew).report(),
                MatrixSpec::from_real(&f(*end), Basis::Skew).report()
            ),
        };
    }
}

/// Report text for one `magnus` subcommand.
pub fn magnus(sub: MagnusSub, a: &M2R, lifted: bool) -> CliResult<String> {
    let mut out = String::new();
    match sub {
        MagnusSub::Exponent if lifted => {
            let l = magnus_exponent_lifted(a)?;
            let _ = writeln!(out, "exponent {}", sig15(l.value));
            let _ = writeln!(out, "sheet {}", l.sheet);
            let _ = writeln!(
                out,
                "complex-candidate {}",
                sig15(complex_magnus_candidate(a)?)
            );
        }
        MagnusSub::Exponent => {
            let _ = writeln!(out, "exponent {}", sig15(magnus_exponent(a)?));
        }
        MagnusSub::Classify => {
            let _ = writeln!(out, "exponent {}", sig15(magnus_exponent(a)?));
            let _ = writeln!(out, "class {}", classify_magnus(a)?);
        }
        MagnusSub::NormalForm => {
            let nf = normal_form(a)?;
            let _ = writeln!(out, "exponent {}", sig15(nf.exponent()));
            let _ = writeln!(out, "class {}", classify_magnus(a)?);
            let _ = writeln!(
                out,
                "normal-form p1 {} p2 {} t {} beta {}",
                sig15(nf.p1),
                sig15(nf.p2),
                sig15(nf.t),
                sig15(nf.beta)
            );
            if nf.hyperbolic_degenerate {
                let _ = writeln!(out, "note t and pi - t give the same matrix");
            }
            layout("noruni", &nf.noruni()?, &mut out);
            layout("norleft", &nf.norleft()?, &mut out);
            layout("norright", &nf.norright()?, &mut out);
        }
    }
    Ok(out)
}
