use clap::{Args, Parser, Subcommand};
use magnus2::geometry::Model;
use magnus2_cli::error::{CliError, CliResult};
use magnus2_cli::eval::{eval, EvalOp};
use magnus2_cli::magnus_cmd::{magnus, MagnusSub};
use magnus2_cli::matrix::{Basis, MatrixSpec};
use magnus2_cli::sweep::{sweep, write_csv, SweepParams, SweepTarget};
use magnus2_cli::verify::{run, Suite};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// Closed-form calculus for 2×2 matrices: exp/log, norms, BCH and Magnus
/// exponents.
#[derive(Parser, Debug)]
#[command(name = "magnus2", version)]
struct Cli {
    /// Relative band used for exact case splits (default 1e-10).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate exp, log, norm, conorm or bch.
    Eval(EvalArgs),
    /// Magnus exponent, class and normal form of a real matrix.
    Magnus(MagnusArgs),
    /// Write a parameter sweep as CSV.
    Sweep(SweepArgs),
    /// Run the self-checks.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct MatrixFlags {
    /// Basis of the input components.
    #[arg(long, value_enum, default_value = "skew")]
    basis: Basis,
    /// Shorthand for --basis skew.
    #[arg(long, conflicts_with = "entry")]
    skew: bool,
    /// Shorthand for --basis entry.
    #[arg(long)]
    entry: bool,
    /// Components are re:im pairs.
    #[arg(long)]
    complex: bool,
}

impl MatrixFlags {
    fn basis(&self) -> Basis {
        if self.skew {
            Basis::Skew
        } else if self.entry {
            Basis::Entry
        } else {
            self.basis
        }
    }
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(value_enum)]
    op: EvalOp,
    /// Matrices as a,b,c,d.
    #[arg(required = true, allow_hyphen_values = true)]
    matrices: Vec<String>,
    #[command(flatten)]
    flags: MatrixFlags,
    /// Basis of the printed matrix; defaults to the input basis.
    #[arg(long, value_enum)]
    out_basis: Option<Basis>,
}

#[derive(Args, Debug)]
struct MagnusArgs {
    #[arg(value_enum)]
    sub: MagnusSub,
    /// Matrix as a,b,c,d.
    #[arg(allow_hyphen_values = true)]
    matrix: String,
    #[command(flatten)]
    flags: MatrixFlags,
    /// Use the best lift to the universal cover and compare with the
    /// complex candidate.
    #[arg(long)]
    lifted: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(value_enum)]
    target: SweepTarget,
    #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
    pmin: f64,
    #[arg(long, default_value_t = 3.1, allow_hyphen_values = true)]
    pmax: f64,
    /// Number of points on one-dimensional grids.
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Norm level of wedge-cap and moment-atlas sweeps.
    #[arg(long = "N", default_value_t = std::f64::consts::FRAC_PI_2)]
    norm: f64,
    /// Points per side of two-dimensional grids.
    #[arg(long, default_value_t = 100)]
    grid: usize,
    /// Chart for moment-atlas: CKB, HP, ACKB or AHP.
    #[arg(long, default_value = "CKB")]
    model: String,
    #[arg(long, default_value_t = -1.5, allow_hyphen_values = true)]
    alpha_min: f64,
    #[arg(long, default_value_t = 1.5, allow_hyphen_values = true)]
    alpha_max: f64,
    /// Random samples per discont row.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum, default_value = "all")]
    suite: Suite,
}

fn parse_matrices(texts: &[String], flags: &MatrixFlags) -> CliResult<Vec<MatrixSpec>> {
    // The matrix list accepts leading hyphens, so a late option lands here.
    if let Some(opt) = texts.iter().find(|t| t.starts_with("--")) {
        return Err(CliError::Parse(format!(
            "{opt} must come before the matrices"
        )));
    }
    texts
        .iter()
        .map(|t| MatrixSpec::parse(t, flags.basis(), flags.complex))
        .collect()
}

fn thread_pool() -> CliResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("MAGNUS2_THREADS") {
        let k: usize = v.parse().ok().filter(|k| *k > 0).ok_or_else(|| {
            CliError::Parse(format!(
                "MAGNUS2_THREADS must be a positive integer, got {v:?}"
            ))
        })?;
        builder = builder.num_threads(k);
    }
    builder.build().map_err(|e| CliError::Io(e.to_string()))
}

fn execute(cli: Cli) -> CliResult<()> {
    if let Some(tol) = cli.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Parse(format!(
                "--tol must be positive, got {tol}"
            )));
        }
        magnus2::tol::set_degeneracy_band(tol);
    }
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Eval(args) => {
            let inputs = parse_matrices(&args.matrices, &args.flags)?;
            let out = eval(
                args.op,
                &inputs,
                args.out_basis.unwrap_or(args.flags.basis()),
            )?;
            writeln!(stdout, "{}", out.render())?;
        }
        Command::Magnus(args) => {
            if args.flags.complex {
                return Err(CliError::Parse("magnus takes a real matrix".into()));
            }
            let a = MatrixSpec::parse(&args.matrix, args.flags.basis(), false)?.real()?;
            write!(stdout, "{}", magnus(args.sub, &a, args.lifted)?)?;
        }
        Command::Sweep(args) => {
            let model: Model = args
                .model
                .parse()
                .map_err(|_| CliError::Parse(format!("unknown model {:?}", args.model)))?;
            let params = SweepParams {
                pmin: args.pmin,
                pmax: args.pmax,
                n: args.n,
                norm: args.norm,
                grid: args.grid,
                model,
                alpha_min: args.alpha_min,
                alpha_max: args.alpha_max,
                samples: args.samples,
                seed: args.seed,
            };
            let table = thread_pool()?.install(|| sweep(args.target, &params))?;
            match args.out {
                Some(path) => {
                    let file = std::fs::File::create(&path)
                        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    write_csv(&table, std::io::BufWriter::new(file))?;
                }
                None => write_csv(&table, &mut stdout)?,
            }
        }
        Command::Verify(args) => {
            let checks = run(args.suite);
            for c in &checks {
                writeln!(stdout, "{}", c.line())?;
            }
            let failed = checks.iter().filter(|c| !c.pass).count();
            writeln!(stdout, "{} passed, {failed} failed", checks.len() - failed)?;
            if failed > 0 {
                return Err(CliError::Failed(failed));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
