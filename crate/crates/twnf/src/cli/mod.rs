//! Command-line surface: tensor file I/O plus subcommands that reproduce
//! the validation experiments (consistency residuals, spectral symmetry,
//! runtime sweeps, and the quantum demonstration) from a shell.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage error, 3 I/O error,
//! 4 numeric/precondition error. Slice indices in output are 1-based.

pub mod codec;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::harness::{self, BenchAxis};
use crate::quantum::{self, QuantumParams};
use crate::structured;
use crate::tensor;
use crate::williamson;

#[derive(Parser)]
#[command(
    name = "twnf",
    version,
    about = "T-product tensor algebra with Hamiltonian/symplectic structure and the T-Williamson normal form"
)]
pub struct Cli {
    /// Worker threads for slice-parallel operations (BLAS stays single-threaded).
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Structure {
    Hamiltonian,
    Symplectic,
    Pd,
}

#[derive(Clone, Copy, ValueEnum)]
enum RandomKind {
    /// Random T-Hamiltonian tensor (Fourier slices in Hamiltonian block form).
    Hamiltonian,
    /// Random tensor with real symmetric positive-definite Fourier slices.
    Spd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Axis {
    N,
    P,
}

#[derive(Subcommand)]
enum Command {
    /// T-product of two tensor files.
    Tprod {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Structural residual check; exits 1 when the check fails.
    Check {
        #[arg(long, value_enum)]
        structure: Structure,
        tensor: PathBuf,
        /// Residual tolerance for PASS.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Tensor exponential (slice-wise matrix exponential in the Fourier domain).
    Expm {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// T-Williamson normal form M = S^H * D * S; writes the factors S and D.
    ///
    /// The optional --lambdas CSV has columns: slice (1-based), j, lambda
    /// (the j-th symplectic eigenvalue of Fourier slice i, descending).
    Decompose {
        input: PathBuf,
        /// Output paths for the factors: S D
        #[arg(short, long, num_args = 2, value_names = ["S", "D"])]
        output: Vec<PathBuf>,
        /// Mirror conjugate slice pairs so the spatial factors are real;
        /// fails when the Fourier family is not conjugate-symmetric.
        #[arg(long)]
        real_recover: bool,
        /// Also write the per-slice symplectic eigenvalues as CSV.
        #[arg(long)]
        lambdas: Option<PathBuf>,
    },
    /// Seeded random structured tensors (2n x 2n x p, Fourier domain).
    Random {
        #[arg(long, value_enum)]
        kind: RandomKind,
        /// Half block size n; slices are 2n x 2n.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Consistency residual table over a list of sizes.
    ///
    /// Prints a human-readable table and PASSes when every row satisfies
    /// res_Symp <= 1e-9 and res_WNF, res_WSp, res_Spec <= 1e-10. The
    /// optional CSV has columns: n, p, res_symp, res_wnf, res_wsp,
    /// res_spec, seed.
    Validate {
        /// Sizes as comma-separated NxP pairs, e.g. 4x8,8x16,12x24,16x32.
        #[arg(long, default_value = "4x8,8x16,12x24,16x32")]
        sizes: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Optional CSV output path.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Spectral-symmetry dataset of a T-Hamiltonian tensor file.
    ///
    /// CSV columns: slice (1-based), re, im, re_reflected, im_reflected,
    /// match_distance (greedy reflection-matching distance of that slice).
    Spectrum {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Runtime sweep of the T-Williamson decomposition.
    ///
    /// CSV columns: axis, value, fixed, runs, threads, mean_seconds,
    /// slope (log-log fit over the upper half of the points; empty for a
    /// single point).
    Bench {
        #[arg(long, value_enum)]
        axis: Axis,
        /// Comma-separated ascending sweep values.
        #[arg(long)]
        points: String,
        /// The fixed other parameter (p for --axis n, n for --axis p).
        #[arg(long)]
        fixed: usize,
        #[arg(long, default_value_t = 20)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Decohering two-mode squeezed vacuum: entropy and negativity profiles.
    ///
    /// CSV columns: t, entropy, negativity, lambda1, lambda2 (symplectic
    /// eigenvalues of M(t)), lambda_tilde1, lambda_tilde2 (of the partial
    /// transpose).
    QuantumDemo {
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 0.5)]
        nth: f64,
        #[arg(long, default_value_t = 0.3)]
        kappa: f64,
        #[arg(long, default_value_t = 64)]
        p: usize,
        #[arg(long, default_value_t = 12.0)]
        tmax: f64,
        /// CSV output path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn parse_sizes(spec: &str) -> Result<Vec<(usize, usize)>> {
    spec.split(',')
        .map(|pair| {
            let (n, p) = pair
                .trim()
                .split_once(['x', 'X'])
                .ok_or_else(|| Error::Usage(format!("size {pair:?} is not of the form NxP")))?;
            let n = n
                .parse()
                .map_err(|_| Error::Usage(format!("bad n in size {pair:?}")))?;
            let p = p
                .parse()
                .map_err(|_| Error::Usage(format!("bad p in size {pair:?}")))?;
            if n == 0 || p == 0 {
                return Err(Error::Usage(format!("size {pair:?} must be positive")));
            }
            Ok((n, p))
        })
        .collect()
}

fn parse_points(spec: &str) -> Result<Vec<usize>> {
    spec.split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| Error::Usage(format!("bad sweep point {v:?}")))
        })
        .collect()
}

fn csv_writer(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn write_lambdas_csv(path: &Path, lambdas: &[Vec<f64>]) -> Result<()> {
    let mut w = csv_writer(path)?;
    writeln!(w, "slice,j,lambda")?;
    for (k, slice) in lambdas.iter().enumerate() {
        for (j, l) in slice.iter().enumerate() {
            writeln!(w, "{},{},{}", k + 1, j + 1, l)?;
        }
    }
    Ok(())
}

impl Cli {
    /// Runs the parsed command, returning the process exit code.
    pub fn run(self) -> Result<i32> {
        match self.command {
            Command::Tprod { a, b, output } => {
                let ta = codec::read_tensor(&a)?;
                let tb = codec::read_tensor(&b)?;
                codec::write_tensor(&output, &tensor::tprod(&ta, &tb)?)?;
                Ok(0)
            }
            Command::Check {
                structure,
                tensor: path,
                tol,
            } => {
                let t = codec::read_tensor(&path)?;
                let pass = match structure {
                    Structure::Hamiltonian => {
                        let res = structured::hamiltonian_residual(&t)?;
                        println!("hamiltonian residual = {res:.6e}");
                        res <= tol
                    }
                    Structure::Symplectic => {
                        let res = structured::symplectic_residual(&t)?;
                        println!("symplectic residual = {res:.6e}");
                        res <= tol
                    }
                    Structure::Pd => {
                        let report = structured::t_pd_check(&t)?;
                        let (worst_slice, worst) = report
                            .min_eigenvalues
                            .iter()
                            .enumerate()
                            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                            .map(|(k, v)| (k + 1, *v))
                            .expect("at least one slice");
                        println!(
                            "smallest Fourier-slice eigenvalue = {worst:.6e} (slice {worst_slice})"
                        );
                        report.positive_definite
                    }
                };
                println!("{}", if pass { "PASS" } else { "FAIL" });
                Ok(if pass { 0 } else { 1 })
            }
            Command::Expm { input, output } => {
                let h = codec::read_tensor(&input)?;
                codec::write_tensor(&output, &structured::t_expm(&h)?)?;
                Ok(0)
            }
            Command::Decompose {
                input,
                output,
                real_recover,
                lambdas,
            } => {
                let m = codec::read_tensor(&input)?;
                let factors = if real_recover {
                    williamson::real_symmetrize_factors(&m)?
                } else {
                    williamson::t_williamson(&m)?
                };
                codec::write_tensor(&output[0], &factors.s)?;
                codec::write_tensor(&output[1], &factors.d)?;
                if let Some(path) = lambdas {
                    write_lambdas_csv(&path, &factors.lambdas)?;
                }
                Ok(0)
            }
            Command::Random {
                kind,
                n,
                p,
                seed,
                output,
            } => {
                if n == 0 || p == 0 {
                    return Err(Error::Usage("--n and --p must be positive".into()));
                }
                let t = match kind {
                    RandomKind::Hamiltonian => structured::random_t_hamiltonian(n, p, seed),
                    RandomKind::Spd => harness::random_spd_tensor(n, p, seed),
                };
                codec::write_tensor(&output, &t)?;
                Ok(0)
            }
            Command::Validate {
                sizes,
                seed,
                output,
            } => {
                let sizes = parse_sizes(&sizes)?;
                let table = harness::residual_suite(&sizes, seed)?;
                println!("seed = {seed}");
                println!(
                    "{:>5} {:>5} {:>13} {:>13} {:>13} {:>13}",
                    "n", "p", "res_Symp", "res_WNF", "res_WSp", "res_Spec"
                );
                let mut pass = true;
                for row in &table.rows {
                    println!(
                        "{:>5} {:>5} {:>13.3e} {:>13.3e} {:>13.3e} {:>13.3e}",
                        row.n, row.p, row.res_symp, row.res_wnf, row.res_wsp, row.res_spec
                    );
                    pass &= row.res_symp <= 1e-9
                        && row.res_wnf <= 1e-10
                        && row.res_wsp <= 1e-10
                        && row.res_spec <= 1e-10;
                }
                if let Some(path) = output {
                    let mut w = csv_writer(&path)?;
                    writeln!(w, "n,p,res_symp,res_wnf,res_wsp,res_spec,seed")?;
                    for row in &table.rows {
                        writeln!(
                            w,
                            "{},{},{},{},{},{},{}",
                            row.n, row.p, row.res_symp, row.res_wnf, row.res_wsp, row.res_spec,
                            table.seed
                        )?;
                    }
                }
                println!("{}", if pass { "PASS" } else { "FAIL" });
                Ok(if pass { 0 } else { 1 })
            }
            Command::Spectrum { input, output } => {
                let h = codec::read_tensor(&input)?;
                let report = structured::spectral_symmetry_report(&h)?;
                let mut w = csv_writer(&output)?;
                writeln!(w, "slice,re,im,re_reflected,im_reflected,match_distance")?;
                for (slice, value) in &report.eigenvalues {
                    writeln!(
                        w,
                        "{},{},{},{},{},{}",
                        slice,
                        value.re,
                        value.im,
                        -value.re,
                        value.im,
                        report.reflection_match_distance
                    )?;
                }
                println!(
                    "max reflection match distance = {:.6e}",
                    report.reflection_match_distance
                );
                println!("{}", if report.symmetric { "PASS" } else { "FAIL" });
                Ok(if report.symmetric { 0 } else { 1 })
            }
            Command::Bench {
                axis,
                points,
                fixed,
                runs,
                seed,
                output,
            } => {
                let points = parse_points(&points)?;
                let axis = match axis {
                    Axis::N => BenchAxis::N,
                    Axis::P => BenchAxis::P,
                };
                let record = harness::bench_sweep(axis, &points, fixed, runs, seed)?;
                let mut w = csv_writer(&output)?;
                writeln!(w, "axis,value,fixed,runs,threads,mean_seconds,slope")?;
                for point in &record.points {
                    let slope = record
                        .slope
                        .map(|s| s.to_string())
                        .unwrap_or_default();
                    writeln!(
                        w,
                        "{},{},{},{},{},{},{}",
                        record.axis,
                        point.value,
                        record.fixed,
                        record.runs,
                        record.threads,
                        point.mean_seconds,
                        slope
                    )?;
                }
                for point in &record.points {
                    println!(
                        "{} = {:>6}: {:.6} s",
                        record.axis, point.value, point.mean_seconds
                    );
                }
                match record.slope {
                    Some(s) => println!("log-log slope (upper half) = {s:.3}"),
                    None => println!("log-log slope unavailable (single point)"),
                }
                Ok(0)
            }
            Command::QuantumDemo {
                r,
                nth,
                kappa,
                p,
                tmax,
                output,
            } => {
                let params = QuantumParams::new(r, nth, kappa, p, tmax)?;
                let series = quantum::quantum_profiles(&params)?;
                let mut rows = String::new();
                rows.push_str("t,entropy,negativity,lambda1,lambda2,lambda_tilde1,lambda_tilde2\n");
                for i in 0..series.times.len() {
                    rows.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        series.times[i],
                        series.entropy[i],
                        series.negativity[i],
                        series.lambdas[i][0],
                        series.lambdas[i][1],
                        series.lambdas_tilde[i][0],
                        series.lambdas_tilde[i][1],
                    ));
                }
                match output {
                    Some(path) => {
                        let mut w = csv_writer(&path)?;
                        w.write_all(rows.as_bytes())?;
                    }
                    None => print!("{rows}"),
                }
                Ok(0)
            }
        }
    }
}
