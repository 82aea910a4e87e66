//! `scqmap`: accessory parameters and images of conformal maps onto
//! symmetric right circular-arc quadrilaterals.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use scqmap_core::convergence::required_resolution;
use scqmap_core::mapper::{boundary_polyline_with, render, RenderFormat};
use scqmap_core::scq::lambda_infinity;
use scqmap_core::solvers::{solve_one, solve_two, univalence_sweep, SolverConfig};
use scqmap_core::{verify, Execution, ScqError};

#[derive(Parser, Debug)]
#[command(name = "scqmap", version, about)]
struct Cli {
    /// Grid intervals M (a multiple of 5).
    #[arg(long = "M", alias = "m", global = true, default_value_t = 60)]
    m: usize,
    /// Series order N.
    #[arg(long = "N", alias = "n", global = true, default_value_t = 30)]
    n: usize,
    /// Residual tolerance of the root finders.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
#[group(required = true, multiple = false)]
struct Angle {
    /// Vertex parameter t in radians.
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    /// Vertex parameter as a multiple of pi.
    #[arg(long = "t-pi", allow_negative_numbers = true)]
    t_pi: Option<f64>,
}

impl Angle {
    fn radians(self) -> f64 {
        match (self.t, self.t_pi) {
            (Some(t), _) => t,
            (None, Some(x)) => x * PI,
            (None, None) => unreachable!("clap requires one of --t, --t-pi"),
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum SceneFormat {
    Svg,
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print lambda_inf(t) = cot(2t)/4.
    LambdaInf {
        #[command(flatten)]
        angle: Angle,
    },
    /// Solve kappa(lambda) = kappa at fixed t.
    SolveOne {
        #[command(flatten)]
        angle: Angle,
        #[arg(long, allow_negative_numbers = true)]
        kappa: f64,
        /// Print every root instead of the one nearest lambda_inf.
        #[arg(long)]
        all_roots: bool,
    },
    /// Find (t, lambda) from the normalised curvature kappa1 and midpoint p2.
    SolveTwo {
        #[arg(long, allow_negative_numbers = true)]
        kappa1: f64,
        #[arg(long)]
        p2: f64,
        /// Lower end of the t bracket, radians.
        #[arg(long, default_value_t = 0.01 * PI)]
        t_lo: f64,
        /// Upper end of the t bracket, radians.
        #[arg(long, default_value_t = 0.49 * PI)]
        t_hi: f64,
    },
    /// Render the image quadrilateral.
    Map {
        #[command(flatten)]
        angle: Angle,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, default_value_t = 64)]
        rays: usize,
        #[arg(long, default_value_t = 400)]
        steps: usize,
        /// Divide by f(1) so the right edge passes through 1.
        #[arg(long)]
        normalize: bool,
        #[arg(long, value_enum, default_value_t = SceneFormat::Svg)]
        format: SceneFormat,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate lambda_min, lambda_inf, lambda_max over t.
    Univalence {
        #[arg(long, default_value_t = 9)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smallest (M, N) giving kappa(lambda_inf + offset) to the requested digits.
    Table {
        #[command(flatten)]
        angle: Angle,
        #[arg(long, allow_negative_numbers = true)]
        lambda_offset: f64,
        #[arg(long, default_value_t = 8)]
        digits: usize,
    },
    /// Run the verification suites and print their reports as JSON.
    Verify {
        /// Run only this suite.
        #[arg(long)]
        suite: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Numeric(String),
    Io(String),
}

impl From<ScqError> for Failure {
    fn from(e: ScqError) -> Self {
        if e.is_invalid_input() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Numeric(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

macro_rules! outln {
    ($buf:expr, $($arg:tt)*) => {{
        let _ = writeln!($buf, $($arg)*);
    }};
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn execution_from_env() -> Result<Execution, Failure> {
    let Ok(raw) = std::env::var("SCQMAP_THREADS") else {
        return Ok(Execution::default());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("SCQMAP_THREADS={raw:?} is not a thread count")))?;
    if threads == 0 {
        return Ok(Execution::Sequential);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Numeric(e.to_string()))?;
    Ok(Execution::Parallel)
}

fn write_stdout(bytes: &[u8]) -> Result<(), Failure> {
    let mut lock = std::io::stdout().lock();
    match lock.write_all(bytes).and_then(|_| lock.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, bytes)?,
        None => write_stdout(bytes)?,
    }
    Ok(())
}

fn run(cli: Cli, stdout: &mut String) -> Result<bool, Failure> {
    let exec = execution_from_env()?;
    let cfg = SolverConfig {
        m: cli.m,
        n: cli.n,
        root_tol: cli.tol,
        execution: exec,
        ..SolverConfig::default()
    };
    cfg.validate()?;

    match cli.command {
        Command::LambdaInf { angle } => {
            outln!(stdout, "{}", num(lambda_infinity(angle.radians())?));
        }
        Command::SolveOne {
            angle,
            kappa,
            all_roots,
        } => {
            let roots = solve_one(angle.radians(), kappa, &cfg)?;
            let shown = if all_roots { &roots[..] } else { &roots[..1] };
            for r in shown {
                outln!(stdout, "{}", num(*r));
            }
        }
        Command::SolveTwo {
            kappa1,
            p2,
            t_lo,
            t_hi,
        } => {
            let cfg = SolverConfig { t_lo, t_hi, ..cfg };
            cfg.validate()?;
            let s = solve_two(kappa1, p2, &cfg)?;
            outln!(stdout, "t={} lambda={}", num(s.t), num(s.lambda));
            outln!(
                stdout,
                "kappa1={} p2={}",
                num(s.geometry.kappa1),
                num(s.geometry.p2)
            );
            outln!(
                stdout,
                "t/pi={:.6} residuals: kappa1 {:.6e} p2 {:.6e} ({} bisection steps)",
                s.t / PI,
                (s.geometry.kappa1 - kappa1).abs(),
                (s.geometry.p2 - p2).abs(),
                s.iterations
            );
        }
        Command::Map {
            angle,
            lambda,
            rays,
            steps,
            normalize,
            format,
            out,
        } => {
            let scene =
                boundary_polyline_with(angle.radians(), lambda, rays, steps, normalize, exec)?;
            let format = match format {
                SceneFormat::Svg => RenderFormat::Svg,
                SceneFormat::Json => RenderFormat::Json,
                SceneFormat::Csv => RenderFormat::Csv,
            };
            emit(&out, &render(&scene, format)?)?;
        }
        Command::Univalence {
            samples,
            format,
            out,
        } => {
            if samples < 3 {
                return Err(Failure::Usage(format!(
                    "samples = {samples}, need at least 3"
                )));
            }
            let rows = univalence_sweep(samples, &cfg);
            let mut text = String::new();
            match format {
                TableFormat::Csv => {
                    text.push_str("t,lambda_min,lambda_inf,lambda_max,error\n");
                    for (t, row) in &rows {
                        let _ = match row {
                            Ok(b) => writeln!(
                                text,
                                "{},{},{},{},",
                                num(*t),
                                num(b.lambda_min),
                                num(b.lambda_inf),
                                num(b.lambda_max)
                            ),
                            Err(e) => writeln!(text, "{},,,,\"{}\"", num(*t), e),
                        };
                    }
                }
                TableFormat::Json => {
                    let items: Vec<String> = rows
                        .iter()
                        .map(|(t, row)| match row {
                            Ok(b) => format!(
                                "{{\"t\":{},\"lambda_min\":{},\"lambda_inf\":{},\"lambda_max\":{}}}",
                                num(*t),
                                num(b.lambda_min),
                                num(b.lambda_inf),
                                num(b.lambda_max)
                            ),
                            Err(e) => format!(
                                "{{\"t\":{},\"error\":{}}}",
                                num(*t),
                                serde_json::Value::String(e.to_string())
                            ),
                        })
                        .collect();
                    text = format!("[\n  {}\n]\n", items.join(",\n  "));
                }
            }
            for (t, row) in &rows {
                if let Err(e) = row {
                    log::warn!("t = {t}: {e}");
                }
            }
            emit(&out, text.as_bytes())?;
        }
        Command::Table {
            angle,
            lambda_offset,
            digits,
        } => {
            let r = required_resolution(angle.radians(), lambda_offset, digits, exec)?;
            outln!(stdout, "M={} N={}", r.m, r.n);
            outln!(
                stdout,
                "kappa={} reference={}",
                num(r.kappa),
                num(r.reference)
            );
        }
        Command::Verify { suite } => {
            let reports = verify::run(suite.as_deref(), &cfg)?;
            let json =
                serde_json::to_string_pretty(&reports).map_err(|e| Failure::Io(e.to_string()))?;
            outln!(stdout, "{json}");
            for r in reports.iter().filter(|r| !r.passed) {
                eprintln!(
                    "FAILED {}: max error {:.6e} > tolerance {:.6e}",
                    r.name, r.max_error, r.tolerance
                );
            }
            return Ok(reports.iter().all(|r| r.passed));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let mut stdout = String::new();
    let outcome = run(cli, &mut stdout);
    if let Err(Failure::Io(msg)) = write_stdout(stdout.as_bytes()) {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
