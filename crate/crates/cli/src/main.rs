use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qstoch::algebra::{solve_reflection_constraints, Algebra, ReflectionSolution};
use qstoch::expr::{parse_expr, ExprAst};
use qstoch::fockrep::{verify_suite, LatticeConfig, VerifyOptions};
use qstoch::ito::RouteRegistry;
use qstoch::thermal::{c_normal_order, thermal_expectation, CGenerator, FrakturGenerator, Nbar, ThermalParams};
use qstoch::{FockError, Generator, StatisticsFlag};

#[derive(Parser)]
#[command(name = "qstoch", version, about = "Quantum stochastic calculus on a time lattice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Stat {
    Boson,
    Fermion,
}

impl From<Stat> for StatisticsFlag {
    fn from(s: Stat) -> Self {
        match s {
            Stat::Boson => StatisticsFlag::Boson,
            Stat::Fermion => StatisticsFlag::Fermion,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Text,
    Markdown,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    /// Slot modes, reflections and tau.
    Level0,
    /// Thermal quasi-particles.
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mean {
    Vacuum,
    Thermal,
}

#[derive(Subcommand)]
enum Command {
    /// Normal order an operator expression.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value = "boson")]
        stat: Stat,
        #[arg(long, value_enum, default_value = "level0")]
        basis: Basis,
        /// Reject slots above N.
        #[arg(long)]
        slots: Option<u32>,
        /// Print an expectation value instead of the normal form.
        #[arg(long, value_enum)]
        mean: Option<Mean>,
        /// Thermal occupation for `--mean thermal` and the c basis.
        #[arg(long, default_value = "nbar")]
        nbar: String,
        /// Exit with status 1 unless the result equals this expression.
        #[arg(long, allow_hyphen_values = true)]
        expect: Option<String>,
    },
    /// Print the Itô multiplication table.
    Table {
        #[arg(long, value_enum, default_value = "boson")]
        stat: Stat,
        /// Occupation: `nbar` (symbolic), `p/q` or a decimal.
        #[arg(long, default_value = "nbar")]
        nbar: String,
        /// The zero-temperature 3x3 table.
        #[arg(long, conflicts_with = "route")]
        vacuum: bool,
        /// Derivation route.
        #[arg(long, default_value = "wick")]
        route: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the Fock-space verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "boson")]
        stat: Stat,
        #[arg(long, default_value_t = 2)]
        slots: u32,
        #[arg(long, default_value_t = 0.1)]
        dt: f64,
        #[arg(long, default_value = "0")]
        nbar: String,
        /// Boson occupation cutoff.
        #[arg(long, default_value_t = 8)]
        cutoff: usize,
        /// Extra boson levels above the cutoff.
        #[arg(long, default_value_t = 2)]
        headroom: usize,
        /// Largest Hilbert-space dimension to attempt.
        #[arg(long, default_value_t = 1 << 16)]
        max_dim: u128,
        /// Override every tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Record wall time in the report.
        #[arg(long)]
        timing: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Path for the JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the sign constraints on the reflection process.
    Constraints {
        #[arg(long, value_enum)]
        stat: Option<Stat>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

fn failed(message: impl ToString) -> Failure {
    Failure {
        code: 1,
        message: message.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Reduce {
            expr,
            stat,
            basis,
            slots,
            mean,
            nbar,
            expect,
        } => reduce(&expr, stat.into(), basis, slots, mean, &nbar, expect.as_deref()),
        Command::Table {
            stat,
            nbar,
            vacuum,
            route,
            format,
            out,
        } => table(stat.into(), &nbar, vacuum, &route, format, out),
        Command::Verify {
            stat,
            slots,
            dt,
            nbar,
            cutoff,
            headroom,
            max_dim,
            tol,
            timing,
            format,
            out,
        } => {
            let mut cfg = LatticeConfig::new(stat.into(), slots, dt)
                .with_cutoff(cutoff)
                .with_headroom(headroom);
            cfg.max_dim = max_dim;
            verify(
                cfg,
                &nbar,
                VerifyOptions {
                    tol,
                    timing,
                    ..Default::default()
                },
                format,
                out,
            )
        }
        Command::Constraints { stat, format } => constraints(stat, format),
    }
}

fn params(flag: StatisticsFlag, nbar: &str) -> Result<ThermalParams, Failure> {
    let n: Nbar = nbar.parse().map_err(usage)?;
    ThermalParams::new(flag, n).map_err(usage)
}

fn parse(src: &str) -> Result<ExprAst, Failure> {
    parse_expr(src).map_err(usage)
}

/// Normal form (or expectation) of `src` as printed text.
fn evaluate(
    src: &str,
    flag: StatisticsFlag,
    basis: Basis,
    slots: Option<u32>,
    mean: Option<Mean>,
    nbar: &str,
) -> Result<String, Failure> {
    let ast = parse(src)?;
    if let Some(n) = slots {
        if ast.max_slot() > n {
            return Err(usage(format!("slot {} is outside the lattice 1..={n}", ast.max_slot())));
        }
    }
    let alg = match slots {
        Some(n) => Algebra::with_slots(flag, n),
        None => Algebra::new(flag),
    };
    match mean {
        Some(Mean::Vacuum) => {
            let p = ast.lower::<Generator>(flag).map_err(usage)?;
            Ok(alg.vacuum_expectation(&p).map_err(failed)?.to_text())
        }
        Some(Mean::Thermal) => {
            let p = ast.lower::<FrakturGenerator>(flag).map_err(usage)?;
            let th = params(flag, nbar)?;
            Ok(thermal_expectation(&p, &th).map_err(failed)?.to_text())
        }
        None => match basis {
            Basis::Level0 => {
                let p = ast.lower::<Generator>(flag).map_err(usage)?;
                Ok(alg.normal_order(&p).to_text())
            }
            Basis::C => {
                let p = ast.lower::<CGenerator>(flag).map_err(usage)?;
                let th = params(flag, nbar)?;
                let p = th.specialize_poly(&p).map_err(usage)?;
                Ok(c_normal_order(&p, flag).to_text())
            }
        },
    }
}

fn reduce(
    src: &str,
    flag: StatisticsFlag,
    basis: Basis,
    slots: Option<u32>,
    mean: Option<Mean>,
    nbar: &str,
    expect: Option<&str>,
) -> Result<u8, Failure> {
    let got = evaluate(src, flag, basis, slots, mean, nbar)?;
    println!("{got}");
    let Some(expected) = expect else {
        return Ok(0);
    };
    let want = evaluate(expected, flag, basis, slots, mean, nbar)?;
    if got == want {
        Ok(0)
    } else {
        eprintln!("mismatch: expected {want}");
        Ok(1)
    }
}

fn emit(text: &str, out: Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(&path, text).map_err(|e| failed(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn table(
    flag: StatisticsFlag,
    nbar: &str,
    vacuum: bool,
    route: &str,
    format: Format,
    out: Option<PathBuf>,
) -> Result<u8, Failure> {
    let th = params(flag, nbar)?;
    let registry = RouteRegistry::with_builtin();
    let name = if vacuum { "vacuum" } else { route };
    let t = registry.derive(name, &th).map_err(|e| match e {
        qstoch::ItoError::UnknownRoute(_) => usage(format!("{e} (available: {})", registry.names().join(", "))),
        other => failed(other),
    })?;
    let text = match format {
        Format::Text => t.to_text(),
        Format::Markdown => t.to_markdown(),
        Format::Json => t.to_json(),
    };
    emit(&text, out)?;
    Ok(0)
}

fn verify(
    cfg: LatticeConfig,
    nbar: &str,
    opts: VerifyOptions,
    format: Format,
    out: Option<PathBuf>,
) -> Result<u8, Failure> {
    let n = params(cfg.statistics, nbar)?
        .nbar()
        .to_f64()
        .ok_or_else(|| usage("verify needs a numeric nbar"))?;
    cfg.validate().map_err(usage)?;
    let report = verify_suite(&cfg, n, &opts).map_err(|e| match e {
        FockError::DimensionGuard { .. } | FockError::InvalidConfig(_) => usage(e),
        other => failed(other),
    })?;
    let json = report.to_json();
    if let Some(path) = out {
        fs::write(&path, &json).map_err(|e| failed(format!("cannot write {}: {e}", path.display())))?;
    }
    let text = match format {
        Format::Text => report.to_text(),
        Format::Markdown => report.to_markdown(),
        Format::Json => json,
    };
    emit(&text, None)?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn constraints_text(s: &ReflectionSolution) -> String {
    let mut out = format!("{} statistics\n", s.statistics);
    out.push_str("sigma_<  sigma_>  equal-time  canonical  rewrite  solution\n");
    for c in &s.candidates {
        let line = format!(
            "{:>7}  {:>7}  {:>10}  {:>9}  {:>7}  {}",
            c.sigma_lt,
            c.sigma_gt,
            c.equal_time,
            c.canonical,
            if c.derived_ok { "ok" } else { "-" },
            if c.is_solution() { "yes" } else { "" }
        );
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.push_str(&format!(
        "solution: sigma_< = {}, sigma_> = {}\n",
        s.sigma_lt, s.sigma_gt
    ));
    out
}

fn constraints(stat: Option<Stat>, format: Format) -> Result<u8, Failure> {
    let flags = match stat {
        Some(s) => vec![StatisticsFlag::from(s)],
        None => vec![StatisticsFlag::Boson, StatisticsFlag::Fermion],
    };
    let solutions: Vec<ReflectionSolution> = flags.into_iter().map(solve_reflection_constraints).collect();
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&solutions).expect("solutions serialize"),
        _ => solutions.iter().map(constraints_text).collect::<Vec<_>>().join("\n"),
    };
    emit(&text, None)?;
    Ok(0)
}
