use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qswitch_eur::analytic::{closed_form_report, Process};
use qswitch_eur::channels::PauliChannel;
use qswitch_eur::error::{Error, Result};
use qswitch_eur::oracle::{check_paths, verify_random, REPORT_TOL};
use qswitch_eur::par::Execution;
use qswitch_eur::scan::{
    emit_csv, evaluate_row, find_crossover, scan_simplex, sweep_1d, write_csv, Crossover, Quantity,
    ScanOptions, SimplexSpec, SweepSpec, DEFAULT_ORACLE_STRIDE, DEFAULT_P_STEPS,
    DEFAULT_SIMPLEX_DENOMINATOR,
};

const EXIT_INVARIANT: u8 = 1;
const EXIT_BAD_ARGS: u8 = 2;

/// Entropic uncertainty with quantum memory under Pauli noise, the quantum
/// switch and the quantum time-flip.
#[derive(Debug, Parser)]
#[command(name = "qswitch-eur", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Tolerance between closed-form and density-matrix results.
    #[arg(long, global = true, default_value_t = REPORT_TOL, value_parser = parse_tol)]
    tol: f64,

    /// Skip density-matrix spot checks.
    #[arg(long, global = true)]
    no_oracle_check: bool,

    /// Evaluate grid points on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

impl GlobalOpts {
    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    fn scan_options(&self) -> ScanOptions {
        ScanOptions {
            oracle_stride: (!self.no_oracle_check).then_some(DEFAULT_ORACLE_STRIDE),
            tol: self.tol,
            execution: self.execution(),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report S(X|B), S(Z|B), U and the bound for one channel.
    Eval {
        #[arg(long)]
        process: Process,
        #[arg(long)]
        p: f64,
        #[arg(long, value_parser = parse_alpha)]
        alpha: [f64; 3],
        /// Also write a single-row CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Sweep the error probability at a fixed bias vector.
    Sweep {
        #[arg(long)]
        process: Process,
        #[arg(long, value_parser = parse_alpha)]
        alpha: [f64; 3],
        #[arg(long, default_value_t = 0.0)]
        pmin: f64,
        #[arg(long, default_value_t = 1.0)]
        pmax: f64,
        #[arg(long, default_value_t = DEFAULT_P_STEPS)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Scan the bias simplex at a fixed error probability.
    Simplex {
        #[arg(long, value_parser = parse_comparison)]
        compare: Process,
        #[arg(long)]
        p: f64,
        /// Grid denominator N; the spacing is 1/N.
        #[arg(long, default_value_t = DEFAULT_SIMPLEX_DENOMINATOR)]
        step: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Locate the error probability where the process starts to win.
    Crossover {
        #[arg(long, value_parser = parse_comparison)]
        compare: Process,
        #[arg(long, value_parser = parse_alpha)]
        alpha: [f64; 3],
        #[arg(long, default_value = "total")]
        quantity: Quantity,
    },
    /// Compare both evaluation paths on seeded random channels.
    Verify {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_alpha(s: &str) -> std::result::Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated values, got `{s}`"));
    }
    let mut alpha = [0.0; 3];
    for (slot, part) in alpha.iter_mut().zip(parts) {
        *slot = part
            .parse()
            .map_err(|_| format!("`{part}` is not a number"))?;
    }
    Ok(alpha)
}

fn parse_tol(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t >= 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("`{s}` is not a non-negative tolerance")),
    }
}

fn parse_comparison(s: &str) -> std::result::Result<Process, String> {
    match s.parse::<Process>()? {
        Process::SingleUse => Err("comparison must be sw or tf".to_string()),
        other => Ok(other),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let g = &cli.global;
    match cli.command {
        Command::Eval {
            process,
            p,
            alpha,
            csv,
        } => {
            let ch = PauliChannel::new(p, alpha)?;
            let report = closed_form_report(&ch, process)?;
            if !g.no_oracle_check {
                check_paths(&ch, process, g.tol)?;
            }
            let alpha = ch.alpha();
            println!("process      {process}");
            println!("p            {p}");
            println!("alpha        {},{},{}", alpha[0], alpha[1], alpha[2]);
            println!("S(X|B)       {:.12}", report.s_x_given_b);
            println!("S(Z|B)       {:.12}", report.s_z_given_b);
            println!("U            {:.12}", report.total_u);
            println!("bound        {:.12}", report.bound_b);
            println!("slack        {:.12}", report.slack);
            if let Some(path) = csv {
                emit_csv(&[evaluate_row(&ch, process)?], &path)?;
            }
        }
        Command::Sweep {
            process,
            alpha,
            pmin,
            pmax,
            steps,
            out,
        } => {
            let spec = SweepSpec {
                process,
                alpha,
                p_min: pmin,
                p_max: pmax,
                steps,
            };
            let rows = sweep_1d(&spec, &g.scan_options())?;
            emit_csv(&rows, &out)?;
            eprintln!("wrote {} rows to {}", rows.len(), out.display());
        }
        Command::Simplex {
            compare,
            p,
            step,
            out,
        } => {
            let spec = SimplexSpec {
                compare,
                p,
                denominator: step,
            };
            let rows = scan_simplex(&spec, &g.scan_options())?;
            if out.as_os_str() == "-" {
                write_csv(&rows, std::io::stdout().lock())?;
            } else {
                emit_csv(&rows, &out)?;
                eprintln!("wrote {} rows to {}", rows.len(), out.display());
            }
        }
        Command::Crossover {
            compare,
            alpha,
            quantity,
        } => {
            PauliChannel::new(0.0, alpha)?;
            match find_crossover(alpha, compare, quantity)? {
                Crossover::At(p) => println!("crossover p = {p:.9}"),
                Crossover::NoCrossover => println!("no crossover on (0, 1]"),
            }
        }
        Command::Verify { samples, seed } => {
            let s = verify_random(samples, seed, g.tol, g.execution());
            println!("samples            {}", s.samples);
            println!("comparisons        {}", s.comparisons);
            println!("max report diff    {:.3e}", s.max_report_diff);
            println!("max coeff diff     {:.3e}", s.max_coeff_diff);
            println!("max Bell residual  {:.3e}", s.max_bell_residual);
            println!("min slack          {:.3e}", s.min_slack);
            if !s.passed() {
                for f in &s.failures {
                    eprintln!("mismatch: {f}");
                }
                println!("FAILED ({} mismatches)", s.failures.len());
                return Ok(ExitCode::from(EXIT_INVARIANT));
            }
            println!("ok");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        _ if e.is_invariant_violation() => EXIT_INVARIANT,
        Error::OutOfRange { .. }
        | Error::InvalidChannel(_)
        | Error::NonUnital
        | Error::Io { .. }
        | Error::Csv(_) => EXIT_BAD_ARGS,
        _ => EXIT_INVARIANT,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_BAD_ARGS } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
