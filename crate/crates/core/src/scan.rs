//! Parameter sweeps over the Pauli family: 1-D sweeps in `p` at fixed bias,
//! 2-D scans of the bias simplex at fixed `p`, crossover search, and the CSV
//! format shared with the plotting scripts.
//!
//! Grid points are independent and are evaluated through
//! [`map_ordered`](crate::par::map_ordered); rows always come back in grid
//! order.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use crate::analytic::{closed_form_report, Process};
use crate::channels::PauliChannel;
use crate::error::{Error, Result};
use crate::maeur::UncertaintyReport;
use crate::oracle::{check_paths, REPORT_TOL};
use crate::par::{map_ordered, Execution};

/// Tolerance on `u >= bound` for every emitted row.
pub const RELATION_TOL: f64 = 1e-9;

pub const DEFAULT_P_STEPS: usize = 500;
pub const DEFAULT_SIMPLEX_DENOMINATOR: usize = 200;

/// Every `DEFAULT_ORACLE_STRIDE`-th grid point is re-evaluated on the
/// density-matrix path.
pub const DEFAULT_ORACLE_STRIDE: usize = 100;

pub const CSV_HEADER: [&str; 13] = [
    "p", "alpha_x", "alpha_y", "alpha_z", "s_x_su", "s_z_su", "u_su", "b_su", "s_x_proc",
    "s_z_proc", "u_proc", "b_proc", "delta_u",
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanOptions {
    /// `None` disables oracle spot checks.
    pub oracle_stride: Option<usize>,
    pub tol: f64,
    pub execution: Execution,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            oracle_stride: Some(DEFAULT_ORACLE_STRIDE),
            tol: REPORT_TOL,
            execution: Execution::default(),
        }
    }
}

/// 1-D sweep of `p` over `steps + 1` evenly spaced points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepSpec {
    pub process: Process,
    pub alpha: [f64; 3],
    pub p_min: f64,
    pub p_max: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn new(process: Process, alpha: [f64; 3]) -> Self {
        Self {
            process,
            alpha,
            p_min: 0.0,
            p_max: 1.0,
            steps: DEFAULT_P_STEPS,
        }
    }

    pub fn grid(&self) -> Result<Vec<f64>> {
        if !(0.0 <= self.p_min && self.p_min <= self.p_max && self.p_max <= 1.0) {
            return Err(Error::OutOfRange {
                what: "p range",
                value: if (0.0..=1.0).contains(&self.p_min) {
                    self.p_max
                } else {
                    self.p_min
                },
            });
        }
        if self.steps == 0 {
            return Err(Error::OutOfRange {
                what: "sweep steps",
                value: 0.0,
            });
        }
        let span = self.p_max - self.p_min;
        Ok((0..=self.steps)
            .map(|i| {
                if i == self.steps {
                    self.p_max
                } else {
                    self.p_min + span * (i as f64 / self.steps as f64)
                }
            })
            .collect())
    }
}

/// Scan of the bias simplex with spacing `1 / denominator` at fixed `p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimplexSpec {
    pub compare: Process,
    pub p: f64,
    pub denominator: usize,
}

/// Grid points `(i/N, j/N, (N-i-j)/N)` in lexicographic `(i, j)` order.
pub fn simplex_points(denominator: usize) -> Vec<[f64; 3]> {
    let n = denominator as f64;
    let mut points = Vec::with_capacity((denominator + 1) * (denominator + 2) / 2);
    for i in 0..=denominator {
        for j in 0..=denominator - i {
            let k = denominator - i - j;
            points.push([i as f64 / n, j as f64 / n, k as f64 / n]);
        }
    }
    points
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRow {
    pub p: f64,
    pub alpha: [f64; 3],
    pub single_use: UncertaintyReport,
    pub process: UncertaintyReport,
    /// `u_proc - u_su`.
    pub delta_u: f64,
}

/// Closed-form row for one channel; fails if either report breaks the
/// uncertainty relation.
pub fn evaluate_row(ch: &PauliChannel, process: Process) -> Result<ScanRow> {
    let single_use = closed_form_report(ch, Process::SingleUse)?;
    let proc_report = if process == Process::SingleUse {
        single_use
    } else {
        closed_form_report(ch, process)?
    };
    for (name, r) in [("su", &single_use), (process.short_name(), &proc_report)] {
        if r.slack < -RELATION_TOL {
            return Err(Error::InvariantViolation(format!(
                "{name} uncertainty {} below bound {} at p = {}, alpha = {:?}",
                r.total_u,
                r.bound_b,
                ch.p(),
                ch.alpha()
            )));
        }
    }
    Ok(ScanRow {
        p: ch.p(),
        alpha: ch.alpha(),
        single_use,
        process: proc_report,
        delta_u: proc_report.total_u - single_use.total_u,
    })
}

fn evaluate_grid(
    channels: &[PauliChannel],
    process: Process,
    opts: &ScanOptions,
) -> Result<Vec<ScanRow>> {
    let indexed: Vec<(usize, PauliChannel)> = channels.iter().copied().enumerate().collect();
    map_ordered(&indexed, opts.execution, |(idx, ch)| {
        let row = evaluate_row(ch, process)?;
        if let Some(stride) = opts.oracle_stride {
            if stride > 0 && idx % stride == 0 {
                check_paths(ch, Process::SingleUse, opts.tol)?;
                if process != Process::SingleUse {
                    check_paths(ch, process, opts.tol)?;
                }
            }
        }
        Ok(row)
    })
    .into_iter()
    .collect()
}

pub fn sweep_1d(spec: &SweepSpec, opts: &ScanOptions) -> Result<Vec<ScanRow>> {
    let channels = spec
        .grid()?
        .into_iter()
        .map(|p| PauliChannel::new(p, spec.alpha))
        .collect::<Result<Vec<_>>>()?;
    evaluate_grid(&channels, spec.process, opts)
}

pub fn scan_simplex(spec: &SimplexSpec, opts: &ScanOptions) -> Result<Vec<ScanRow>> {
    if spec.denominator == 0 {
        return Err(Error::OutOfRange {
            what: "simplex denominator",
            value: 0.0,
        });
    }
    let channels = simplex_points(spec.denominator)
        .into_iter()
        .map(|alpha| PauliChannel::new(spec.p, alpha))
        .collect::<Result<Vec<_>>>()?;
    evaluate_grid(&channels, spec.compare, opts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    XUncertainty,
    Total,
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "x" | "x_uncertainty" => Ok(Quantity::XUncertainty),
            "total" | "u" => Ok(Quantity::Total),
            other => Err(format!("unknown quantity `{other}` (expected x or total)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Crossover {
    At(f64),
    NoCrossover,
}

/// Coarse grid used to bracket the first sign change.
const CROSSOVER_GRID: usize = 1000;
/// Differences within this of zero do not count as a sign.
const CROSSOVER_NOISE: f64 = 1e-12;
/// Bracket width at which bisection stops; well inside the 1e-6 target.
const CROSSOVER_WIDTH: f64 = 1e-10;

/// First `p` in (0, 1] where `process` starts beating single use on
/// `quantity`, found by bracketing on a grid and bisecting.
pub fn find_crossover(alpha: [f64; 3], process: Process, quantity: Quantity) -> Result<Crossover> {
    let diff = |p: f64| -> Result<f64> {
        let ch = PauliChannel::new(p, alpha)?;
        let su = closed_form_report(&ch, Process::SingleUse)?;
        let other = closed_form_report(&ch, process)?;
        Ok(match quantity {
            Quantity::XUncertainty => other.s_x_given_b - su.s_x_given_b,
            Quantity::Total => other.total_u - su.total_u,
        })
    };

    let mut seen_positive = false;
    let mut prev_p = 0.0;
    for k in 1..=CROSSOVER_GRID {
        let p = if k == CROSSOVER_GRID {
            1.0
        } else {
            k as f64 / CROSSOVER_GRID as f64
        };
        let d = diff(p)?;
        if d > CROSSOVER_NOISE {
            seen_positive = true;
        } else if d < -CROSSOVER_NOISE && seen_positive {
            let (mut lo, mut hi) = (prev_p, p);
            while hi - lo > CROSSOVER_WIDTH {
                let mid = 0.5 * (lo + hi);
                if diff(mid)? < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(Crossover::At(0.5 * (lo + hi)));
        }
        prev_p = p;
    }
    Ok(Crossover::NoCrossover)
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros dropped.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn row_record(row: &ScanRow) -> [String; 13] {
    let su = &row.single_use;
    let pr = &row.process;
    [
        row.p,
        row.alpha[0],
        row.alpha[1],
        row.alpha[2],
        su.s_x_given_b,
        su.s_z_given_b,
        su.total_u,
        su.bound_b,
        pr.s_x_given_b,
        pr.s_z_given_b,
        pr.total_u,
        pr.bound_b,
        row.delta_u,
    ]
    .map(format_sig12)
}

pub fn write_csv<W: Write>(rows: &[ScanRow], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row_record(row))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn emit_csv(rows: &[ScanRow], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_csv(rows, BufWriter::new(file))
}

pub fn parse_csv<R: Read>(reader: R) -> Result<Vec<ScanRow>> {
    let mut r = csv::Reader::from_reader(reader);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::InvariantViolation(format!(
            "unexpected CSV header {header:?}"
        )));
    }
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record?;
        let v: Vec<f64> = record
            .iter()
            .map(|field| {
                field.parse::<f64>().map_err(|_| {
                    Error::InvariantViolation(format!("unparseable CSV field `{field}`"))
                })
            })
            .collect::<Result<_>>()?;
        let report = |sx: f64, sz: f64, u: f64, b: f64| UncertaintyReport {
            s_x_given_b: sx,
            s_z_given_b: sz,
            total_u: u,
            bound_b: b,
            slack: u - b,
        };
        rows.push(ScanRow {
            p: v[0],
            alpha: [v[1], v[2], v[3]],
            single_use: report(v[4], v[5], v[6], v[7]),
            process: report(v[8], v[9], v[10], v[11]),
            delta_u: v[12],
        });
    }
    Ok(rows)
}

pub fn read_csv(path: &Path) -> Result<Vec<ScanRow>> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_csv(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> ScanOptions {
        ScanOptions {
            oracle_stride: Some(7),
            ..ScanOptions::default()
        }
    }

    #[test]
    fn sweep_at_fig1_bias() {
        let spec = SweepSpec {
            steps: 2,
            ..SweepSpec::new(Process::Switch, [0.5, 0.5, 0.0])
        };
        let rows = sweep_1d(&spec, &opts()).unwrap();
        let ps: Vec<f64> = rows.iter().map(|r| r.p).collect();
        assert_eq!(ps, vec![0.0, 0.5, 1.0]);
        assert!(rows[0].delta_u.abs() < 1e-12);
        assert!(rows[1].delta_u.abs() < 1e-12);
        assert!(rows[2].delta_u < 0.0);
        assert!(rows[2].process.total_u.abs() < 1e-9);
    }

    #[test]
    fn timeflip_sweep_always_helps() {
        let spec = SweepSpec {
            steps: 50,
            ..SweepSpec::new(Process::TimeFlip, [0.5, 0.3, 0.2])
        };
        let rows = sweep_1d(&spec, &opts()).unwrap();
        assert!(rows.iter().skip(1).all(|r| r.delta_u < 0.0));
    }

    #[test]
    fn bit_flip_sweep_saturates() {
        let spec = SweepSpec {
            steps: 40,
            ..SweepSpec::new(Process::SingleUse, [1.0, 0.0, 0.0])
        };
        for row in sweep_1d(&spec, &opts()).unwrap() {
            assert!(row.single_use.slack.abs() < 1e-9);
            assert_eq!(row.delta_u, 0.0);
        }
    }

    #[test]
    fn sweep_rejects_bad_specs() {
        let mut spec = SweepSpec::new(Process::Switch, [0.5, 0.5, 0.0]);
        spec.p_max = 1.5;
        assert!(sweep_1d(&spec, &opts()).is_err());
        let spec = SweepSpec::new(Process::Switch, [0.5, 0.6, 0.0]);
        assert!(sweep_1d(&spec, &opts()).is_err());
        let spec = SweepSpec {
            steps: 0,
            ..SweepSpec::new(Process::Switch, [0.5, 0.5, 0.0])
        };
        assert!(sweep_1d(&spec, &opts()).is_err());
    }

    #[test]
    fn simplex_grid_shape() {
        let pts = simplex_points(4);
        assert_eq!(pts.len(), 15);
        assert_eq!(pts[0], [0.0, 0.0, 1.0]);
        assert_eq!(*pts.last().unwrap(), [1.0, 0.0, 0.0]);
        assert_eq!(simplex_points(200).len(), 201 * 202 / 2);
        for a in simplex_points(7) {
            assert!(a.iter().all(|&x| x >= 0.0));
            assert!((a.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn simplex_scan_low_noise_has_no_switch_advantage() {
        let spec = SimplexSpec {
            compare: Process::Switch,
            p: 0.25,
            denominator: 40,
        };
        let rows = scan_simplex(&spec, &opts()).unwrap();
        assert_eq!(rows.len(), 41 * 42 / 2);
        let min = rows.iter().map(|r| r.delta_u).fold(f64::INFINITY, f64::min);
        assert!(min >= -1e-9);
    }

    #[test]
    fn simplex_scan_timeflip_full_noise_reaches_minus_one() {
        let spec = SimplexSpec {
            compare: Process::TimeFlip,
            p: 1.0,
            denominator: 40,
        };
        let rows = scan_simplex(&spec, &opts()).unwrap();
        let best = rows
            .iter()
            .min_by(|a, b| a.delta_u.total_cmp(&b.delta_u))
            .unwrap();
        assert!((best.delta_u + 1.0).abs() < 1e-9);
        assert_eq!(best.alpha[2], 0.0);
        assert!((best.alpha[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn simplex_scan_timeflip_half_noise_everywhere_but_edge() {
        let spec = SimplexSpec {
            compare: Process::TimeFlip,
            p: 0.5,
            denominator: 20,
        };
        for row in scan_simplex(&spec, &opts()).unwrap() {
            if row.alpha[1] == 0.0 {
                assert!(row.delta_u.abs() < 1e-12);
            } else {
                assert!(row.delta_u < 0.0, "{row:?}");
            }
        }
    }

    #[test]
    fn crossover_examples() {
        match find_crossover([0.5, 0.5, 0.0], Process::Switch, Quantity::Total).unwrap() {
            Crossover::At(p) => assert!((p - 0.5).abs() < 1e-6, "{p}"),
            other => panic!("{other:?}"),
        }
        // Roots frozen from an independent numpy computation.
        match find_crossover([0.5, 0.1, 0.4], Process::Switch, Quantity::XUncertainty).unwrap() {
            Crossover::At(p) => assert!((p - 0.5434782608695654).abs() < 1e-6, "{p}"),
            other => panic!("{other:?}"),
        }
        match find_crossover([0.5, 0.1, 0.4], Process::Switch, Quantity::Total).unwrap() {
            Crossover::At(p) => assert!((p - 0.6095812313515987).abs() < 1e-6, "{p}"),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            find_crossover([1.0, 0.0, 0.0], Process::Switch, Quantity::Total).unwrap(),
            Crossover::NoCrossover
        );
        // The time-flip wins from the start: no sign change.
        assert_eq!(
            find_crossover([0.5, 0.3, 0.2], Process::TimeFlip, Quantity::Total).unwrap(),
            Crossover::NoCrossover
        );
    }

    #[test]
    fn sig12_formatting() {
        assert_eq!(format_sig12(0.0), "0");
        assert_eq!(format_sig12(-0.0), "0");
        assert_eq!(format_sig12(1.0), "1");
        assert_eq!(format_sig12(0.5), "0.5");
        assert_eq!(format_sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig12(-2.0 / 3.0), "-0.666666666667");
        assert_eq!(format_sig12(1.4438561897747249), "1.44385618977");
        assert_eq!(format_sig12(0.9999999999999), "1");
        assert_eq!(format_sig12(1.234e-7), "1.234e-7");
        assert_eq!(format_sig12(-1.5e-20), "-1.5e-20");
    }

    #[test]
    fn empty_and_single_row_csv() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            format!("{}\n", CSV_HEADER.join(","))
        );
        assert!(parse_csv(buf.as_slice()).unwrap().is_empty());

        let row = evaluate_row(&PauliChannel::depolarizing(0.3).unwrap(), Process::Switch).unwrap();
        let mut buf = Vec::new();
        write_csv(&[row], &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().count(), 2);
        let back = parse_csv(buf.as_slice()).unwrap();
        assert_eq!(back.len(), 1);
        assert!((back[0].process.total_u - row.process.total_u).abs() < 1e-11);
    }

    #[test]
    fn csv_rejects_wrong_header() {
        let text = "a,b\n1,2\n";
        assert!(parse_csv(text.as_bytes()).is_err());
    }
}
