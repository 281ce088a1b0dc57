//! Brute-force evaluation path: build the Bell state, push it through explicit
//! Kraus operators, and measure entropies by diagonalization. Used to check
//! every closed form in [`crate::analytic`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::{closed_form_report, BellDiagonalCoeffs, Process};
use crate::channels::PauliChannel;
use crate::error::{Error, Result};
use crate::maeur::{evaluate_maeur, MeasurementPair, UncertaintyReport};
use crate::matcore::{kron, re, CMat, ZERO};
use crate::par::{map_ordered, Execution};
use crate::superprocess::{build_switch, build_timeflip};

/// Tolerance on Bell-diagonal coefficients between the two paths.
pub const COEFF_TOL: f64 = 1e-10;

/// Default tolerance on reported entropies between the two paths.
pub const REPORT_TOL: f64 = 1e-9;

/// Largest off-pattern entry tolerated in an output that should be
/// Bell-diagonal.
pub const BELL_DIAGONAL_TOL: f64 = 1e-12;

/// `|psi><psi|` with `|psi> = (|00> + |11>) / sqrt 2`.
pub fn bell_state() -> CMat {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CMat::outer(&[re(s), ZERO, ZERO, re(s)])
}

/// Applies `process` (built from explicit Kraus operators of `ch`) to `rho`.
pub fn evolve(rho: &CMat, ch: &PauliChannel, process: Process) -> Result<CMat> {
    let kraus = ch.to_kraus();
    match process {
        Process::SingleUse => {
            rho.expect_shape(4, 4)?;
            let id = CMat::identity(2);
            let mut out = CMat::zeros(4, 4);
            for k in kraus.ops() {
                out = &out + &kron(&id, k)?.sandwich(rho);
            }
            Ok(out)
        }
        Process::Switch => build_switch(&kraus, &kraus).apply(rho),
        Process::TimeFlip => build_timeflip(&kraus)?.apply(rho),
    }
}

pub fn evolve_bell_state(ch: &PauliChannel, process: Process) -> Result<CMat> {
    evolve(&bell_state(), ch, process)
}

pub fn oracle_report(ch: &PauliChannel, process: Process) -> Result<UncertaintyReport> {
    evaluate_maeur(
        &evolve_bell_state(ch, process)?,
        &MeasurementPair::standard(),
    )
}

/// Both paths evaluated at one channel and process.
#[derive(Clone, Copy, Debug)]
pub struct PathComparison {
    pub channel: PauliChannel,
    pub process: Process,
    pub analytic: UncertaintyReport,
    pub oracle: UncertaintyReport,
    pub coeff_diff: f64,
    /// Distance of the oracle state from the Bell-diagonal family.
    pub bell_residual: f64,
}

impl PathComparison {
    pub fn report_diff(&self) -> f64 {
        self.analytic.max_abs_diff(&self.oracle)
    }

    pub fn agrees(&self, tol: f64) -> bool {
        self.report_diff() <= tol
            && self.coeff_diff <= COEFF_TOL
            && self.bell_residual <= BELL_DIAGONAL_TOL
    }

    pub fn describe(&self) -> String {
        format!(
            "{}: report diff {:.3e}, coefficient diff {:.3e}, Bell-diagonal residual {:.3e}",
            self.process,
            self.report_diff(),
            self.coeff_diff,
            self.bell_residual
        )
    }
}

pub fn compare_paths(ch: &PauliChannel, process: Process) -> Result<PathComparison> {
    let state = evolve_bell_state(ch, process)?;
    let (extracted, bell_residual) = BellDiagonalCoeffs::from_state(&state)?;
    let coeff_diff = extracted.max_abs_diff(&process.coeffs(ch));
    let oracle = evaluate_maeur(&state, &MeasurementPair::standard())?;
    let analytic = closed_form_report(ch, process)?;
    Ok(PathComparison {
        channel: *ch,
        process,
        analytic,
        oracle,
        coeff_diff,
        bell_residual,
    })
}

/// Fails with [`Error::OracleMismatch`] unless the two paths agree to `tol`.
pub fn check_paths(ch: &PauliChannel, process: Process, tol: f64) -> Result<PathComparison> {
    let cmp = compare_paths(ch, process)?;
    if !cmp.agrees(tol) {
        return Err(Error::OracleMismatch {
            p: ch.p(),
            alpha: ch.alpha(),
            detail: cmp.describe(),
        });
    }
    Ok(cmp)
}

/// Uniform `p` in [0, 1] and a bias vector uniform on the simplex.
pub fn random_channel<R: Rng + ?Sized>(rng: &mut R) -> PauliChannel {
    let p: f64 = rng.random();
    let (mut u, mut v): (f64, f64) = (rng.random(), rng.random());
    if u > v {
        std::mem::swap(&mut u, &mut v);
    }
    PauliChannel::new(p, [u, v - u, 1.0 - v]).expect("simplex sample is a valid bias vector")
}

pub fn random_channels(samples: usize, seed: u64) -> Vec<PauliChannel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| random_channel(&mut rng)).collect()
}

#[derive(Clone, Debug, Default)]
pub struct VerifySummary {
    pub samples: usize,
    pub comparisons: usize,
    pub max_report_diff: f64,
    pub max_coeff_diff: f64,
    pub max_bell_residual: f64,
    pub min_slack: f64,
    pub failures: Vec<String>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Oracle-equivalence sweep over `samples` seeded random channels and all
/// three processes. Also records the smallest slack of the relation seen on
/// either path.
pub fn verify_random(samples: usize, seed: u64, tol: f64, exec: Execution) -> VerifySummary {
    let channels = random_channels(samples, seed);
    let results = map_ordered(&channels, exec, |ch| {
        Process::ALL
            .iter()
            .map(|&process| compare_paths(ch, process).map_err(|e| (*ch, process, e)))
            .collect::<Vec<_>>()
    });

    let mut summary = VerifySummary {
        samples,
        min_slack: f64::INFINITY,
        ..Default::default()
    };
    for result in results.into_iter().flatten() {
        summary.comparisons += 1;
        match result {
            Ok(cmp) => {
                summary.max_report_diff = summary.max_report_diff.max(cmp.report_diff());
                summary.max_coeff_diff = summary.max_coeff_diff.max(cmp.coeff_diff);
                summary.max_bell_residual = summary.max_bell_residual.max(cmp.bell_residual);
                summary.min_slack = summary
                    .min_slack
                    .min(cmp.oracle.slack)
                    .min(cmp.analytic.slack);
                if !cmp.agrees(tol) {
                    summary.failures.push(format!(
                        "p = {}, alpha = {:?}, {}",
                        cmp.channel.p(),
                        cmp.channel.alpha(),
                        cmp.describe()
                    ));
                }
            }
            Err((ch, process, e)) => summary.failures.push(format!(
                "p = {}, alpha = {:?}, {process}: {e}",
                ch.p(),
                ch.alpha()
            )),
        }
    }
    summary
}
