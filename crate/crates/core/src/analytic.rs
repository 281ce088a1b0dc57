//! Closed forms for a Bell state whose memory qubit goes through a Pauli
//! channel once, through the self-switch of two copies, or through the
//! time-flip.
//!
//! All three output states are Bell-diagonal,
//! `1/4 [II + c_x XX - c_y YY + c_z ZZ]`, so every quantity follows from the
//! correlation triple:
//!
//! | process    | c_x      | c_y      | c_z        |
//! |------------|----------|----------|------------|
//! | single use | lambda_x | lambda_y | lambda_z   |
//! | switch     | kappa_x  | kappa_y  | lambda_z^2 |
//! | time-flip  | 1-2a_z p | 1-2p     | lambda_z   |

use std::fmt;
use std::str::FromStr;

use crate::channels::PauliChannel;
use crate::error::{Error, Result};
use crate::maeur::UncertaintyReport;
use crate::matcore::{binary_entropy, kron, re, shannon_entropy, CMat, Pauli};

/// Strictness margin for "uncertainty decreased".
pub const ADVANTAGE_EPS: f64 = 1e-9;

/// Most negative eigenvalue accepted for a Bell-diagonal triple.
pub const EIGENVALUE_TOL: f64 = 1e-12;

pub const SATURATION_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Process {
    SingleUse,
    Switch,
    TimeFlip,
}

impl Process {
    pub const ALL: [Process; 3] = [Process::SingleUse, Process::Switch, Process::TimeFlip];

    pub fn coeffs(self, ch: &PauliChannel) -> BellDiagonalCoeffs {
        match self {
            Process::SingleUse => coeffs_single_use(ch),
            Process::Switch => coeffs_switch(ch),
            Process::TimeFlip => coeffs_timeflip(ch),
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Process::SingleUse => "su",
            Process::Switch => "sw",
            Process::TimeFlip => "tf",
        }
    }
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Process {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "su" | "single-use" | "single_use" => Ok(Process::SingleUse),
            "sw" | "switch" => Ok(Process::Switch),
            "tf" | "timeflip" | "time-flip" => Ok(Process::TimeFlip),
            other => Err(format!("unknown process `{other}` (expected su, sw or tf)")),
        }
    }
}

/// Correlation coefficients of `1/4 [II + c_x XX - c_y YY + c_z ZZ]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellDiagonalCoeffs {
    pub c_x: f64,
    pub c_y: f64,
    pub c_z: f64,
}

impl BellDiagonalCoeffs {
    pub fn new(c_x: f64, c_y: f64, c_z: f64) -> Result<Self> {
        let coeffs = Self { c_x, c_y, c_z };
        coeffs.validate()?;
        Ok(coeffs)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(&v) = self.eigenvalues().iter().find(|&&v| v < -EIGENVALUE_TOL) {
            return Err(Error::NegativeEigenvalue { value: v });
        }
        Ok(())
    }

    /// `1/4 (1 + c_z +- (c_x + c_y))`, `1/4 (1 - c_z +- (c_x - c_y))`.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let Self { c_x, c_y, c_z } = *self;
        [
            0.25 * (1.0 + c_z + (c_x + c_y)),
            0.25 * (1.0 + c_z - (c_x + c_y)),
            0.25 * (1.0 - c_z + (c_x - c_y)),
            0.25 * (1.0 - c_z - (c_x - c_y)),
        ]
    }

    pub fn density_matrix(&self) -> CMat {
        let pp = |s: Pauli| kron(&s.matrix(), &s.matrix()).expect("2x2");
        let mut m = CMat::identity(4);
        m = &m + &pp(Pauli::X).scale(re(self.c_x));
        m = &m - &pp(Pauli::Y).scale(re(self.c_y));
        m = &m + &pp(Pauli::Z).scale(re(self.c_z));
        m.scale(re(0.25))
    }

    /// Reads the triple off a two-qubit state as `(Tr[rho XX], -Tr[rho YY],
    /// Tr[rho ZZ])`, together with the Frobenius distance between `rho` and
    /// the Bell-diagonal state built from it.
    pub fn from_state(rho: &CMat) -> Result<(Self, f64)> {
        rho.expect_shape(4, 4)?;
        let corr =
            |s: Pauli| -> Result<f64> { Ok((rho * &kron(&s.matrix(), &s.matrix())?).trace().re) };
        let coeffs = Self {
            c_x: corr(Pauli::X)?,
            c_y: -corr(Pauli::Y)?,
            c_z: corr(Pauli::Z)?,
        };
        let residual = rho.distance(&coeffs.density_matrix());
        Ok((coeffs, residual))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.c_x - other.c_x)
            .abs()
            .max((self.c_y - other.c_y).abs())
            .max((self.c_z - other.c_z).abs())
    }
}

/// `H_bin((1 + t) / 2)`, the conditional entropy carried by one correlation
/// coefficient. Even in `t` and decreasing in `|t|`.
pub fn correlation_entropy(t: f64) -> Result<f64> {
    binary_entropy(0.5 * (1.0 + t))
}

pub fn coeffs_single_use(ch: &PauliChannel) -> BellDiagonalCoeffs {
    let [c_x, c_y, c_z] = ch.shrink_factors().lambda;
    BellDiagonalCoeffs { c_x, c_y, c_z }
}

/// Self-switch of two copies of `ch`.
pub fn coeffs_switch(ch: &PauliChannel) -> BellDiagonalCoeffs {
    let p = ch.p();
    let [ax, ay, az] = ch.alpha();
    let lz = ch.shrink_factors().z();
    let c_x = (1.0 - 2.0 * p * (ay + az)).powi(2) + 4.0 * p * p * (ax * ay + ax * az - ay * az);
    let c_y = (1.0 - 2.0 * p * (ax + az)).powi(2) + 4.0 * p * p * (ax * ay - ax * az + ay * az);
    BellDiagonalCoeffs {
        c_x,
        c_y,
        c_z: lz * lz,
    }
}

pub fn coeffs_timeflip(ch: &PauliChannel) -> BellDiagonalCoeffs {
    let p = ch.p();
    let az = ch.alpha()[2];
    BellDiagonalCoeffs {
        c_x: 1.0 - 2.0 * az * p,
        c_y: 1.0 - 2.0 * p,
        c_z: ch.shrink_factors().z(),
    }
}

pub fn uncertainty_closed_form(c: &BellDiagonalCoeffs) -> Result<UncertaintyReport> {
    c.validate()?;
    let s_x = correlation_entropy(c.c_x)?;
    let s_z = correlation_entropy(c.c_z)?;
    let bound = shannon_entropy(&c.eigenvalues());
    Ok(UncertaintyReport::new(s_x, s_z, bound))
}

pub fn closed_form_report(ch: &PauliChannel, process: Process) -> Result<UncertaintyReport> {
    uncertainty_closed_form(&process.coeffs(ch))
}

/// `lambda_y = lambda_x lambda_z`: the single-use state saturates the bound.
pub fn saturation_predicate(ch: &PauliChannel) -> bool {
    let [lx, ly, lz] = ch.shrink_factors().lambda;
    (ly - lx * lz).abs() <= SATURATION_TOL
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdvantageVerdict {
    /// `U_process - U_su` in bits.
    pub delta_u: f64,
    pub advantaged: bool,
    /// Switch: the `p` threshold, `None` when `lambda_x` or `kappa_x` is
    /// negative and the threshold does not apply. Time-flip: the exact
    /// window `0 < a_y p < 1 - 2 a_z p`.
    pub necessary_condition_met: Option<bool>,
}

/// Error probability above which the switch can lower the x-uncertainty,
/// `(a_y + a_z) / (2 (a_y + a_z - a_y a_z))`. `None` for the bit-flip
/// channel, where no threshold exists.
pub fn switch_threshold(alpha: [f64; 3]) -> Option<f64> {
    let s = alpha[1] + alpha[2];
    let denom = 2.0 * (s - alpha[1] * alpha[2]);
    (denom > 0.0).then(|| s / denom)
}

pub fn switch_advantage(ch: &PauliChannel) -> Result<AdvantageVerdict> {
    let su = closed_form_report(ch, Process::SingleUse)?;
    let sw = closed_form_report(ch, Process::Switch)?;
    let delta_u = sw.total_u - su.total_u;

    let lambda_x = ch.shrink_factors().x();
    let kappa_x = coeffs_switch(ch).c_x;
    let necessary = (lambda_x >= 0.0 && kappa_x >= 0.0).then(|| {
        let [_, ay, az] = ch.alpha();
        let s = ay + az;
        // p > s / (2 (s - a_y a_z)), cleared of the denominator.
        2.0 * ch.p() * (s - ay * az) > s
    });

    Ok(AdvantageVerdict {
        delta_u,
        advantaged: delta_u < -ADVANTAGE_EPS,
        necessary_condition_met: necessary,
    })
}

/// `0 < a_y p < 1 - 2 a_z p`, equivalent to `|tau_x| > |lambda_x|`.
pub fn timeflip_window(ch: &PauliChannel) -> bool {
    let p = ch.p();
    let [_, ay, az] = ch.alpha();
    0.0 < ay * p && ay * p < 1.0 - 2.0 * az * p
}

/// The verdict follows the algebraic window; on its boundary `delta_u` is
/// within round-off of zero.
pub fn timeflip_advantage(ch: &PauliChannel) -> Result<AdvantageVerdict> {
    let su = closed_form_report(ch, Process::SingleUse)?;
    let tf = closed_form_report(ch, Process::TimeFlip)?;
    let window = timeflip_window(ch);
    Ok(AdvantageVerdict {
        delta_u: tf.total_u - su.total_u,
        advantaged: window,
        necessary_condition_met: Some(window),
    })
}
