//! Memory-assisted entropic uncertainty evaluated directly on two-qubit
//! density matrices: non-selective measurements on the control qubit,
//! conditional entropies, total uncertainty and its lower bound.

use crate::error::{Error, Result};
use crate::matcore::{kron, partial_trace_a, re, von_neumann_entropy, CMat, Pauli, DEFAULT_TOL};

/// Deviation from `I/2` tolerated on the memory marginal before the
/// reduced bound `S(rho_AB)` is refused.
pub const MARGINAL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Observable {
    SigmaX,
    SigmaZ,
}

impl Observable {
    /// Projectors onto the `+1` and `-1` eigenspaces, `(I +- sigma)/2`.
    pub fn projectors(self) -> [CMat; 2] {
        let s = match self {
            Observable::SigmaX => Pauli::X.matrix(),
            Observable::SigmaZ => Pauli::Z.matrix(),
        };
        let id = CMat::identity(2);
        [(&id + &s).scale(re(0.5)), (&id - &s).scale(re(0.5))]
    }
}

/// The measured pair `(sigma_x, sigma_z)` with its complementarity
/// `c = max |<psi_i|phi_j>|^2 = 1/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementPair {
    pub first: Observable,
    pub second: Observable,
    complementarity: f64,
}

impl MeasurementPair {
    pub fn standard() -> Self {
        Self {
            first: Observable::SigmaX,
            second: Observable::SigmaZ,
            complementarity: 0.5,
        }
    }

    /// Overrides the complementarity constant. Only meant for exercising
    /// [`maassen_uffink_bound`] on degenerate values.
    #[doc(hidden)]
    pub fn with_complementarity(c: f64) -> Result<Self> {
        if !(c > 0.0 && c <= 1.0) {
            return Err(Error::OutOfRange {
                what: "complementarity",
                value: c,
            });
        }
        Ok(Self {
            complementarity: c,
            ..Self::standard()
        })
    }

    pub fn complementarity(&self) -> f64 {
        self.complementarity
    }
}

impl Default for MeasurementPair {
    fn default() -> Self {
        Self::standard()
    }
}

/// `-log2 c`.
pub fn maassen_uffink_bound(pair: &MeasurementPair) -> f64 {
    -pair.complementarity.log2()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UncertaintyReport {
    pub s_x_given_b: f64,
    pub s_z_given_b: f64,
    pub total_u: f64,
    pub bound_b: f64,
    pub slack: f64,
}

impl UncertaintyReport {
    pub fn new(s_x_given_b: f64, s_z_given_b: f64, bound_b: f64) -> Self {
        let total_u = s_x_given_b + s_z_given_b;
        Self {
            s_x_given_b,
            s_z_given_b,
            total_u,
            bound_b,
            slack: total_u - bound_b,
        }
    }

    /// Largest absolute difference over the four reported quantities.
    pub fn max_abs_diff(&self, other: &UncertaintyReport) -> f64 {
        [
            self.s_x_given_b - other.s_x_given_b,
            self.s_z_given_b - other.s_z_given_b,
            self.total_u - other.total_u,
            self.bound_b - other.bound_b,
        ]
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max)
    }
}

/// `sum_k (P_k (x) I) rho (P_k (x) I)` for the eigenprojectors of `obs`.
pub fn post_measurement_state(rho: &CMat, obs: Observable) -> Result<CMat> {
    rho.expect_shape(4, 4)?;
    let id = CMat::identity(2);
    let mut out = CMat::zeros(4, 4);
    for p in obs.projectors() {
        let big = kron(&p, &id)?;
        out = &out + &big.sandwich(rho);
    }
    Ok(out)
}

/// `S(A|B) = S(rho_AB) - S(rho_B)`; negative for sufficiently entangled states.
pub fn conditional_entropy(rho_joint: &CMat) -> Result<f64> {
    let joint = von_neumann_entropy(rho_joint, DEFAULT_TOL)?;
    let marginal = von_neumann_entropy(&partial_trace_a(rho_joint)?, DEFAULT_TOL)?;
    Ok(joint - marginal)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BoundMode {
    /// Requires `rho_B = I/2` and uses `-log2 c + S(rho_AB) - 1`.
    #[default]
    MaximallyMixedMemory,
    /// `-log2 c + S(A|B)` for any state.
    General,
}

/// Evaluates both sides of the relation with the reduced bound; the memory
/// marginal must be maximally mixed.
pub fn evaluate_maeur(rho: &CMat, pair: &MeasurementPair) -> Result<UncertaintyReport> {
    evaluate_maeur_with(rho, pair, BoundMode::MaximallyMixedMemory)
}

pub fn evaluate_maeur_with(
    rho: &CMat,
    pair: &MeasurementPair,
    mode: BoundMode,
) -> Result<UncertaintyReport> {
    rho.expect_shape(4, 4)?;
    let rho_b = partial_trace_a(rho)?;
    let s_b = von_neumann_entropy(&rho_b, DEFAULT_TOL)?;
    let s_ab = von_neumann_entropy(rho, DEFAULT_TOL)?;

    let bound = match mode {
        BoundMode::MaximallyMixedMemory => {
            let deviation = rho_b.distance(&CMat::identity(2).scale(re(0.5)));
            if deviation > MARGINAL_TOL {
                return Err(Error::MarginalNotMaximallyMixed { deviation });
            }
            maassen_uffink_bound(pair) + s_ab - 1.0
        }
        BoundMode::General => maassen_uffink_bound(pair) + s_ab - s_b,
    };

    let conditional = |obs| -> Result<f64> {
        let post = post_measurement_state(rho, obs)?;
        Ok(von_neumann_entropy(&post, DEFAULT_TOL)? - s_b)
    };
    Ok(UncertaintyReport::new(
        conditional(pair.first)?,
        conditional(pair.second)?,
        bound,
    ))
}
