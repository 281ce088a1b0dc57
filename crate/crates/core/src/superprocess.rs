//! Quantum switch and quantum time-flip superchannels acting on a
//! control (A) plus memory (B) two-qubit system.
//!
//! Both constructions produce Kraus operators of the form
//! `|0><0| (x) A_k + |1><1| (x) B_k`, so a superchannel is stored as the list
//! of branch pairs `(A_k, B_k)`. The full 4x4 Kraus operators are built from
//! those pairs once, and the block superoperators
//! `X_ab -> sum_k A_k X_ab B_k^dagger` (with the obvious substitutions) are
//! evaluated straight from the pairs. The two give independent routes to the
//! same output state.

use crate::channels::KrausChannel;
use crate::error::{Error, Result};
use crate::matcore::{kron, partial_trace_a, re, CMat, C64, DEFAULT_TOL};

/// Probability below which a readout outcome is reported unnormalized.
pub const ZERO_PROBABILITY: f64 = 1e-12;

/// A two-qubit operator split into 2x2 blocks in the control basis:
/// `rho = sum_ab |a><b| (x) X_ab`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDecomposition {
    pub x00: CMat,
    pub x01: CMat,
    pub x10: CMat,
    pub x11: CMat,
}

impl BlockDecomposition {
    pub fn from_matrix(m: &CMat) -> Result<Self> {
        m.expect_shape(4, 4)?;
        let block = |a: usize, b: usize| {
            let mut x = CMat::zeros(2, 2);
            for i in 0..2 {
                for j in 0..2 {
                    x[(i, j)] = m[(2 * a + i, 2 * b + j)];
                }
            }
            x
        };
        Ok(Self {
            x00: block(0, 0),
            x01: block(0, 1),
            x10: block(1, 0),
            x11: block(1, 1),
        })
    }

    pub fn reassemble(&self) -> CMat {
        let mut m = CMat::zeros(4, 4);
        for (a, b, x) in [
            (0, 0, &self.x00),
            (0, 1, &self.x01),
            (1, 0, &self.x10),
            (1, 1, &self.x11),
        ] {
            for i in 0..2 {
                for j in 0..2 {
                    m[(2 * a + i, 2 * b + j)] = x[(i, j)];
                }
            }
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuperKind {
    Switch,
    TimeFlip,
}

#[derive(Clone, Debug)]
pub struct Superchannel {
    kind: SuperKind,
    branches: Vec<(CMat, CMat)>,
    ops: Vec<CMat>,
}

impl Superchannel {
    fn from_branches(kind: SuperKind, branches: Vec<(CMat, CMat)>) -> Self {
        let p0 = CMat::diag(&[1.0, 0.0]);
        let p1 = CMat::diag(&[0.0, 1.0]);
        let ops = branches
            .iter()
            .map(|(a, b)| {
                let zero = kron(&p0, a).expect("square");
                let one = kron(&p1, b).expect("square");
                &zero + &one
            })
            .collect();
        Self {
            kind,
            branches,
            ops,
        }
    }

    /// The identity on the joint system.
    pub fn identity() -> Self {
        Self::from_branches(
            SuperKind::Switch,
            vec![(CMat::identity(2), CMat::identity(2))],
        )
    }

    pub fn kind(&self) -> SuperKind {
        self.kind
    }

    /// The 4x4 Kraus operators.
    pub fn ops(&self) -> &[CMat] {
        &self.ops
    }

    /// The per-branch operators `(A_k, B_k)` conditioned on control `|0>` and `|1>`.
    pub fn branches(&self) -> &[(CMat, CMat)] {
        &self.branches
    }

    /// `|sum_k S_k^dagger S_k - I_4|_F`.
    pub fn trace_preservation_defect(&self) -> f64 {
        let sum = self
            .ops
            .iter()
            .fold(CMat::zeros(4, 4), |acc, s| &acc + &(&s.dagger() * s));
        sum.distance(&CMat::identity(4))
    }

    pub fn apply(&self, rho: &CMat) -> Result<CMat> {
        rho.expect_shape(4, 4)?;
        Ok(self
            .ops
            .iter()
            .fold(CMat::zeros(4, 4), |acc, s| &acc + &s.sandwich(rho)))
    }

    /// Images of the four conditional blocks under the block superoperators.
    pub fn block_superoperators(&self, blocks: &BlockDecomposition) -> BlockDecomposition {
        let sum = |x: &CMat, left_branch: usize, right_branch: usize| {
            self.branches.iter().fold(CMat::zeros(2, 2), |acc, br| {
                let pick = |k: usize| if k == 0 { &br.0 } else { &br.1 };
                &acc + &(&(pick(left_branch) * x) * &pick(right_branch).dagger())
            })
        };
        BlockDecomposition {
            x00: sum(&blocks.x00, 0, 0),
            x01: sum(&blocks.x01, 0, 1),
            x10: sum(&blocks.x10, 1, 0),
            x11: sum(&blocks.x11, 1, 1),
        }
    }
}

/// `S_ij = |0><0| (x) M2_i M1_j + |1><1| (x) M1_j M2_i`, indices in
/// lexicographic `(i, j)` order.
pub fn build_switch(ch1: &KrausChannel, ch2: &KrausChannel) -> Superchannel {
    let mut branches = Vec::with_capacity(ch1.ops().len() * ch2.ops().len());
    for m2 in ch2.ops() {
        for m1 in ch1.ops() {
            branches.push((m2 * m1, m1 * m2));
        }
    }
    Superchannel::from_branches(SuperKind::Switch, branches)
}

/// `F_i = |0><0| (x) M_i + |1><1| (x) M_i^T`. Only bidirectional (unital)
/// channels admit a time-flip.
pub fn build_timeflip(ch: &KrausChannel) -> Result<Superchannel> {
    let backward = ch.transpose()?;
    let branches = ch
        .ops()
        .iter()
        .cloned()
        .zip(backward.ops().iter().cloned())
        .collect();
    Ok(Superchannel::from_branches(SuperKind::TimeFlip, branches))
}

pub fn apply_superchannel(s: &Superchannel, rho: &CMat) -> Result<CMat> {
    s.apply(rho)
}

pub fn block_superoperators(s: &Superchannel, blocks: &BlockDecomposition) -> BlockDecomposition {
    s.block_superoperators(blocks)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReadoutMode {
    ZBasis,
    XBasis,
    TracedOut,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Zero,
    One,
    Plus,
    Minus,
    /// Control discarded.
    None,
}

/// State of the memory after a readout of the control qubit.
#[derive(Clone, Debug)]
pub struct ControlReadout {
    pub mode: ReadoutMode,
    pub outcome: Outcome,
    pub probability: f64,
    /// Normalized conditional state, or the unnormalized block when
    /// `zero_probability` is set.
    pub state: CMat,
    pub zero_probability: bool,
}

impl ControlReadout {
    fn from_unnormalized(mode: ReadoutMode, outcome: Outcome, block: CMat) -> Self {
        let probability = block.trace().re;
        if probability < ZERO_PROBABILITY {
            return Self {
                mode,
                outcome,
                probability: probability.max(0.0),
                state: block,
                zero_probability: true,
            };
        }
        Self {
            mode,
            outcome,
            probability,
            state: block.scale(re(1.0 / probability)),
            zero_probability: false,
        }
    }
}

fn control_projector(outcome: Outcome) -> CMat {
    let h = re(0.5);
    match outcome {
        Outcome::Zero => CMat::diag(&[1.0, 0.0]),
        Outcome::One => CMat::diag(&[0.0, 1.0]),
        Outcome::Plus => CMat::new(2, 2, vec![h, h, h, h]).expect("2x2"),
        Outcome::Minus => CMat::new(2, 2, vec![h, -h, -h, h]).expect("2x2"),
        Outcome::None => CMat::identity(2),
    }
}

/// Measures (or discards) the control qubit of a joint output state and
/// returns the memory's conditional states.
///
/// The x-basis outcomes are computed with the projector sandwich
/// `Tr_A[(P (x) I) rho (P (x) I)]` on the full matrix; see
/// [`x_basis_from_blocks`] for the block formula.
pub fn readout_control(rho_out: &CMat, mode: ReadoutMode) -> Result<Vec<ControlReadout>> {
    rho_out.expect_shape(4, 4)?;
    let outcomes: &[Outcome] = match mode {
        ReadoutMode::ZBasis => &[Outcome::Zero, Outcome::One],
        ReadoutMode::XBasis => &[Outcome::Plus, Outcome::Minus],
        ReadoutMode::TracedOut => &[Outcome::None],
    };
    outcomes
        .iter()
        .map(|&outcome| {
            let proj = kron(&control_projector(outcome), &CMat::identity(2))?;
            let conditioned = &(&proj * rho_out) * &proj;
            let block = partial_trace_a(&conditioned)?;
            Ok(ControlReadout::from_unnormalized(mode, outcome, block))
        })
        .collect()
}

/// Unnormalized memory states for the `|+>` and `|->` control outcomes,
/// `1/2 [Y00 + Y11 +- (Y01 + Y10)]`, from the blocks of an output state.
pub fn x_basis_from_blocks(blocks: &BlockDecomposition) -> [CMat; 2] {
    let diag = &blocks.x00 + &blocks.x11;
    let coh = &blocks.x01 + &blocks.x10;
    let half: C64 = re(0.5);
    [(&diag + &coh).scale(half), (&diag - &coh).scale(half)]
}

/// Checks a superchannel is trace preserving on the joint system.
pub fn validate(s: &Superchannel) -> Result<()> {
    let defect = s.trace_preservation_defect();
    if defect > DEFAULT_TOL {
        return Err(Error::InvariantViolation(format!(
            "superchannel is not trace preserving (defect {defect:e})"
        )));
    }
    Ok(())
}
