//! Qubit channels in Kraus form, with Pauli channels as a parametrized
//! first-class type.

use crate::error::{Error, Result};
use crate::matcore::{re, CMat, Pauli, DEFAULT_TOL};

/// Tolerance on the bias vector sum for which the last component is
/// silently adjusted.
pub const ALPHA_SUM_TOL: f64 = 1e-9;

/// Tolerance on the raw probability vector sum; never renormalized.
pub const PROBABILITY_SUM_TOL: f64 = 1e-12;

/// A qubit channel `rho -> sum_i K_i rho K_i^dagger`.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    ops: Vec<CMat>,
    unital: bool,
}

impl KrausChannel {
    /// Validates trace preservation and records whether the channel is unital.
    pub fn new(ops: Vec<CMat>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::InvalidChannel("no Kraus operators".into()));
        }
        for op in &ops {
            op.expect_shape(2, 2)?;
        }
        let id = CMat::identity(2);
        let tp_defect = kraus_sum(&ops, |k| &k.dagger() * k).distance(&id);
        if tp_defect > DEFAULT_TOL {
            return Err(Error::InvalidChannel(format!(
                "sum K^dagger K deviates from identity by {tp_defect:e}"
            )));
        }
        let unital = kraus_sum(&ops, |k| k * &k.dagger()).distance(&id) <= DEFAULT_TOL;
        Ok(Self { ops, unital })
    }

    pub fn identity() -> Self {
        Self {
            ops: vec![CMat::identity(2)],
            unital: true,
        }
    }

    /// Single-Kraus unitary channel.
    pub fn unitary(u: CMat) -> Result<Self> {
        Self::new(vec![u])
    }

    pub fn ops(&self) -> &[CMat] {
        &self.ops
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    /// `sum_i K_i rho K_i^dagger`. Works on arbitrary 2x2 operators, not only
    /// density matrices.
    pub fn apply(&self, rho: &CMat) -> Result<CMat> {
        rho.expect_shape(2, 2)?;
        Ok(kraus_sum(&self.ops, |k| k.sandwich(rho)))
    }

    /// The input-output inverted channel, with Kraus operators transposed in
    /// the computational basis.
    pub fn transpose(&self) -> Result<Self> {
        if !self.unital {
            return Err(Error::NonUnital);
        }
        Ok(Self {
            ops: self.ops.iter().map(CMat::transpose).collect(),
            unital: true,
        })
    }

    /// Another Kraus representation of the same channel:
    /// `K'_a = sum_b v[a][b] K_b`, where the columns of `v` (an m x n matrix,
    /// m >= n) are orthonormal.
    pub fn remix(&self, v: &CMat) -> Result<Self> {
        let n = self.ops.len();
        if v.cols() != n || v.rows() < n {
            return Err(Error::DimensionMismatch {
                expected: format!("m x {n} isometry with m >= {n}"),
                got: format!("{}x{}", v.rows(), v.cols()),
            });
        }
        let defect = (&v.dagger() * v).distance(&CMat::identity(n));
        if defect > DEFAULT_TOL {
            return Err(Error::InvalidChannel(format!(
                "mixing matrix is not an isometry (defect {defect:e})"
            )));
        }
        let ops = (0..v.rows())
            .map(|a| {
                let mut op = CMat::zeros(2, 2);
                for (b, k) in self.ops.iter().enumerate() {
                    op = &op + &k.scale(v[(a, b)]);
                }
                op
            })
            .collect();
        Self::new(ops)
    }
}

fn kraus_sum(ops: &[CMat], f: impl Fn(&CMat) -> CMat) -> CMat {
    let n = ops.first().map_or(2, CMat::rows);
    ops.iter().fold(CMat::zeros(n, n), |acc, k| &acc + &f(k))
}

/// `Lambda(rho) = sum_i q_i sigma_i rho sigma_i` with
/// `q = (1 - p, alpha_x p, alpha_y p, alpha_z p)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliChannel {
    p: f64,
    alpha: [f64; 3],
}

impl PauliChannel {
    /// `p` is the overall error probability, `alpha` the bias vector. A bias
    /// sum within [`ALPHA_SUM_TOL`] of one is accepted and the last component
    /// adjusted so the sum is exact.
    pub fn new(p: f64, alpha: [f64; 3]) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfRange {
                what: "error probability p",
                value: p,
            });
        }
        if let Some(&a) = alpha.iter().find(|a| !(a.is_finite() && **a >= 0.0)) {
            return Err(Error::OutOfRange {
                what: "bias component",
                value: a,
            });
        }
        let sum: f64 = alpha.iter().sum();
        if (sum - 1.0).abs() > ALPHA_SUM_TOL {
            return Err(Error::OutOfRange {
                what: "bias vector sum",
                value: sum,
            });
        }
        // Round-off in `alpha_x + alpha_y` can push the adjusted component a
        // few ulps below zero.
        let z = (1.0 - alpha[0] - alpha[1]).max(0.0);
        Ok(Self {
            p,
            alpha: [alpha[0], alpha[1], z],
        })
    }

    /// From raw probabilities `(q_0, q_x, q_y, q_z)`.
    pub fn from_probabilities(q: [f64; 4]) -> Result<Self> {
        if let Some(&x) = q.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
            return Err(Error::OutOfRange {
                what: "Pauli probability",
                value: x,
            });
        }
        let sum: f64 = q.iter().sum();
        if (sum - 1.0).abs() > PROBABILITY_SUM_TOL {
            return Err(Error::OutOfRange {
                what: "Pauli probability sum",
                value: sum,
            });
        }
        let p = q[1] + q[2] + q[3];
        if p == 0.0 {
            return Self::new(0.0, [1.0 / 3.0; 3]);
        }
        Self::new(p.min(1.0), [q[1] / p, q[2] / p, q[3] / p])
    }

    pub fn identity() -> Self {
        Self {
            p: 0.0,
            alpha: [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
        }
    }

    pub fn depolarizing(p: f64) -> Result<Self> {
        Self::new(p, [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0])
    }

    pub fn bit_flip(p: f64) -> Result<Self> {
        Self::new(p, [1.0, 0.0, 0.0])
    }

    pub fn bit_phase_flip(p: f64) -> Result<Self> {
        Self::new(p, [0.0, 1.0, 0.0])
    }

    pub fn phase_flip(p: f64) -> Result<Self> {
        Self::new(p, [0.0, 0.0, 1.0])
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn alpha(&self) -> [f64; 3] {
        self.alpha
    }

    /// `(q_0, q_x, q_y, q_z)`.
    pub fn probabilities(&self) -> [f64; 4] {
        let [ax, ay, az] = self.alpha;
        [1.0 - self.p, ax * self.p, ay * self.p, az * self.p]
    }

    /// Kraus operators `sqrt(q_i) sigma_i` in the order (0, x, y, z).
    pub fn to_kraus(&self) -> KrausChannel {
        let ops = Pauli::ALL
            .iter()
            .zip(self.probabilities())
            .map(|(s, q)| s.matrix().scale(re(q.max(0.0).sqrt())))
            .collect();
        KrausChannel { ops, unital: true }
    }

    pub fn shrink_factors(&self) -> ShrinkFactors {
        let l = |a: f64| 1.0 - 2.0 * (1.0 - a) * self.p;
        ShrinkFactors {
            lambda: [l(self.alpha[0]), l(self.alpha[1]), l(self.alpha[2])],
        }
    }
}

/// Bloch-vector shrinking factors `(lambda_x, lambda_y, lambda_z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShrinkFactors {
    pub lambda: [f64; 3],
}

impl ShrinkFactors {
    pub fn new(lambda: [f64; 3]) -> Result<Self> {
        if let Some(&l) = lambda.iter().find(|l| !(-1.0..=1.0).contains(*l)) {
            return Err(Error::OutOfRange {
                what: "shrink factor",
                value: l,
            });
        }
        Ok(Self { lambda })
    }

    pub fn x(&self) -> f64 {
        self.lambda[0]
    }

    pub fn y(&self) -> f64 {
        self.lambda[1]
    }

    pub fn z(&self) -> f64 {
        self.lambda[2]
    }
}

/// `|1 +- lambda_z| >= |lambda_x +- lambda_y|` for both sign choices, the
/// complete-positivity test for Pauli-diagonal maps. Ties are compared with a
/// 1e-12 slack so channels on the boundary of the tetrahedron pass.
pub fn check_fujiwara_algoet(f: &ShrinkFactors) -> bool {
    const SLACK: f64 = 1e-12;
    let [x, y, z] = f.lambda;
    (1.0 + z).abs() + SLACK >= (x + y).abs() && (1.0 - z).abs() + SLACK >= (x - y).abs()
}

/// Convenience wrapper over [`KrausChannel::apply`].
pub fn apply_channel(ch: &KrausChannel, rho: &CMat) -> Result<CMat> {
    ch.apply(rho)
}

/// Convenience wrapper over [`KrausChannel::transpose`].
pub fn transpose_channel(ch: &KrausChannel) -> Result<KrausChannel> {
    ch.transpose()
}
