#![allow(dead_code)]

use proptest::prelude::*;
use qswitch_eur::matcore::{c, CMat, C64};
use qswitch_eur::PauliChannel;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_complex<R: Rng>(rng: &mut R) -> C64 {
    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// `rows x cols` matrix with orthonormal columns, by Gram-Schmidt on random
/// complex columns.
pub fn random_isometry<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMat {
    assert!(rows >= cols);
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(cols);
    while basis.len() < cols {
        let mut v: Vec<C64> = (0..rows).map(|_| random_complex(rng)).collect();
        for u in &basis {
            let overlap: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= overlap * ui;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            basis.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    let mut m = CMat::zeros(rows, cols);
    for (j, col) in basis.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            m[(i, j)] = *z;
        }
    }
    m
}

pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> CMat {
    random_isometry(rng, n, n)
}

/// Random density matrix `A A^dagger / tr`.
pub fn random_density<R: Rng>(rng: &mut R, n: usize) -> CMat {
    let mut a = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = random_complex(rng);
        }
    }
    let m = &a * &a.dagger();
    let tr = m.trace();
    m.scale(C64::new(1.0, 0.0) / tr)
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<C64> {
    let mut v: Vec<C64> = (0..n).map(|_| random_complex(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        v[0] = C64::new(1.0, 0.0);
        return v;
    }
    for z in &mut v {
        *z /= norm;
    }
    v
}

/// Pauli channels with `p` in [0, 1] and a bias uniform on the simplex.
pub fn pauli_channel() -> impl Strategy<Value = PauliChannel> {
    (0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(p, u, v)| {
        let (lo, hi) = if u <= v { (u, v) } else { (v, u) };
        PauliChannel::new(p, [lo, hi - lo, 1.0 - hi]).unwrap()
    })
}
