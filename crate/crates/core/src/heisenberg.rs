//! The finite Heisenberg group acting on the coordinates of `P^{n-1}`.
//!
//! `A = diag(1, z, ..., z^{n-1})` with `z = exp(2 pi i / n)` and `B` the cyclic
//! shift `e_k -> e_{k+1}` satisfy `A B = z B A`. On the calibrated theta
//! embedding, translation by `1/n` acts as `A` and translation by `tau/n`
//! as `B^{-1}`, so `(a + b tau)/n` acts as `A^a B^{-b}` up to a scalar.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, RightSvd};
use crate::projective::ProjPoint;
use crate::theta::ThetaBasis;
use crate::torus::TorusPoint;

pub type CMatrix = DMatrix<Complex64>;

pub fn zeta(n: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / n as f64)
}

/// The generators `(A, B)`.
pub fn generators(n: usize) -> Result<(CMatrix, CMatrix)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("Heisenberg group needs n >= 2, got {n}")));
    }
    let z = zeta(n);
    let a = CMatrix::from_fn(n, n, |i, j| if i == j { z.powu(i as u32) } else { Complex64::new(0.0, 0.0) });
    let b = CMatrix::from_fn(n, n, |i, j| {
        if i == (j + 1) % n {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok((a, b))
}

fn mat_pow(m: &CMatrix, e: usize) -> CMatrix {
    let mut out = CMatrix::identity(m.nrows(), m.ncols());
    for _ in 0..e {
        out = &out * m;
    }
    out
}

/// `A^a B^{-b}`, the linear lift of translation by `(a + b tau)/n`.
pub fn translation_word(n: usize, a: usize, b: usize) -> Result<CMatrix> {
    let (ma, mb) = generators(n)?;
    let b_inv = mat_pow(&mb, (n - b % n) % n);
    Ok(mat_pow(&ma, a % n) * b_inv)
}

/// Dimension of the space of matrices commuting with every given matrix.
pub fn commutant_dimension(mats: &[CMatrix]) -> usize {
    let n = mats[0].nrows();
    let unknowns = n * n;
    // vec(X M - M X) as a linear map of vec(X), row-major index i * n + j
    let mut system = CMatrix::zeros(mats.len() * unknowns, unknowns);
    for (g, m) in mats.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let row = g * unknowns + i * n + j;
                for k in 0..n {
                    // (X M)_{ij} = sum_k X_{ik} M_{kj}
                    system[(row, i * n + k)] += m[(k, j)];
                    // (M X)_{ij} = sum_k M_{ik} X_{kj}
                    system[(row, k * n + j)] -= m[(i, k)];
                }
            }
        }
    }
    let svd = RightSvd::new(&system);
    unknowns - svd.rank(1e-10)
}

pub fn heisenberg_commutant_dimension(n: usize) -> Result<usize> {
    let (a, b) = generators(n)?;
    Ok(commutant_dimension(&[a, b]))
}

#[derive(Debug, Clone, Serialize)]
pub struct TranslationCheck {
    /// Torsion coordinates `(a, b)` of `xi = (a + b tau)/n`.
    pub a: usize,
    pub b: usize,
    /// Largest projective distance between `embed(x + xi)` and `M(xi) embed(x)`.
    pub residual: f64,
    /// `theta(x + xi) / (M(xi) theta(x))` at the first sample; not contracted.
    pub scalar: Complex64,
}

/// Compare translation by an `n`-torsion point with its Heisenberg word on
/// `samples` pseudo-random points.
pub fn verify_translation_action(xi: TorusPoint, basis: &ThetaBasis, samples: usize, seed: u64) -> Result<TranslationCheck> {
    let n = basis.n();
    let param = basis.param();
    let (a, b) = param.torsion_index(n, xi)?;
    let m = translation_word(n, a, b)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut residual: f64 = 0.0;
    let mut scalar = Complex64::new(1.0, 0.0);
    // exact lift of xi, so the comparison is with the same representative
    let shift = param.from_coords(a as f64 / n as f64, b as f64 / n as f64);
    for s in 0..samples {
        let x = param.random_point(&mut rng).z();
        let moved = basis.values(x + shift);
        let predicted = linalg::mat_vec(&m, &basis.values(x));
        let p = ProjPoint::new(moved.clone())?;
        let q = ProjPoint::new(predicted.clone())?;
        residual = residual.max(p.distance(&q));
        if s == 0 {
            let k = (0..n).max_by(|&i, &j| predicted[i].norm().total_cmp(&predicted[j].norm())).unwrap_or(0);
            scalar = moved[k] / predicted[k];
        }
    }
    Ok(TranslationCheck { a, b, residual, scalar })
}
