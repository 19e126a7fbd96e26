//! Homogeneous coordinates on `P(W)` and its dual.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// Normalize to unit norm with the first nonzero coordinate real positive.
fn normalize(coords: Vec<Complex64>) -> Result<Vec<Complex64>> {
    if coords.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::NonFinite("projective coordinates".into()));
    }
    let norm = linalg::norm(&coords);
    if norm == 0.0 {
        return Err(Error::InvalidArgument("all coordinates vanish".into()));
    }
    let lead = coords
        .iter()
        .find(|c| c.norm() > 1e-12 * norm)
        .copied()
        .expect("nonzero vector has a nonzero coordinate");
    let phase = lead.conj() / lead.norm();
    Ok(coords.into_iter().map(|c| c * phase / norm).collect())
}

/// Phase-invariant sine distance between two unit vectors, computed as the
/// residual of projecting `a` onto `b` (accurate for nearby points).
fn sine_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let c = linalg::inner(b, a);
    let r: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x - c * y).collect();
    linalg::norm(&r).min(1.0)
}

macro_rules! projective_type {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
        pub struct $name {
            coords: Vec<Complex64>,
        }

        impl $name {
            pub fn new(coords: Vec<Complex64>) -> Result<Self> {
                Ok(Self { coords: normalize(coords)? })
            }

            pub fn coords(&self) -> &[Complex64] {
                &self.coords
            }

            pub fn dim(&self) -> usize {
                self.coords.len()
            }

            pub fn distance(&self, other: &Self) -> f64 {
                sine_distance(&self.coords, &other.coords)
            }

            pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
                self.distance(other) < tol
            }

            /// Complex Gaussian coordinates, so the class is uniform on projective space.
            pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
                let coords = (0..n)
                    .map(|_| {
                        Complex64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
                    })
                    .collect();
                Self::new(coords).expect("gaussian vector is nonzero")
            }
        }
    };
}

projective_type!(ProjPoint, "A point of `P(W)`.");
projective_type!(Hyperplane, "A hyperplane of `P(W)`, i.e. a point of the dual space.");

impl Hyperplane {
    pub fn pairing(&self, p: &ProjPoint) -> Complex64 {
        linalg::pairing(&self.coords, &p.coords)
    }

    pub fn contains(&self, p: &ProjPoint, tol: f64) -> bool {
        self.pairing(p).norm() < tol
    }

    /// Random hyperplane through `p`.
    pub fn random_through<R: Rng + ?Sized>(p: &ProjPoint, rng: &mut R) -> Self {
        let h = Self::random(p.dim(), rng);
        let t = h.pairing(p);
        // p has unit norm, so subtracting t * conj(p) kills the pairing
        let coords = h.coords.iter().zip(&p.coords).map(|(hk, pk)| hk - t * pk.conj()).collect();
        Self::new(coords).expect("generic projection is nonzero")
    }
}
