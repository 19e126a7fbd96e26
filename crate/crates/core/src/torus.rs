//! Arithmetic on the complex torus `E = C / (Z + tau Z)`.
//!
//! Points are stored as their representative in the fundamental domain
//! `{a + b tau : 0 <= a, b < 1}`. Equality is lattice distance below the
//! configured tolerance.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest admissible `Im(tau)`; closer to the real axis the theta series
/// converge too slowly to be useful.
pub const MIN_IM_TAU: f64 = 0.1;

/// Default lattice-equality tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Period and tolerance of an elliptic curve `C / (Z + tau Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusParam {
    tau: Complex64,
    tolerance: f64,
}

/// A point of the torus, reduced to the fundamental domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusPoint {
    z: Complex64,
}

impl TorusPoint {
    pub fn z(&self) -> Complex64 {
        self.z
    }
}

impl TorusParam {
    pub fn new(tau: Complex64, tolerance: f64) -> Result<Self> {
        if !tau.re.is_finite() || !tau.im.is_finite() || !tolerance.is_finite() {
            return Err(Error::NonFinite("torus parameter".into()));
        }
        if tau.im < MIN_IM_TAU {
            return Err(Error::InvalidParam(format!(
                "Im(tau) = {} is below {MIN_IM_TAU}",
                tau.im
            )));
        }
        let cap = tau.im.min(1.0) / 4.0;
        if tolerance <= 0.0 || tolerance >= cap {
            return Err(Error::InvalidParam(format!(
                "tolerance {tolerance:e} outside (0, {cap})"
            )));
        }
        Ok(Self { tau, tolerance })
    }

    /// `tau = i` with the default tolerance.
    pub fn square() -> Self {
        Self { tau: Complex64::new(0.0, 1.0), tolerance: DEFAULT_TOLERANCE }
    }

    pub fn with_tau(tau: Complex64) -> Result<Self> {
        Self::new(tau, DEFAULT_TOLERANCE)
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Real lattice coordinates `(a, b)` with `z = a + b tau`.
    pub fn coords(&self, z: Complex64) -> (f64, f64) {
        let b = z.im / self.tau.im;
        let a = z.re - b * self.tau.re;
        (a, b)
    }

    pub fn from_coords(&self, a: f64, b: f64) -> Complex64 {
        Complex64::new(a, 0.0) + self.tau * b
    }

    /// Representative of `z` in the fundamental domain.
    pub fn reduce(&self, z: Complex64) -> Result<TorusPoint> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite(format!("{z}")));
        }
        Ok(self.reduce_finite(z))
    }

    pub(crate) fn reduce_finite(&self, z: Complex64) -> TorusPoint {
        let (a, b) = self.coords(z);
        if (0.0..1.0).contains(&a) && (0.0..1.0).contains(&b) {
            return TorusPoint { z };
        }
        TorusPoint { z: self.from_coords(frac(a), frac(b)) }
    }

    pub fn point(&self, a: f64, b: f64) -> TorusPoint {
        self.reduce_finite(self.from_coords(a, b))
    }

    pub fn zero(&self) -> TorusPoint {
        TorusPoint { z: Complex64::new(0.0, 0.0) }
    }

    pub fn add(&self, p: TorusPoint, q: TorusPoint) -> TorusPoint {
        self.reduce_finite(p.z + q.z)
    }

    pub fn sub(&self, p: TorusPoint, q: TorusPoint) -> TorusPoint {
        self.reduce_finite(p.z - q.z)
    }

    pub fn neg(&self, p: TorusPoint) -> TorusPoint {
        self.reduce_finite(-p.z)
    }

    pub fn mul_int(&self, m: i64, p: TorusPoint) -> TorusPoint {
        self.reduce_finite(p.z * m as f64)
    }

    /// Distance from `z` to the nearest lattice point.
    pub fn lattice_distance(&self, z: Complex64) -> f64 {
        let (a, b) = self.coords(z);
        let (ra, rb) = (a.round(), b.round());
        let mut best = f64::INFINITY;
        for da in -1..=1 {
            for db in -1..=1 {
                let w = self.from_coords(a - ra - da as f64, b - rb - db as f64);
                best = best.min(w.norm());
            }
        }
        best
    }

    pub fn distance(&self, p: TorusPoint, q: TorusPoint) -> f64 {
        self.lattice_distance(p.z - q.z)
    }

    pub fn eq(&self, p: TorusPoint, q: TorusPoint) -> bool {
        self.distance(p, q) < self.tolerance
    }

    pub fn is_zero(&self, p: TorusPoint) -> bool {
        self.lattice_distance(p.z) < self.tolerance
    }

    /// Sum of a list of points with integer coefficients.
    pub fn weighted_sum(&self, terms: &[(i64, TorusPoint)]) -> TorusPoint {
        let z = terms.iter().map(|(c, p)| p.z * *c as f64).sum::<Complex64>();
        self.reduce_finite(z)
    }

    /// The `n^2` points `(a + b tau) / n`, in lexicographic `(a, b)` order.
    pub fn torsion_points(&self, n: usize) -> Result<Vec<TorusPoint>> {
        if n == 0 {
            return Err(Error::InvalidArgument("torsion order must be positive".into()));
        }
        let nf = n as f64;
        Ok((0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.point(a as f64 / nf, b as f64 / nf))
            .collect())
    }

    /// Lattice coordinates `(a, b)` with `p = (a + b tau) / n`, if `p` is `n`-torsion.
    pub fn torsion_index(&self, n: usize, p: TorusPoint) -> Result<(usize, usize)> {
        if n == 0 {
            return Err(Error::InvalidArgument("torsion order must be positive".into()));
        }
        let (a, b) = self.coords(p.z);
        let (na, nb) = ((a * n as f64).round(), (b * n as f64).round());
        let exact = self.from_coords(na / n as f64, nb / n as f64);
        let distance = self.lattice_distance(p.z - exact);
        if distance >= self.tolerance {
            return Err(Error::NotTorsion { n, distance });
        }
        let m = n as i64;
        Ok(((na as i64).rem_euclid(m) as usize, (nb as i64).rem_euclid(m) as usize))
    }

    /// All `x` with `m x = s`: the coset `s/m + E[m]`, `m^2` points in
    /// lexicographic order of the torsion offset.
    pub fn solve_scaled(&self, m: i64, s: TorusPoint) -> Result<Vec<TorusPoint>> {
        if m == 0 {
            return Err(Error::ZeroMultiplier);
        }
        let base = s.z / m as f64;
        let k = m.unsigned_abs() as usize;
        let kf = k as f64;
        Ok((0..k)
            .flat_map(|a| (0..k).map(move |b| (a, b)))
            .map(|(a, b)| self.reduce_finite(base + self.from_coords(a as f64 / kf, b as f64 / kf)))
            .collect())
    }

    /// Uniformly distributed point of the fundamental domain.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> TorusPoint {
        self.point(rng.random::<f64>(), rng.random::<f64>())
    }
}

fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// Line-bundle class on the torus: degree and Abel-Jacobi sum of any divisor
/// in the class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DivisorClass {
    pub degree: i64,
    pub aj: TorusPoint,
}

impl DivisorClass {
    pub fn new(degree: i64, aj: TorusPoint) -> Self {
        Self { degree, aj }
    }

    pub fn trivial(param: &TorusParam) -> Self {
        Self { degree: 0, aj: param.zero() }
    }

    /// Class of `sum c_i [q_i]`.
    pub fn of_divisor(param: &TorusParam, divisor: &[(i64, TorusPoint)]) -> Self {
        Self {
            degree: divisor.iter().map(|(c, _)| c).sum(),
            aj: param.weighted_sum(divisor),
        }
    }

    pub fn tensor(&self, other: &Self, param: &TorusParam) -> Self {
        Self { degree: self.degree + other.degree, aj: param.add(self.aj, other.aj) }
    }

    pub fn dual(&self, param: &TorusParam) -> Self {
        Self { degree: -self.degree, aj: param.neg(self.aj) }
    }

    pub fn is_trivial(&self, param: &TorusParam) -> bool {
        self.degree == 0 && param.is_zero(self.aj)
    }

    /// Lattice distance between Abel-Jacobi points, or `None` when degrees differ.
    pub fn aj_distance(&self, other: &Self, param: &TorusParam) -> Option<f64> {
        (self.degree == other.degree).then(|| param.distance(self.aj, other.aj))
    }

    pub fn isomorphic(&self, other: &Self, param: &TorusParam) -> bool {
        matches!(self.aj_distance(other, param), Some(d) if d < param.tolerance())
    }

    /// A point `p` with `degree * p = aj`, so the class is `[p] * degree`
    /// when `degree != 0`.
    pub fn support_point(&self, param: &TorusParam) -> Result<TorusPoint> {
        Ok(param.solve_scaled(self.degree, self.aj)?[0])
    }
}
