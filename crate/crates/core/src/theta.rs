//! Theta functions with rational characteristics and the elliptic normal
//! curve they cut out.
//!
//! For `k = 0..n` the basis is
//!
//! ```text
//! theta_k(x) = sum_m exp(pi i n tau (m + k/n)^2 + 2 pi i n (m + k/n) (x - s0/n))
//! ```
//!
//! which, writing `j = n m + k`, is the Laurent series
//! `sum_{j = k mod n} a_j exp(2 pi i j x)` with
//! `a_j = exp(pi i tau j^2 / n - 2 pi i j s0 / n)`. All `theta_k` pick up the
//! same factor under `x -> x + tau`, so `x -> [theta_0(x) : ... : theta_{n-1}(x)]`
//! is a well-defined map `E -> P^{n-1}`, the embedding by a complete linear
//! system of degree `n`. The offset `s0` is calibrated so that the zeros of
//! every section sum to zero on `E`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, RightSvd};
use crate::projective::{Hyperplane, ProjPoint};
use crate::rootfind::{Analytic, Jet, RootFinder};
use crate::torus::{TorusParam, TorusPoint};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Seed of the section used to calibrate the Abel offset.
const CALIBRATION_SEED: u64 = 0xab1e;

/// Relative singular-value threshold below which a divisor lies in the
/// linear system.
pub const IN_SYSTEM_TOL: f64 = 1e-8;
/// Relative threshold on the second-smallest singular value for the
/// hyperplane through a divisor to be unique.
pub const UNIQUE_TOL: f64 = 1e-7;

#[derive(Debug, Clone)]
pub struct ThetaBasis {
    n: usize,
    param: TorusParam,
    truncation: usize,
    s0: TorusPoint,
    j_min: i64,
    log_coeffs: Vec<Complex64>,
}

/// Smallest `T` with `exp(-pi Im(tau) n T^2) < 1e-18`, plus a margin of two
/// periods for evaluation points away from the real axis.
pub fn auto_truncation(n: usize, param: &TorusParam) -> usize {
    let t = (18.0 * std::f64::consts::LN_10 / (PI * param.tau().im * n as f64)).sqrt().ceil();
    (t as usize).max(1) + 2
}

impl ThetaBasis {
    /// Basis with offset `s0 = 0`; see [`ThetaBasis::calibrated`].
    pub fn new(n: usize, param: TorusParam, truncation: Option<usize>) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("embedding degree must be at least 3, got {n}")));
        }
        let truncation = truncation.unwrap_or_else(|| auto_truncation(n, &param));
        if truncation == 0 {
            return Err(Error::InvalidArgument("truncation must be positive".into()));
        }
        let mut basis = Self { n, param, truncation, s0: param.zero(), j_min: 0, log_coeffs: Vec::new() };
        basis.rebuild();
        Ok(basis)
    }

    /// Basis with the Abel offset calibrated.
    pub fn calibrated(n: usize, param: TorusParam, truncation: Option<usize>) -> Result<Self> {
        let basis = Self::new(n, param, truncation)?;
        let s0 = basis.calibrate_offset()?;
        Ok(basis.with_offset(s0))
    }

    pub fn with_offset(mut self, s0: TorusPoint) -> Self {
        self.s0 = s0;
        self.rebuild();
        self
    }

    fn rebuild(&mut self) {
        let n = self.n as i64;
        let t = self.truncation as i64;
        self.j_min = -n * t;
        let j_max = n * t + n - 1;
        let tau = self.param.tau();
        let s0 = self.s0.z();
        let nf = self.n as f64;
        self.log_coeffs = (self.j_min..=j_max)
            .map(|j| {
                let jf = j as f64;
                I * PI * tau * (jf * jf / nf) - I * 2.0 * PI * jf * s0 / nf
            })
            .collect();
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn param(&self) -> &TorusParam {
        &self.param
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn offset(&self) -> TorusPoint {
        self.s0
    }

    /// `out[d][k] = theta_k^{(d)}(x)` for `d <= order`, and the absolute
    /// term sums per `k`.
    pub fn jets(&self, x: Complex64, order: usize) -> (Vec<Vec<Complex64>>, Vec<f64>) {
        let n = self.n;
        let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; order + 1];
        let mut scale = vec![0.0; n];
        let phase = 2.0 * PI * I * x;
        for (idx, lc) in self.log_coeffs.iter().enumerate() {
            let j = self.j_min + idx as i64;
            let e = lc + phase * j as f64;
            if e.re < -700.0 {
                continue;
            }
            let term = e.exp();
            let k = j.rem_euclid(n as i64) as usize;
            scale[k] += term.norm();
            let factor = 2.0 * PI * I * j as f64;
            let mut t = term;
            for row in out.iter_mut() {
                row[k] += t;
                t *= factor;
            }
        }
        (out, scale)
    }

    pub fn values(&self, x: Complex64) -> Vec<Complex64> {
        self.jets(x, 0).0.swap_remove(0)
    }

    /// `theta_k(x)`.
    pub fn eval(&self, k: usize, x: Complex64) -> Result<Complex64> {
        if k >= self.n {
            return Err(Error::InvalidArgument(format!("basis index {k} out of range 0..{}", self.n)));
        }
        Ok(self.values(x)[k])
    }

    /// Image of `x` on the elliptic normal curve.
    pub fn embed(&self, x: TorusPoint) -> Result<ProjPoint> {
        self.embed_z(x.z())
    }

    /// Image of the lift `x`, evaluated without reduction. Accurate within
    /// about one period of the fundamental domain.
    pub fn embed_z(&self, x: Complex64) -> Result<ProjPoint> {
        let (vals, scale) = self.jets(x, 0);
        let v = &vals[0];
        let total: f64 = scale.iter().sum();
        if linalg::norm(v) <= 1e-12 * total {
            return Err(Error::Degenerate(format!("all basis values vanish at {x}")));
        }
        ProjPoint::new(v.clone())
    }

    /// The section `sum_k h_k theta_k` cut out by a hyperplane.
    pub fn section<'a>(&'a self, h: &Hyperplane) -> Section<'a> {
        Section { basis: self, h: h.coords().to_vec() }
    }

    pub fn section_from_coords<'a>(&'a self, h: Vec<Complex64>) -> Section<'a> {
        Section { basis: self, h }
    }

    /// The offset that makes every section's zeros sum to zero: current
    /// offset minus the Abel sum of a fixed random section.
    pub fn calibrate_offset(&self) -> Result<TorusPoint> {
        let mut rng = ChaCha8Rng::seed_from_u64(CALIBRATION_SEED);
        let h = Hyperplane::random(self.n, &mut rng);
        let sum = self.abel_sum_of_section(&h)?;
        Ok(self.param.sub(self.s0, sum))
    }

    /// Sum on `E` of the zeros of the section cut by `h`.
    pub fn abel_sum_of_section(&self, h: &Hyperplane) -> Result<TorusPoint> {
        let f = self.section(h);
        let zs = RootFinder::default().isolate_on_torus(&f, &self.param)?;
        if zs.total != self.n {
            return Err(Error::Truncation { expected: self.n, found: zs.total as i64 });
        }
        let z: Complex64 = zs.zeros.iter().map(|r| r.z * r.multiplicity as f64).sum();
        self.param.reduce(z)
    }

    /// Rows `theta^{(j)}(p)` for each point `p` of multiplicity `k` and `j < k`.
    pub fn divisor_rows(&self, divisor: &[(TorusPoint, usize)]) -> Vec<Vec<Complex64>> {
        divisor
            .iter()
            .filter(|(_, k)| *k > 0)
            .flat_map(|(p, k)| self.jets(p.z(), k - 1).0)
            .collect()
    }

    /// The unique hyperplane whose section vanishes on the given divisor of
    /// degree `n` (points with multiplicities).
    pub fn hyperplane_through_divisor(&self, divisor: &[(TorusPoint, usize)]) -> Result<Hyperplane> {
        let (h, svd) = self.divisor_kernel(divisor)?;
        let smallest = svd.relative(self.n - 1);
        if smallest >= IN_SYSTEM_TOL {
            return Err(Error::Degenerate(format!(
                "divisor is not a hyperplane section (relative singular value {smallest:e})"
            )));
        }
        let second = svd.relative(self.n - 2);
        if second <= UNIQUE_TOL {
            return Err(Error::Degenerate(format!(
                "divisor does not determine a unique hyperplane (second singular value {second:e})"
            )));
        }
        Ok(h)
    }

    fn divisor_kernel(&self, divisor: &[(TorusPoint, usize)]) -> Result<(Hyperplane, RightSvd)> {
        let degree: usize = divisor.iter().map(|(_, k)| k).sum();
        if degree != self.n {
            return Err(Error::InvalidArgument(format!("divisor has degree {degree}, expected {}", self.n)));
        }
        let rows = self.divisor_rows(divisor);
        let svd = RightSvd::new(&linalg::normalized_rows(&rows));
        let h = Hyperplane::new(svd.null_vector())?;
        Ok((h, svd))
    }

    /// Hyperplane meeting the curve only at `x`, with multiplicity `n`.
    /// Exists exactly when `n x = 0` on the calibrated curve.
    pub fn osculating_hyperplane(&self, x: TorusPoint) -> Result<Hyperplane> {
        let (h, svd) = self.divisor_kernel(&[(x, self.n)])?;
        let sigma = svd.relative(self.n - 1);
        if sigma >= IN_SYSTEM_TOL {
            return Err(Error::NoOsculatingHyperplane { sigma });
        }
        Ok(h)
    }
}

/// A section `g = sum_k h_k theta_k` as an entire function.
#[derive(Debug, Clone)]
pub struct Section<'a> {
    basis: &'a ThetaBasis,
    h: Vec<Complex64>,
}

impl Section<'_> {
    pub fn coeffs(&self) -> &[Complex64] {
        &self.h
    }
}

impl Analytic for Section<'_> {
    fn jet(&self, z: Complex64, order: usize) -> Jet {
        let b = self.basis;
        let n = b.n as i64;
        let mut d = vec![Complex64::new(0.0, 0.0); order + 1];
        let mut scale = 0.0;
        let phase = 2.0 * PI * I * z;
        for (idx, lc) in b.log_coeffs.iter().enumerate() {
            let j = b.j_min + idx as i64;
            let e = lc + phase * j as f64;
            if e.re < -700.0 {
                continue;
            }
            let term = e.exp() * self.h[j.rem_euclid(n) as usize];
            scale += term.norm();
            let factor = 2.0 * PI * I * j as f64;
            let mut t = term;
            for dk in d.iter_mut() {
                *dk += t;
                t *= factor;
            }
        }
        Jet { d, scale }
    }
}

/// `g1 g2' - g1' g2` for two sections; its zeros are the ramification
/// points of `x -> [g1(x) : g2(x)]`.
pub struct Wronskian<'a> {
    pub g1: Section<'a>,
    pub g2: Section<'a>,
}

impl Analytic for Wronskian<'_> {
    fn jet(&self, z: Complex64, order: usize) -> Jet {
        let a = self.g1.jet(z, order + 1);
        let b = self.g2.jet(z, order + 1);
        // (a b' - a' b)^{(k)} = sum_i C(k,i) (a^{(i)} b^{(k-i+1)} - a^{(i+1)} b^{(k-i)})
        let mut d = vec![Complex64::new(0.0, 0.0); order + 1];
        for (k, dk) in d.iter_mut().enumerate() {
            let mut binom = 1.0;
            for i in 0..=k {
                *dk += (a.d[i] * b.d[k - i + 1] - a.d[i + 1] * b.d[k - i]) * binom;
                binom = binom * (k - i) as f64 / (i + 1) as f64;
            }
        }
        let scale = a.scale * b.d[1].norm().max(b.scale) + a.d[1].norm().max(a.scale) * b.scale;
        Jet { d, scale }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(n: usize) -> ThetaBasis {
        ThetaBasis::new(n, TorusParam::square(), None).unwrap()
    }

    #[test]
    fn rejects_small_degree_and_bad_index() {
        assert!(ThetaBasis::new(2, TorusParam::square(), None).is_err());
        assert!(basis(3).eval(3, Complex64::new(0.1, 0.1)).is_err());
    }

    #[test]
    fn derivative_rows_match_finite_differences() {
        let b = basis(4);
        let x = Complex64::new(0.31, 0.47);
        let h = 1e-5;
        let (jets, _) = b.jets(x, 2);
        let plus = b.values(x + h);
        let minus = b.values(x - h);
        for k in 0..4 {
            let fd = (plus[k] - minus[k]) / (2.0 * h);
            assert!((fd - jets[1][k]).norm() < 1e-6 * jets[1][k].norm().max(1.0));
            let fd2 = (plus[k] - 2.0 * jets[0][k] + minus[k]) / (h * h);
            assert!((fd2 - jets[2][k]).norm() < 1e-3 * jets[2][k].norm().max(1.0));
        }
    }

    #[test]
    fn wronskian_derivative_matches_finite_difference() {
        let b = basis(3);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let w = Wronskian {
            g1: b.section(&Hyperplane::random(3, &mut rng)),
            g2: b.section(&Hyperplane::random(3, &mut rng)),
        };
        let z = Complex64::new(0.2, 0.3);
        let h = 1e-6;
        let fd = (w.value(z + h) - w.value(z - h)) / (2.0 * h);
        let jet = w.jet(z, 1);
        assert!((fd - jet.d[1]).norm() < 1e-5 * jet.d[1].norm());
    }

    #[test]
    fn calibration_is_idempotent() {
        let b = ThetaBasis::calibrated(3, TorusParam::square(), None).unwrap();
        let again = b.calibrate_offset().unwrap();
        assert!(b.param().distance(again, b.offset()) < 1e-9);
    }
}
