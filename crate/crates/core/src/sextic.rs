//! The discriminant of a plane cubic as an explicit plane curve.
//!
//! For `n = 3`, points of `D` are sampled through the tangent
//! parametrization and a homogeneous form of given degree is fitted to them.
//! Singular points of the fitted form are located by damped Gauss-Newton on
//! the gradient system and classified from the local Taylor expansion.

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::discriminant::sample_d_tilde;
use crate::error::{Error, Result};
use crate::linalg::{self, RightSvd};
use crate::projective::Hyperplane;
use crate::theta::ThetaBasis;

const FIT_SAMPLES: usize = 120;
const HELD_OUT: usize = 60;
const RANDOM_SEEDS: usize = 24;
/// Perturbation applied to the top-stratum seeds.
const SEED_JITTER: f64 = 1e-3;
/// Relative gradient norm below which a point is singular.
const SINGULAR_TOL: f64 = 1e-10;
/// Singular points closer than this are the same.
const DEDUP_TOL: f64 = 1e-5;
/// Hessian singular-value ratio below which the quadratic part has rank one.
const RANK_ONE_RATIO: f64 = 1e-4;
/// Relative size of the cubic term along the Hessian kernel for a cusp.
const CUBIC_REL: f64 = 1e-3;

/// Homogeneous polynomial in three variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Form {
    pub degree: usize,
    pub exponents: Vec<[u32; 3]>,
    pub coeffs: Vec<Complex64>,
}

/// Exponents of the degree-`d` monomials in three variables.
pub fn monomials(d: usize) -> Vec<[u32; 3]> {
    let d = d as u32;
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

fn monomial_row(exps: &[[u32; 3]], h: &[Complex64]) -> Vec<Complex64> {
    exps.iter().map(|e| h[0].powu(e[0]) * h[1].powu(e[1]) * h[2].powu(e[2])).collect()
}

impl Form {
    /// Partial derivative of multi-order `alpha` at `h`.
    pub fn partial(&self, h: &[Complex64], alpha: [u32; 3]) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for (e, c) in self.exponents.iter().zip(&self.coeffs) {
            let mut term = *c;
            for v in 0..3 {
                if e[v] < alpha[v] {
                    term = Complex64::new(0.0, 0.0);
                    break;
                }
                let falling: u32 = (e[v] - alpha[v] + 1..=e[v]).product();
                term *= falling as f64 * h[v].powu(e[v] - alpha[v]);
            }
            sum += term;
        }
        sum
    }

    pub fn eval(&self, h: &[Complex64]) -> Complex64 {
        self.partial(h, [0, 0, 0])
    }

    pub fn gradient(&self, h: &[Complex64]) -> [Complex64; 3] {
        [self.partial(h, [1, 0, 0]), self.partial(h, [0, 1, 0]), self.partial(h, [0, 0, 1])]
    }

    /// `|P(h)| / (|P| |m(h)|)`, scale-free in both `P` and `h`.
    pub fn relative_value(&self, h: &[Complex64]) -> f64 {
        let m = monomial_row(&self.exponents, h);
        self.eval(h).norm() / (linalg::norm(&self.coeffs) * linalg::norm(&m))
    }

    fn relative_gradient(&self, h: &[Complex64]) -> f64 {
        let g = self.gradient(h);
        let hn = linalg::norm(h);
        linalg::norm(&g) / (linalg::norm(&self.coeffs) * hn.powi(self.degree as i32 - 1))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fit {
    pub form: Form,
    /// RMS relative value on held-out samples.
    pub residual: f64,
}

/// Least-squares form of degree `d` through `train`, with unit coefficient norm.
pub fn fit_form(d: usize, train: &[Hyperplane], held_out: &[Hyperplane]) -> Result<Fit> {
    let exps = monomials(d);
    if train.len() < exps.len() {
        return Err(Error::Fit(format!("{} samples for {} coefficients", train.len(), exps.len())));
    }
    let rows: Vec<Vec<Complex64>> = train.iter().map(|h| monomial_row(&exps, h.coords())).collect();
    let svd = RightSvd::new(&linalg::normalized_rows(&rows));
    let form = Form { degree: d, exponents: exps, coeffs: svd.null_vector() };
    let ms: f64 = held_out.iter().map(|h| form.relative_value(h.coords()).powi(2)).sum::<f64>() / held_out.len().max(1) as f64;
    Ok(Fit { form, residual: ms.sqrt() })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularPoint {
    pub point: Hyperplane,
    /// Affine chart: this coordinate is set to one.
    pub chart: usize,
    pub gradient_residual: f64,
    /// Smaller over larger singular value of the affine Hessian.
    pub hessian_ratio: f64,
    /// Relative third derivative along the Hessian kernel.
    pub cubic_term: f64,
    pub is_cusp: bool,
    /// Distance to the nearest osculating hyperplane at a 3-torsion point.
    pub top_stratum_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualSextic {
    pub form: Form,
    pub fit_residual: f64,
    pub degree5_residual: f64,
    pub samples: usize,
    pub held_out: usize,
    pub singular_points: Vec<SingularPoint>,
    pub cusp_count: usize,
    pub arithmetic_genus: i64,
    pub geometric_genus: i64,
    pub top_stratum: Vec<Hyperplane>,
}

fn sample_points(basis: &ThetaBasis, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Hyperplane>> {
    let param = basis.param();
    let mut out = Vec::with_capacity(count);
    let mut failures = 0;
    while out.len() < count {
        let x = param.random_point(rng);
        let branch = rng.random_range(0..4);
        match sample_d_tilde(&[x], branch, basis) {
            Ok(h) => out.push(h),
            Err(Error::Degenerate(_)) if failures < count => failures += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Fitted discriminant of the plane cubic and its singular points.
pub fn dual_sextic(basis: &ThetaBasis, seed: u64) -> Result<DualSextic> {
    if basis.n() != 3 {
        return Err(Error::InvalidArgument(format!("dual sextic needs n = 3, got {}", basis.n())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let train = sample_points(basis, FIT_SAMPLES, &mut rng)?;
    let held = sample_points(basis, HELD_OUT, &mut rng)?;
    let fit6 = fit_form(6, &train, &held)?;
    let fit5 = fit_form(5, &train, &held)?;

    let top: Vec<Hyperplane> = basis
        .param()
        .torsion_points(3)?
        .into_iter()
        .map(|t| basis.osculating_hyperplane(t))
        .collect::<Result<_>>()?;

    let mut seeds: Vec<Vec<Complex64>> = top
        .iter()
        .map(|h| {
            h.coords()
                .iter()
                .map(|c| c + Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5) * (2.0 * SEED_JITTER))
                .collect()
        })
        .collect();
    seeds.extend(sample_points(basis, RANDOM_SEEDS, &mut rng)?.iter().map(|h| h.coords().to_vec()));

    let form = &fit6.form;
    let mut singular: Vec<SingularPoint> = Vec::new();
    for s in seeds {
        let Some((h, chart)) = refine_singular(form, &s) else { continue };
        let point = Hyperplane::new(h.clone())?;
        if singular.iter().any(|p| p.point.distance(&point) < DEDUP_TOL) {
            continue;
        }
        let (hessian_ratio, cubic_term) = local_type(form, &h, chart);
        let top_stratum_distance = top.iter().map(|t| t.distance(&point)).fold(f64::INFINITY, f64::min);
        singular.push(SingularPoint {
            gradient_residual: form.relative_gradient(&h),
            point,
            chart,
            hessian_ratio,
            cubic_term,
            is_cusp: hessian_ratio < RANK_ONE_RATIO && cubic_term > CUBIC_REL,
            top_stratum_distance,
        });
    }
    let cusp_count = singular.iter().filter(|p| p.is_cusp).count();
    let d = 6i64;
    let arithmetic_genus = (d - 1) * (d - 2) / 2;
    // each ordinary cusp drops the genus by one, any other singularity by at least one
    let geometric_genus = arithmetic_genus - singular.len() as i64;
    Ok(DualSextic {
        form: fit6.form,
        fit_residual: fit6.residual,
        degree5_residual: fit5.residual,
        samples: train.len(),
        held_out: held.len(),
        singular_points: singular,
        cusp_count,
        arithmetic_genus,
        geometric_genus,
        top_stratum: top,
    })
}

/// Point in the affine chart `h[chart] = 1`.
fn to_chart(h: &[Complex64], chart: usize) -> Vec<Complex64> {
    h.iter().map(|c| c / h[chart]).collect()
}

fn free_vars(chart: usize) -> [usize; 2] {
    match chart {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

fn unit(i: usize, k: u32) -> [u32; 3] {
    let mut a = [0; 3];
    a[i] += k;
    a
}

fn add(a: [u32; 3], b: [u32; 3]) -> [u32; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Damped Gauss-Newton on `grad P = 0` in the chart of the largest coordinate.
fn refine_singular(form: &Form, seed: &[Complex64]) -> Option<(Vec<Complex64>, usize)> {
    let chart = (0..3).max_by(|&a, &b| seed[a].norm().total_cmp(&seed[b].norm()))?;
    let free = free_vars(chart);
    let mut h = to_chart(seed, chart);
    let residual = |h: &[Complex64]| linalg::norm(&form.gradient(h));
    let mut r = residual(&h);
    let mut lambda = 1e-6;
    for _ in 0..300 {
        let g = form.gradient(&h);
        // J[i][j] = d^2 P / dh_i dh_free[j]
        let j: Vec<[Complex64; 2]> = (0..3)
            .map(|i| [form.partial(&h, add(unit(i, 1), unit(free[0], 1))), form.partial(&h, add(unit(i, 1), unit(free[1], 1)))])
            .collect();
        let mut a = [[Complex64::new(0.0, 0.0); 2]; 2];
        let mut b = [Complex64::new(0.0, 0.0); 2];
        for row in 0..3 {
            for p in 0..2 {
                b[p] -= j[row][p].conj() * g[row];
                for q in 0..2 {
                    a[p][q] += j[row][p].conj() * j[row][q];
                }
            }
        }
        let trace = (a[0][0].re + a[1][1].re).max(f64::MIN_POSITIVE);
        let mut improved = false;
        for _ in 0..20 {
            let mut m = a;
            m[0][0] += lambda * trace;
            m[1][1] += lambda * trace;
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            if det.norm() == 0.0 {
                lambda *= 10.0;
                continue;
            }
            let d0 = (b[0] * m[1][1] - m[0][1] * b[1]) / det;
            let d1 = (m[0][0] * b[1] - m[1][0] * b[0]) / det;
            let mut trial = h.clone();
            trial[free[0]] += d0;
            trial[free[1]] += d1;
            let rt = residual(&trial);
            if rt.is_finite() && rt <= r {
                let step = d0.norm().hypot(d1.norm());
                h = trial;
                r = rt;
                lambda = (lambda * 0.3).max(1e-15);
                improved = step > 1e-16;
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    (form.relative_gradient(&h) < SINGULAR_TOL).then_some((h, chart))
}

/// Hessian singular-value ratio and relative cubic term along its kernel,
/// in the affine chart.
fn local_type(form: &Form, h: &[Complex64], chart: usize) -> (f64, f64) {
    let free = free_vars(chart);
    let d2 = |p: usize, q: usize| form.partial(h, add(unit(free[p], 1), unit(free[q], 1)));
    let hess = linalg::from_rows(&[vec![d2(0, 0), d2(0, 1)], vec![d2(1, 0), d2(1, 1)]]);
    let svd = RightSvd::new(&hess);
    let ratio = svd.relative(1);
    let v = svd.null_vector();
    let mut cubic = Complex64::new(0.0, 0.0);
    let mut scale: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let t = form.partial(h, add(add(unit(free[i], 1), unit(free[j], 1)), unit(free[k], 1)));
                scale = scale.max(t.norm());
                cubic += t * v[i] * v[j] * v[k];
            }
        }
    }
    (ratio, if scale > 0.0 { cubic.norm() / scale } else { 0.0 })
}

/// Heat map of `-log10 |P|` on the real chart `h = (1, x, y)`, with the
/// singular points marked at the real parts of their chart coordinates.
pub fn render_svg(sextic: &DualSextic, cells: usize, extent: f64) -> String {
    let size = 480.0;
    let cell = size / cells as f64;
    let mut values = Vec::with_capacity(cells * cells);
    for iy in 0..cells {
        for ix in 0..cells {
            let x = -extent + 2.0 * extent * (ix as f64 + 0.5) / cells as f64;
            let y = extent - 2.0 * extent * (iy as f64 + 0.5) / cells as f64;
            let h = [Complex64::new(1.0, 0.0), Complex64::new(x, 0.0), Complex64::new(y, 0.0)];
            values.push(-sextic.form.relative_value(&h).max(1e-300).log10());
        }
    }
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let span = (hi - lo).max(1e-12);
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#);
    for (idx, v) in values.iter().enumerate() {
        let t = (v - lo) / span;
        let shade = (255.0 * (1.0 - t)).round() as u8;
        let (ix, iy) = (idx % cells, idx / cells);
        let _ = writeln!(
            svg,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="rgb({shade},{shade},255)"/>"#,
            ix as f64 * cell,
            iy as f64 * cell,
            cell + 0.05,
            cell + 0.05
        );
    }
    for p in &sextic.singular_points {
        let c = p.point.coords();
        if c[0].norm() < 1e-12 {
            continue;
        }
        let (x, y) = ((c[1] / c[0]).re, (c[2] / c[0]).re);
        if x.abs() > extent || y.abs() > extent {
            continue;
        }
        let px = (x + extent) / (2.0 * extent) * size;
        let py = (extent - y) / (2.0 * extent) * size;
        let color = if p.is_cusp { "red" } else { "black" };
        let _ = writeln!(svg, r#"<circle cx="{px:.2}" cy="{py:.2}" r="5" fill="none" stroke="{color}" stroke-width="2"/>"#);
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(6).len(), 28);
        assert_eq!(monomials(5).len(), 21);
        assert!(monomials(4).iter().all(|e| e.iter().sum::<u32>() == 4));
    }

    #[test]
    fn partials_of_a_known_form() {
        // P = x^2 y - 3 z^3
        let form = Form {
            degree: 3,
            exponents: vec![[2, 1, 0], [0, 0, 3]],
            coeffs: vec![Complex64::new(1.0, 0.0), Complex64::new(-3.0, 0.0)],
        };
        let h = [Complex64::new(2.0, 0.0), Complex64::new(0.5, 0.0), Complex64::new(1.0, 1.0)];
        let z3 = h[2].powu(3);
        assert!((form.eval(&h) - (Complex64::new(2.0, 0.0) - 3.0 * z3)).norm() < 1e-12);
        assert!((form.partial(&h, [1, 1, 0]) - Complex64::new(4.0, 0.0)).norm() < 1e-12);
        assert!((form.partial(&h, [0, 0, 2]) - (-18.0 * h[2])).norm() < 1e-12);
        assert_eq!(form.partial(&h, [0, 2, 0]), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn cusp_and_node_are_distinguished() {
        // cuspidal cubic y^2 z - x^3 and nodal cubic y^2 z - x^2 (x + z)
        let c = |x: f64| Complex64::new(x, 0.0);
        let cusp = Form { degree: 3, exponents: vec![[0, 2, 1], [3, 0, 0]], coeffs: vec![c(1.0), c(-1.0)] };
        let node = Form { degree: 3, exponents: vec![[0, 2, 1], [3, 0, 0], [2, 0, 1]], coeffs: vec![c(1.0), c(-1.0), c(-1.0)] };
        let origin = [c(0.0), c(0.0), c(1.0)];
        let seed = [c(0.01), c(-0.02), c(1.0)];
        let (h, chart) = refine_singular(&cusp, &seed).unwrap();
        assert_eq!(chart, 2);
        assert!(linalg::norm(&[h[0], h[1]]) < 1e-6);
        let (ratio, cubic) = local_type(&cusp, &origin, 2);
        assert!(ratio < RANK_ONE_RATIO && cubic > CUBIC_REL);
        let (ratio, _) = local_type(&node, &origin, 2);
        assert!(ratio > 0.1);
    }
}
