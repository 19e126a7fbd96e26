//! Python bindings for `bgdual-core`. Points on the torus are passed as
//! complex numbers and reduced on entry; hyperplanes as lists of complex
//! coordinates.

use bgdual_core::classifier::{self, AffineEndo, CurveInProduct};
use bgdual_core::discriminant::{self, DEFAULT_CLUSTERING_TOL};
use bgdual_core::projective::Hyperplane;
use bgdual_core::theta::ThetaBasis;
use bgdual_core::torus::{DivisorClass, TorusParam, TorusPoint, DEFAULT_TOLERANCE};
use bgdual_core::{cli, heisenberg, jordan, sextic};
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

create_exception!(bgdual, BgdualError, PyException);

fn py_err(e: bgdual_core::Error) -> PyErr {
    BgdualError::new_err(format!("{}: {e}", e.kind()))
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for bgdual_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// The complex torus `C / (Z + tau Z)`.
#[pyclass(name = "Torus", frozen)]
struct PyTorus {
    inner: TorusParam,
}

impl PyTorus {
    fn pt(&self, z: Complex64) -> PyResult<TorusPoint> {
        self.inner.reduce(z).py()
    }
}

#[pymethods]
impl PyTorus {
    #[new]
    #[pyo3(signature = (tau, tolerance = DEFAULT_TOLERANCE))]
    fn new(tau: Complex64, tolerance: f64) -> PyResult<Self> {
        Ok(Self { inner: TorusParam::new(tau, tolerance).py()? })
    }

    #[getter]
    fn tau(&self) -> Complex64 {
        self.inner.tau()
    }

    #[getter]
    fn tolerance(&self) -> f64 {
        self.inner.tolerance()
    }

    fn reduce(&self, z: Complex64) -> PyResult<Complex64> {
        Ok(self.pt(z)?.z())
    }

    /// Lattice coordinates `(a, b)` with `z = a + b tau`.
    fn coords(&self, z: Complex64) -> (f64, f64) {
        self.inner.coords(z)
    }

    fn add(&self, a: Complex64, b: Complex64) -> PyResult<Complex64> {
        Ok(self.inner.add(self.pt(a)?, self.pt(b)?).z())
    }

    fn neg(&self, a: Complex64) -> PyResult<Complex64> {
        Ok(self.inner.neg(self.pt(a)?).z())
    }

    fn mul(&self, m: i64, a: Complex64) -> PyResult<Complex64> {
        Ok(self.inner.mul_int(m, self.pt(a)?).z())
    }

    fn distance(&self, a: Complex64, b: Complex64) -> PyResult<f64> {
        Ok(self.inner.distance(self.pt(a)?, self.pt(b)?))
    }

    fn eq(&self, a: Complex64, b: Complex64) -> PyResult<bool> {
        Ok(self.inner.eq(self.pt(a)?, self.pt(b)?))
    }

    fn torsion_points(&self, n: usize) -> PyResult<Vec<Complex64>> {
        Ok(self.inner.torsion_points(n).py()?.into_iter().map(|p| p.z()).collect())
    }

    fn torsion_index(&self, n: usize, z: Complex64) -> PyResult<(usize, usize)> {
        self.inner.torsion_index(n, self.pt(z)?).py()
    }

    /// All `x` with `m x = s`.
    fn solve_scaled(&self, m: i64, s: Complex64) -> PyResult<Vec<Complex64>> {
        Ok(self.inner.solve_scaled(m, self.pt(s)?).py()?.into_iter().map(|p| p.z()).collect())
    }

    fn __repr__(&self) -> String {
        let t = self.inner.tau();
        format!("Torus(tau={}{:+}j)", t.re, t.im)
    }
}

/// Calibrated theta basis of degree `n` and the operations built on it.
#[pyclass(name = "ThetaBasis", frozen)]
struct PyBasis {
    inner: ThetaBasis,
}

impl PyBasis {
    fn pt(&self, z: Complex64) -> PyResult<TorusPoint> {
        self.inner.param().reduce(z).py()
    }

    fn hyperplane(&self, h: Vec<Complex64>) -> PyResult<Hyperplane> {
        if h.len() != self.inner.n() {
            return Err(BgdualError::new_err(format!("expected {} coordinates, got {}", self.inner.n(), h.len())));
        }
        Hyperplane::new(h).py()
    }
}

#[pymethods]
impl PyBasis {
    #[new]
    #[pyo3(signature = (n, torus, truncation = None))]
    fn new(n: usize, torus: &PyTorus, truncation: Option<usize>) -> PyResult<Self> {
        Ok(Self { inner: ThetaBasis::calibrated(n, torus.inner, truncation).py()? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn truncation(&self) -> usize {
        self.inner.truncation()
    }

    #[getter]
    fn offset(&self) -> Complex64 {
        self.inner.offset().z()
    }

    /// `[theta_0(z), ..., theta_{n-1}(z)]` at the unreduced point `z`.
    fn values(&self, z: Complex64) -> Vec<Complex64> {
        self.inner.values(z)
    }

    /// Unit-norm representative of the image of `z`.
    fn embed(&self, z: Complex64) -> PyResult<Vec<Complex64>> {
        Ok(self.inner.embed(self.pt(z)?).py()?.coords().to_vec())
    }

    /// Distinct zeros of the section cut out by `h`, with multiplicities.
    fn section_zeros(&self, h: Vec<Complex64>) -> PyResult<Vec<(Complex64, usize)>> {
        let zs = discriminant::hyperplane_section(&self.hyperplane(h)?, &self.inner).py()?;
        Ok(zs.zeros.iter().map(|z| (z.point.z(), z.multiplicity)).collect())
    }

    /// `(is_in_discriminant, partition)`.
    #[pyo3(signature = (h, clustering_tol = DEFAULT_CLUSTERING_TOL))]
    fn in_discriminant(&self, h: Vec<Complex64>, clustering_tol: f64) -> PyResult<(bool, Vec<usize>)> {
        let (inside, part) = discriminant::in_discriminant(&self.hyperplane(h)?, &self.inner, clustering_tol).py()?;
        Ok((inside, part.parts().to_vec()))
    }

    /// `(fiber_type, verdict)`.
    fn fiber_type(&self, h: Vec<Complex64>) -> PyResult<(String, String)> {
        let r = discriminant::fiber_report(&self.hyperplane(h)?, &self.inner).py()?;
        Ok((r.fiber_type, r.verdict))
    }

    /// Hyperplane through the divisor `[(point, multiplicity), ...]`.
    fn hyperplane_through(&self, divisor: Vec<(Complex64, usize)>) -> PyResult<Vec<Complex64>> {
        let d = divisor.into_iter().map(|(z, k)| Ok((self.pt(z)?, k))).collect::<PyResult<Vec<_>>>()?;
        Ok(self.inner.hyperplane_through_divisor(&d).py()?.coords().to_vec())
    }

    fn osculating_hyperplane(&self, z: Complex64) -> PyResult<Vec<Complex64>> {
        Ok(self.inner.osculating_hyperplane(self.pt(z)?).py()?.coords().to_vec())
    }

    /// Tangent hyperplane at `-x` through `xs`, `x` the `branch`-th root of `2x = sum(xs)`.
    fn tangent_hyperplane(&self, xs: Vec<Complex64>, branch: usize) -> PyResult<Vec<Complex64>> {
        let pts = xs.into_iter().map(|z| self.pt(z)).collect::<PyResult<Vec<_>>>()?;
        Ok(discriminant::sample_d_tilde(&pts, branch, &self.inner).py()?.coords().to_vec())
    }

    /// Number of tangent hyperplanes in a random pencil.
    #[pyo3(signature = (seed = 0))]
    fn discriminant_degree(&self, py: Python<'_>, seed: u64) -> PyResult<usize> {
        py.detach(|| discriminant::discriminant_degree_probe(&self.inner, seed)).py().map(|p| p.degree)
    }

    #[pyo3(signature = (h, seed = 0))]
    fn multiplicity(&self, py: Python<'_>, h: Vec<Complex64>, seed: u64) -> PyResult<usize> {
        let h = self.hyperplane(h)?;
        py.detach(|| discriminant::multiplicity_probe(&h, &self.inner, seed)).py().map(|p| p.multiplicity)
    }

    /// `(hyperplanes, multiplicities, span_rank)` of the osculating stratum.
    #[pyo3(signature = (seed = 0))]
    fn top_stratum(&self, py: Python<'_>, seed: u64) -> PyResult<(Vec<Vec<Complex64>>, Vec<usize>, usize)> {
        let r = py.detach(|| discriminant::top_stratum(&self.inner, seed)).py()?;
        Ok((r.points.iter().map(|h| h.coords().to_vec()).collect(), r.multiplicities, r.span_rank))
    }

    /// Residual of the Heisenberg word against translation by the torsion point `xi`.
    #[pyo3(signature = (xi, samples = 8, seed = 0))]
    fn translation_residual(&self, xi: Complex64, samples: usize, seed: u64) -> PyResult<f64> {
        Ok(heisenberg::verify_translation_action(self.pt(xi)?, &self.inner, samples, seed).py()?.residual)
    }

    /// Fitted discriminant sextic (`n = 3`) summarized as a dict.
    #[pyo3(signature = (seed = 0))]
    fn dual_sextic<'py>(&self, py: Python<'py>, seed: u64) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
        let s = py.detach(|| sextic::dual_sextic(&self.inner, seed)).py()?;
        let d = pyo3::types::PyDict::new(py);
        d.set_item("fit_residual", s.fit_residual)?;
        d.set_item("degree5_residual", s.degree5_residual)?;
        d.set_item("singular_points", s.singular_points.iter().map(|p| p.point.coords().to_vec()).collect::<Vec<_>>())?;
        d.set_item("cusp_count", s.cusp_count)?;
        d.set_item("geometric_genus", s.geometric_genus)?;
        Ok(d)
    }
}

/// Verdict case name for the curve `x -> (m_i x + t_i)` and the class
/// `(degree, aj)`.
#[pyfunction]
#[pyo3(signature = (components, degree, aj, torus))]
fn classify(components: Vec<(i64, Complex64)>, degree: i64, aj: Complex64, torus: &PyTorus) -> PyResult<String> {
    let comps = components.into_iter().map(|(m, t)| Ok(AffineEndo::new(m, torus.pt(t)?))).collect::<PyResult<_>>()?;
    let z = CurveInProduct::new(comps).py()?;
    let l = DivisorClass::new(degree, torus.pt(aj)?);
    Ok(classifier::classify(&z, &l, &torus.inner).py()?.case.to_string())
}

/// `(bound, validity_note)` as an exact integer.
#[pyfunction]
fn jordan_upper_bound(n: u64) -> PyResult<(num_bigint::BigUint, String)> {
    let r = jordan::jordan_upper_bound(n).py()?;
    Ok((r.jordan_bound, r.validity_note))
}

/// Runs the command line in-process; returns `(exit_code, rendered_report)`.
#[pyfunction]
fn run(py: Python<'_>, args: Vec<String>) -> (i32, String) {
    let mut full = vec!["bgdual".to_string()];
    full.extend(args);
    let out = py.detach(|| cli::run_from_args(full, None));
    (out.code, out.rendered)
}

#[pymodule]
fn bgdual(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BgdualError", m.py().get_type::<BgdualError>())?;
    m.add_class::<PyTorus>()?;
    m.add_class::<PyBasis>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(jordan_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
