//! Thin helpers over `nalgebra` complex SVD.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Singular values in descending order together with the matching right
/// singular vectors (columns of `V`). Wide matrices are padded with zero
/// rows so the full right basis, including the null space, is returned.
pub struct RightSvd {
    pub sigma: Vec<f64>,
    pub v: Vec<Vec<Complex64>>,
}

impl RightSvd {
    pub fn new(m: &DMatrix<Complex64>) -> Self {
        let (rows, cols) = m.shape();
        let padded = if rows < cols {
            let mut p = DMatrix::zeros(cols, cols);
            p.view_mut((0, 0), (rows, cols)).copy_from(m);
            p
        } else {
            m.clone()
        };
        let svd = padded.svd(false, true);
        let v_t = svd.v_t.expect("requested right singular vectors");
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
        let sigma = order.iter().map(|&i| svd.singular_values[i]).collect();
        // rows of V^H are conjugated right singular vectors
        let v = order
            .iter()
            .map(|&i| (0..cols).map(|j| v_t[(i, j)].conj()).collect())
            .collect();
        Self { sigma, v }
    }

    pub fn largest(&self) -> f64 {
        self.sigma.first().copied().unwrap_or(0.0)
    }

    /// `sigma_i / sigma_max`, zero for an all-zero matrix.
    pub fn relative(&self, i: usize) -> f64 {
        let top = self.largest();
        if top == 0.0 {
            0.0
        } else {
            self.sigma[i] / top
        }
    }

    pub fn rank(&self, rel_tol: f64) -> usize {
        (0..self.sigma.len()).filter(|&i| self.relative(i) > rel_tol).count()
    }

    /// Right singular vector of the smallest singular value.
    pub fn null_vector(&self) -> Vec<Complex64> {
        self.v.last().cloned().unwrap_or_default()
    }
}

/// Build a matrix from rows, scaling each row to unit Euclidean norm.
pub fn normalized_rows(rows: &[Vec<Complex64>]) -> DMatrix<Complex64> {
    let cols = rows.first().map_or(0, Vec::len);
    DMatrix::from_fn(rows.len(), cols, |i, j| {
        let norm = norm(&rows[i]);
        if norm > 0.0 {
            rows[i][j] / norm
        } else {
            rows[i][j]
        }
    })
}

pub fn from_rows(rows: &[Vec<Complex64>]) -> DMatrix<Complex64> {
    let cols = rows.first().map_or(0, Vec::len);
    DMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j])
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Bilinear pairing `sum a_k b_k` (no conjugation).
pub fn pairing(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Hermitian inner product `sum conj(a_k) b_k`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn mat_vec(m: &DMatrix<Complex64>, v: &[Complex64]) -> Vec<Complex64> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)] * v[j]).sum()).collect()
}

/// Norm of the component of `h` lying in the row space of `m`, relative to
/// `|h|`: the smallest relative perturbation of `h` that puts it in the
/// kernel of `m`.
pub fn kernel_backward_error(m: &DMatrix<Complex64>, h: &[Complex64], rel_rank_tol: f64) -> f64 {
    let svd = RightSvd::new(m);
    let r = svd.rank(rel_rank_tol);
    let hn = norm(h);
    if hn == 0.0 {
        return 0.0;
    }
    let proj: f64 = svd.v[..r].iter().map(|v| inner(v, h).norm_sqr()).sum();
    proj.sqrt() / hn
}
