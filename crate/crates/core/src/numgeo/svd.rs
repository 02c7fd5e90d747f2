//! Small dense matrices and a one-sided (Hestenes) Jacobi SVD.

use super::NumGeoError;

/// Absolute floor below which the largest singular value counts as zero.
pub const ABS_RANK_FLOOR: f64 = 1e-12;

/// Relative rank tolerance for finite-difference Jacobians.
pub const FD_RANK_TOL: f64 = 1e-6;

/// Relative rank tolerance for analytically computed matrices.
pub const ANALYTIC_RANK_TOL: f64 = 1e-9;

const MAX_SWEEPS: usize = 100;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn from_columns(cols: &[Vec<f64>]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn scaled(&self, factor: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Thin SVD `M = U diag(sigma) V^T` with `k = min(rows, cols)` singular triplets.
#[derive(Debug, Clone)]
pub struct Svd {
    /// `rows x k`, orthonormal columns.
    pub u: Matrix,
    /// Descending, nonnegative.
    pub sigma: Vec<f64>,
    /// `cols x k`, orthonormal columns.
    pub v: Matrix,
}

impl Svd {
    pub fn reconstruct(&self) -> Matrix {
        self.u.matmul(&Matrix::diag(&self.sigma)).matmul(&self.v.transpose())
    }

    pub fn rank(&self, rel_tol: f64) -> usize {
        rank_from_singular_values(&self.sigma, rel_tol)
    }
}

pub fn svd(m: &Matrix) -> Result<Svd, NumGeoError> {
    if !m.is_finite() {
        return Err(NumGeoError::NonFinite);
    }
    if m.rows >= m.cols {
        Ok(jacobi_tall(m))
    } else {
        let t = jacobi_tall(&m.transpose());
        Ok(Svd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        })
    }
}

pub fn singular_values(m: &Matrix) -> Result<Vec<f64>, NumGeoError> {
    svd(m).map(|s| s.sigma)
}

/// Counts `sigma_i > rel_tol * sigma_1`; zero when `sigma_1` is below [`ABS_RANK_FLOOR`].
pub fn rank_from_singular_values(sigma: &[f64], rel_tol: f64) -> usize {
    let Some(&s1) = sigma.first() else {
        return 0;
    };
    if s1 < ABS_RANK_FLOOR {
        return 0;
    }
    sigma.iter().filter(|s| **s > rel_tol * s1).count()
}

// rows >= cols
fn jacobi_tall(m: &Matrix) -> Svd {
    let (rows, cols) = (m.rows, m.cols);
    // Pre-scaling keeps tiny matrices away from underflow in the column inner products.
    let scale = m.max_abs();
    if scale == 0.0 {
        let mut u = Matrix::zeros(rows, cols);
        complete_orthonormal_columns(&mut u, 0);
        return Svd {
            u,
            sigma: vec![0.0; cols],
            v: Matrix::identity(cols),
        };
    }
    // Column-major working copy.
    let mut a: Vec<Vec<f64>> = (0..cols)
        .map(|j| (0..rows).map(|i| m[(i, j)] / scale).collect())
        .collect();
    let mut v: Vec<Vec<f64>> = (0..cols)
        .map(|j| (0..cols).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let (alpha, beta, gamma) = column_products(&a[p], &a[q]);
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut a, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = a
        .iter()
        .map(|col| col.iter().map(|x| x * x).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let mut u = Matrix::zeros(rows, cols);
    let mut vm = Matrix::zeros(cols, cols);
    let mut sigma = Vec::with_capacity(cols);
    let mut nonzero = 0;
    for (k, &j) in order.iter().enumerate() {
        let s = norms[j];
        sigma.push(s * scale);
        if s > 0.0 {
            for i in 0..rows {
                u[(i, k)] = a[j][i] / s;
            }
            nonzero = k + 1;
        }
        for i in 0..cols {
            vm[(i, k)] = v[j][i];
        }
    }
    complete_orthonormal_columns(&mut u, nonzero);
    Svd { u, sigma, v: vm }
}

fn column_products(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let mut alpha = 0.0;
    let mut beta = 0.0;
    let mut gamma = 0.0;
    for (a, b) in x.iter().zip(y) {
        alpha += a * a;
        beta += b * b;
        gamma += a * b;
    }
    (alpha, beta, gamma)
}

fn rotate(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (left, right) = cols.split_at_mut(q);
    let (cp, cq) = (&mut left[p], &mut right[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (xp, xq) = (*x, *y);
        *x = c * xp - s * xq;
        *y = s * xp + c * xq;
    }
}

/// Fills columns `filled..` of `u` with unit vectors orthogonal to everything before them.
fn complete_orthonormal_columns(u: &mut Matrix, filled: usize) {
    let rows = u.rows;
    let mut candidate = 0;
    for k in filled..u.cols {
        loop {
            assert!(candidate < rows, "cannot complete an orthonormal basis");
            let mut w = vec![0.0; rows];
            w[candidate] = 1.0;
            candidate += 1;
            // Two passes of Gram-Schmidt for stability.
            for _ in 0..2 {
                for j in 0..k {
                    let d: f64 = (0..rows).map(|i| w[i] * u[(i, j)]).sum();
                    for (i, wi) in w.iter_mut().enumerate() {
                        *wi -= d * u[(i, j)];
                    }
                }
            }
            let n = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-8 {
                for (i, wi) in w.iter().enumerate() {
                    u[(i, k)] = wi / n;
                }
                break;
            }
        }
    }
}
