//! Dense matrix kernels: products, LU with partial pivoting, and a
//! power-iteration spectral radius estimate.
//!
//! Everything here works on small, fully populated matrices (N of a few
//! hundred at most), stored row-major.

use std::ops::{Index, IndexMut};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Row-major dense matrix of `f64`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
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

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(DenseMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| alpha * v).collect(),
        }
    }

    /// `self += alpha * other`
    pub fn add_scaled(&mut self, alpha: f64, other: &DenseMatrix) -> Result<()> {
        self.check_same_shape(other)?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += alpha * b;
        }
        Ok(())
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Replaces row `i` with the unit row `e_i`.
    pub fn set_identity_row(&mut self, i: usize) {
        let row = self.row_mut(i);
        row.fill(0.0);
        row[i] = 1.0;
    }

    fn check_same_shape(&self, other: &DenseMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(self.shape_error(other));
        }
        Ok(())
    }

    fn shape_error(&self, other: &DenseMatrix) -> Error {
        Error::ShapeMismatch {
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn matvec(a: &DenseMatrix, x: &[f64]) -> Result<Vec<f64>> {
    if a.cols != x.len() {
        return Err(Error::LengthMismatch {
            expected: a.cols,
            found: x.len(),
        });
    }
    Ok((0..a.rows).map(|i| dot(a.row(i), x)).collect())
}

pub fn matmul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    if a.cols != b.rows {
        return Err(a.shape_error(b));
    }
    let mut c = DenseMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a[(i, k)];
            if aik == 0.0 {
                continue;
            }
            let brow = b.row(k);
            for (cij, bkj) in c.row_mut(i).iter_mut().zip(brow) {
                *cij += aik * bkj;
            }
        }
    }
    Ok(c)
}

pub fn diag_from_vector(v: &[f64]) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(v.len(), v.len());
    for (i, &x) in v.iter().enumerate() {
        m[(i, i)] = x;
    }
    m
}

/// `diag(v) * a` without forming the diagonal matrix.
pub fn scale_rows(v: &[f64], a: &DenseMatrix) -> Result<DenseMatrix> {
    if v.len() != a.rows {
        return Err(Error::LengthMismatch {
            expected: a.rows,
            found: v.len(),
        });
    }
    let mut out = a.clone();
    for (i, &s) in v.iter().enumerate() {
        out.row_mut(i).iter_mut().for_each(|x| *x *= s);
    }
    Ok(out)
}

pub fn elementwise_product(u: &[f64], v: &[f64]) -> Result<Vec<f64>> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    Ok(u.iter().zip(v).map(|(a, b)| a * b).collect())
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn norm2(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// LU factorization with partial (row) pivoting, `P A = L U`.
///
/// `L` has a unit diagonal and is stored below the diagonal of `lu`.
#[derive(Clone, Debug)]
pub struct LuFactorization {
    lu: DenseMatrix,
    perm: Vec<usize>,
    sign: f64,
}

/// Pivots below `PIVOT_RTOL * ||A||_inf` are treated as zero.
const PIVOT_RTOL: f64 = 1e-14;

impl LuFactorization {
    pub fn new(a: &DenseMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(a.shape_error(a));
        }
        let n = a.rows;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let threshold = PIVOT_RTOL * a.norm_inf().max(f64::MIN_POSITIVE);

        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].abs()))
                .fold((k, -1.0), |best, c| if c.1 > best.1 { c } else { best });
            if pmax.is_nan() || pmax <= threshold {
                return Err(Error::Singular { pivot: k });
            }
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor == 0.0 {
                    continue;
                }
                let (upper, lower) = lu.data.split_at_mut(i * n);
                let krow = &upper[k * n + k + 1..k * n + n];
                let irow = &mut lower[k + 1..n];
                for (x, y) in irow.iter_mut().zip(krow) {
                    *x -= factor * y;
                }
            }
        }
        Ok(LuFactorization { lu, perm, sign })
    }

    pub fn dim(&self) -> usize {
        self.lu.rows
    }

    /// Row permutation: row `i` of `P A` is row `perm[i]` of `A`.
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn permutation_sign(&self) -> f64 {
        self.sign
    }

    pub fn lower(&self) -> DenseMatrix {
        let n = self.dim();
        DenseMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Greater => self.lu[(i, j)],
            std::cmp::Ordering::Equal => 1.0,
            std::cmp::Ordering::Less => 0.0,
        })
    }

    pub fn upper(&self) -> DenseMatrix {
        let n = self.dim();
        DenseMatrix::from_fn(n, n, |i, j| if i <= j { self.lu[(i, j)] } else { 0.0 })
    }

    pub fn determinant(&self) -> f64 {
        (0..self.dim()).fold(self.sign, |d, i| d * self.lu[(i, i)])
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim();
        if rhs.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: rhs.len(),
            });
        }
        let mut x: Vec<f64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            let row = self.lu.row(i);
            let s = dot(&row[..i], &x[..i]);
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let s = dot(&row[i + 1..], &x[i + 1..]);
            x[i] = (x[i] - s) / row[i];
        }
        Ok(x)
    }

    /// Solves `A X = B` column by column.
    pub fn solve_matrix(&self, b: &DenseMatrix) -> Result<DenseMatrix> {
        if b.rows != self.dim() {
            return Err(self.lu.shape_error(b));
        }
        let mut out = DenseMatrix::zeros(b.rows, b.cols);
        let mut col = vec![0.0; b.rows];
        for j in 0..b.cols {
            for (i, c) in col.iter_mut().enumerate() {
                *c = b[(i, j)];
            }
            let x = self.solve(&col)?;
            for (i, v) in x.into_iter().enumerate() {
                out[(i, j)] = v;
            }
        }
        Ok(out)
    }

    /// Cheap condition telemetry: `||A||_inf * ||A^{-1} e||_inf` with `e` all ones.
    pub fn condition_estimate(&self, a_norm_inf: f64) -> f64 {
        let ones = vec![1.0; self.dim()];
        match self.solve(&ones) {
            Ok(x) => a_norm_inf * norm_inf(&x),
            Err(_) => f64::INFINITY,
        }
    }
}

pub fn lu_solve(a: &DenseMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    if a.rows != rhs.len() {
        return Err(Error::LengthMismatch {
            expected: a.rows,
            found: rhs.len(),
        });
    }
    LuFactorization::new(a)?.solve(rhs)
}

/// Outcome of [`spectral_radius`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralRadius {
    pub rho: f64,
    pub converged: bool,
    /// Relative residual of the accepted eigen-relation.
    pub residual: f64,
    pub iterations: usize,
}

const SPECTRAL_SEED: u64 = 0x05ee_d0f5_171c;

/// Estimates `max |lambda_i|` by normalized power iteration.
///
/// A single dominant real eigenvalue is read off the Rayleigh quotient. A
/// dominant complex-conjugate pair makes the iterates rotate instead of
/// settling, so three consecutive iterates are also fitted to the recurrence
/// `v2 = alpha v1 + beta v0`, whose roots are the pair. When neither relation
/// reaches `tol` the geometric-mean growth of the iterate norms is returned
/// and `converged` is false.
pub fn spectral_radius(a: &DenseMatrix, iters: usize, tol: f64) -> Result<SpectralRadius> {
    if !a.is_square() {
        return Err(a.shape_error(a));
    }
    let n = a.rows;
    if n == 0 {
        return Ok(SpectralRadius {
            rho: 0.0,
            converged: true,
            residual: 0.0,
            iterations: 0,
        });
    }
    let iters = iters.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(SPECTRAL_SEED);
    let mut x: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    let nx = norm2(&x);
    x.iter_mut().for_each(|v| *v /= nx);

    let window = (iters / 2).clamp(1, 64);
    let mut log_growth: Vec<f64> = Vec::with_capacity(window);
    let mut best = (f64::INFINITY, 0.0);

    for it in 1..=iters {
        let y = matvec(a, &x)?;
        let ny = norm2(&y);
        if ny == 0.0 || !ny.is_finite() {
            // nilpotent direction or overflow
            let rho = if ny == 0.0 { 0.0 } else { f64::INFINITY };
            return Ok(SpectralRadius {
                rho,
                converged: ny == 0.0,
                residual: 0.0,
                iterations: it,
            });
        }
        if log_growth.len() == window {
            log_growth.remove(0);
        }
        log_growth.push(ny.ln());

        if it % 4 == 0 || it == iters {
            let est = dominant_estimate(a, &x, &y, ny)?;
            if est.1 < best.0 {
                best = (est.1, est.0);
            }
            if est.1 <= tol {
                return Ok(SpectralRadius {
                    rho: est.0,
                    converged: true,
                    residual: est.1,
                    iterations: it,
                });
            }
        }
        x = y.into_iter().map(|v| v / ny).collect();
    }

    let mean = log_growth.iter().sum::<f64>() / log_growth.len() as f64;
    Ok(SpectralRadius {
        rho: mean.exp(),
        converged: false,
        residual: best.0,
        iterations: iters,
    })
}

/// Returns `(modulus, relative residual)` for the better of the real and
/// complex-pair eigen-relations at the unit vector `x` with `y = A x`.
fn dominant_estimate(a: &DenseMatrix, x: &[f64], y: &[f64], ny: f64) -> Result<(f64, f64)> {
    let lambda = dot(x, y);
    let real_res = y
        .iter()
        .zip(x)
        .map(|(yi, xi)| (yi - lambda * xi).powi(2))
        .sum::<f64>()
        .sqrt()
        / ny;
    let mut best = (lambda.abs(), real_res);

    let z = matvec(a, y)?;
    let nz = norm2(&z);
    // least squares z ~ alpha y + beta x
    let (yy, xy, xx) = (dot(y, y), dot(x, y), dot(x, x));
    let (zy, zx) = (dot(z.as_slice(), y), dot(z.as_slice(), x));
    let det = yy * xx - xy * xy;
    if nz > 0.0 && det > 1e-12 * yy * xx {
        let alpha = (zy * xx - zx * xy) / det;
        let beta = (yy * zx - xy * zy) / det;
        let res = z
            .iter()
            .zip(y.iter().zip(x))
            .map(|(zi, (yi, xi))| (zi - alpha * yi - beta * xi).powi(2))
            .sum::<f64>()
            .sqrt()
            / nz;
        let disc = alpha * alpha + 4.0 * beta;
        let modulus = if disc < 0.0 {
            (-beta).sqrt()
        } else {
            let s = disc.sqrt();
            ((alpha + s) / 2.0).abs().max(((alpha - s) / 2.0).abs())
        };
        if res < best.1 {
            best = (modulus, res);
        }
    }
    Ok(best)
}
