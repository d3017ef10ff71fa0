//! Dense matrices and tensors over a generic scalar, with Gaussian
//! elimination based solves, rank, nullspace and inversion.
//!
//! Exact scalars eliminate exactly; floating scalars use partial pivoting
//! by magnitude and certify solutions by substitution.

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ToleranceConfig};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn at(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut S {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix<S> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn matmul(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out: Matrix<S> = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b);
                    out.at_mut(i, j).add_assign(&prod);
                }
            }
        }
        out
    }

    pub fn mat_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "mat_vec shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for j in 0..self.cols {
                    if !v[j].is_zero() {
                        acc.add_assign(&self.at(i, j).mul(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).sub(other.at(i, j)))
    }

    pub fn scale(&self, s: &S) -> Matrix<S> {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).mul(s))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::abs).fold(0.0, f64::max)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }
}

/// Max-norm of the difference of two equally shaped matrices.
pub fn diff_norm<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> f64 {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| x.sub(y).abs())
        .fold(0.0, f64::max)
}

/// Dense tensor of rank 1, 2 or 3 in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseTensor<S> {
    pub dims: Vec<usize>,
    pub entries: Vec<S>,
}

impl<S: Scalar> DenseTensor<S> {
    pub fn zeros(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() || dims.len() > 3 || dims.iter().any(|&d| d == 0) {
            return Err(Error::Shape(format!("unsupported tensor dims {dims:?}")));
        }
        let len: usize = dims.iter().product();
        Ok(DenseTensor {
            dims: dims.to_vec(),
            entries: vec![S::zero(); len],
        })
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.dims.len());
        let mut off = 0;
        for (k, (&i, &d)) in idx.iter().zip(&self.dims).enumerate() {
            assert!(i < d, "index {i} out of bound {d} at axis {k}");
            off = off * d + i;
        }
        off
    }

    pub fn at(&self, idx: &[usize]) -> &S {
        &self.entries[self.offset(idx)]
    }

    pub fn at_mut(&mut self, idx: &[usize]) -> &mut S {
        let off = self.offset(idx);
        &mut self.entries[off]
    }
}

/// Outcome of a linear solve: either a certified solution or a
/// certified/observed inconsistency.
#[derive(Clone, Debug)]
pub enum SolveOutcome<S> {
    Solution(Matrix<S>),
    Inconsistent { residual: f64 },
}

impl<S: Scalar> SolveOutcome<S> {
    pub fn solution(self) -> Result<Matrix<S>> {
        match self {
            SolveOutcome::Solution(x) => Ok(x),
            SolveOutcome::Inconsistent { residual } => Err(Error::Invalid(format!(
                "linear system inconsistent (residual {residual:e})"
            ))),
        }
    }
}

fn pivot_threshold<S: Scalar>(scale: f64) -> f64 {
    if S::EXACT {
        0.0 // exact scalars: any nonzero entry is a pivot
    } else {
        f64::EPSILON * 64.0 * scale.max(1.0)
    }
}

/// Row echelon reduction in place; returns pivot (row, col) pairs.
/// `rhs`, when present, receives the same row operations.
fn row_echelon<S: Scalar>(
    a: &mut Matrix<S>,
    mut rhs: Option<&mut Matrix<S>>,
    zero_eps: f64,
) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let mut best = r;
        let mut best_abs = a.at(r, c).abs();
        for i in r + 1..a.rows {
            let v = a.at(i, c).abs();
            if v > best_abs {
                best = i;
                best_abs = v;
            }
        }
        let is_zero = if S::EXACT {
            a.at(best, c).is_zero()
        } else {
            best_abs <= zero_eps
        };
        if is_zero {
            continue;
        }
        if best != r {
            for j in 0..a.cols {
                let tmp = a.at(best, j).clone();
                *a.at_mut(best, j) = a.at(r, j).clone();
                *a.at_mut(r, j) = tmp;
            }
            if let Some(b) = rhs.as_deref_mut() {
                for j in 0..b.cols {
                    let tmp = b.at(best, j).clone();
                    *b.at_mut(best, j) = b.at(r, j).clone();
                    *b.at_mut(r, j) = tmp;
                }
            }
        }
        let inv = a.at(r, c).inv().expect("nonzero pivot");
        for j in c..a.cols {
            *a.at_mut(r, j) = a.at(r, j).mul(&inv);
        }
        if let Some(b) = rhs.as_deref_mut() {
            for j in 0..b.cols {
                *b.at_mut(r, j) = b.at(r, j).mul(&inv);
            }
        }
        for i in 0..a.rows {
            if i == r || a.at(i, c).is_zero() {
                continue;
            }
            let factor = a.at(i, c).clone();
            for j in c..a.cols {
                let t = a.at(r, j).mul(&factor);
                *a.at_mut(i, j) = a.at(i, j).sub(&t);
            }
            if let Some(b) = rhs.as_deref_mut() {
                for j in 0..b.cols {
                    let t = b.at(r, j).mul(&factor);
                    *b.at_mut(i, j) = b.at(i, j).sub(&t);
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

/// Solve `A x = b` for `b` a vector or matrix of right-hand sides.
///
/// Returns a solution with `max|Ax - b| <= residual_tol * (1 + max|b|)`,
/// or reports inconsistency. Exact scalars produce exact solutions and
/// exact inconsistency certificates.
pub fn solve_linear<S: Scalar>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    cfg: &ToleranceConfig,
) -> Result<SolveOutcome<S>> {
    if a.rows != b.rows {
        return Err(Error::Shape(format!(
            "solve_linear: A has {} rows, b has {}",
            a.rows, b.rows
        )));
    }
    let mut m = a.clone();
    let mut rhs = b.clone();
    let eps = pivot_threshold::<S>(a.max_abs());
    let pivots = row_echelon(&mut m, Some(&mut rhs), eps);

    // Consistency: rows reduced to zero must carry zero right-hand side.
    let rank = pivots.len();
    let mut mismatch: f64 = 0.0;
    for i in rank..a.rows {
        for j in 0..rhs.cols {
            mismatch = mismatch.max(rhs.at(i, j).abs());
        }
    }
    let scale = 1.0 + b.max_abs();
    if mismatch > cfg.residual_tol * scale || (S::EXACT && mismatch > 0.0) {
        return Ok(SolveOutcome::Inconsistent { residual: mismatch });
    }

    // Free columns get zero; pivot columns read off the reduced rhs.
    let mut x = Matrix::zero(a.cols, b.cols);
    for &(r, c) in &pivots {
        for j in 0..b.cols {
            *x.at_mut(c, j) = rhs.at(r, j).clone();
        }
    }

    let residual = diff_norm(&a.matmul(&x), b);
    if residual > cfg.residual_tol * scale {
        return Ok(SolveOutcome::Inconsistent { residual });
    }
    Ok(SolveOutcome::Solution(x))
}

/// Rank with the pivot threshold `eps` (relative to 1); exact scalars
/// ignore `eps`.
pub fn rank_at<S: Scalar>(a: &Matrix<S>, eps: f64) -> usize {
    let mut m = a.clone();
    let zero_eps = if S::EXACT { 0.0 } else { eps };
    row_echelon(&mut m, None, zero_eps).len()
}

/// Basis of the right nullspace of `a`.
pub fn nullspace<S: Scalar>(a: &Matrix<S>, eps: f64) -> Vec<Vec<S>> {
    let mut m = a.clone();
    let zero_eps = if S::EXACT {
        0.0
    } else {
        eps.max(pivot_threshold::<S>(a.max_abs()))
    };
    let pivots = row_echelon(&mut m, None, zero_eps);
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in 0..a.cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![S::zero(); a.cols];
        v[free] = S::one();
        for &(r, c) in &pivots {
            v[c] = m.at(r, free).neg();
        }
        basis.push(v);
    }
    basis
}

/// Inverse of a square matrix, or `None` when singular at the solve tolerance.
pub fn invert<S: Scalar>(a: &Matrix<S>, cfg: &ToleranceConfig) -> Result<Option<Matrix<S>>> {
    if a.rows != a.cols {
        return Err(Error::Shape("invert: matrix not square".into()));
    }
    match solve_linear(a, &Matrix::identity(a.rows), cfg)? {
        SolveOutcome::Solution(x) => Ok(Some(x)),
        SolveOutcome::Inconsistent { .. } => Ok(None),
    }
}
