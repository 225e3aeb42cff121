//! Small dense linear algebra for the eigensolver: thin Householder QR,
//! one-sided Jacobi SVD (values + right vectors) and back substitution.
//! Matrix sizes here are a few hundred rows by a few dozen columns, so
//! simplicity and auditability win over BLAS.

use alloc::vec;
use alloc::vec::Vec;

/// Row-major dense matrix.
#[derive(Clone, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    /// Rows `0..n` as a new matrix.
    pub fn top_rows(&self, n: usize) -> Mat {
        let mut m = Mat::zeros(n, self.cols);
        m.data.copy_from_slice(&self.data[..n * self.cols]);
        m
    }

    pub fn col_norm(&self, j: usize) -> f64 {
        let mut s = 0.0;
        for i in 0..self.rows {
            let v = self.at(i, j);
            s += v * v;
        }
        libm::sqrt(s)
    }
}

/// Thin QR by Householder reflections; returns (Q, R) with Q: m-by-n
/// orthonormal columns and R: n-by-n upper triangular. Requires m >= n.
pub fn qr_thin(a: &Mat) -> (Mat, Mat) {
    let m = a.rows;
    let n = a.cols;
    debug_assert!(m >= n);
    let mut work = a.clone();
    // reflectors stored column-wise: v_j lives in work[j.., j] after step j
    let mut betas = vec![0.0; n];
    for j in 0..n {
        // norm of the j-th column below the diagonal
        let mut norm = 0.0;
        for i in j..m {
            let v = work.at(i, j);
            norm += v * v;
        }
        norm = libm::sqrt(norm);
        if norm == 0.0 {
            betas[j] = 0.0;
            continue;
        }
        let x0 = work.at(j, j);
        let alpha = if x0 >= 0.0 { -norm } else { norm };
        // v = x - alpha e1, normalized so v[0] = 1
        let v0 = x0 - alpha;
        betas[j] = -v0 / alpha;
        for i in j + 1..m {
            let v = work.at(i, j) / v0;
            work.set(i, j, v);
        }
        work.set(j, j, alpha);
        // apply I - beta v v^T to the trailing columns
        for k in j + 1..n {
            let mut dot = work.at(j, k);
            for i in j + 1..m {
                dot += work.at(i, j) * work.at(i, k);
            }
            dot *= betas[j];
            let wjk = work.at(j, k) - dot;
            work.set(j, k, wjk);
            for i in j + 1..m {
                let w = work.at(i, k) - dot * work.at(i, j);
                work.set(i, k, w);
            }
        }
    }
    let mut r = Mat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            r.set(i, j, work.at(i, j));
        }
    }
    // accumulate thin Q by applying reflectors to the first n columns of I
    let mut q = Mat::zeros(m, n);
    for j in 0..n {
        q.set(j, j, 1.0);
    }
    for j in (0..n).rev() {
        if betas[j] == 0.0 {
            continue;
        }
        for k in 0..n {
            let mut dot = q.at(j, k);
            for i in j + 1..m {
                dot += work.at(i, j) * q.at(i, k);
            }
            dot *= betas[j];
            let qjk = q.at(j, k) - dot;
            q.set(j, k, qjk);
            for i in j + 1..m {
                let v = q.at(i, k) - dot * work.at(i, j);
                q.set(i, k, v);
            }
        }
    }
    (q, r)
}

/// Singular values (descending) and right singular vectors of `a` by
/// one-sided Jacobi: V's columns match the returned values.
pub fn jacobi_svd(a: &Mat) -> (Vec<f64>, Mat) {
    let m = a.rows;
    let n = a.cols;
    let mut b = a.clone();
    let mut v = Mat::zeros(n, n);
    for j in 0..n {
        v.set(j, j, 1.0);
    }
    for _sweep in 0..60 {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in p + 1..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = 0.0;
                for i in 0..m {
                    let bp = b.at(i, p);
                    let bq = b.at(i, q);
                    app += bp * bp;
                    aqq += bq * bq;
                    apq += bp * bq;
                }
                let denom = libm::sqrt(app * aqq);
                if denom == 0.0 || apq.abs() <= 1e-15 * denom {
                    continue;
                }
                off = off.max(apq.abs() / denom);
                let zeta = (aqq - app) / (2.0 * apq);
                let tan = {
                    let s = if zeta >= 0.0 { 1.0 } else { -1.0 };
                    s / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta))
                };
                let cos = 1.0 / libm::sqrt(1.0 + tan * tan);
                let sin = cos * tan;
                for i in 0..m {
                    let bp = b.at(i, p);
                    let bq = b.at(i, q);
                    b.set(i, p, cos * bp - sin * bq);
                    b.set(i, q, sin * bp + cos * bq);
                }
                for i in 0..n {
                    let vp = v.at(i, p);
                    let vq = v.at(i, q);
                    v.set(i, p, cos * vp - sin * vq);
                    v.set(i, q, sin * vp + cos * vq);
                }
            }
        }
        if off < 1e-14 {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = (0..n).map(|j| b.col_norm(j)).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());
    let mut sigma = Vec::with_capacity(n);
    let mut vs = Mat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        sigma.push(norms[src]);
        for i in 0..n {
            vs.set(i, dst, v.at(i, src));
        }
    }
    (sigma, vs)
}

/// Solves the upper-triangular system `R x = b`.
pub fn solve_upper(r: &Mat, b: &[f64]) -> Vec<f64> {
    let n = r.cols;
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = b[i];
        for j in i + 1..n {
            acc -= r.at(i, j) * x[j];
        }
        let d = r.at(i, i);
        x[i] = if d.abs() > 0.0 { acc / d } else { 0.0 };
    }
    x
}
