//! Small dense linear algebra: Householder least squares and Cholesky
//! log-determinants. Row-major matrices, sizes in the low thousands.

#![allow(clippy::needless_range_loop)]

/// Row-major matrix buffer.
pub(crate) struct RowMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl RowMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RowMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }
}

/// Least-squares solution of `A x = b` via Householder QR without
/// pivoting. Returns `None` when the system is numerically rank
/// deficient. Consumes both operands.
pub(crate) fn least_squares(mut a: RowMatrix, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let (m, k) = (a.rows, a.cols);
    assert!(m >= k && b.len() == m, "least squares needs m >= k");
    let scale = (0..k)
        .map(|c| (0..m).map(|r| a.at(r, c).powi(2)).sum::<f64>().sqrt())
        .fold(0f64, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return None;
    }
    let tol = scale * 1e-12;

    for c in 0..k {
        let norm = (c..m).map(|r| a.at(r, c).powi(2)).sum::<f64>().sqrt();
        if norm <= tol {
            return None;
        }
        let alpha = if a.at(c, c) >= 0.0 { -norm } else { norm };
        // Householder vector v = x - alpha e_c, stored in place below the
        // diagonal; v[c] kept separately.
        let v0 = a.at(c, c) - alpha;
        let vnorm2 = 2.0 * norm * (norm + a.at(c, c).abs());
        if vnorm2 <= tol * tol {
            return None;
        }
        for col in c + 1..k {
            let mut dot = v0 * a.at(c, col);
            for r in c + 1..m {
                dot += a.at(r, c) * a.at(r, col);
            }
            let f = 2.0 * dot / vnorm2;
            let upd = a.at(c, col) - f * v0;
            a.set(c, col, upd);
            for r in c + 1..m {
                let upd = a.at(r, col) - f * a.at(r, c);
                a.set(r, col, upd);
            }
        }
        let mut dot = v0 * b[c];
        for r in c + 1..m {
            dot += a.at(r, c) * b[r];
        }
        let f = 2.0 * dot / vnorm2;
        b[c] -= f * v0;
        for r in c + 1..m {
            b[r] -= f * a.at(r, c);
        }
        a.set(c, c, alpha);
    }

    // Back substitution on the upper-triangular k x k block.
    let mut x = vec![0.0; k];
    for j in (0..k).rev() {
        let mut acc = b[j];
        for l in j + 1..k {
            acc -= a.at(j, l) * x[l];
        }
        let diag = a.at(j, j);
        if diag.abs() <= tol {
            return None;
        }
        x[j] = acc / diag;
    }
    Some(x)
}

/// `ln det(A)` for a symmetric positive-definite matrix via Cholesky.
/// Returns `None` when the factorization breaks down.
pub(crate) fn cholesky_logdet(a: &[f64], dim: usize) -> Option<f64> {
    assert_eq!(a.len(), dim * dim);
    let mut l = vec![0.0; dim * dim];
    let mut logdet = 0.0;
    for i in 0..dim {
        for j in 0..=i {
            let mut acc = a[i * dim + j];
            for t in 0..j {
                acc -= l[i * dim + t] * l[j * dim + t];
            }
            if i == j {
                if acc <= 0.0 || !acc.is_finite() {
                    return None;
                }
                let root = acc.sqrt();
                l[i * dim + i] = root;
                logdet += 2.0 * root.ln();
            } else {
                l[i * dim + j] = acc / l[j * dim + j];
            }
        }
    }
    Some(logdet)
}
