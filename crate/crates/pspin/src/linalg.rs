//! Dense symmetric eigenvalues and small linear solves.
//!
//! Householder tridiagonalization followed by implicit-shift QL, eigenvalues
//! only. Sizes in this crate stay in the low hundreds, so dense reduction is
//! entirely adequate.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    /// QL iteration failed to deflate an eigenvalue within the iteration cap.
    NoConvergence,
    /// Linear system is singular to working precision.
    Singular,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::NoConvergence => write!(f, "eigensolver did not converge"),
            LinalgError::Singular => write!(f, "matrix is singular"),
        }
    }
}

impl core::error::Error for LinalgError {}

/// Reduces the symmetric matrix `a` (row-major, `n x n`, destroyed) to
/// tridiagonal form by Householder similarity transforms.
///
/// Returns `(d, e)` with `d` the diagonal and `e[i]` the subdiagonal entry
/// coupling `i` and `i+1` (`e[n-1]` unused, kept zero).
fn householder_tridiag(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut e = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for i in (1..n).rev() {
        // annihilate row i entries 0..i-1, keeping a[i][i-1]
        let row = i * n;
        let norm2: f64 = (0..i).map(|k| a[row + k] * a[row + k]).sum();
        let norm = libm::sqrt(norm2);
        if norm == 0.0 {
            e[i - 1] = 0.0;
            continue;
        }
        if norm2 - a[row + i - 1] * a[row + i - 1] == 0.0 {
            // already tridiagonal in this row
            e[i - 1] = a[row + i - 1];
            continue;
        }
        let alpha = if a[row + i - 1] >= 0.0 { -norm } else { norm };
        for k in 0..i {
            v[k] = a[row + k];
        }
        v[i - 1] -= alpha;
        let vnorm2: f64 = (0..i).map(|k| v[k] * v[k]).sum();
        let beta = 2.0 / vnorm2;
        // p = beta * A v on the leading i x i block
        for j in 0..i {
            let mut s = 0.0;
            for k in 0..i {
                s += a[j * n + k] * v[k];
            }
            p[j] = beta * s;
        }
        let kappa: f64 = 0.5 * beta * (0..i).map(|k| v[k] * p[k]).sum::<f64>();
        // w = p - kappa v; A -= v w^T + w v^T
        for j in 0..i {
            p[j] -= kappa * v[j];
        }
        for r in 0..i {
            for c in 0..=r {
                let upd = v[r] * p[c] + p[r] * v[c];
                a[r * n + c] -= upd;
                a[c * n + r] = a[r * n + c];
            }
        }
        e[i - 1] = alpha;
    }
    let d = (0..n).map(|i| a[i * n + i]).collect();
    (d, e)
}

/// Implicit-shift QL on a symmetric tridiagonal matrix; eigenvalues land in
/// `d`, unsorted. `e[i]` couples `i` and `i+1`.
fn tqli_eigenvalues(d: &mut [f64], e: &mut [f64]) -> Result<(), LinalgError> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = libm::fabs(d[m]) + libm::fabs(d[m + 1]);
                if libm::fabs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 80 {
                return Err(LinalgError::NoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + libm::copysign(r, g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                f = (d[i] - g) * s + 2.0 * c * b;
                p = s * f;
                d[i + 1] = g + p;
                g = c * f - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Eigenvalues of a symmetric matrix (row-major `n x n` slice), ascending.
pub fn sym_eigenvalues(matrix: &[f64], n: usize) -> Result<Vec<f64>, LinalgError> {
    debug_assert_eq!(matrix.len(), n * n);
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![matrix[0]]);
    }
    let mut work = matrix.to_vec();
    let (mut d, mut e) = householder_tridiag(&mut work, n);
    tqli_eigenvalues(&mut d, &mut e)?;
    d.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(d)
}

/// Solves `A x = b` in place by Gaussian elimination with partial pivoting.
/// `a` is row-major `n x n` and is destroyed.
pub fn solve_linear(a: &mut [f64], b: &mut [f64], n: usize) -> Result<(), LinalgError> {
    for col in 0..n {
        let mut piv = col;
        let mut best = libm::fabs(a[col * n + col]);
        for r in col + 1..n {
            let v = libm::fabs(a[r * n + col]);
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return Err(LinalgError::Singular);
        }
        if piv != col {
            for c in 0..n {
                a.swap(piv * n + c, col * n + c);
            }
            b.swap(piv, col);
        }
        let inv = 1.0 / a[col * n + col];
        for r in col + 1..n {
            let factor = a[r * n + col] * inv;
            if factor == 0.0 {
                continue;
            }
            a[r * n + col] = 0.0;
            for c in col + 1..n {
                a[r * n + c] -= factor * a[col * n + c];
            }
            b[r] -= factor * b[col];
        }
    }
    for r in (0..n).rev() {
        let mut s = b[r];
        for c in r + 1..n {
            s -= a[r * n + c] * b[c];
        }
        b[r] = s / a[r * n + r];
    }
    Ok(())
}
