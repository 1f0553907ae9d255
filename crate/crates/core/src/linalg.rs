//! Thin wrappers over the dense factorizations of `faer`.

use faer::prelude::*;
use faer::Mat;

pub use faer::c64;

use crate::dense::DenseMatrix;
use crate::error::{check_dim, Error, Result};

/// Singular values in descending order.
pub fn singular_values(m: &DenseMatrix<f64>) -> Result<Vec<f64>> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(Vec::new());
    }
    if !m.as_slice().iter().all(|x| x.is_finite()) {
        return Err(Error::Backend("non-finite entry in SVD input".into()));
    }
    let mut s = m
        .as_faer()
        .singular_values()
        .map_err(|e| Error::Backend(format!("SVD did not converge: {e:?}")))?;
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

/// Eigenvalues and right eigenvectors of a square matrix.
///
/// Column `k` of the returned vectors (stored as `vectors[k]`) belongs to
/// `values[k]`; vectors have unit Euclidean norm.
pub struct EigenDecomposition {
    pub values: Vec<c64>,
    pub vectors: Vec<Vec<c64>>,
}

pub fn eigen(m: &DenseMatrix<f64>) -> Result<EigenDecomposition> {
    check_dim("eigenproblem column count", m.nrows(), m.ncols())?;
    if m.nrows() == 0 {
        return Ok(EigenDecomposition {
            values: Vec::new(),
            vectors: Vec::new(),
        });
    }
    if !m.as_slice().iter().all(|x| x.is_finite()) {
        return Err(Error::Backend("non-finite entry in eigenproblem".into()));
    }
    let evd = m
        .as_faer()
        .eigen()
        .map_err(|e| Error::Backend(format!("eigensolver did not converge: {e:?}")))?;
    let (s, u) = (evd.S(), evd.U());
    let n = m.nrows();
    let values = (0..n).map(|k| s[k]).collect();
    let vectors = (0..n)
        .map(|k| {
            let v: Vec<c64> = (0..n).map(|i| u[(i, k)]).collect();
            let nrm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if nrm > 0.0 {
                v.into_iter().map(|z| z / nrm).collect()
            } else {
                v
            }
        })
        .collect();
    Ok(EigenDecomposition { values, vectors })
}

pub fn eigenvalues(m: &DenseMatrix<f64>) -> Result<Vec<c64>> {
    check_dim("eigenproblem column count", m.nrows(), m.ncols())?;
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    m.as_faer()
        .eigenvalues()
        .map_err(|e| Error::Backend(format!("eigensolver did not converge: {e:?}")))
}

/// Orthonormal basis for the column space of a full-rank tall matrix.
pub fn thin_q(m: &DenseMatrix<f64>) -> DenseMatrix<f64> {
    let q = m.as_faer().qr().compute_thin_Q();
    DenseMatrix::from_faer(q.as_ref())
}

/// Solves the square system `a x = b` with partial pivoting.
pub fn lu_solve(a: &DenseMatrix<f64>, b: &[f64]) -> Result<Vec<f64>> {
    check_dim("square system column count", a.nrows(), a.ncols())?;
    check_dim("right-hand side length", a.nrows(), b.len())?;
    let rhs = Mat::<f64>::from_fn(b.len(), 1, |i, _| b[i]);
    let x = a.as_faer().partial_piv_lu().solve(&rhs);
    let out: Vec<f64> = (0..b.len()).map(|i| x[(i, 0)]).collect();
    if out.iter().all(|v| v.is_finite()) {
        Ok(out)
    } else {
        Err(Error::DegenerateInput("singular square system".into()))
    }
}

/// Least-squares solution of `min ‖a x − b‖` through a Householder QR.
pub fn lstsq(a: &DenseMatrix<f64>, b: &[f64]) -> Result<Vec<f64>> {
    check_dim("least-squares right-hand side length", a.nrows(), b.len())?;
    if a.nrows() < a.ncols() {
        return Err(Error::InvalidArgument(
            "least-squares system must have at least as many rows as columns".into(),
        ));
    }
    let rhs = Mat::<f64>::from_fn(b.len(), 1, |i, _| b[i]);
    let x = a.as_faer().qr().solve_lstsq(&rhs);
    let out: Vec<f64> = (0..a.ncols()).map(|i| x[(i, 0)]).collect();
    if out.iter().all(|v| v.is_finite()) {
        Ok(out)
    } else {
        Err(Error::DegenerateInput("rank-deficient least-squares system".into()))
    }
}
