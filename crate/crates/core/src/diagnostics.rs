//! Stability measurements: condition numbers, loss of (sketch-)
//! biorthogonality, decomposition errors and angle cosines.
//!
//! Everything here is evaluated in double precision, whatever the storage
//! precision of the inputs.

use crate::dense::{DenseMatrix, Real};
use crate::error::{check_dim, Error, Result};
use crate::linalg;

/// Inner product accumulated in double precision.
pub fn dot_f64<T: Real>(a: &[T], b: &[T]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.as_f64() * y.as_f64()).sum()
}

fn identity_defect(g: &DenseMatrix<f64>) -> f64 {
    let mut s = 0.0;
    for j in 0..g.ncols() {
        for i in 0..g.nrows() {
            let e = if i == j { 1.0 - g.get(i, j) } else { g.get(i, j) };
            s += e * e;
        }
    }
    s.sqrt()
}

/// `‖I − PᵀQ‖_F`
pub fn biorth_loss<T: Real>(q: &DenseMatrix<T>, p: &DenseMatrix<T>) -> Result<f64> {
    if q.shape() != p.shape() {
        return Err(Error::InvalidArgument(format!(
            "biorthogonality needs equal shapes, got {:?} and {:?}",
            q.shape(),
            p.shape()
        )));
    }
    Ok(identity_defect(&p.to_f64().tr_matmul(&q.to_f64())?))
}

/// `‖I − (ΩP)ᵀΩQ‖_F` for the sketches `SQ = ΩQ`, `SP = ΩP`.
pub fn sketch_biorth_error(sq: &DenseMatrix<f64>, sp: &DenseMatrix<f64>) -> Result<f64> {
    biorth_loss(sq, sp)
}

/// `‖X − Q·TX‖_F`
pub fn decomposition_error<S: Real, T: Real>(x: &DenseMatrix<S>, q: &DenseMatrix<T>, tx: &DenseMatrix<f64>) -> Result<f64> {
    check_dim("decomposition row count", x.nrows(), q.nrows())?;
    check_dim("decomposition inner dimension", q.ncols(), tx.nrows())?;
    check_dim("decomposition column count", x.ncols(), tx.ncols())?;
    let qt = q.to_f64().matmul(tx)?;
    Ok(x.to_f64().sub(&qt)?.frobenius_norm())
}

/// 2-norm condition number `σ_max / σ_min`; infinite when rank deficient.
pub fn cond2<T: Real>(m: &DenseMatrix<T>) -> Result<f64> {
    if m.max_abs() == 0.0 {
        return Err(Error::DegenerateInput("condition number of a zero matrix".into()));
    }
    let sv = linalg::singular_values(&m.to_f64())?;
    let k = m.nrows().min(m.ncols());
    Ok(sv[0] / sv[k - 1])
}

/// `‖q‖‖p‖ / |⟨q,p⟩|`; `+∞` when the vectors are exactly orthogonal.
pub fn angle_inv_cos<T: Real>(q: &[T], p: &[T]) -> Result<f64> {
    check_dim("angle operand length", q.len(), p.len())?;
    let (qq, pp) = (dot_f64(q, q), dot_f64(p, p));
    if qq == 0.0 || pp == 0.0 {
        return Err(Error::DegenerateInput("angle with a zero vector".into()));
    }
    let ip = dot_f64(q, p).abs();
    if ip == 0.0 {
        Ok(f64::INFINITY)
    } else {
        Ok(((qq * pp).sqrt() / ip).max(1.0))
    }
}

/// Measurements taken after step `step` (1-based) of a biorthogonalization.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationDiagnostics {
    pub step: usize,
    pub cond_q: f64,
    pub cond_p: f64,
    /// `‖I − P_iᵀQ_i‖_F`, or its sketched analogue for randomized runs.
    pub biorth_loss: f64,
    /// Inverse cosine of the angle between `q_i` and `p_i` (or their
    /// sketches) right before normalization.
    pub inv_cos_angle: f64,
    pub d: f64,
    /// Inner products of the working kind (full length for deterministic
    /// runs, sketched for randomized runs) spent on this step.
    pub inner_products: usize,
}

/// Exact 2-norm condition numbers of a growing basis.
///
/// Columns are fed through an incremental Householder QR, so each step
/// costs `O(n i)` plus an SVD of the `i x i` triangular factor, instead of a
/// full SVD of the `n x i` basis. `κ(Q_i) = κ(R_i)` up to roundoff.
#[derive(Debug, Clone)]
pub struct ConditionTracker {
    n: usize,
    /// Householder vectors; `reflectors[k]` acts on rows `k..n`.
    reflectors: Vec<(Vec<f64>, f64)>,
    r: DenseMatrix<f64>,
}

impl ConditionTracker {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            reflectors: Vec::new(),
            r: DenseMatrix::zeros(0, 0),
        }
    }

    pub fn len(&self) -> usize {
        self.r.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Appends a column and returns the condition number of the basis so far.
    pub fn push<T: Real>(&mut self, col: &[T]) -> Result<f64> {
        check_dim("tracked column length", self.n, col.len())?;
        let k = self.len();
        if k >= self.n {
            return Ok(f64::INFINITY);
        }
        let mut a: Vec<f64> = col.iter().map(|v| v.as_f64()).collect();
        for (j, (v, tau)) in self.reflectors.iter().enumerate() {
            let tail = &mut a[j..];
            let s: f64 = v.iter().zip(tail.iter()).map(|(x, y)| x * y).sum();
            let f = tau * s;
            for (t, x) in tail.iter_mut().zip(v) {
                *t -= f * x;
            }
        }
        let tail = &a[k..];
        let alpha = tail.iter().map(|x| x * x).sum::<f64>().sqrt();
        let beta = if tail[0] >= 0.0 { -alpha } else { alpha };
        let mut v = tail.to_vec();
        v[0] -= beta;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        let tau = if vv > 0.0 { 2.0 / vv } else { 0.0 };
        self.reflectors.push((v, tau));

        let mut r = DenseMatrix::<f64>::zeros(k + 1, k + 1);
        for j in 0..k {
            for i in 0..=j {
                r.set(i, j, self.r.get(i, j));
            }
        }
        for (i, &ai) in a.iter().enumerate().take(k) {
            r.set(i, k, ai);
        }
        r.set(k, k, beta);
        self.r = r;
        self.condition()
    }

    pub fn condition(&self) -> Result<f64> {
        if self.is_empty() {
            return Ok(1.0);
        }
        let sv = linalg::singular_values(&self.r)?;
        let smin = sv[sv.len() - 1];
        Ok(if smin > 0.0 { sv[0] / smin } else { f64::INFINITY })
    }
}

/// Accumulates one [`IterationDiagnostics`] entry per completed step.
#[derive(Debug, Clone)]
pub struct DiagnosticsRecorder {
    track_q: ConditionTracker,
    track_p: ConditionTracker,
    loss_sq: f64,
    series: Vec<IterationDiagnostics>,
}

/// Per-step inputs for [`DiagnosticsRecorder::record`].
pub struct StepMeasurement<'a, T> {
    pub q: &'a [T],
    pub p: &'a [T],
    /// `⟨p_k, q_new⟩` for the previous columns (sketched when randomized).
    pub cross_col: &'a [f64],
    /// `⟨p_new, q_l⟩` for the previous columns (sketched when randomized).
    pub cross_row: &'a [f64],
    /// `⟨p_new, q_new⟩` after normalization.
    pub diag: f64,
    pub inv_cos_angle: f64,
    pub d: f64,
    pub inner_products: usize,
}

impl DiagnosticsRecorder {
    pub fn new(n: usize) -> Self {
        Self {
            track_q: ConditionTracker::new(n),
            track_p: ConditionTracker::new(n),
            loss_sq: 0.0,
            series: Vec::new(),
        }
    }

    pub fn record<T: Real>(&mut self, m: StepMeasurement<'_, T>) -> Result<()> {
        let cond_q = self.track_q.push(m.q)?;
        let cond_p = self.track_p.push(m.p)?;
        self.loss_sq += m.cross_col.iter().chain(m.cross_row).map(|v| v * v).sum::<f64>();
        self.loss_sq += (1.0 - m.diag).powi(2);
        self.series.push(IterationDiagnostics {
            step: self.series.len() + 1,
            cond_q,
            cond_p,
            biorth_loss: self.loss_sq.sqrt(),
            inv_cos_angle: m.inv_cos_angle,
            d: m.d,
            inner_products: m.inner_products,
        });
        Ok(())
    }

    pub fn into_series(self) -> Vec<IterationDiagnostics> {
        self.series
    }
}
