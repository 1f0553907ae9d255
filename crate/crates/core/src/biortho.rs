//! Deterministic two-sided Gram-Schmidt biorthogonalization.
//!
//! Given `X, Y ∈ R^{n x m}` the process builds `Q, P` with
//! `range(Q_i) = range(X_i)`, `range(P_i) = range(Y_i)` and `PᵀQ = I`. Each
//! step subtracts from `x_i` its oblique projection onto the current `Q`
//! along `P` (and symmetrically for `y_i`), optionally repeats that
//! projection, and scales the pair so that `⟨q_i, p_i⟩ = 1` and
//! `‖q_i‖ = ‖p_i‖`.
//!
//! The projection can be applied in three ways:
//!
//! * [`GsVariant::Cgs`] uses `Q Pᵀ x`, all coefficients from the same vector.
//! * [`GsVariant::Mgs`] applies the rank-one factors `I − q_j p_jᵀ` in turn.
//! * [`GsVariant::CgsO`] applies `Q (PᵀQ)⁻¹ Pᵀ x` with the gram kept factored.

use std::fmt;
use std::str::FromStr;

use crate::dense::{axpy, dot, norm2, DenseMatrix, Real};
use crate::diagnostics::{dot_f64, DiagnosticsRecorder, IterationDiagnostics, StepMeasurement};
use crate::error::{check_dim, Error, Result};
use crate::projectors::ObliquePair;

/// How the (sketched) oblique projector is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GsVariant {
    Cgs,
    Mgs,
    CgsO,
}

impl fmt::Display for GsVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GsVariant::Cgs => "CGS",
            GsVariant::Mgs => "MGS",
            GsVariant::CgsO => "CGS_O",
        })
    }
}

impl FromStr for GsVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase().replace('-', "_");
        let t = t.strip_prefix('r').filter(|r| r.starts_with("cgs") || r.starts_with("mgs")).unwrap_or(&t);
        match t {
            "cgs" => Ok(GsVariant::Cgs),
            "mgs" => Ok(GsVariant::Mgs),
            "cgs_o" | "cgso" => Ok(GsVariant::CgsO),
            _ => Err(Error::InvalidArgument(format!("unknown Gram-Schmidt variant `{s}`"))),
        }
    }
}

/// Relative breakdown threshold used when none is configured, as a multiple
/// of the unit roundoff of the working precision.
pub const DEFAULT_BREAKDOWN_FACTOR: f64 = 64.0;

#[derive(Debug, Clone, PartialEq)]
pub struct BiorthConfig {
    pub variant: GsVariant,
    /// Number of projection passes per column (1, 2 or 3).
    pub passes: usize,
    /// Step `i` breaks down when `|⟨q_i,p_i⟩| ≤ tol · ‖q_i‖‖p_i‖`.
    /// `None` means `64 u` for the working precision.
    pub breakdown_tol: Option<f64>,
    pub record_diagnostics: bool,
}

impl BiorthConfig {
    pub fn new(variant: GsVariant, passes: usize) -> Self {
        Self {
            variant,
            passes,
            breakdown_tol: None,
            record_diagnostics: false,
        }
    }

    pub fn with_diagnostics(mut self) -> Self {
        self.record_diagnostics = true;
        self
    }

    pub fn with_breakdown_tol(mut self, tol: f64) -> Self {
        self.breakdown_tol = Some(tol);
        self
    }

    /// Name in the usual short form, e.g. `MGS2`.
    pub fn label(&self) -> String {
        method_label(self.variant, self.passes)
    }

    pub fn validate(&self) -> Result<()> {
        validate_common(self.passes, self.breakdown_tol)
    }

    pub(crate) fn tolerance(&self, roundoff: f64) -> f64 {
        self.breakdown_tol.unwrap_or(DEFAULT_BREAKDOWN_FACTOR * roundoff)
    }
}

pub(crate) fn method_label(variant: GsVariant, passes: usize) -> String {
    if passes == 1 {
        variant.to_string()
    } else {
        format!("{variant}{passes}")
    }
}

pub(crate) fn validate_common(passes: usize, tol: Option<f64>) -> Result<()> {
    if !(1..=3).contains(&passes) {
        return Err(Error::InvalidArgument(format!("passes must be 1, 2 or 3, got {passes}")));
    }
    if let Some(t) = tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::InvalidArgument(format!("breakdown tolerance must lie in (0, 1), got {t}")));
        }
    }
    Ok(())
}

/// Why a step could not be completed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BreakdownCause {
    /// `|d_i|` fell to or below the relative tolerance.
    VanishingInnerProduct { d: f64, threshold: f64 },
    /// The explicit gram of a `CGS_O` run became numerically singular.
    SingularGram { pivot: f64, tolerance: f64 },
}

impl fmt::Display for BreakdownCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BreakdownCause::VanishingInnerProduct { d, threshold } => {
                write!(f, "|d| = {:e} at or below {:e}", d.abs(), threshold)
            }
            BreakdownCause::SingularGram { pivot, tolerance } => {
                write!(f, "gram pivot {pivot:e} at or below {tolerance:e}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BiorthStatus {
    Complete,
    /// Step `step` (1-based) broke down; columns `1..step` are valid.
    Breakdown { step: usize, cause: BreakdownCause },
}

impl BiorthStatus {
    pub fn is_complete(&self) -> bool {
        matches!(self, BiorthStatus::Complete)
    }
}

#[derive(Debug, Clone)]
pub struct BiorthResult<T: Real> {
    pub q: DenseMatrix<T>,
    pub p: DenseMatrix<T>,
    /// Upper triangular, `X ≈ Q·TX` over the completed columns.
    pub tx: DenseMatrix<f64>,
    /// Upper triangular, `Y ≈ P·TY` over the completed columns.
    pub ty: DenseMatrix<f64>,
    /// `d_i = ⟨q_i, p_i⟩` before normalization.
    pub d: Vec<f64>,
    pub status: BiorthStatus,
    /// One entry per completed step; empty unless diagnostics were requested.
    pub diagnostics: Vec<IterationDiagnostics>,
}

/// Outcome of one accepted step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    /// Summed projection coefficients of `x` on the previous `q_j`.
    pub coeff_x: Vec<f64>,
    /// Summed projection coefficients of `y` on the previous `p_j`.
    pub coeff_y: Vec<f64>,
    /// `x = Σ coeff_x[j] q_j + diag_x q_new`.
    pub diag_x: f64,
    /// `y = Σ coeff_y[j] p_j + diag_y p_new`.
    pub diag_y: f64,
    pub d: f64,
    pub inv_cos_angle: f64,
    pub inner_products: usize,
}

/// Scales a projected pair `(v, w)` with `⟨v, w⟩ = d` so that the results
/// satisfy `⟨q, p⟩ = 1` and `‖q‖ = ‖p‖`. Returns the factors `(a, b)` with
/// `q = a v`, `p = b w`.
pub(crate) fn balanced_scaling(d: f64, norm_v: f64, norm_w: f64) -> (f64, f64) {
    let root = d.abs().sqrt();
    let alpha = (norm_w / norm_v).sqrt();
    (alpha / root, d.signum() / (alpha * root))
}

fn upper_triangular(cols: &[Vec<f64>], diag: &[f64]) -> DenseMatrix<f64> {
    let k = cols.len();
    DenseMatrix::from_fn(k, k, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => cols[j][i],
        std::cmp::Ordering::Equal => diag[j],
        std::cmp::Ordering::Greater => 0.0,
    })
}

enum Bases<T: Real> {
    Plain { q: DenseMatrix<T>, p: DenseMatrix<T> },
    Explicit(ObliquePair<T>),
}

impl<T: Real> Bases<T> {
    fn q(&self) -> &DenseMatrix<T> {
        match self {
            Bases::Plain { q, .. } => q,
            Bases::Explicit(pair) => pair.q(),
        }
    }

    fn p(&self) -> &DenseMatrix<T> {
        match self {
            Bases::Plain { p, .. } => p,
            Bases::Explicit(pair) => pair.p(),
        }
    }
}

/// Incremental two-sided Gram-Schmidt: feed column pairs one at a time.
pub struct TwoSidedGs<T: Real> {
    cfg: BiorthConfig,
    n: usize,
    tol: f64,
    bases: Bases<T>,
    tx_cols: Vec<Vec<f64>>,
    ty_cols: Vec<Vec<f64>>,
    tx_diag: Vec<f64>,
    ty_diag: Vec<f64>,
    d: Vec<f64>,
    recorder: Option<DiagnosticsRecorder>,
}

impl<T: Real> TwoSidedGs<T> {
    pub fn new(n: usize, cfg: BiorthConfig) -> Result<Self> {
        cfg.validate()?;
        let bases = match cfg.variant {
            GsVariant::CgsO => Bases::Explicit(ObliquePair::empty(n)),
            _ => Bases::Plain {
                q: DenseMatrix::zeros(n, 0),
                p: DenseMatrix::zeros(n, 0),
            },
        };
        Ok(Self {
            tol: cfg.tolerance(T::UNIT_ROUNDOFF),
            recorder: cfg.record_diagnostics.then(|| DiagnosticsRecorder::new(n)),
            cfg,
            n,
            bases,
            tx_cols: Vec::new(),
            ty_cols: Vec::new(),
            tx_diag: Vec::new(),
            ty_diag: Vec::new(),
            d: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn q(&self) -> &DenseMatrix<T> {
        self.bases.q()
    }

    pub fn p(&self) -> &DenseMatrix<T> {
        self.bases.p()
    }

    /// One projection pass; returns coefficients and inner products used.
    fn project(&self, v: &mut [T], w: &mut [T]) -> Result<(Vec<f64>, Vec<f64>, usize)> {
        let k = self.len();
        match &self.bases {
            Bases::Plain { q, p } => match self.cfg.variant {
                GsVariant::Cgs => {
                    let cx: Vec<T> = p.columns().map(|pj| dot(pj, v)).collect();
                    let cy: Vec<T> = q.columns().map(|qj| dot(qj, w)).collect();
                    for j in 0..k {
                        axpy(-cx[j], q.col(j), v);
                        axpy(-cy[j], p.col(j), w);
                    }
                    Ok((cx.iter().map(|c| c.as_f64()).collect(), cy.iter().map(|c| c.as_f64()).collect(), 2 * k))
                }
                _ => {
                    let mut cx = Vec::with_capacity(k);
                    let mut cy = Vec::with_capacity(k);
                    for j in 0..k {
                        let (qj, pj) = (q.col(j), p.col(j));
                        let a = dot(pj, v);
                        axpy(-a, qj, v);
                        let b = dot(qj, w);
                        axpy(-b, pj, w);
                        cx.push(a.as_f64());
                        cy.push(b.as_f64());
                    }
                    Ok((cx, cy, 2 * k))
                }
            },
            Bases::Explicit(pair) => {
                if k == 0 {
                    return Ok((Vec::new(), Vec::new(), 0));
                }
                let cx = pair.oblique_coefficients(v)?;
                let cy = pair.adjoint_coefficients(w)?;
                let mut ax = Vec::with_capacity(k);
                let mut ay = Vec::with_capacity(k);
                for j in 0..k {
                    let a = T::cast(cx[j]);
                    let b = T::cast(cy[j]);
                    axpy(-a, pair.q().col(j), v);
                    axpy(-b, pair.p().col(j), w);
                    ax.push(a.as_f64());
                    ay.push(b.as_f64());
                }
                Ok((ax, ay, 2 * k))
            }
        }
    }

    /// Biorthogonalizes `(x, y)` against the current bases and appends the
    /// result. The outer `Result` reports invalid input; the inner one a
    /// breakdown, in which case the engine is unchanged.
    pub fn push(&mut self, x: &[T], y: &[T]) -> Result<std::result::Result<StepRecord, BreakdownCause>> {
        check_dim("x column length", self.n, x.len())?;
        check_dim("y column length", self.n, y.len())?;
        let k = self.len();
        let mut v = x.to_vec();
        let mut w = y.to_vec();
        let mut coeff_x = vec![0.0; k];
        let mut coeff_y = vec![0.0; k];
        let mut inner_products = 0;
        if k > 0 {
            for _ in 0..self.cfg.passes {
                let (cx, cy, ips) = self.project(&mut v, &mut w)?;
                for j in 0..k {
                    coeff_x[j] += cx[j];
                    coeff_y[j] += cy[j];
                }
                inner_products += ips;
            }
        }

        let d = dot(&v, &w).as_f64();
        inner_products += 1;
        let (nv, nw) = (norm2(&v).as_f64(), norm2(&w).as_f64());
        let threshold = self.tol * nv * nw;
        if !(d.abs() > threshold) || !d.is_finite() {
            return Ok(Err(BreakdownCause::VanishingInnerProduct { d, threshold }));
        }
        let inv_cos_angle = (nv * nw / d.abs()).max(1.0);
        let (a, b) = balanced_scaling(d, nv, nw);
        let (a_t, b_t) = (T::cast(a), T::cast(b));
        for t in v.iter_mut() {
            *t = *t * a_t;
        }
        for t in w.iter_mut() {
            *t = *t * b_t;
        }
        let (diag_x, diag_y) = (1.0 / a_t.as_f64(), 1.0 / b_t.as_f64());

        match &mut self.bases {
            Bases::Plain { q, p } => {
                q.push_col(&v)?;
                p.push_col(&w)?;
            }
            Bases::Explicit(pair) => match pair.extend(&v, &w) {
                Ok(()) => inner_products += 2 * k + 1,
                Err(Error::NearBreakdown { pivot, tolerance }) => {
                    return Ok(Err(BreakdownCause::SingularGram { pivot, tolerance }));
                }
                Err(e) => return Err(e),
            },
        }

        if let Some(rec) = self.recorder.as_mut() {
            let (q, p) = (self.bases.q(), self.bases.p());
            let cross_col: Vec<f64> = (0..k).map(|j| dot_f64(p.col(j), &v)).collect();
            let cross_row: Vec<f64> = (0..k).map(|j| dot_f64(&w, q.col(j))).collect();
            rec.record(StepMeasurement {
                q: &v,
                p: &w,
                cross_col: &cross_col,
                cross_row: &cross_row,
                diag: dot_f64(&v, &w),
                inv_cos_angle,
                d,
                inner_products,
            })?;
        }

        self.tx_cols.push(coeff_x.clone());
        self.ty_cols.push(coeff_y.clone());
        self.tx_diag.push(diag_x);
        self.ty_diag.push(diag_y);
        self.d.push(d);
        Ok(Ok(StepRecord {
            coeff_x,
            coeff_y,
            diag_x,
            diag_y,
            d,
            inv_cos_angle,
            inner_products,
        }))
    }

    pub fn finish(self, status: BiorthStatus) -> BiorthResult<T> {
        let tx = upper_triangular(&self.tx_cols, &self.tx_diag);
        let ty = upper_triangular(&self.ty_cols, &self.ty_diag);
        let (q, p) = match self.bases {
            Bases::Plain { q, p } => (q, p),
            Bases::Explicit(pair) => pair.into_bases(),
        };
        BiorthResult {
            q,
            p,
            tx,
            ty,
            d: self.d,
            status,
            diagnostics: self.recorder.map(|r| r.into_series()).unwrap_or_default(),
        }
    }
}

/// Runs two-sided Gram-Schmidt over all columns of `X` and `Y`.
///
/// A breakdown is not an error: the returned result holds the columns
/// completed before it and the status says where it happened.
pub fn two_sided_gs<T: Real>(x: &DenseMatrix<T>, y: &DenseMatrix<T>, cfg: &BiorthConfig) -> Result<BiorthResult<T>> {
    check_inputs(x, y)?;
    let mut gs = TwoSidedGs::new(x.nrows(), cfg.clone())?;
    for i in 0..x.ncols() {
        if let Err(cause) = gs.push(x.col(i), y.col(i))? {
            return Ok(gs.finish(BiorthStatus::Breakdown { step: i + 1, cause }));
        }
    }
    Ok(gs.finish(BiorthStatus::Complete))
}

pub(crate) fn check_inputs<T: Real>(x: &DenseMatrix<T>, y: &DenseMatrix<T>) -> Result<()> {
    if x.shape() != y.shape() {
        return Err(Error::InvalidArgument(format!(
            "X and Y must have the same shape, got {:?} and {:?}",
            x.shape(),
            y.shape()
        )));
    }
    if x.ncols() > x.nrows() {
        return Err(Error::InvalidArgument(format!(
            "more columns ({}) than rows ({})",
            x.ncols(),
            x.nrows()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostics::{biorth_loss, decomposition_error};
    use crate::rng::stream_rng;
    use proptest::prelude::*;
    use rand_distr::{Distribution, StandardNormal};

    const ALL: [GsVariant; 3] = [GsVariant::Cgs, GsVariant::Mgs, GsVariant::CgsO];

    fn gaussian(n: usize, k: usize, seed: u64) -> DenseMatrix<f64> {
        let mut rng = stream_rng(seed, 33, 0);
        DenseMatrix::from_fn(n, k, |_, _| StandardNormal.sample(&mut rng))
    }

    #[test]
    fn variant_names_round_trip() {
        for v in ALL {
            assert_eq!(v.to_string().parse::<GsVariant>().unwrap(), v);
        }
        assert_eq!("rCGS_O".parse::<GsVariant>().unwrap(), GsVariant::CgsO);
        assert_eq!("rmgs".parse::<GsVariant>().unwrap(), GsVariant::Mgs);
        assert!("householder".parse::<GsVariant>().is_err());
        assert_eq!(BiorthConfig::new(GsVariant::CgsO, 2).label(), "CGS_O2");
    }

    #[test]
    fn already_biorthonormal_input_is_unchanged() {
        let x = DenseMatrix::<f64>::identity(6).leading_cols(3);
        for v in ALL {
            let r = two_sided_gs(&x, &x, &BiorthConfig::new(v, 1)).unwrap();
            assert_eq!(r.q, x);
            assert_eq!(r.p, x);
            assert_eq!(r.tx, DenseMatrix::identity(3));
            assert_eq!(r.d, vec![1.0; 3]);
        }
    }

    #[test]
    fn hand_executed_example() {
        let x = DenseMatrix::<f64>::from_columns(&[[1.0, 0.0, 0.0], [1.0, 1.0, 0.0]]).unwrap();
        let y = DenseMatrix::<f64>::from_columns(&[[1.0, 1.0, 0.0], [0.0, 1.0, 1.0]]).unwrap();
        for v in ALL {
            let r = two_sided_gs(&x, &y, &BiorthConfig::new(v, 1)).unwrap();
            assert_eq!(r.d, vec![1.0, 1.0]);
            // Step 1 has ‖x‖ ≠ ‖y‖, so the pair is rescaled to equal norms;
            // the directions and q_i p_iᵀ match the unbalanced hand result.
            let s = 2f64.powf(0.25);
            let want_q = [[s, 0.0, 0.0], [-1.0, 1.0, 0.0]];
            let want_p = [[1.0 / s, 1.0 / s, 0.0], [0.0, 1.0, 1.0]];
            for j in 0..2 {
                for i in 0..3 {
                    assert!((r.q.get(i, j) - want_q[j][i]).abs() < 1e-15, "{v} q");
                    assert!((r.p.get(i, j) - want_p[j][i]).abs() < 1e-15, "{v} p");
                }
            }
        }
    }

    #[test]
    fn orthogonal_single_column_breaks_down() {
        let x = DenseMatrix::<f64>::from_columns(&[[1.0, 0.0]]).unwrap();
        let y = DenseMatrix::<f64>::from_columns(&[[0.0, 1.0]]).unwrap();
        let r = two_sided_gs(&x, &y, &BiorthConfig::new(GsVariant::Mgs, 1)).unwrap();
        assert!(matches!(r.status, BiorthStatus::Breakdown { step: 1, .. }));
        assert_eq!(r.q.ncols(), 0);
    }

    #[test]
    fn invalid_configurations_are_rejected() {
        let x = gaussian(10, 3, 1);
        assert!(two_sided_gs(&x, &x, &BiorthConfig::new(GsVariant::Cgs, 0)).is_err());
        assert!(two_sided_gs(&x, &x, &BiorthConfig::new(GsVariant::Cgs, 4)).is_err());
        assert!(two_sided_gs(&x, &x, &BiorthConfig::new(GsVariant::Cgs, 1).with_breakdown_tol(1.5)).is_err());
        assert!(two_sided_gs(&x, &gaussian(10, 2, 2), &BiorthConfig::new(GsVariant::Cgs, 1)).is_err());
    }

    #[test]
    fn variants_agree_on_well_conditioned_input() {
        let x = gaussian(200, 15, 3);
        let y = gaussian(200, 15, 4);
        let base = two_sided_gs(&x, &y, &BiorthConfig::new(GsVariant::Mgs, 1)).unwrap();
        for v in [GsVariant::Cgs, GsVariant::CgsO] {
            let r = two_sided_gs(&x, &y, &BiorthConfig::new(v, 1)).unwrap();
            for j in 0..15 {
                let dq: f64 = r.q.col(j).iter().zip(base.q.col(j)).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
                assert!(dq <= 1e-8 * norm2(base.q.col(j)), "{v} column {j}");
            }
        }
    }

    #[test]
    fn diagnostics_follow_the_run() {
        let x = gaussian(100, 10, 5);
        let y = gaussian(100, 10, 6);
        let r = two_sided_gs(&x, &y, &BiorthConfig::new(GsVariant::Cgs, 1).with_diagnostics()).unwrap();
        assert_eq!(r.diagnostics.len(), 10);
        let last = r.diagnostics.last().unwrap();
        let loss = biorth_loss(&r.q, &r.p).unwrap();
        assert!((last.biorth_loss - loss).abs() <= 1e-12 + 1e-8 * loss);
        let cq = crate::diagnostics::cond2(&r.q).unwrap();
        assert!((last.cond_q - cq).abs() <= 1e-8 * cq);
        assert!(r.diagnostics.iter().all(|s| s.inv_cos_angle >= 1.0 && s.cond_q >= 1.0));
        for (i, s) in r.diagnostics.iter().enumerate() {
            assert_eq!(s.inner_products, 2 * i + 1);
        }
    }

    #[test]
    fn single_precision_run() {
        let x: DenseMatrix<f32> = gaussian(300, 10, 7).convert();
        let y: DenseMatrix<f32> = gaussian(300, 10, 8).convert();
        let r = two_sided_gs(&x, &y, &BiorthConfig::new(GsVariant::Mgs, 2)).unwrap();
        assert!(r.status.is_complete());
        assert!(biorth_loss(&r.q, &r.p).unwrap() < 1e-4);
        assert!(decomposition_error(&x, &r.q, &r.tx).unwrap() < 1e-4 * x.frobenius_norm());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn normalization_and_decomposition(seed in any::<u64>(), k in 1usize..12, vi in 0usize..3, passes in 1usize..4) {
            let n = 60;
            let x = gaussian(n, k, seed);
            let y = gaussian(n, k, seed ^ 0xff);
            let r = two_sided_gs(&x, &y, &BiorthConfig::new(ALL[vi], passes)).unwrap();
            prop_assume!(r.status.is_complete());
            for j in 0..k {
                let (q, p) = (r.q.col(j), r.p.col(j));
                prop_assert!((dot(q, p) - 1.0).abs() <= 1e-12);
                let (nq, np) = (norm2(q), norm2(p));
                prop_assert!((nq - np).abs() <= 1e-12 * nq);
                prop_assert!(r.tx.get(j, j) != 0.0 && r.ty.get(j, j) != 0.0);
                prop_assert!((r.tx.get(j, j) * r.ty.get(j, j) - r.d[j]).abs() <= 1e-12 * r.d[j].abs());
            }
            prop_assert!(decomposition_error(&x, &r.q, &r.tx).unwrap() <= 1e-8 * x.frobenius_norm());
            prop_assert!(decomposition_error(&y, &r.p, &r.ty).unwrap() <= 1e-8 * y.frobenius_norm());
        }
    }
}
