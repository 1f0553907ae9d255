//! Randomized two-sided Gram-Schmidt.
//!
//! Every inner product of the deterministic process is replaced by a
//! sketched one, `⟨Ωa, Ωb⟩`, so the bases come out sketch-biorthogonal:
//! `(ΩP)ᵀΩQ = I`. Sketches of the basis columns are cached and updated
//! alongside the full columns, so each new vector is sketched once per pass.
//!
//! In mixed precision the length-`n` vectors are stored and updated in single
//! precision while every sketched quantity, the sketched gram, its
//! factorization and the normalization scalars stay in double precision.
//! There the sketch of a new vector is taken once, on the first pass, and
//! later passes work on the updated sketch: re-sketching the single
//! precision vector would feed its rounding errors back into the sketched
//! recurrence. In double precision each pass re-sketches the vector.

use std::fmt;
use std::str::FromStr;

use crate::biortho::{
    balanced_scaling, check_inputs, method_label, validate_common, BiorthStatus, BreakdownCause, GsVariant,
    StepRecord, DEFAULT_BREAKDOWN_FACTOR,
};
use crate::dense::{axpy, dot, DenseMatrix, FloatFormat, Real};
use crate::diagnostics::{DiagnosticsRecorder, IterationDiagnostics, StepMeasurement};
use crate::error::{check_dim, Error, Result};
use crate::projectors::ObliquePair;
use crate::sketching::SketchOperator;

pub use crate::diagnostics::sketch_biorth_error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrecisionMode {
    UniformHigh,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionPolicy {
    pub mode: PrecisionMode,
    pub low: FloatFormat,
    pub high: FloatFormat,
}

impl PrecisionPolicy {
    /// Everything in double precision.
    pub const fn uniform() -> Self {
        Self {
            mode: PrecisionMode::UniformHigh,
            low: FloatFormat::Binary64,
            high: FloatFormat::Binary64,
        }
    }

    /// Long vectors in single precision, sketched quantities in double.
    pub const fn mixed() -> Self {
        Self {
            mode: PrecisionMode::Mixed,
            low: FloatFormat::Binary32,
            high: FloatFormat::Binary64,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.high != FloatFormat::Binary64 {
            return Err(Error::InvalidArgument("high precision must be binary64".into()));
        }
        match self.mode {
            PrecisionMode::UniformHigh => Ok(()),
            PrecisionMode::Mixed if self.low.precision_bits() < self.high.precision_bits() => Ok(()),
            PrecisionMode::Mixed => Err(Error::InvalidArgument(
                "mixed precision needs a low format coarser than the high one".into(),
            )),
        }
    }

    /// Format used for the length-`n` vectors.
    pub fn storage(&self) -> FloatFormat {
        match self.mode {
            PrecisionMode::UniformHigh => self.high,
            PrecisionMode::Mixed => self.low,
        }
    }
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self::uniform()
    }
}

impl fmt::Display for PrecisionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.mode {
            PrecisionMode::UniformHigh => "double",
            PrecisionMode::Mixed => "mixed",
        })
    }
}

impl FromStr for PrecisionPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "double" | "uniform" | "high" | "f64" => Ok(Self::uniform()),
            "mixed" | "mp" => Ok(Self::mixed()),
            other => Err(Error::InvalidArgument(format!("unknown precision `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RBiorthConfig {
    pub variant: GsVariant,
    pub passes: usize,
    pub sketch: SketchOperator,
    /// Step `i` breaks down when `|⟨Ωq_i,Ωp_i⟩| ≤ tol · ‖Ωq_i‖‖Ωp_i‖`.
    /// `None` means `64 u` of the high precision.
    pub breakdown_tol: Option<f64>,
    pub precision: PrecisionPolicy,
    pub record_diagnostics: bool,
}

impl RBiorthConfig {
    pub fn new(variant: GsVariant, passes: usize, sketch: SketchOperator) -> Self {
        Self {
            variant,
            passes,
            sketch,
            breakdown_tol: None,
            precision: PrecisionPolicy::uniform(),
            record_diagnostics: false,
        }
    }

    pub fn mixed(mut self) -> Self {
        self.precision = PrecisionPolicy::mixed();
        self
    }

    pub fn with_diagnostics(mut self) -> Self {
        self.record_diagnostics = true;
        self
    }

    pub fn with_breakdown_tol(mut self, tol: f64) -> Self {
        self.breakdown_tol = Some(tol);
        self
    }

    /// Name in the usual short form, e.g. `rCGS_O2` or `mp-rMGS2`.
    pub fn label(&self) -> String {
        let base = format!("r{}", method_label(self.variant, self.passes));
        match self.precision.mode {
            PrecisionMode::UniformHigh => base,
            PrecisionMode::Mixed => format!("mp-{base}"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        validate_common(self.passes, self.breakdown_tol)?;
        self.precision.validate()
    }

    fn tolerance(&self) -> f64 {
        self.breakdown_tol
            .unwrap_or(DEFAULT_BREAKDOWN_FACTOR * self.precision.high.unit_roundoff())
    }
}

#[derive(Debug, Clone)]
pub struct RBiorthResult {
    /// Bases, widened to double precision if they were stored in single.
    pub q: DenseMatrix<f64>,
    pub p: DenseMatrix<f64>,
    /// Cached sketches `ΩQ`, `ΩP` maintained during the run.
    pub sq: DenseMatrix<f64>,
    pub sp: DenseMatrix<f64>,
    pub tx: DenseMatrix<f64>,
    pub ty: DenseMatrix<f64>,
    /// `d_i = ⟨Ωq_i, Ωp_i⟩` before normalization.
    pub d: Vec<f64>,
    pub status: BiorthStatus,
    pub diagnostics: Vec<IterationDiagnostics>,
    /// Format the bases were stored in during the run.
    pub storage: FloatFormat,
}

enum SketchedBases<L: Real> {
    Plain {
        q: DenseMatrix<L>,
        p: DenseMatrix<L>,
        sq: DenseMatrix<f64>,
        sp: DenseMatrix<f64>,
    },
    Explicit(ObliquePair<L>),
}

impl<L: Real> SketchedBases<L> {
    fn q(&self) -> &DenseMatrix<L> {
        match self {
            SketchedBases::Plain { q, .. } => q,
            SketchedBases::Explicit(pair) => pair.q(),
        }
    }

    fn p(&self) -> &DenseMatrix<L> {
        match self {
            SketchedBases::Plain { p, .. } => p,
            SketchedBases::Explicit(pair) => pair.p(),
        }
    }

    fn sq(&self) -> &DenseMatrix<f64> {
        match self {
            SketchedBases::Plain { sq, .. } => sq,
            SketchedBases::Explicit(pair) => pair.sq(),
        }
    }

    fn sp(&self) -> &DenseMatrix<f64> {
        match self {
            SketchedBases::Plain { sp, .. } => sp,
            SketchedBases::Explicit(pair) => pair.sp(),
        }
    }
}

/// Incremental randomized two-sided Gram-Schmidt with length-`n` vectors
/// stored in precision `L`.
pub struct SketchedTwoSidedGs<L: Real> {
    variant: GsVariant,
    passes: usize,
    sketch: SketchOperator,
    tol: f64,
    bases: SketchedBases<L>,
    tx_cols: Vec<Vec<f64>>,
    ty_cols: Vec<Vec<f64>>,
    tx_diag: Vec<f64>,
    ty_diag: Vec<f64>,
    d: Vec<f64>,
    recorder: Option<DiagnosticsRecorder>,
}

fn scaled_into<L: Real>(v: &[L], a: f64) -> Vec<L> {
    v.iter().map(|x| L::cast(x.as_f64() * a)).collect()
}

impl<L: Real> SketchedTwoSidedGs<L> {
    /// The precision policy in `cfg` is not consulted here; `L` decides
    /// where the long vectors live.
    pub fn new(cfg: &RBiorthConfig) -> Result<Self> {
        validate_common(cfg.passes, cfg.breakdown_tol)?;
        let (n, s) = (cfg.sketch.n(), cfg.sketch.s());
        let bases = match cfg.variant {
            GsVariant::CgsO => SketchedBases::Explicit(ObliquePair::empty_sketched(cfg.sketch.clone())),
            _ => SketchedBases::Plain {
                q: DenseMatrix::zeros(n, 0),
                p: DenseMatrix::zeros(n, 0),
                sq: DenseMatrix::zeros(s, 0),
                sp: DenseMatrix::zeros(s, 0),
            },
        };
        Ok(Self {
            variant: cfg.variant,
            passes: cfg.passes,
            sketch: cfg.sketch.clone(),
            tol: cfg.tolerance(),
            bases,
            tx_cols: Vec::new(),
            ty_cols: Vec::new(),
            tx_diag: Vec::new(),
            ty_diag: Vec::new(),
            d: Vec::new(),
            recorder: cfg.record_diagnostics.then(|| DiagnosticsRecorder::new(n)),
        })
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn q(&self) -> &DenseMatrix<L> {
        self.bases.q()
    }

    pub fn p(&self) -> &DenseMatrix<L> {
        self.bases.p()
    }

    pub fn sq(&self) -> &DenseMatrix<f64> {
        self.bases.sq()
    }

    pub fn sp(&self) -> &DenseMatrix<f64> {
        self.bases.sp()
    }

    pub fn sketch(&self) -> &SketchOperator {
        &self.sketch
    }

    /// One sketched projection pass on `(v, w)` and their sketches.
    fn project(&self, v: &mut [L], w: &mut [L], sv: &mut [f64], sw: &mut [f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        let k = self.len();
        let (q, p, sq, sp) = (self.bases.q(), self.bases.p(), self.bases.sq(), self.bases.sp());
        let (cx, cy) = match (&self.bases, self.variant) {
            (SketchedBases::Explicit(pair), _) => (pair.sketched_coefficients(sv)?, pair.sketched_adjoint_coefficients(sw)?),
            (_, GsVariant::Mgs) => {
                let mut cx = Vec::with_capacity(k);
                let mut cy = Vec::with_capacity(k);
                for j in 0..k {
                    let a = dot(sp.col(j), sv);
                    axpy(-L::cast(a), q.col(j), v);
                    axpy(-a, sq.col(j), sv);
                    let b = dot(sq.col(j), sw);
                    axpy(-L::cast(b), p.col(j), w);
                    axpy(-b, sp.col(j), sw);
                    cx.push(a);
                    cy.push(b);
                }
                return Ok((cx, cy));
            }
            _ => (
                sp.columns().map(|c| dot(c, sv)).collect::<Vec<f64>>(),
                sq.columns().map(|c| dot(c, sw)).collect::<Vec<f64>>(),
            ),
        };
        for j in 0..k {
            axpy(-L::cast(cx[j]), q.col(j), v);
            axpy(-cx[j], sq.col(j), sv);
            axpy(-L::cast(cy[j]), p.col(j), w);
            axpy(-cy[j], sp.col(j), sw);
        }
        Ok((cx, cy))
    }

    /// Sketch-biorthogonalizes `(x, y)` against the current bases and
    /// appends the result; see [`crate::biortho::TwoSidedGs::push`].
    pub fn push(&mut self, x: &[L], y: &[L]) -> Result<std::result::Result<StepRecord, BreakdownCause>> {
        let n = self.sketch.n();
        check_dim("x column length", n, x.len())?;
        check_dim("y column length", n, y.len())?;
        let k = self.len();
        let mut v = x.to_vec();
        let mut w = y.to_vec();
        let mut sv = vec![0.0; self.sketch.s()];
        let mut sw = vec![0.0; self.sketch.s()];
        let mut coeff_x = vec![0.0; k];
        let mut coeff_y = vec![0.0; k];
        let mut inner_products = 0;
        let passes = if k == 0 { 1 } else { self.passes };
        for pass in 0..passes {
            if pass == 0 || L::FORMAT == FloatFormat::Binary64 {
                self.sketch.apply_vec_into(&v, &mut sv)?;
                self.sketch.apply_vec_into(&w, &mut sw)?;
            }
            if k > 0 {
                let (cx, cy) = self.project(&mut v, &mut w, &mut sv, &mut sw)?;
                for j in 0..k {
                    coeff_x[j] += cx[j];
                    coeff_y[j] += cy[j];
                }
                inner_products += 2 * k;
            }
        }

        let d = dot(&sv, &sw);
        inner_products += 1;
        let (nv, nw) = (dot(&sv, &sv).sqrt(), dot(&sw, &sw).sqrt());
        let threshold = self.tol * nv * nw;
        if !(d.abs() > threshold) || !d.is_finite() {
            return Ok(Err(BreakdownCause::VanishingInnerProduct { d, threshold }));
        }
        let inv_cos_angle = (nv * nw / d.abs()).max(1.0);
        let (a, b) = balanced_scaling(d, nv, nw);
        let q_new = scaled_into(&v, a);
        let p_new = scaled_into(&w, b);
        sv.iter_mut().for_each(|t| *t *= a);
        sw.iter_mut().for_each(|t| *t *= b);

        match &mut self.bases {
            SketchedBases::Plain { q, p, sq, sp } => {
                q.push_col(&q_new)?;
                p.push_col(&p_new)?;
                sq.push_col(&sv)?;
                sp.push_col(&sw)?;
            }
            SketchedBases::Explicit(pair) => match pair.extend_with_sketches(&q_new, &p_new, &sv, &sw) {
                Ok(()) => inner_products += 2 * k + 1,
                Err(Error::NearBreakdown { pivot, tolerance }) => {
                    return Ok(Err(BreakdownCause::SingularGram { pivot, tolerance }));
                }
                Err(e) => return Err(e),
            },
        }

        if let Some(rec) = self.recorder.as_mut() {
            let (sq, sp) = (self.bases.sq(), self.bases.sp());
            let cross_col: Vec<f64> = (0..k).map(|j| dot(sp.col(j), &sv)).collect();
            let cross_row: Vec<f64> = (0..k).map(|j| dot(&sw, sq.col(j))).collect();
            rec.record(StepMeasurement {
                q: &q_new,
                p: &p_new,
                cross_col: &cross_col,
                cross_row: &cross_row,
                diag: dot(&sv, &sw),
                inv_cos_angle,
                d,
                inner_products,
            })?;
        }

        let (diag_x, diag_y) = (1.0 / a, 1.0 / b);
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

    pub fn finish(self, status: BiorthStatus) -> RBiorthResult {
        let tx = triangular(&self.tx_cols, &self.tx_diag);
        let ty = triangular(&self.ty_cols, &self.ty_diag);
        let (q, p, sq, sp) = match self.bases {
            SketchedBases::Plain { q, p, sq, sp } => (q, p, sq, sp),
            SketchedBases::Explicit(pair) => {
                let (sq, sp) = (pair.sq().clone(), pair.sp().clone());
                let (q, p) = pair.into_bases();
                (q, p, sq, sp)
            }
        };
        RBiorthResult {
            q: q.to_f64(),
            p: p.to_f64(),
            sq,
            sp,
            tx,
            ty,
            d: self.d,
            status,
            diagnostics: self.recorder.map(|r| r.into_series()).unwrap_or_default(),
            storage: L::FORMAT,
        }
    }
}

fn triangular(cols: &[Vec<f64>], diag: &[f64]) -> DenseMatrix<f64> {
    let k = cols.len();
    DenseMatrix::from_fn(k, k, |i, j| {
        if i < j {
            cols[j][i]
        } else if i == j {
            diag[j]
        } else {
            0.0
        }
    })
}

fn run<L: Real>(x: &DenseMatrix<L>, y: &DenseMatrix<L>, cfg: &RBiorthConfig) -> Result<RBiorthResult> {
    let mut gs = SketchedTwoSidedGs::<L>::new(cfg)?;
    for i in 0..x.ncols() {
        if let Err(cause) = gs.push(x.col(i), y.col(i))? {
            return Ok(gs.finish(BiorthStatus::Breakdown { step: i + 1, cause }));
        }
    }
    Ok(gs.finish(BiorthStatus::Complete))
}

/// Runs randomized two-sided Gram-Schmidt over all columns of `X` and `Y`.
///
/// Under [`PrecisionMode::Mixed`] the inputs are rounded to the low format
/// before the run. A breakdown is reported through the status, not as an
/// error.
pub fn randomized_two_sided_gs(x: &DenseMatrix<f64>, y: &DenseMatrix<f64>, cfg: &RBiorthConfig) -> Result<RBiorthResult> {
    check_inputs(x, y)?;
    cfg.validate()?;
    check_dim("sketch ambient dimension", cfg.sketch.n(), x.nrows())?;
    if cfg.sketch.s() < x.ncols() {
        return Err(Error::InvalidArgument(format!(
            "sketch dimension {} is smaller than the number of columns {}",
            cfg.sketch.s(),
            x.ncols()
        )));
    }
    match cfg.precision.storage() {
        FloatFormat::Binary64 => run(x, y, cfg),
        FloatFormat::Binary32 => run::<f32>(&x.convert(), &y.convert(), cfg),
    }
}
