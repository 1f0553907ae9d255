//! Oblivious subspace embeddings: sparse sign and Gaussian sketches.
//!
//! A [`SketchOperator`] is an `s x n` matrix `Ω` that is never formed
//! explicitly for the sparse sign kind. Column `j` of every random operator
//! is generated from its own stream keyed by `(seed, j)`, so the operator is
//! fully determined by `(kind, s, n, zeta, seed, scaling)`.
//!
//! All sketch outputs are `f64`, whatever the precision of the input.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::index;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::dense::{DenseMatrix, Real};
use crate::error::{check_dim, Error, Result};
use crate::linalg;
use crate::rng::{domain, stream_rng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SketchKind {
    SparseSign,
    Gaussian,
    Identity,
}

impl fmt::Display for SketchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SketchKind::SparseSign => "sparse-sign",
            SketchKind::Gaussian => "gaussian",
            SketchKind::Identity => "identity",
        })
    }
}

impl FromStr for SketchKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "sparse-sign" | "sparse" | "sparsesign" => Ok(SketchKind::SparseSign),
            "gaussian" | "gauss" => Ok(SketchKind::Gaussian),
            "identity" | "none" => Ok(SketchKind::Identity),
            other => Err(Error::InvalidArgument(format!("unknown sketch kind `{other}`"))),
        }
    }
}

/// Magnitude of the nonzeros of a sparse sign operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Scaling {
    /// `±1/√ζ`, so every column has unit norm.
    #[default]
    Standard,
    /// `±√(n/ζ)`, the literal constant of the original construction.
    PaperLiteral,
}

impl fmt::Display for Scaling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scaling::Standard => "standard",
            Scaling::PaperLiteral => "paper-literal",
        })
    }
}

impl FromStr for Scaling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "standard" => Ok(Scaling::Standard),
            "paper-literal" | "literal" => Ok(Scaling::PaperLiteral),
            other => Err(Error::InvalidArgument(format!("unknown sketch scaling `{other}`"))),
        }
    }
}

/// How a Gaussian operator keeps its entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GaussianStorage {
    /// Materialize when `s * n` fits in [`GAUSSIAN_MATERIALIZE_LIMIT`] entries.
    #[default]
    Auto,
    Materialized,
    /// Regenerate the columns on every application. Cheap to build, costly
    /// to apply; suited to one-shot use such as Monte Carlo trials.
    Streamed,
}

pub const GAUSSIAN_MATERIALIZE_LIMIT: usize = 1 << 26;

enum SketchData {
    SparseSign { rows: Vec<u32>, values: Vec<f64> },
    GaussianDense { entries: Vec<f64> },
    GaussianStreamed,
    Identity,
}

/// A seeded `s x n` sketching matrix. Cloning is cheap.
#[derive(Clone)]
pub struct SketchOperator {
    kind: SketchKind,
    s: usize,
    n: usize,
    zeta: usize,
    seed: u64,
    scaling: Scaling,
    data: Arc<SketchData>,
}

impl fmt::Debug for SketchOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SketchOperator")
            .field("kind", &self.kind)
            .field("s", &self.s)
            .field("n", &self.n)
            .field("zeta", &self.zeta)
            .field("seed", &self.seed)
            .field("scaling", &self.scaling)
            .finish()
    }
}

impl PartialEq for SketchOperator {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.s == other.s
            && self.n == other.n
            && self.zeta == other.zeta
            && self.seed == other.seed
            && self.scaling == other.scaling
    }
}

/// `min(s, 8)`.
pub fn default_zeta(s: usize) -> usize {
    s.min(8)
}

/// Sketch dimension used when none is given: `min(n, 4 (m + 1))`.
pub fn default_sketch_dim(n: usize, m: usize) -> usize {
    n.min(4 * (m + 1))
}

fn gaussian_column(seed: u64, s: usize, j: usize, out: &mut [f64]) {
    let mut rng = stream_rng(seed, domain::GAUSSIAN_SKETCH, j as u64);
    let c = 1.0 / (s as f64).sqrt();
    for v in out.iter_mut() {
        let g: f64 = StandardNormal.sample(&mut rng);
        *v = c * g;
    }
}

impl SketchOperator {
    pub fn new_sparse_sign(s: usize, n: usize, zeta: usize, seed: u64, scaling: Scaling) -> Result<Self> {
        if !(2 <= zeta && zeta <= s && s <= n) {
            return Err(Error::InvalidArgument(format!(
                "sparse sign sketch needs 2 <= zeta <= s <= n, got zeta = {zeta}, s = {s}, n = {n}"
            )));
        }
        if s > u32::MAX as usize {
            return Err(Error::InvalidArgument("sketch dimension exceeds u32 range".into()));
        }
        let c = match scaling {
            Scaling::Standard => 1.0 / (zeta as f64).sqrt(),
            Scaling::PaperLiteral => (n as f64 / zeta as f64).sqrt(),
        };
        let mut rows = Vec::with_capacity(n * zeta);
        let mut values = Vec::with_capacity(n * zeta);
        for j in 0..n {
            let mut rng = stream_rng(seed, domain::SPARSE_SIGN, j as u64);
            let mut picked: Vec<usize> = index::sample(&mut rng, s, zeta).into_vec();
            picked.sort_unstable();
            for r in picked {
                rows.push(r as u32);
                values.push(if rng.random::<bool>() { c } else { -c });
            }
        }
        Ok(Self {
            kind: SketchKind::SparseSign,
            s,
            n,
            zeta,
            seed,
            scaling,
            data: Arc::new(SketchData::SparseSign { rows, values }),
        })
    }

    /// Sparse sign operator with `ζ = min(s, 8)` and standard scaling.
    pub fn sparse_sign(s: usize, n: usize, seed: u64) -> Result<Self> {
        Self::new_sparse_sign(s, n, default_zeta(s), seed, Scaling::Standard)
    }

    pub fn new_gaussian(s: usize, n: usize, seed: u64) -> Result<Self> {
        Self::new_gaussian_with(s, n, seed, GaussianStorage::Auto)
    }

    pub fn new_gaussian_with(s: usize, n: usize, seed: u64, storage: GaussianStorage) -> Result<Self> {
        if !(1 <= s && s <= n) {
            return Err(Error::InvalidArgument(format!(
                "Gaussian sketch needs 1 <= s <= n, got s = {s}, n = {n}"
            )));
        }
        let materialize = match storage {
            GaussianStorage::Auto => s.saturating_mul(n) <= GAUSSIAN_MATERIALIZE_LIMIT,
            GaussianStorage::Materialized => true,
            GaussianStorage::Streamed => false,
        };
        let data = if materialize {
            let mut entries = vec![0.0; s * n];
            for (j, col) in entries.chunks_exact_mut(s).enumerate() {
                gaussian_column(seed, s, j, col);
            }
            SketchData::GaussianDense { entries }
        } else {
            SketchData::GaussianStreamed
        };
        Ok(Self {
            kind: SketchKind::Gaussian,
            s,
            n,
            zeta: 0,
            seed,
            scaling: Scaling::Standard,
            data: Arc::new(data),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            kind: SketchKind::Identity,
            s: n,
            n,
            zeta: 0,
            seed: 0,
            scaling: Scaling::Standard,
            data: Arc::new(SketchData::Identity),
        }
    }

    /// Builds an operator of the given kind. `zeta` is ignored unless the
    /// kind is sparse sign, where `None` means [`default_zeta`]; `s` is
    /// ignored for the identity.
    pub fn new(kind: SketchKind, s: usize, n: usize, zeta: Option<usize>, seed: u64, scaling: Scaling) -> Result<Self> {
        match kind {
            SketchKind::SparseSign => {
                Self::new_sparse_sign(s, n, zeta.unwrap_or_else(|| default_zeta(s)), seed, scaling)
            }
            SketchKind::Gaussian => Self::new_gaussian(s, n, seed),
            SketchKind::Identity => Ok(Self::identity(n)),
        }
    }

    pub fn kind(&self) -> SketchKind {
        self.kind
    }

    /// Sketch dimension (row count).
    pub fn s(&self) -> usize {
        self.s
    }

    /// Ambient dimension (column count).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Nonzeros per column; `None` for the dense kinds.
    pub fn zeta(&self) -> Option<usize> {
        (self.kind == SketchKind::SparseSign).then_some(self.zeta)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn scaling(&self) -> Scaling {
        self.scaling
    }

    /// Writes `Ω x` into `out` (length `s`), accumulating in double precision.
    pub fn apply_vec_into<T: Real>(&self, x: &[T], out: &mut [f64]) -> Result<()> {
        check_dim("sketch input length", self.n, x.len())?;
        check_dim("sketch output length", self.s, out.len())?;
        match &*self.data {
            SketchData::Identity => {
                for (o, v) in out.iter_mut().zip(x) {
                    *o = v.as_f64();
                }
            }
            SketchData::SparseSign { rows, values } => {
                out.fill(0.0);
                let z = self.zeta;
                for (j, v) in x.iter().enumerate() {
                    let xj = v.as_f64();
                    let base = j * z;
                    for k in base..base + z {
                        out[rows[k] as usize] += values[k] * xj;
                    }
                }
            }
            SketchData::GaussianDense { entries } => {
                out.fill(0.0);
                for (col, v) in entries.chunks_exact(self.s).zip(x) {
                    let xj = v.as_f64();
                    for (o, w) in out.iter_mut().zip(col) {
                        *o += w * xj;
                    }
                }
            }
            SketchData::GaussianStreamed => {
                out.fill(0.0);
                let mut col = vec![0.0; self.s];
                for (j, v) in x.iter().enumerate() {
                    gaussian_column(self.seed, self.s, j, &mut col);
                    let xj = v.as_f64();
                    for (o, w) in out.iter_mut().zip(&col) {
                        *o += w * xj;
                    }
                }
            }
        }
        Ok(())
    }

    /// `Ω x` for a single vector.
    pub fn apply_vec<T: Real>(&self, x: &[T]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.s];
        self.apply_vec_into(x, &mut out)?;
        Ok(out)
    }

    /// `Ω M` for an `n x k` matrix.
    pub fn apply<T: Real>(&self, m: &DenseMatrix<T>) -> Result<DenseMatrix<f64>> {
        check_dim("sketch input row count", self.n, m.nrows())?;
        let k = m.ncols();
        if let SketchData::GaussianStreamed = &*self.data {
            // Generate each column of Ω once for all right-hand sides; the
            // accumulation order per output entry matches `apply_vec`.
            let mut out = DenseMatrix::<f64>::zeros(self.s, k);
            let mut col = vec![0.0; self.s];
            for j in 0..self.n {
                gaussian_column(self.seed, self.s, j, &mut col);
                for c in 0..k {
                    let xj = m.get(j, c).as_f64();
                    for (o, w) in out.col_mut(c).iter_mut().zip(&col) {
                        *o += w * xj;
                    }
                }
            }
            return Ok(out);
        }
        let mut out = DenseMatrix::<f64>::zeros(self.s, k);
        for c in 0..k {
            self.apply_vec_into(m.col(c), out.col_mut(c))?;
        }
        Ok(out)
    }

    /// Column `j` of `Ω`.
    pub fn column(&self, j: usize) -> Result<Vec<f64>> {
        if j >= self.n {
            return Err(Error::InvalidArgument(format!(
                "column index {j} out of range for a sketch with {} columns",
                self.n
            )));
        }
        let mut out = vec![0.0; self.s];
        match &*self.data {
            SketchData::Identity => out[j] = 1.0,
            SketchData::SparseSign { rows, values } => {
                for k in j * self.zeta..(j + 1) * self.zeta {
                    out[rows[k] as usize] = values[k];
                }
            }
            SketchData::GaussianDense { entries } => out.copy_from_slice(&entries[j * self.s..(j + 1) * self.s]),
            SketchData::GaussianStreamed => gaussian_column(self.seed, self.s, j, &mut out),
        }
        Ok(out)
    }

    /// The operator as an explicit `s x n` matrix.
    pub fn to_dense(&self) -> DenseMatrix<f64> {
        let mut out = DenseMatrix::<f64>::with_capacity(self.s, self.n);
        for j in 0..self.n {
            out.push_col(&self.column(j).expect("index in range"))
                .expect("column length matches");
        }
        out
    }
}

/// Empirical check of the ε-embedding property on the range of `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingReport {
    /// Largest `|⟨x,y⟩ − ⟨Ωx,Ωy⟩|` over the sampled unit pairs in `range(Q)`.
    pub epsilon_observed: f64,
    /// Smallest ε for which Ω is an ε-embedding of `range(Q)`:
    /// `‖I − (ΩU)ᵀΩU‖₂` for an orthonormal basis `U`.
    pub epsilon_subspace: f64,
    /// `σ_max(ΩQ) / σ_max(Q)`
    pub sigma_ratio_max: f64,
    /// `σ_min(ΩQ) / σ_min(Q)`
    pub sigma_ratio_min: f64,
    pub cond_q: f64,
    pub cond_sketched: f64,
}

impl EmbeddingReport {
    /// Whether both extremal singular values moved by at most a factor in
    /// `[√(1−ε), √(1+ε)]`.
    pub fn singular_values_within(&self, eps: f64) -> bool {
        let (lo, hi) = ((1.0 - eps).sqrt(), (1.0 + eps).sqrt());
        (lo..=hi).contains(&self.sigma_ratio_max) && (lo..=hi).contains(&self.sigma_ratio_min)
    }

    /// Whether `κ(Q)` lies in `[√((1−ε)/(1+ε)), √((1+ε)/(1−ε))] · κ(ΩQ)`.
    pub fn condition_within(&self, eps: f64) -> bool {
        let f = ((1.0 + eps) / (1.0 - eps)).sqrt();
        self.cond_q >= self.cond_sketched / f && self.cond_q <= self.cond_sketched * f
    }
}

/// Measures how well `op` preserves the geometry of `range(Q)`.
///
/// Sampled pairs are drawn uniformly on the unit sphere of `range(Q)` from a
/// stream derived from the operator seed.
pub fn embedding_report(op: &SketchOperator, q: &DenseMatrix<f64>, pair_samples: usize) -> Result<EmbeddingReport> {
    check_dim("embedded basis row count", op.n(), q.nrows())?;
    let m = q.ncols();
    if m == 0 {
        return Err(Error::DegenerateInput("empty basis".into()));
    }
    let sv = linalg::singular_values(q)?;
    let (smax, smin) = (sv[0], sv[m - 1]);
    let rank_tol = (q.nrows().max(m) as f64) * f64::UNIT_ROUNDOFF * smax;
    if m > q.nrows() || !(smin > rank_tol) {
        return Err(Error::DegenerateInput(format!(
            "basis is numerically rank deficient (sigma_min = {smin:e}, sigma_max = {smax:e})"
        )));
    }
    let sq = op.apply(q)?;
    let ssv = linalg::singular_values(&sq)?;
    let (ssmax, ssmin) = (ssv[0], *ssv.get(m - 1).unwrap_or(&0.0));

    let u = linalg::thin_q(q);
    let su = op.apply(&u)?;
    let mut defect = su.tr_matmul(&su)?;
    for i in 0..m {
        for j in 0..m {
            let id = if i == j { 1.0 } else { 0.0 };
            defect.set(i, j, id - defect.get(i, j));
        }
    }
    let epsilon_subspace = linalg::singular_values(&defect)?[0];

    let mut rng = stream_rng(op.seed(), domain::EMBEDDING_PAIRS, 0);
    let unit = |rng: &mut crate::rng::StreamRng| {
        let v: Vec<f64> = (0..m).map(|_| StandardNormal.sample(&mut *rng)).collect();
        let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.into_iter().map(|x| x / nrm).collect::<Vec<f64>>()
    };
    let mut epsilon_observed: f64 = 0.0;
    for _ in 0..pair_samples {
        let a = unit(&mut rng);
        let b = unit(&mut rng);
        let db = defect.mul_vec(&b)?;
        let dist = a.iter().zip(&db).map(|(x, y)| x * y).sum::<f64>().abs();
        epsilon_observed = epsilon_observed.max(dist);
    }

    Ok(EmbeddingReport {
        epsilon_observed,
        epsilon_subspace,
        sigma_ratio_max: ssmax / smax,
        sigma_ratio_min: ssmin / smin,
        cond_q: smax / smin,
        cond_sketched: ssmax / ssmin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::dot;
    use proptest::prelude::*;

    fn gaussian_matrix(n: usize, k: usize, seed: u64) -> DenseMatrix<f64> {
        let mut rng = stream_rng(seed, 99, 0);
        DenseMatrix::from_fn(n, k, |_, _| StandardNormal.sample(&mut rng))
    }

    #[test]
    fn sparse_sign_columns_have_zeta_entries_of_one_magnitude() {
        let op = SketchOperator::new_sparse_sign(8, 100, 8, 3, Scaling::Standard).unwrap();
        for j in 0..100 {
            let c = op.column(j).unwrap();
            assert_eq!(c.iter().filter(|v| **v != 0.0).count(), 8);
            assert!(c.iter().all(|v| *v == 0.0 || v.abs() == 1.0 / 8f64.sqrt()));
            let nrm = dot(&c, &c).sqrt();
            assert!((nrm - 1.0).abs() < 1e-15);
        }
        let lit = SketchOperator::new_sparse_sign(10, 100, 4, 3, Scaling::PaperLiteral).unwrap();
        let c = lit.column(5).unwrap();
        assert!(c.iter().all(|v| *v == 0.0 || v.abs() == 5.0));
    }

    #[test]
    fn default_zeta_is_capped_at_eight() {
        assert_eq!(default_zeta(5), 5);
        assert_eq!(default_zeta(100), 8);
        assert_eq!(SketchOperator::sparse_sign(5, 50, 1).unwrap().zeta(), Some(5));
        assert_eq!(default_sketch_dim(10_000, 200), 804);
        assert_eq!(default_sketch_dim(30, 200), 30);
    }

    #[test]
    fn construction_rejects_bad_dimensions() {
        assert!(SketchOperator::new_sparse_sign(4, 100, 8, 0, Scaling::Standard).is_err());
        assert!(SketchOperator::new_sparse_sign(200, 100, 8, 0, Scaling::Standard).is_err());
        assert!(SketchOperator::new_sparse_sign(8, 100, 1, 0, Scaling::Standard).is_err());
        assert!(SketchOperator::new_gaussian(11, 10, 0).is_err());
        assert!(SketchOperator::new_gaussian(0, 10, 0).is_err());
    }

    #[test]
    fn gaussian_mean_square_norm_is_one() {
        let n = 40;
        let x: Vec<f64> = (0..n).map(|i| ((i * 7 % 11) as f64) - 5.0).collect();
        let nx = dot(&x, &x).sqrt();
        let x: Vec<f64> = x.iter().map(|v| v / nx).collect();
        let trials = 10_000;
        let mean = (0..trials)
            .map(|t| {
                let op = SketchOperator::new_gaussian(5, n, t).unwrap();
                let y = op.apply_vec(&x).unwrap();
                dot(&y, &y)
            })
            .sum::<f64>()
            / trials as f64;
        assert!((mean - 1.0).abs() <= 0.05, "mean {mean}");
    }

    #[test]
    fn gaussian_scalar_case_and_zero_vector() {
        let op = SketchOperator::new_gaussian(1, 1, 9).unwrap();
        let g = op.column(0).unwrap()[0];
        assert_eq!(op.apply_vec(&[-3.0f64]).unwrap()[0].abs(), (g * 3.0).abs());
        let op = SketchOperator::new_gaussian(4, 20, 9).unwrap();
        assert!(op.apply_vec(&[0.0f64; 20]).unwrap().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn streamed_and_materialized_gaussian_agree_bitwise() {
        let m = gaussian_matrix(60, 3, 1);
        let a = SketchOperator::new_gaussian_with(12, 60, 4, GaussianStorage::Materialized).unwrap();
        let b = SketchOperator::new_gaussian_with(12, 60, 4, GaussianStorage::Streamed).unwrap();
        assert_eq!(a.apply(&m).unwrap(), b.apply(&m).unwrap());
        assert_eq!(a.apply_vec(m.col(1)).unwrap(), b.apply_vec(m.col(1)).unwrap());
    }

    #[test]
    fn application_matches_materialized_product() {
        let m = gaussian_matrix(300, 4, 2);
        for op in [
            SketchOperator::sparse_sign(40, 300, 5).unwrap(),
            SketchOperator::new_gaussian(40, 300, 5).unwrap(),
            SketchOperator::identity(300),
        ] {
            let fast = op.apply(&m).unwrap();
            let slow = op.to_dense().matmul(&m).unwrap();
            let err = fast.sub(&slow).unwrap().frobenius_norm() / slow.frobenius_norm();
            assert!(err <= 1e-14, "{:?}: {err}", op.kind());
        }
    }

    #[test]
    fn identity_sketch_is_a_copy() {
        let m = gaussian_matrix(30, 2, 3);
        assert_eq!(SketchOperator::identity(30).apply(&m).unwrap(), m);
        let r = embedding_report(&SketchOperator::identity(30), &m, 50).unwrap();
        assert!(r.epsilon_observed < 1e-15 && r.epsilon_subspace < 1e-15);
        assert!((r.sigma_ratio_max - 1.0).abs() < 1e-14 && (r.sigma_ratio_min - 1.0).abs() < 1e-14);
    }

    #[test]
    fn single_precision_input_is_sketched_in_double() {
        let op = SketchOperator::sparse_sign(8, 50, 1).unwrap();
        let x64: Vec<f64> = (0..50).map(|i| 1.0 / (i + 1) as f64).collect();
        let x32: Vec<f32> = x64.iter().map(|v| *v as f32).collect();
        let y32 = op.apply_vec(&x32).unwrap();
        let back: Vec<f64> = x32.iter().map(|v| *v as f64).collect();
        assert_eq!(y32, op.apply_vec(&back).unwrap());
    }

    #[test]
    fn embedding_report_rejects_rank_deficiency() {
        let mut q = gaussian_matrix(100, 3, 4);
        let c0 = q.col(0).to_vec();
        q.col_mut(2).copy_from_slice(&c0);
        let op = SketchOperator::sparse_sign(20, 100, 1).unwrap();
        assert!(matches!(embedding_report(&op, &q, 10), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn embedding_report_condition_sandwich_with_measured_epsilon() {
        let n = 2000;
        let q = gaussian_matrix(n, 10, 5);
        for seed in 0..10 {
            let op = SketchOperator::sparse_sign(160, n, seed).unwrap();
            let r = embedding_report(&op, &q, 100).unwrap();
            assert!(r.epsilon_observed <= r.epsilon_subspace + 1e-15);
            if r.epsilon_subspace < 1.0 {
                assert!(r.condition_within(r.epsilon_subspace * (1.0 + 1e-12)));
                assert!(r.singular_values_within(r.epsilon_subspace * (1.0 + 1e-12)));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn application_is_deterministic_and_linear(
            seed in any::<u64>(),
            s in 2usize..24,
            a in -3.0f64..3.0,
            b in -3.0f64..3.0,
            gaussian in any::<bool>(),
        ) {
            let n = 64;
            let build = || if gaussian {
                SketchOperator::new_gaussian(s, n, seed).unwrap()
            } else {
                SketchOperator::sparse_sign(s, n, seed).unwrap()
            };
            let x = gaussian_matrix(n, 1, seed ^ 1);
            let y = gaussian_matrix(n, 1, seed ^ 2);
            let (op1, op2) = (build(), build());
            prop_assert_eq!(op1.apply(&x).unwrap(), op2.apply(&x).unwrap());

            let comb: Vec<f64> = x.col(0).iter().zip(y.col(0)).map(|(u, v)| a * u + b * v).collect();
            let lhs = op1.apply_vec(&comb).unwrap();
            let sx = op1.apply_vec(x.col(0)).unwrap();
            let sy = op1.apply_vec(y.col(0)).unwrap();
            let scale = dot(&sx, &sx).sqrt() * a.abs() + dot(&sy, &sy).sqrt() * b.abs() + 1e-300;
            for i in 0..s {
                prop_assert!((lhs[i] - (a * sx[i] + b * sy[i])).abs() <= 1e-14 * scale);
            }
        }

        #[test]
        fn sparse_sign_entries_take_two_values(seed in any::<u64>(), s in 2usize..40, zeta_raw in 2usize..9) {
            let zeta = zeta_raw.min(s);
            let op = SketchOperator::new_sparse_sign(s, 50, zeta, seed, Scaling::Standard).unwrap();
            let c = 1.0 / (zeta as f64).sqrt();
            for j in 0..50 {
                let col = op.column(j).unwrap();
                prop_assert_eq!(col.iter().filter(|v| **v != 0.0).count(), zeta);
                prop_assert!(col.iter().all(|v| *v == 0.0 || *v == c || *v == -c));
            }
        }
    }
}
