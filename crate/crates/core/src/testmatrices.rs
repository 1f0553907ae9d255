//! Test inputs for the stability experiments and the sketched inner
//! product Monte Carlo study.

use std::fmt::Write as _;

use rand::RngCore;
use rand_distr::{Distribution, StandardNormal};

use crate::dense::{dot, DenseMatrix};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rng::{domain, stream_rng};
use crate::sketching::{default_zeta, GaussianStorage, Scaling, SketchKind, SketchOperator};

/// `f(x, y) = sin(x + y) / (cos(100 (y − x)) + 1.1)`
pub fn ill_conditioned_f(x: f64, y: f64) -> f64 {
    (x + y).sin() / ((100.0 * (y - x)).cos() + 1.1)
}

/// `g(x, y) = cos(x + y) / (sin(200 (y − x)) + 1.2)`
pub fn ill_conditioned_g(x: f64, y: f64) -> f64 {
    (x + y).cos() / ((200.0 * (y - x)).sin() + 1.2)
}

fn grid(i: usize, len: usize) -> f64 {
    if len <= 1 {
        0.0
    } else {
        i as f64 / (len - 1) as f64
    }
}

/// Samples `f` and `g` on the uniform grid of `[0,1]²`:
/// `X[i,j] = f(i/(n−1), j/(m−1))`, `Y[i,j] = g(i/(n−1), j/(m−1))`.
///
/// Both matrices have numerically low rank, with condition numbers near
/// `4e15` at `n = 10⁴, m = 200`.
pub fn gen_ill_conditioned(n: usize, m: usize) -> Result<(DenseMatrix<f64>, DenseMatrix<f64>)> {
    check_tall(n, m)?;
    let x = DenseMatrix::from_fn(n, m, |i, j| ill_conditioned_f(grid(i, n), grid(j, m)));
    let y = DenseMatrix::from_fn(n, m, |i, j| ill_conditioned_g(grid(i, n), grid(j, m)));
    Ok((x, y))
}

fn check_tall(n: usize, m: usize) -> Result<()> {
    if m > n {
        return Err(Error::InvalidArgument(format!("m = {m} exceeds n = {n}")));
    }
    Ok(())
}

fn gaussian_columns(n: usize, m: usize, seed: u64, dom: u64) -> DenseMatrix<f64> {
    let mut out = DenseMatrix::with_capacity(n, m);
    for j in 0..m {
        let mut rng = stream_rng(seed, dom, j as u64);
        let col: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        out.push_col(&col).expect("column length matches");
    }
    out
}

/// Two independent `n x m` matrices with i.i.d. standard normal entries.
pub fn gen_gaussian_pair(n: usize, m: usize, seed: u64) -> Result<(DenseMatrix<f64>, DenseMatrix<f64>)> {
    check_tall(n, m)?;
    Ok((
        gaussian_columns(n, m, seed, domain::GAUSSIAN_X),
        gaussian_columns(n, m, seed, domain::GAUSSIAN_Y),
    ))
}

/// Eigenvalues and similarity conditioning for [`gen_prescribed_spectrum`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSpec {
    pub n: usize,
    pub eigenvalues: Vec<f64>,
    pub cond_x: f64,
}

impl SpectrumSpec {
    pub fn new(eigenvalues: Vec<f64>, cond_x: f64) -> Result<Self> {
        let spec = Self {
            n: eigenvalues.len(),
            eigenvalues,
            cond_x,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Geometric decay `0.95^i` for the first 15 eigenvalues, then the slower
    /// `0.99^{i−15} λ_15`.
    pub fn two_rate_decay(n: usize, cond_x: f64) -> Result<Self> {
        let l15 = 0.95f64.powi(15);
        let eigenvalues = (1..=n)
            .map(|i| if i <= 15 { 0.95f64.powi(i as i32) } else { 0.99f64.powi(i as i32 - 15) * l15 })
            .collect();
        Self::new(eigenvalues, cond_x)
    }

    pub fn validate(&self) -> Result<()> {
        if self.eigenvalues.len() != self.n || self.n == 0 {
            return Err(Error::InvalidArgument("spectrum length must equal n > 0".into()));
        }
        if !self.eigenvalues.iter().all(|l| l.is_finite()) {
            return Err(Error::InvalidArgument("eigenvalues must be finite".into()));
        }
        if !(self.cond_x >= 1.0 && self.cond_x.is_finite()) {
            return Err(Error::InvalidArgument(format!("cond_x must be >= 1, got {}", self.cond_x)));
        }
        Ok(())
    }
}

fn random_orthogonal(n: usize, seed: u64, dom: u64) -> DenseMatrix<f64> {
    linalg::thin_q(&gaussian_columns(n, n, seed, dom))
}

/// `A = X⁻¹ D X` together with the similarity `X = U Σ Vᵀ`.
///
/// `U`, `V` are orthogonal factors of Gaussian matrices and `Σ` is
/// log-spaced from 1 to `cond_x`. The inverse is applied through its
/// factors, `X⁻¹ = V Σ⁻¹ Uᵀ`, instead of a linear solve.
pub fn gen_prescribed_spectrum_with_similarity(spec: &SpectrumSpec, seed: u64) -> Result<(DenseMatrix<f64>, DenseMatrix<f64>)> {
    spec.validate()?;
    let n = spec.n;
    let u = random_orthogonal(n, seed, domain::SPECTRUM_U);
    let v = random_orthogonal(n, seed, domain::SPECTRUM_V);
    let sigma: Vec<f64> = (0..n)
        .map(|k| if n == 1 { 1.0 } else { spec.cond_x.powf(k as f64 / (n - 1) as f64) })
        .collect();

    // C = Σ⁻¹ Uᵀ D U Σ
    let mut du = u.clone();
    for j in 0..n {
        for (i, val) in du.col_mut(j).iter_mut().enumerate() {
            *val *= spec.eigenvalues[i];
        }
    }
    let mut c = u.tr_matmul(&du)?;
    for j in 0..n {
        for (i, val) in c.col_mut(j).iter_mut().enumerate() {
            *val *= sigma[j] / sigma[i];
        }
    }
    let a = v.matmul(&c)?.matmul(&v.transpose())?;

    let mut us = u;
    for (j, s) in sigma.iter().enumerate() {
        us.col_mut(j).iter_mut().for_each(|val| *val *= s);
    }
    let x = us.matmul(&v.transpose())?;
    Ok((a, x))
}

/// `A = X⁻¹ D X` with `D = diag(spec.eigenvalues)` and `κ(X) = spec.cond_x`.
pub fn gen_prescribed_spectrum(spec: &SpectrumSpec, seed: u64) -> Result<DenseMatrix<f64>> {
    Ok(gen_prescribed_spectrum_with_similarity(spec, seed)?.0)
}

/// Sketched inner products recorded for one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IpSample {
    /// `|⟨Ωx, Ωy⟩|` for orthonormal `x`, `y`.
    pub cross: f64,
    /// `⟨Ωx, Ωx⟩`.
    pub self_ip: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IpCell {
    pub kind: SketchKind,
    pub s: usize,
    pub samples: Vec<IpSample>,
}

impl IpCell {
    pub fn trial_mean(&self) -> f64 {
        self.samples.iter().map(|t| t.cross).sum::<f64>() / self.samples.len() as f64
    }

    pub fn trial_min(&self) -> f64 {
        self.samples.iter().map(|t| t.cross).fold(f64::INFINITY, f64::min)
    }

    /// Trials with `|⟨Ωx, Ωy⟩| ≤ delta`.
    pub fn count_cross_below(&self, delta: f64) -> usize {
        self.samples.iter().filter(|t| t.cross <= delta).count()
    }

    /// Trials with `⟨Ωx, Ωx⟩ ≤ delta`.
    pub fn count_self_below(&self, delta: f64) -> usize {
        self.samples.iter().filter(|t| t.self_ip <= delta).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IpTable {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub cells: Vec<IpCell>,
}

impl IpTable {
    /// CSV with columns `kind,s,trial_mean,trial_min`, preceded by a comment
    /// line recording the sparse sign scaling.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# n={} trials={} seed={} sparse_sign_scaling={}",
            self.n,
            self.trials,
            self.seed,
            Scaling::Standard
        );
        out.push_str("kind,s,trial_mean,trial_min\n");
        for c in &self.cells {
            let _ = writeln!(out, "{},{},{:.16e},{:.16e}", c.kind, c.s, c.trial_mean(), c.trial_min());
        }
        out
    }
}

/// `s = 25, 50, ..., 1000`.
pub fn default_s_grid() -> Vec<usize> {
    (1..=40).map(|k| 25 * k).collect()
}

/// A random orthonormal pair for trial `trial`: two Gaussian vectors, the
/// second orthogonalized against the first, both normalized.
pub fn orthonormal_pair(n: usize, seed: u64, trial: u64) -> (Vec<f64>, Vec<f64>) {
    let mut rng = stream_rng(seed, domain::IP_PAIRS, trial);
    let mut x: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
    let mut y: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
    let nx = dot(&x, &x).sqrt();
    x.iter_mut().for_each(|v| *v /= nx);
    // Two rounds keep ⟨x, y⟩ at roundoff level.
    for _ in 0..2 {
        let c = dot(&x, &y);
        y.iter_mut().zip(&x).for_each(|(b, a)| *b -= c * a);
    }
    let ny = dot(&y, &y).sqrt();
    y.iter_mut().for_each(|v| *v /= ny);
    (x, y)
}

fn kind_tag(kind: SketchKind) -> u64 {
    match kind {
        SketchKind::SparseSign => 1,
        SketchKind::Gaussian => 2,
        SketchKind::Identity => 3,
    }
}

/// Seed of the sketch drawn for `(kind, s, trial)`.
pub fn trial_sketch_seed(seed: u64, kind: SketchKind, s: usize, trial: usize) -> u64 {
    let index = (kind_tag(kind) << 56) ^ ((s as u64) << 28) ^ trial as u64;
    stream_rng(seed, domain::IP_SKETCH, index).next_u64()
}

/// For every `(kind, s)` draws `trials` fresh sketches and records the
/// sketched inner products of one random orthonormal pair per trial.
pub fn sketched_orthogonal_ip_experiment(
    n: usize,
    s_grid: &[usize],
    trials: usize,
    kinds: &[SketchKind],
    seed: u64,
) -> Result<IpTable> {
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    if s_grid.is_empty() || kinds.is_empty() {
        return Err(Error::InvalidArgument("empty sketch grid".into()));
    }
    if let Some(&bad) = s_grid.iter().find(|&&s| s == 0 || s > n) {
        return Err(Error::InvalidArgument(format!("sketch size {bad} outside 1..={n}")));
    }
    if kinds.contains(&SketchKind::SparseSign) && s_grid.iter().any(|&s| s < 2) {
        return Err(Error::InvalidArgument("sparse sign sketches need s >= 2".into()));
    }
    let pairs: Vec<(Vec<f64>, Vec<f64>)> = (0..trials).map(|t| orthonormal_pair(n, seed, t as u64)).collect();
    let mut cells = Vec::new();
    for &kind in kinds {
        for &s in s_grid {
            let mut samples = Vec::with_capacity(trials);
            for (t, (x, y)) in pairs.iter().enumerate() {
                let sk_seed = trial_sketch_seed(seed, kind, s, t);
                let op = match kind {
                    SketchKind::Gaussian => SketchOperator::new_gaussian_with(s, n, sk_seed, GaussianStorage::Streamed)?,
                    SketchKind::SparseSign => {
                        SketchOperator::new_sparse_sign(s, n, default_zeta(s), sk_seed, Scaling::Standard)?
                    }
                    SketchKind::Identity => SketchOperator::identity(n),
                };
                let pair = DenseMatrix::from_columns(&[x.as_slice(), y.as_slice()])?;
                let sk = op.apply(&pair)?;
                samples.push(IpSample {
                    cross: dot(sk.col(0), sk.col(1)).abs(),
                    self_ip: dot(sk.col(0), sk.col(0)),
                });
            }
            cells.push(IpCell { kind, s, samples });
        }
    }
    Ok(IpTable { n, trials, seed, cells })
}
