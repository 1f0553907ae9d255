//! Nonsymmetric Lanczos with full biorthogonalization and its sketched
//! variant.
//!
//! Each step feeds the pair `(A q_k, Aᵀ p_k)` to a two-sided Gram-Schmidt
//! engine. The projection coefficients it returns are the new columns of
//! `H` and `T`, so
//!
//! ```text
//! A Q_m  = Q_m H_m + δ q_{m+1} e_mᵀ
//! Aᵀ P_m = P_m T_m + β p_{m+1} e_mᵀ
//! ```
//!
//! hold by construction. With a deterministic engine `PᵀQ = I` and
//! `H = Tᵀ` is tridiagonal; with a sketched engine `(ΩP)ᵀΩQ = I` and the
//! two Hessenberg matrices are independent.

use crate::biortho::{BiorthConfig, BiorthStatus, BreakdownCause, StepRecord, TwoSidedGs};
use crate::dense::{dot, norm2, DenseMatrix, FloatFormat, Real};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, c64};
use crate::rbiortho::{RBiorthConfig, SketchedTwoSidedGs};
use crate::sketching::SketchOperator;

/// A square linear operator available through products with `A` and `Aᵀ`.
pub trait MatrixOracle {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64]) -> Result<Vec<f64>>;
    fn apply_transpose(&self, x: &[f64]) -> Result<Vec<f64>>;
}

impl MatrixOracle for DenseMatrix<f64> {
    fn dim(&self) -> usize {
        self.nrows()
    }

    fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim("operator column count", self.nrows(), self.ncols())?;
        self.mul_vec(x)
    }

    fn apply_transpose(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim("operator column count", self.nrows(), self.ncols())?;
        self.tr_mul_vec(x)
    }
}

impl<O: MatrixOracle + ?Sized> MatrixOracle for &O {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        (**self).apply(x)
    }

    fn apply_transpose(&self, x: &[f64]) -> Result<Vec<f64>> {
        (**self).apply_transpose(x)
    }
}

/// Output of [`nonsym_lanczos`] and [`rand_nonsym_lanczos`].
#[derive(Debug, Clone, PartialEq)]
pub struct LanczosResult {
    pub q: DenseMatrix<f64>,
    pub p: DenseMatrix<f64>,
    /// Upper Hessenberg representation of `A` on the right basis.
    pub h: DenseMatrix<f64>,
    /// Upper Hessenberg representation of `Aᵀ` on the left basis.
    pub t: DenseMatrix<f64>,
    pub delta_next: f64,
    pub beta_next: f64,
    pub q_next: Vec<f64>,
    pub p_next: Vec<f64>,
    /// `ΩQ` and `ΩP` (including the trailing columns) when sketched.
    pub sq: Option<DenseMatrix<f64>>,
    pub sp: Option<DenseMatrix<f64>>,
    pub status: BiorthStatus,
    pub method: String,
}

impl LanczosResult {
    pub fn steps(&self) -> usize {
        self.q.ncols()
    }

    pub fn is_sketched(&self) -> bool {
        self.sq.is_some()
    }

    /// The state after the first `k` steps.
    pub fn leading(&self, k: usize) -> Result<LanczosResult> {
        let m = self.steps();
        if k == 0 || k > m {
            return Err(Error::InvalidArgument(format!("leading step count {k} outside 1..={m}")));
        }
        if k == m {
            return Ok(self.clone());
        }
        Ok(LanczosResult {
            q: self.q.leading_cols(k),
            p: self.p.leading_cols(k),
            h: self.h.leading_block(k, k),
            t: self.t.leading_block(k, k),
            delta_next: self.h.get(k, k - 1),
            beta_next: self.t.get(k, k - 1),
            q_next: self.q.col(k).to_vec(),
            p_next: self.p.col(k).to_vec(),
            sq: self.sq.as_ref().map(|s| s.leading_cols(k + 1)),
            sp: self.sp.as_ref().map(|s| s.leading_cols(k + 1)),
            status: BiorthStatus::Complete,
            method: self.method.clone(),
        })
    }

    /// `‖A Q − Q H − δ q_{m+1} e_mᵀ‖_F` and the same for the left side.
    pub fn arnoldi_residuals<A: MatrixOracle + ?Sized>(&self, a: &A) -> Result<(f64, f64)> {
        let right = relation_residual(&self.q, &self.h, self.delta_next, &self.q_next, |x| a.apply(x))?;
        let left = relation_residual(&self.p, &self.t, self.beta_next, &self.p_next, |x| a.apply_transpose(x))?;
        Ok((right, left))
    }

    /// `(ΩP)ᵀ Ω A Q`, which equals `H` for a sketched run.
    pub fn projected_hessenberg<A: MatrixOracle + ?Sized>(&self, a: &A, sketch: &SketchOperator) -> Result<DenseMatrix<f64>> {
        let m = self.steps();
        let mut aq = DenseMatrix::with_capacity(a.dim(), m);
        for j in 0..m {
            aq.push_col(&a.apply(self.q.col(j))?)?;
        }
        let sp = sketch.apply(&self.p)?;
        sp.tr_matmul(&sketch.apply(&aq)?)
    }
}

fn relation_residual(
    basis: &DenseMatrix<f64>,
    hess: &DenseMatrix<f64>,
    trailing: f64,
    next: &[f64],
    op: impl Fn(&[f64]) -> Result<Vec<f64>>,
) -> Result<f64> {
    let m = basis.ncols();
    let mut total = 0.0;
    for j in 0..m {
        let mut r = op(basis.col(j))?;
        for i in 0..m {
            let h = hess.get(i, j);
            if h != 0.0 {
                r.iter_mut().zip(basis.col(i)).for_each(|(x, b)| *x -= h * b);
            }
        }
        if j + 1 == m {
            r.iter_mut().zip(next).for_each(|(x, b)| *x -= trailing * b);
        }
        total += dot(&r, &r);
    }
    Ok(total.sqrt())
}

/// The operations the Lanczos driver needs from a biorthogonalization
/// engine.
trait Engine {
    type S: Real;
    fn push(&mut self, x: &[Self::S], y: &[Self::S]) -> Result<std::result::Result<StepRecord, BreakdownCause>>;
    fn q(&self) -> &DenseMatrix<Self::S>;
    fn p(&self) -> &DenseMatrix<Self::S>;
    fn sketch(&self) -> Option<&SketchOperator>;
    fn sketches(&self) -> Option<(DenseMatrix<f64>, DenseMatrix<f64>)>;
}

impl Engine for TwoSidedGs<f64> {
    type S = f64;

    fn push(&mut self, x: &[f64], y: &[f64]) -> Result<std::result::Result<StepRecord, BreakdownCause>> {
        TwoSidedGs::push(self, x, y)
    }

    fn q(&self) -> &DenseMatrix<f64> {
        TwoSidedGs::q(self)
    }

    fn p(&self) -> &DenseMatrix<f64> {
        TwoSidedGs::p(self)
    }

    fn sketch(&self) -> Option<&SketchOperator> {
        None
    }

    fn sketches(&self) -> Option<(DenseMatrix<f64>, DenseMatrix<f64>)> {
        None
    }
}

impl<L: Real> Engine for SketchedTwoSidedGs<L> {
    type S = L;

    fn push(&mut self, x: &[L], y: &[L]) -> Result<std::result::Result<StepRecord, BreakdownCause>> {
        SketchedTwoSidedGs::push(self, x, y)
    }

    fn q(&self) -> &DenseMatrix<L> {
        SketchedTwoSidedGs::q(self)
    }

    fn p(&self) -> &DenseMatrix<L> {
        SketchedTwoSidedGs::p(self)
    }

    fn sketch(&self) -> Option<&SketchOperator> {
        Some(SketchedTwoSidedGs::sketch(self))
    }

    fn sketches(&self) -> Option<(DenseMatrix<f64>, DenseMatrix<f64>)> {
        Some((self.sq().clone(), self.sp().clone()))
    }
}

fn to_f64<T: Real>(x: &[T]) -> Vec<f64> {
    x.iter().map(|v| v.as_f64()).collect()
}

fn from_f64<T: Real>(x: &[f64]) -> Vec<T> {
    x.iter().map(|&v| T::cast(v)).collect()
}

/// Two passes of classical projection of `x` against `basis` along `dual`,
/// in the plain or sketched inner product. Used to finish the step on which
/// the engine broke down, so the Arnoldi relation still closes.
fn project_out<S: Real>(
    x: &[f64],
    basis: &DenseMatrix<S>,
    dual: &DenseMatrix<S>,
    sketch: Option<&SketchOperator>,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let k = basis.ncols();
    let basis = basis.to_f64();
    let dual = match sketch {
        Some(op) => op.apply(dual)?,
        None => dual.to_f64(),
    };
    let mut r = x.to_vec();
    let mut coeffs = vec![0.0; k];
    for _ in 0..2 {
        let probe = match sketch {
            Some(op) => op.apply_vec(&r)?,
            None => r.clone(),
        };
        for j in 0..k {
            let c = dot(dual.col(j), &probe);
            coeffs[j] += c;
            r.iter_mut().zip(basis.col(j)).for_each(|(a, b)| *a -= c * b);
        }
    }
    Ok((coeffs, r))
}

fn normalized(r: Vec<f64>) -> (f64, Vec<f64>) {
    let nrm = norm2(&r);
    if nrm > 0.0 {
        (nrm, r.into_iter().map(|x| x / nrm).collect())
    } else {
        (0.0, r)
    }
}

fn check_lanczos_inputs<A: MatrixOracle + ?Sized>(a: &A, q1: &[f64], p1: &[f64], m: usize) -> Result<usize> {
    let n = a.dim();
    check_dim("q1 length", n, q1.len())?;
    check_dim("p1 length", n, p1.len())?;
    if m == 0 || m > n {
        return Err(Error::InvalidArgument(format!("step count {m} outside 1..={n}")));
    }
    Ok(n)
}

fn drive<A: MatrixOracle + ?Sized, E: Engine>(
    a: &A,
    mut eng: E,
    q1: &[f64],
    p1: &[f64],
    m: usize,
    method: String,
) -> Result<LanczosResult> {
    if eng.push(&from_f64(q1), &from_f64(p1))?.is_err() {
        return Err(Error::InvalidArgument(
            "starting vectors have a vanishing inner product".into(),
        ));
    }
    let mut h = DenseMatrix::zeros(m, m);
    let mut t = DenseMatrix::zeros(m, m);
    for k in 1..=m {
        let qk = to_f64(eng.q().col(k - 1));
        let pk = to_f64(eng.p().col(k - 1));
        let aq = a.apply(&qk)?;
        let atp = a.apply_transpose(&pk)?;
        match eng.push(&from_f64(&aq), &from_f64(&atp))? {
            Ok(rec) => {
                for i in 0..k {
                    h.set(i, k - 1, rec.coeff_x[i]);
                    t.set(i, k - 1, rec.coeff_y[i]);
                }
                if k < m {
                    h.set(k, k - 1, rec.diag_x);
                    t.set(k, k - 1, rec.diag_y);
                } else {
                    let (q, p) = (eng.q().to_f64(), eng.p().to_f64());
                    let (sq, sp) = eng.sketches().unzip();
                    return Ok(LanczosResult {
                        q: q.leading_cols(m),
                        p: p.leading_cols(m),
                        h,
                        t,
                        delta_next: rec.diag_x,
                        beta_next: rec.diag_y,
                        q_next: q.col(m).to_vec(),
                        p_next: p.col(m).to_vec(),
                        sq,
                        sp,
                        status: BiorthStatus::Complete,
                        method,
                    });
                }
            }
            Err(cause) => {
                let (hc, r) = project_out(&aq, eng.q(), eng.p(), eng.sketch())?;
                let (tc, s) = project_out(&atp, eng.p(), eng.q(), eng.sketch())?;
                let mut h = h.leading_block(k, k);
                let mut t = t.leading_block(k, k);
                for i in 0..k {
                    h.set(i, k - 1, hc[i]);
                    t.set(i, k - 1, tc[i]);
                }
                let (delta_next, q_next) = normalized(r);
                let (beta_next, p_next) = normalized(s);
                let (sq, sp) = eng.sketches().unzip();
                return Ok(LanczosResult {
                    q: eng.q().to_f64(),
                    p: eng.p().to_f64(),
                    h,
                    t,
                    delta_next,
                    beta_next,
                    q_next,
                    p_next,
                    sq,
                    sp,
                    status: BiorthStatus::Breakdown { step: k + 1, cause },
                    method,
                });
            }
        }
    }
    unreachable!("the loop returns on its last step")
}

/// Nonsymmetric Lanczos with full two-sided biorthogonalization.
///
/// `q1` and `p1` are rescaled so that `⟨q1, p1⟩ = 1`. A breakdown returns a
/// shorter result whose status names the failed step; the Arnoldi relation
/// still closes on the returned columns.
pub fn nonsym_lanczos<A: MatrixOracle + ?Sized>(
    a: &A,
    q1: &[f64],
    p1: &[f64],
    m: usize,
    cfg: &BiorthConfig,
) -> Result<LanczosResult> {
    let n = check_lanczos_inputs(a, q1, p1, m)?;
    let eng = TwoSidedGs::<f64>::new(n, cfg.clone())?;
    drive(a, eng, q1, p1, m, format!("Lanczos+{}", cfg.label()))
}

/// Randomized nonsymmetric Lanczos: the same recurrence built on sketched
/// biorthogonalization, so `(ΩP)ᵀΩQ = I` and `(ΩP)ᵀ Ω A Q = H`.
pub fn rand_nonsym_lanczos<A: MatrixOracle + ?Sized>(
    a: &A,
    q1: &[f64],
    p1: &[f64],
    m: usize,
    cfg: &RBiorthConfig,
) -> Result<LanczosResult> {
    let n = check_lanczos_inputs(a, q1, p1, m)?;
    cfg.validate()?;
    check_dim("sketch ambient dimension", n, cfg.sketch.n())?;
    if cfg.sketch.s() < m + 1 {
        return Err(Error::InvalidArgument(format!(
            "sketch dimension {} must be at least m + 1 = {}",
            cfg.sketch.s(),
            m + 1
        )));
    }
    let method = format!("Lanczos+{}", cfg.label());
    match cfg.precision.storage() {
        FloatFormat::Binary64 => drive(a, SketchedTwoSidedGs::<f64>::new(cfg)?, q1, p1, m, method),
        FloatFormat::Binary32 => drive(a, SketchedTwoSidedGs::<f32>::new(cfg)?, q1, p1, m, method),
    }
}

/// Approximate eigentriplet `(θ, x, y)` with `A x ≈ θ x` and `Aᵀ y ≈ θ y`.
#[derive(Debug, Clone, PartialEq)]
pub struct RitzTriplet {
    pub theta: c64,
    pub x: Vec<c64>,
    pub y: Vec<c64>,
    /// `‖A x − θ x‖ / ‖x‖`
    pub res_right: f64,
    /// `‖Aᵀ y − θ y‖ / ‖y‖`
    pub res_left: f64,
    /// Set when the nearest left eigenvalue is more than `1e-6` (relative)
    /// away from `θ`, or the small eigenproblem produced non-finite values.
    pub warning: Option<String>,
}

/// Tolerance on the left/right Ritz value pairing.
pub const PAIRING_TOLERANCE: f64 = 1e-6;

fn lift(basis: &DenseMatrix<f64>, coeffs: &[c64]) -> Vec<c64> {
    let mut out = vec![c64::new(0.0, 0.0); basis.nrows()];
    for (j, c) in coeffs.iter().enumerate() {
        for (o, b) in out.iter_mut().zip(basis.col(j)) {
            *o += *c * *b;
        }
    }
    out
}

fn complex_residual(x: &[c64], theta: c64, op: impl Fn(&[f64]) -> Result<Vec<f64>>) -> Result<f64> {
    let re: Vec<f64> = x.iter().map(|z| z.re).collect();
    let im: Vec<f64> = x.iter().map(|z| z.im).collect();
    let are = op(&re)?;
    let aim = if im.iter().any(|&v| v != 0.0) { op(&im)? } else { vec![0.0; im.len()] };
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..x.len() {
        let r = c64::new(are[i], aim[i]) - theta * x[i];
        num += r.norm_sqr();
        den += x[i].norm_sqr();
    }
    Ok(if den > 0.0 { (num / den).sqrt() } else { f64::INFINITY })
}

fn ritz_order(a: &c64, b: &c64) -> std::cmp::Ordering {
    b.norm()
        .total_cmp(&a.norm())
        .then(b.re.total_cmp(&a.re))
        .then(b.im.total_cmp(&a.im))
}

/// The `k` Ritz triplets of largest modulus, residuals measured against `a`.
///
/// Right vectors come from `H`. Left vectors come from `Hᵀ` for a
/// deterministic run and from `T` for a sketched one; each right value is
/// paired with the nearest left value.
pub fn ritz_triplets<A: MatrixOracle + ?Sized>(a: &A, res: &LanczosResult, k: usize) -> Result<Vec<RitzTriplet>> {
    let m = res.steps();
    if k > m {
        return Err(Error::InvalidArgument(format!("requested {k} Ritz triplets from {m} steps")));
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let right = linalg::eigen(&res.h)?;
    let left_mat = if res.is_sketched() { res.t.clone() } else { res.h.transpose() };
    let left = linalg::eigen(&left_mat)?;

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| ritz_order(&right.values[i], &right.values[j]));

    let mut out = Vec::with_capacity(k);
    for &i in order.iter().take(k) {
        let theta = right.values[i];
        let (jl, gap) = left
            .values
            .iter()
            .enumerate()
            .map(|(j, v)| (j, (v - theta).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty spectrum");
        let x = lift(&res.q, &right.vectors[i]);
        let y = lift(&res.p, &left.vectors[jl]);
        let res_right = complex_residual(&x, theta, |v| a.apply(v))?;
        let res_left = complex_residual(&y, theta, |v| a.apply_transpose(v))?;
        let warning = if !theta.re.is_finite() || !theta.im.is_finite() {
            Some("non-finite Ritz value".to_string())
        } else if gap > PAIRING_TOLERANCE * theta.norm().max(1.0) {
            Some(format!("nearest left Ritz value is {gap:e} away"))
        } else {
            None
        };
        out.push(RitzTriplet {
            theta,
            x,
            y,
            res_right,
            res_left,
            warning,
        });
    }
    Ok(out)
}

/// Right residuals of the `k` leading Ritz pairs after every step
/// `1..=steps`. Row `j` holds `min(k, j + 1)` values.
pub fn convergence_history<A: MatrixOracle + ?Sized>(a: &A, res: &LanczosResult, k: usize) -> Result<Vec<Vec<f64>>> {
    (1..=res.steps())
        .map(|j| {
            let lead = res.leading(j)?;
            Ok(ritz_triplets(a, &lead, k.min(j))?.iter().map(|t| t.res_right).collect())
        })
        .collect()
}

/// Pairs `(i, j)` of converged triplets (right residual at most `res_tol`)
/// whose Ritz values lie within `dup_tol` of each other.
pub fn duplicated_converged(triplets: &[RitzTriplet], res_tol: f64, dup_tol: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..triplets.len() {
        for j in i + 1..triplets.len() {
            let (a, b) = (&triplets[i], &triplets[j]);
            if a.res_right <= res_tol && b.res_right <= res_tol && (a.theta - b.theta).norm() <= dup_tol {
                out.push((i, j));
            }
        }
    }
    out
}

/// Coefficients `a_0, …, a_{m−1}` of `det(zI − H) = z^m + Σ a_j z^j` for an
/// upper Hessenberg `H`, from the expansion along the last column.
pub fn hessenberg_charpoly(h: &DenseMatrix<f64>) -> Result<Vec<f64>> {
    check_dim("Hessenberg column count", h.nrows(), h.ncols())?;
    let m = h.nrows();
    // polys[k] = det(zI − H[..k, ..k]), coefficients in increasing degree.
    let mut polys: Vec<Vec<f64>> = vec![vec![1.0]];
    for k in 1..=m {
        let c = k - 1;
        let prev = &polys[k - 1];
        let mut next = vec![0.0; k + 1];
        for (d, &v) in prev.iter().enumerate() {
            next[d + 1] += v;
            next[d] -= h.get(c, c) * v;
        }
        let mut sub = 1.0;
        for i in (0..c).rev() {
            sub *= h.get(i + 1, i);
            let factor = h.get(i, c) * sub;
            for (d, &v) in polys[i].iter().enumerate() {
                next[d] -= factor * v;
            }
        }
        polys.push(next);
    }
    let mut last = polys.pop().expect("at least the constant polynomial");
    last.truncate(m);
    Ok(last)
}

/// Result of [`charpoly_optimality_check`]; the `_t` fields hold the
/// transposed statement for `T` and the left Krylov space.
#[derive(Debug, Clone, PartialEq)]
pub struct CharpolyCheck {
    pub coeffs_lanczos: Vec<f64>,
    pub coeffs_oracle: Vec<f64>,
    pub gap: f64,
    pub coeffs_lanczos_t: Vec<f64>,
    pub coeffs_oracle_t: Vec<f64>,
    pub gap_t: f64,
}

/// Largest coefficientwise relative difference, `|a − b| / max(|a|, |b|)`.
pub fn relative_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let den = x.abs().max(y.abs());
            if den == 0.0 {
                0.0
            } else {
                (x - y).abs() / den
            }
        })
        .fold(0.0, f64::max)
}

/// Minimizer over monic degree-`m` polynomials of `‖(ΩW)ᵀ Ω p(op) v‖`,
/// returned as its non-leading coefficients.
fn sketched_minimizer(
    v: &[f64],
    m: usize,
    w: &DenseMatrix<f64>,
    sketch: &SketchOperator,
    op: impl Fn(&[f64]) -> Result<Vec<f64>>,
) -> Result<Vec<f64>> {
    let mut krylov = DenseMatrix::with_capacity(v.len(), m);
    let mut cur = v.to_vec();
    for _ in 0..m {
        krylov.push_col(&cur)?;
        cur = op(&cur)?;
    }
    let sw = sketch.apply(w)?;
    let lhs = sw.tr_matmul(&sketch.apply(&krylov)?)?;
    let rhs: Vec<f64> = sw.tr_mul_vec(&sketch.apply_vec(&cur)?)?.iter().map(|x| -x).collect();
    let sv = linalg::singular_values(&lhs)?;
    if sv.last().copied().unwrap_or(0.0) <= 1e-14 * sv[0] {
        return Err(Error::DegenerateInput("sketched Krylov system is numerically singular".into()));
    }
    linalg::lstsq(&lhs, &rhs)
}

/// Checks that the characteristic polynomial of a sketched Lanczos `H_m`
/// minimizes `‖(ΩP_m)ᵀ Ω p(A) b‖` over monic polynomials of degree `m`,
/// and likewise `T_m` for `‖(ΩQ_m)ᵀ Ω p(Aᵀ) c‖`.
pub fn charpoly_optimality_check<A: MatrixOracle + ?Sized>(
    a: &A,
    b: &[f64],
    c: &[f64],
    m: usize,
    cfg: &RBiorthConfig,
) -> Result<CharpolyCheck> {
    let res = rand_nonsym_lanczos(a, b, c, m, cfg)?;
    if !res.status.is_complete() {
        return Err(Error::DegenerateInput(format!("Lanczos did not complete: {:?}", res.status)));
    }
    let coeffs_lanczos = hessenberg_charpoly(&res.h)?;
    let coeffs_lanczos_t = hessenberg_charpoly(&res.t)?;
    let coeffs_oracle = sketched_minimizer(b, m, &res.p, &cfg.sketch, |x| a.apply(x))?;
    let coeffs_oracle_t = sketched_minimizer(c, m, &res.q, &cfg.sketch, |x| a.apply_transpose(x))?;
    Ok(CharpolyCheck {
        gap: relative_gap(&coeffs_lanczos, &coeffs_oracle),
        gap_t: relative_gap(&coeffs_lanczos_t, &coeffs_oracle_t),
        coeffs_lanczos,
        coeffs_oracle,
        coeffs_lanczos_t,
        coeffs_oracle_t,
    })
}
