//! Oblique and sketched oblique projectors for a pair of bases `(Q, P)`.
//!
//! For bases with `PᵀQ` nonsingular the oblique projector onto `range(Q)`
//! along `range(P)ᗮ` is `Q (PᵀQ)⁻¹ Pᵀ`; its sketched counterpart replaces
//! every inner product by `⟨Ω·, Ω·⟩`, giving `Q ((ΩP)ᵀΩQ)⁻¹ (ΩP)ᵀ Ω`. The
//! small gram matrix is kept in double precision together with an LU
//! factorization that grows by one row and column per appended pair.

use crate::dense::{dot, DenseMatrix, Real};
use crate::error::{check_dim, Error, Result};
use crate::sketching::SketchOperator;

/// Multiplier on `u · ‖G‖_F` below which a pivot counts as zero.
pub const BREAKDOWN_PIVOT_FACTOR: f64 = 64.0;
/// A bordered pivot smaller than this fraction of the largest gram entry
/// triggers a pivoted refactorization.
pub const GROWTH_THRESHOLD: f64 = 1e-8;

/// LU factors of a square matrix, `Π G = L U`, extendable by bordering.
#[derive(Debug, Clone, PartialEq)]
pub struct BorderedLu {
    /// Row `k` holds the `k` strictly-lower entries of `L`.
    l_rows: Vec<Vec<f64>>,
    /// Column `k` holds the `k + 1` entries of `U` down to the diagonal.
    u_cols: Vec<Vec<f64>>,
    /// Row `k` of `Π G` is row `perm[k]` of `G`.
    perm: Vec<usize>,
    refactorizations: usize,
}

impl Default for BorderedLu {
    fn default() -> Self {
        Self::new()
    }
}

impl BorderedLu {
    pub fn new() -> Self {
        Self {
            l_rows: Vec::new(),
            u_cols: Vec::new(),
            perm: Vec::new(),
            refactorizations: 0,
        }
    }

    /// Gaussian elimination with partial pivoting.
    pub fn factor(g: &DenseMatrix<f64>) -> Result<Self> {
        check_dim("gram column count", g.nrows(), g.ncols())?;
        let n = g.nrows();
        let mut a = g.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut piv = k;
            for r in k + 1..n {
                if a.get(r, k).abs() > a.get(piv, k).abs() {
                    piv = r;
                }
            }
            if piv != k {
                perm.swap(k, piv);
                for c in 0..n {
                    let t = a.get(k, c);
                    a.set(k, c, a.get(piv, c));
                    a.set(piv, c, t);
                }
            }
            let d = a.get(k, k);
            if d == 0.0 {
                continue;
            }
            for r in k + 1..n {
                let f = a.get(r, k) / d;
                a.set(r, k, f);
                for c in k + 1..n {
                    a.set(r, c, a.get(r, c) - f * a.get(k, c));
                }
            }
        }
        Ok(Self {
            l_rows: (0..n).map(|k| (0..k).map(|j| a.get(k, j)).collect()).collect(),
            u_cols: (0..n).map(|k| (0..=k).map(|r| a.get(r, k)).collect()).collect(),
            perm,
            refactorizations: 0,
        })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Diagonal of `U`.
    pub fn pivots(&self) -> impl Iterator<Item = f64> + '_ {
        self.u_cols.iter().enumerate().map(|(k, c)| c[k])
    }

    pub fn min_pivot(&self) -> f64 {
        self.pivots().map(f64::abs).fold(f64::INFINITY, f64::min)
    }

    /// Number of pivoted refactorizations triggered by the growth monitor.
    pub fn refactorizations(&self) -> usize {
        self.refactorizations
    }

    fn forward_l(&self, y: &mut [f64]) {
        for k in 0..y.len() {
            let s: f64 = self.l_rows[k].iter().zip(&y[..k]).map(|(l, v)| l * v).sum();
            y[k] -= s;
        }
    }

    fn forward_ut(&self, r: &[f64]) -> Vec<f64> {
        let mut z = Vec::with_capacity(r.len());
        for (k, &rk) in r.iter().enumerate() {
            let col = &self.u_cols[k];
            let s: f64 = col[..k].iter().zip(&z).map(|(u, v)| u * v).sum();
            z.push((rk - s) / col[k]);
        }
        z
    }

    /// Solves `G x = r`.
    pub fn solve(&self, r: &[f64]) -> Result<Vec<f64>> {
        check_dim("LU right-hand side length", self.dim(), r.len())?;
        let mut z: Vec<f64> = self.perm.iter().map(|&p| r[p]).collect();
        self.forward_l(&mut z);
        for k in (0..z.len()).rev() {
            let col = &self.u_cols[k];
            z[k] /= col[k];
            let xk = z[k];
            for (zj, u) in z[..k].iter_mut().zip(&col[..k]) {
                *zj -= u * xk;
            }
        }
        Ok(z)
    }

    /// Solves `Gᵀ y = r`.
    pub fn solve_transpose(&self, r: &[f64]) -> Result<Vec<f64>> {
        check_dim("LU right-hand side length", self.dim(), r.len())?;
        let mut w = self.forward_ut(r);
        for k in (0..w.len()).rev() {
            let wk = w[k];
            for (wj, l) in w[..k].iter_mut().zip(&self.l_rows[k]) {
                *wj -= l * wk;
            }
        }
        let mut y = vec![0.0; w.len()];
        for (k, &p) in self.perm.iter().enumerate() {
            y[p] = w[k];
        }
        Ok(y)
    }

    /// Factors of `[[G, b], [cᵀ, alpha]]` obtained by bordering, and the new
    /// pivot `alpha − ℓ·u`.
    fn bordered(&self, b: &[f64], c: &[f64], alpha: f64) -> (Self, f64) {
        let mut u: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        self.forward_l(&mut u);
        let ell = self.forward_ut(c);
        let eta = alpha - ell.iter().zip(&u).map(|(l, v)| l * v).sum::<f64>();
        let mut next = self.clone();
        u.push(eta);
        next.l_rows.push(ell);
        next.u_cols.push(u);
        next.perm.push(self.dim());
        (next, eta)
    }

    /// Reassembles `G = Πᵀ L U`.
    pub fn reconstruct(&self) -> DenseMatrix<f64> {
        let n = self.dim();
        let mut g = DenseMatrix::<f64>::zeros(n, n);
        for k in 0..n {
            for c in 0..n {
                let mut s = 0.0;
                for j in 0..=k.min(c) {
                    let l = if j == k { 1.0 } else { self.l_rows[k][j] };
                    s += l * self.u_cols[c][j];
                }
                g.set(self.perm[k], c, s);
            }
        }
        g
    }
}

/// A pair of bases with the factored gram matrix needed to apply oblique
/// projectors onto either side.
///
/// `gram[k][l] = ⟨p_k, q_l⟩` (deterministic) or `⟨Ωp_k, Ωq_l⟩` (sketched).
#[derive(Debug, Clone)]
pub struct ObliquePair<T: Real> {
    q: DenseMatrix<T>,
    p: DenseMatrix<T>,
    gram: DenseMatrix<f64>,
    lu: BorderedLu,
    roundoff: f64,
    sketch: Option<SketchOperator>,
    sq: DenseMatrix<f64>,
    sp: DenseMatrix<f64>,
}

fn max_abs_with(g: &DenseMatrix<f64>, b: &[f64], c: &[f64], alpha: f64) -> f64 {
    b.iter().chain(c).map(|v| v.abs()).fold(g.max_abs().max(alpha.abs()), f64::max)
}

fn frob_with(g: &DenseMatrix<f64>, b: &[f64], c: &[f64], alpha: f64) -> f64 {
    let s: f64 = b.iter().chain(c).map(|v| v * v).sum::<f64>() + alpha * alpha;
    (g.frobenius_norm().powi(2) + s).sqrt()
}

impl<T: Real> ObliquePair<T> {
    /// Empty deterministic pair in ambient dimension `n`.
    pub fn empty(n: usize) -> Self {
        Self {
            q: DenseMatrix::zeros(n, 0),
            p: DenseMatrix::zeros(n, 0),
            gram: DenseMatrix::zeros(0, 0),
            lu: BorderedLu::new(),
            roundoff: T::UNIT_ROUNDOFF,
            sketch: None,
            sq: DenseMatrix::zeros(0, 0),
            sp: DenseMatrix::zeros(0, 0),
        }
    }

    /// Empty sketched pair. The sketched gram lives in double precision, so
    /// its breakdown tolerance uses the double-precision unit roundoff.
    pub fn empty_sketched(sketch: SketchOperator) -> Self {
        let (n, s) = (sketch.n(), sketch.s());
        Self {
            q: DenseMatrix::zeros(n, 0),
            p: DenseMatrix::zeros(n, 0),
            gram: DenseMatrix::zeros(0, 0),
            lu: BorderedLu::new(),
            roundoff: f64::UNIT_ROUNDOFF,
            sketch: Some(sketch),
            sq: DenseMatrix::zeros(s, 0),
            sp: DenseMatrix::zeros(s, 0),
        }
    }

    /// Deterministic pair with the gram `PᵀQ` formed and factored directly.
    pub fn new(q: DenseMatrix<T>, p: DenseMatrix<T>) -> Result<Self> {
        Self::check_shapes(&q, &p)?;
        let k = q.ncols();
        let gram = DenseMatrix::from_fn(k, k, |a, b| dot(p.col(a), q.col(b)).as_f64());
        let mut pair = Self::empty(q.nrows());
        pair.lu = Self::checked_factor(&gram, pair.roundoff)?;
        pair.gram = gram;
        pair.q = q;
        pair.p = p;
        Ok(pair)
    }

    /// Sketched pair with `ΩQ`, `ΩP` and `(ΩP)ᵀΩQ` computed directly.
    pub fn new_sketched(q: DenseMatrix<T>, p: DenseMatrix<T>, sketch: SketchOperator) -> Result<Self> {
        Self::check_shapes(&q, &p)?;
        check_dim("sketched pair ambient dimension", sketch.n(), q.nrows())?;
        let sq = sketch.apply(&q)?;
        let sp = sketch.apply(&p)?;
        let gram = sp.tr_matmul(&sq)?;
        let mut pair = Self::empty_sketched(sketch);
        pair.lu = Self::checked_factor(&gram, pair.roundoff)?;
        pair.gram = gram;
        pair.q = q;
        pair.p = p;
        pair.sq = sq;
        pair.sp = sp;
        Ok(pair)
    }

    fn check_shapes(q: &DenseMatrix<T>, p: &DenseMatrix<T>) -> Result<()> {
        check_dim("pair ambient dimension", q.nrows(), p.nrows())?;
        check_dim("pair column count", q.ncols(), p.ncols())
    }

    fn checked_factor(gram: &DenseMatrix<f64>, roundoff: f64) -> Result<BorderedLu> {
        let lu = BorderedLu::factor(gram)?;
        let tolerance = BREAKDOWN_PIVOT_FACTOR * roundoff * gram.frobenius_norm();
        let pivot = lu.min_pivot();
        if lu.dim() > 0 && !(pivot > tolerance) {
            return Err(Error::NearBreakdown { pivot, tolerance });
        }
        Ok(lu)
    }

    pub fn len(&self) -> usize {
        self.q.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ambient_dim(&self) -> usize {
        self.q.nrows()
    }

    pub fn is_sketched(&self) -> bool {
        self.sketch.is_some()
    }

    pub fn q(&self) -> &DenseMatrix<T> {
        &self.q
    }

    pub fn p(&self) -> &DenseMatrix<T> {
        &self.p
    }

    pub fn gram(&self) -> &DenseMatrix<f64> {
        &self.gram
    }

    pub fn gram_lu(&self) -> &BorderedLu {
        &self.lu
    }

    pub fn sketch(&self) -> Option<&SketchOperator> {
        self.sketch.as_ref()
    }

    /// Cached `ΩQ` (empty for deterministic pairs).
    pub fn sq(&self) -> &DenseMatrix<f64> {
        &self.sq
    }

    /// Cached `ΩP` (empty for deterministic pairs).
    pub fn sp(&self) -> &DenseMatrix<f64> {
        &self.sp
    }

    pub fn into_bases(self) -> (DenseMatrix<T>, DenseMatrix<T>) {
        (self.q, self.p)
    }

    fn require_plain(&self) -> Result<()> {
        if self.is_sketched() {
            Err(Error::InvalidArgument("operation needs a deterministic pair".into()))
        } else {
            Ok(())
        }
    }

    fn require_sketched(&self) -> Result<()> {
        if self.is_sketched() {
            Ok(())
        } else {
            Err(Error::InvalidArgument("operation needs a sketched pair".into()))
        }
    }

    fn combine(basis: &DenseMatrix<T>, coeffs: &[f64]) -> Vec<T> {
        let mut out = vec![T::zero(); basis.nrows()];
        for (col, &c) in basis.columns().zip(coeffs) {
            crate::dense::axpy(T::cast(c), col, &mut out);
        }
        out
    }

    /// `(PᵀQ)⁻¹ Pᵀ x`
    pub fn oblique_coefficients(&self, x: &[T]) -> Result<Vec<f64>> {
        self.require_plain()?;
        check_dim("projected vector length", self.ambient_dim(), x.len())?;
        let rhs: Vec<f64> = self.p.columns().map(|pk| dot(pk, x).as_f64()).collect();
        self.lu.solve(&rhs)
    }

    /// `Q (PᵀQ)⁻¹ Pᵀ x`: projection onto `range(Q)` along `range(P)ᗮ`.
    pub fn oblique_apply(&self, x: &[T]) -> Result<Vec<T>> {
        Ok(Self::combine(&self.q, &self.oblique_coefficients(x)?))
    }

    /// `(QᵀP)⁻¹ Qᵀ y`
    pub fn adjoint_coefficients(&self, y: &[T]) -> Result<Vec<f64>> {
        self.require_plain()?;
        check_dim("projected vector length", self.ambient_dim(), y.len())?;
        let rhs: Vec<f64> = self.q.columns().map(|qk| dot(qk, y).as_f64()).collect();
        self.lu.solve_transpose(&rhs)
    }

    /// `P (QᵀP)⁻¹ Qᵀ y`: projection onto `range(P)` along `range(Q)ᗮ`.
    pub fn adjoint_apply(&self, y: &[T]) -> Result<Vec<T>> {
        Ok(Self::combine(&self.p, &self.adjoint_coefficients(y)?))
    }

    /// `((ΩP)ᵀΩQ)⁻¹ (ΩP)ᵀ sx` for a caller-supplied sketch `sx = Ωx`.
    pub fn sketched_coefficients(&self, sx: &[f64]) -> Result<Vec<f64>> {
        self.require_sketched()?;
        check_dim("sketched vector length", self.sq.nrows(), sx.len())?;
        let rhs: Vec<f64> = self.sp.columns().map(|c| dot(c, sx)).collect();
        self.lu.solve(&rhs)
    }

    /// `Q ((ΩP)ᵀΩQ)⁻¹ (ΩP)ᵀ sx`
    pub fn sketched_oblique_apply(&self, x: &[T], sx: &[f64]) -> Result<Vec<T>> {
        check_dim("projected vector length", self.ambient_dim(), x.len())?;
        Ok(Self::combine(&self.q, &self.sketched_coefficients(sx)?))
    }

    /// `((ΩQ)ᵀΩP)⁻¹ (ΩQ)ᵀ sy`
    pub fn sketched_adjoint_coefficients(&self, sy: &[f64]) -> Result<Vec<f64>> {
        self.require_sketched()?;
        check_dim("sketched vector length", self.sq.nrows(), sy.len())?;
        let rhs: Vec<f64> = self.sq.columns().map(|c| dot(c, sy)).collect();
        self.lu.solve_transpose(&rhs)
    }

    /// `P ((ΩQ)ᵀΩP)⁻¹ (ΩQ)ᵀ sy`
    pub fn sketched_adjoint_apply(&self, y: &[T], sy: &[f64]) -> Result<Vec<T>> {
        check_dim("projected vector length", self.ambient_dim(), y.len())?;
        Ok(Self::combine(&self.p, &self.sketched_adjoint_coefficients(sy)?))
    }

    /// Appends `(q_new, p_new)` and borders the gram factorization.
    ///
    /// For sketched pairs the sketches are computed here; use
    /// [`extend_with_sketches`](Self::extend_with_sketches) when they are
    /// already known. On error the pair is left unchanged.
    pub fn extend(&mut self, q_new: &[T], p_new: &[T]) -> Result<()> {
        check_dim("appended q length", self.ambient_dim(), q_new.len())?;
        check_dim("appended p length", self.ambient_dim(), p_new.len())?;
        match self.sketch.clone() {
            Some(op) => {
                let sq_new = op.apply_vec(q_new)?;
                let sp_new = op.apply_vec(p_new)?;
                self.extend_with_sketches(q_new, p_new, &sq_new, &sp_new)
            }
            None => {
                let b: Vec<f64> = self.p.columns().map(|pk| dot(pk, q_new).as_f64()).collect();
                let c: Vec<f64> = self.q.columns().map(|qk| dot(p_new, qk).as_f64()).collect();
                let alpha = dot(p_new, q_new).as_f64();
                self.border(&b, &c, alpha)?;
                self.q.push_col(q_new)?;
                self.p.push_col(p_new)?;
                Ok(())
            }
        }
    }

    /// Sketched extension with precomputed `Ωq_new`, `Ωp_new`.
    pub fn extend_with_sketches(&mut self, q_new: &[T], p_new: &[T], sq_new: &[f64], sp_new: &[f64]) -> Result<()> {
        self.require_sketched()?;
        check_dim("appended q length", self.ambient_dim(), q_new.len())?;
        check_dim("appended p length", self.ambient_dim(), p_new.len())?;
        check_dim("appended sketch length", self.sq.nrows(), sq_new.len())?;
        check_dim("appended sketch length", self.sq.nrows(), sp_new.len())?;
        let b: Vec<f64> = self.sp.columns().map(|c| dot(c, sq_new)).collect();
        let c: Vec<f64> = self.sq.columns().map(|c| dot(sp_new, c)).collect();
        let alpha = dot(sp_new, sq_new);
        self.border(&b, &c, alpha)?;
        self.q.push_col(q_new)?;
        self.p.push_col(p_new)?;
        self.sq.push_col(sq_new)?;
        self.sp.push_col(sp_new)?;
        Ok(())
    }

    /// Functional form of [`extend`](Self::extend).
    pub fn gram_extend(mut self, q_new: &[T], p_new: &[T]) -> Result<Self> {
        self.extend(q_new, p_new)?;
        Ok(self)
    }

    fn border(&mut self, b: &[f64], c: &[f64], alpha: f64) -> Result<()> {
        let i = self.len();
        let tolerance = BREAKDOWN_PIVOT_FACTOR * self.roundoff * frob_with(&self.gram, b, c, alpha);
        let growth = GROWTH_THRESHOLD * max_abs_with(&self.gram, b, c, alpha);
        let gram = DenseMatrix::from_fn(i + 1, i + 1, |r, s| match (r < i, s < i) {
            (true, true) => self.gram.get(r, s),
            (true, false) => b[r],
            (false, true) => c[s],
            (false, false) => alpha,
        });
        let (mut lu, eta) = self.lu.bordered(b, c, alpha);
        if !(eta.abs() >= growth.max(tolerance)) {
            let refactored = BorderedLu::factor(&gram)?;
            let pivot = refactored.min_pivot();
            if !(pivot > tolerance) {
                return Err(Error::NearBreakdown { pivot, tolerance });
            }
            lu = BorderedLu {
                refactorizations: self.lu.refactorizations + 1,
                ..refactored
            };
        }
        self.lu = lu;
        self.gram = gram;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::rng::stream_rng;
    use proptest::prelude::*;
    use rand_distr::{Distribution, StandardNormal};

    fn gaussian(n: usize, k: usize, seed: u64) -> DenseMatrix<f64> {
        let mut rng = stream_rng(seed, 77, 0);
        DenseMatrix::from_fn(n, k, |_, _| StandardNormal.sample(&mut rng))
    }

    fn rel(a: &[f64], b: &[f64]) -> f64 {
        let d: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
        let s: f64 = b.iter().map(|y| y * y).sum::<f64>().sqrt();
        d / s.max(f64::MIN_POSITIVE)
    }

    #[test]
    fn hand_example() {
        let q = DenseMatrix::<f64>::from_columns(&[[1.0, 0.0, 0.0]]).unwrap();
        let p = DenseMatrix::<f64>::from_columns(&[[1.0, 1.0, 0.0]]).unwrap();
        let pair = ObliquePair::new(q, p).unwrap();
        assert_eq!(pair.oblique_apply(&[0.0, 1.0, 0.0]).unwrap(), vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn orthonormal_pair_gives_orthogonal_projection() {
        let u = linalg::thin_q(&gaussian(30, 4, 1));
        let pair = ObliquePair::new(u.clone(), u.clone()).unwrap();
        let x = gaussian(30, 1, 2);
        let got = pair.oblique_apply(x.col(0)).unwrap();
        let want = u.mul_vec(&u.tr_mul_vec(x.col(0)).unwrap()).unwrap();
        assert!(rel(&got, &want) < 1e-14);
    }

    #[test]
    fn extending_empty_pair() {
        let pair = ObliquePair::<f64>::empty(3).gram_extend(&[1.0, 2.0, 0.0], &[3.0, 1.0, 1.0]).unwrap();
        assert_eq!(pair.gram().as_slice(), &[5.0]);
        assert_eq!(pair.gram_lu().dim(), 1);
    }

    #[test]
    fn bordered_factorization_matches_dense_solve() {
        let (n, m) = (60, 25);
        let x = gaussian(n, m, 3);
        let y = gaussian(n, m, 4);
        let mut pair = ObliquePair::<f64>::empty(n);
        for k in 0..m {
            pair.extend(x.col(k), y.col(k)).unwrap();
        }
        let r: Vec<f64> = (0..m).map(|k| (k as f64).sin()).collect();
        let want = linalg::lu_solve(pair.gram(), &r).unwrap();
        assert!(rel(&pair.gram_lu().solve(&r).unwrap(), &want) < 1e-10);
        let want_t = linalg::lu_solve(&pair.gram().transpose(), &r).unwrap();
        assert!(rel(&pair.gram_lu().solve_transpose(&r).unwrap(), &want_t) < 1e-10);
        let back = pair.gram_lu().reconstruct();
        assert!(back.sub(pair.gram()).unwrap().frobenius_norm() <= 1e-12 * pair.gram().frobenius_norm());
    }

    #[test]
    fn dependent_column_is_near_breakdown_and_leaves_pair_intact() {
        let x = gaussian(20, 2, 5);
        let y = gaussian(20, 2, 6);
        let mut pair = ObliquePair::<f64>::empty(20);
        pair.extend(x.col(0), y.col(0)).unwrap();
        pair.extend(x.col(1), y.col(1)).unwrap();
        let dep: Vec<f64> = x.col(0).iter().zip(x.col(1)).map(|(a, b)| 2.0 * a - b).collect();
        let before = pair.gram().clone();
        let err = pair.extend(&dep, y.col(0)).unwrap_err();
        assert!(matches!(err, Error::NearBreakdown { .. }), "{err:?}");
        assert_eq!(pair.len(), 2);
        assert_eq!(pair.gram(), &before);
    }

    #[test]
    fn small_bordered_pivot_triggers_one_refactorization() {
        let q = DenseMatrix::<f64>::from_columns(&[[1.0, 0.0, 0.0], [1.0, 1e-10, 0.0]]).unwrap();
        let p = DenseMatrix::<f64>::from_columns(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]).unwrap();
        let mut pair = ObliquePair::<f64>::empty(3);
        pair.extend(q.col(0), p.col(0)).unwrap();
        pair.extend(q.col(1), p.col(1)).unwrap();
        assert_eq!(pair.gram_lu().refactorizations(), 1);
        // The gram has condition number ~1e10, so compare against a dense
        // pivoted solve at a matching tolerance.
        let r = [0.3, -0.7];
        let want = linalg::lu_solve(pair.gram(), &r).unwrap();
        assert!(rel(&pair.gram_lu().solve(&r).unwrap(), &want) < 1e-6);
    }

    #[test]
    fn identity_sketch_matches_deterministic() {
        let x = gaussian(40, 6, 7);
        let y = gaussian(40, 6, 8);
        let plain = ObliquePair::new(x.clone(), y.clone()).unwrap();
        let sk = ObliquePair::new_sketched(x, y, SketchOperator::identity(40)).unwrap();
        let v = gaussian(40, 1, 9);
        let a = plain.oblique_apply(v.col(0)).unwrap();
        let b = sk.sketched_oblique_apply(v.col(0), v.col(0)).unwrap();
        assert!(rel(&b, &a) < 1e-12);
    }

    #[test]
    fn mode_mismatch_is_rejected() {
        let plain = ObliquePair::<f64>::empty(4);
        assert!(plain.sketched_coefficients(&[]).is_err());
        let sk = ObliquePair::<f64>::empty_sketched(SketchOperator::identity(4));
        assert!(sk.oblique_apply(&[0.0; 4]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn sketched_projector_is_idempotent_and_residual_is_sketch_orthogonal(seed in any::<u64>(), k in 1usize..8) {
            let n = 120;
            let op = SketchOperator::sparse_sign(40, n, seed).unwrap();
            let pair = ObliquePair::new_sketched(gaussian(n, k, seed), gaussian(n, k, seed ^ 9), op.clone()).unwrap();
            let x = gaussian(n, 1, seed ^ 3);
            let sx = op.apply_vec(x.col(0)).unwrap();
            let px = pair.sketched_oblique_apply(x.col(0), &sx).unwrap();
            let spx = op.apply_vec(&px).unwrap();
            let ppx = pair.sketched_oblique_apply(&px, &spx).unwrap();
            prop_assert!(rel(&ppx, &px) <= 1e-10);
            let res: Vec<f64> = sx.iter().zip(&spx).map(|(a, b)| a - b).collect();
            let nsx = dot(&sx, &sx).sqrt();
            for c in pair.sp().columns() {
                let nc = dot(c, c).sqrt();
                prop_assert!(dot(c, &res).abs() <= 1e-10 * nsx * nc);
            }
        }

        #[test]
        fn gram_lu_reproduces_gram(seed in any::<u64>(), k in 1usize..12) {
            let n = 50;
            let mut pair = ObliquePair::<f64>::empty(n);
            let x = gaussian(n, k, seed);
            let y = gaussian(n, k, seed ^ 5);
            for j in 0..k {
                pair.extend(x.col(j), y.col(j)).unwrap();
            }
            let back = pair.gram_lu().reconstruct();
            prop_assert!(back.sub(pair.gram()).unwrap().frobenius_norm() <= 1e-12 * pair.gram().frobenius_norm());
        }
    }
}
