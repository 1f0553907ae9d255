//! Checks shared by the acceptance target and the regular integration tests.
#![allow(dead_code)]

use biorth::biortho::{two_sided_gs, BiorthConfig, GsVariant};
use biorth::dense::{dot, norm2, DenseMatrix};
use biorth::diagnostics::cond2;
use biorth::lanczos::{nonsym_lanczos, rand_nonsym_lanczos};
use biorth::linalg;
use biorth::projectors::ObliquePair;
use biorth::rbiortho::{randomized_two_sided_gs, RBiorthConfig};
use biorth::rng::stream_rng;
use biorth::sketching::SketchOperator;
use rand_distr::{Distribution, StandardNormal};

const TEST_DOMAIN: u64 = 0x5445_5354;

pub fn randn(n: usize, seed: u64, index: u64) -> Vec<f64> {
    let mut rng = stream_rng(seed, TEST_DOMAIN, index);
    (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()
}

pub fn gaussian(n: usize, k: usize, seed: u64) -> DenseMatrix<f64> {
    let cols: Vec<Vec<f64>> = (0..k as u64).map(|j| randn(n, seed, j)).collect();
    DenseMatrix::from_columns(&cols).expect("equal column lengths")
}

/// Gaussian columns scaled to unit norm.
pub fn unit_gaussian(n: usize, k: usize, seed: u64) -> DenseMatrix<f64> {
    let cols: Vec<Vec<f64>> = (0..k as u64)
        .map(|j| {
            let v = randn(n, seed, j);
            let nrm = norm2(&v);
            v.iter().map(|x| x / nrm).collect()
        })
        .collect();
    DenseMatrix::from_columns(&cols).expect("equal column lengths")
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
    norm2(&sub(a, b)) / norm2(b).max(f64::MIN_POSITIVE)
}

/// Largest columnwise `‖a_j − b_j‖ / ‖b_j‖`.
pub fn max_col_rel(a: &DenseMatrix<f64>, b: &DenseMatrix<f64>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    (0..a.ncols()).map(|j| rel_diff(a.col(j), b.col(j))).fold(0.0, f64::max)
}

/// Worst observed value of one property, as a multiple of its tolerance.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub worst: f64,
}

impl Check {
    fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            worst: 0.0,
        }
    }

    fn record(&mut self, err: f64, tol: f64) {
        let r = err / tol;
        self.worst = self.worst.max(if r.is_nan() { f64::INFINITY } else { r });
    }

    pub fn passed(&self) -> bool {
        self.worst <= 1.0
    }
}

pub struct ProjectorSuiteConfig {
    pub instances: usize,
    pub n: usize,
    pub m: usize,
    pub s: usize,
    pub candidates: usize,
    pub seed: u64,
}

impl Default for ProjectorSuiteConfig {
    fn default() -> Self {
        Self {
            instances: 50,
            n: 60,
            m: 6,
            s: 28,
            candidates: 200,
            seed: 7,
        }
    }
}

fn mat_vec(a: &DenseMatrix<f64>, x: &[f64]) -> Vec<f64> {
    a.mul_vec(x).expect("conforming shapes")
}

fn tr_vec(a: &DenseMatrix<f64>, x: &[f64]) -> Vec<f64> {
    a.tr_mul_vec(x).expect("conforming shapes")
}

fn gram_reconstruction(pair: &ObliquePair<f64>) -> f64 {
    let g = pair.gram();
    pair.gram_lu().reconstruct().sub(g).expect("square").frobenius_norm() / g.frobenius_norm()
}

/// Candidates in `range(Q)`: half drawn at random, half small perturbations
/// of `center`.
fn candidates(q: &DenseMatrix<f64>, center: &[f64], count: usize, seed: u64) -> Vec<Vec<f64>> {
    let scale = norm2(center).max(1.0);
    (0..count as u64)
        .map(|c| {
            let coeffs = randn(q.ncols(), seed, 10_000 + c);
            let dir = mat_vec(q, &coeffs);
            if c % 2 == 0 {
                dir
            } else {
                let eps = 1e-4 * scale / norm2(&dir);
                center.iter().zip(&dir).map(|(a, b)| a + eps * b).collect()
            }
        })
        .collect()
}

/// Records `f(proj) ≤ f(z)` for every candidate `z`, up to roundoff.
fn record_argmin(check: &mut Check, best: f64, others: impl Iterator<Item = f64>, scale: f64) {
    for f in others {
        check.record((best - f).max(0.0), 1e-10 * scale + 1e-10 * f);
    }
}

/// Orthogonal projector properties on `instances` random subspaces.
pub fn orthogonal_projector_checks(cfg: &ProjectorSuiteConfig) -> Vec<Check> {
    let mut range = Check::new("orthogonal (i): residual orthogonal to range, idempotent");
    let mut adj = Check::new("orthogonal (ii): self-adjoint");
    let mut argmin = Check::new("orthogonal (iii): nearest point");
    let mut formula = Check::new("orthogonal (iv): Q Q^+ and Q Q^T formulas");
    for inst in 0..cfg.instances as u64 {
        let seed = cfg.seed.wrapping_add(inst);
        let q = gaussian(cfg.n, cfg.m, seed);
        let pair = ObliquePair::new(q.clone(), q.clone()).unwrap();
        let x = randn(cfg.n, seed, 1000);
        let y = randn(cfg.n, seed, 1001);
        let px = pair.oblique_apply(&x).unwrap();
        let py = pair.oblique_apply(&y).unwrap();
        let kappa = cond2(pair.gram()).unwrap();
        let (nx, ny) = (norm2(&x), norm2(&y));

        range.record(norm2(&tr_vec(&q, &sub(&x, &px))), 1e-10 * q.frobenius_norm() * nx);
        range.record(rel_diff(&pair.oblique_apply(&px).unwrap(), &px), 1e-10);
        adj.record((dot(&px, &y) - dot(&x, &py)).abs(), 1e-10 * nx * ny * kappa);

        let best = norm2(&sub(&x, &px));
        let cands = candidates(&q, &px, cfg.candidates, seed);
        record_argmin(&mut argmin, best, cands.iter().map(|z| norm2(&sub(&x, z))), nx);

        let pinv = mat_vec(&q, &linalg::lstsq(&q, &x).unwrap());
        formula.record(rel_diff(&px, &pinv), 1e-10);
        let u = linalg::thin_q(&q);
        let upair = ObliquePair::new(u.clone(), u.clone()).unwrap();
        let uut = mat_vec(&u, &tr_vec(&u, &x));
        formula.record(rel_diff(&upair.oblique_apply(&x).unwrap(), &uut), 1e-12);
    }
    vec![range, adj, argmin, formula]
}

/// Oblique projector properties for independent random `(Q, P)`.
pub fn oblique_projector_checks(cfg: &ProjectorSuiteConfig) -> Vec<Check> {
    let mut range = Check::new("oblique (i): residual orthogonal to range(P), idempotent, factorization");
    let mut adj = Check::new("oblique (ii): <Pi_Q x, y> = <x, Pi_P y>");
    let mut argmin = Check::new("oblique (iii): argmin of |P^T (x - z)| when biorthonormal");
    let mut formula = Check::new("oblique (iv): Q (P^T Q)^-1 P^T formula");
    let mut direct = Check::new("oblique (iv): Q P^T formula when biorthonormal");
    for inst in 0..cfg.instances as u64 {
        let seed = cfg.seed.wrapping_add(1_000 + inst);
        let q = unit_gaussian(cfg.n, cfg.m, seed);
        let p = unit_gaussian(cfg.n, cfg.m, seed ^ 0xa5a5);
        let pair = ObliquePair::new(q.clone(), p.clone()).unwrap();
        let x = randn(cfg.n, seed, 1000);
        let y = randn(cfg.n, seed, 1001);
        let px = pair.oblique_apply(&x).unwrap();
        let py = pair.adjoint_apply(&y).unwrap();
        let kappa = cond2(pair.gram()).unwrap();
        let (nx, ny) = (norm2(&x), norm2(&y));

        range.record(norm2(&tr_vec(&p, &sub(&x, &px))), 1e-10 * nx);
        range.record(rel_diff(&pair.oblique_apply(&px).unwrap(), &px), 1e-10);
        range.record(gram_reconstruction(&pair), 1e-12);
        adj.record((dot(&px, &y) - dot(&x, &py)).abs(), 1e-10 * nx * ny * kappa);

        let g = p.tr_matmul(&q).unwrap();
        let explicit = mat_vec(&q, &linalg::lu_solve(&g, &tr_vec(&p, &x)).unwrap());
        formula.record(rel_diff(&px, &explicit), 1e-10);
        let explicit_adj = mat_vec(&p, &linalg::lu_solve(&g.transpose(), &tr_vec(&q, &y)).unwrap());
        formula.record(rel_diff(&py, &explicit_adj), 1e-10);

        let bi = two_sided_gs(&q, &p, &BiorthConfig::new(GsVariant::Mgs, 2)).unwrap();
        assert!(bi.status.is_complete());
        let bpair = ObliquePair::new(bi.q.clone(), bi.p.clone()).unwrap();
        let bpx = bpair.oblique_apply(&x).unwrap();
        let best = norm2(&tr_vec(&bi.p, &sub(&x, &bpx)));
        let cands = candidates(&bi.q, &bpx, cfg.candidates, seed);
        record_argmin(&mut argmin, best, cands.iter().map(|z| norm2(&tr_vec(&bi.p, &sub(&x, z)))), nx);
        let ptx = tr_vec(&bi.p, &x);
        let qpt = mat_vec(&bi.q, &ptx);
        direct.record(norm2(&sub(&bpx, &qpt)), 1e-10 * bi.q.frobenius_norm() * norm2(&ptx));
    }
    vec![range, adj, argmin, formula, direct]
}

/// Sketched oblique projector properties with a sparse sign sketch.
pub fn sketched_projector_checks(cfg: &ProjectorSuiteConfig) -> Vec<Check> {
    let mut range = Check::new("sketched (i): residual sketch-orthogonal, idempotent, factorization");
    let mut adj = Check::new("sketched (ii): <O Pi_Q x, O y> = <O x, O Pi_P y>");
    let mut argmin = Check::new("sketched (iii): argmin of |(OP)^T O (x - z)| when sketch-biorthonormal");
    let mut formula = Check::new("sketched (iv): Q ((OP)^T OQ)^-1 (OP)^T O formula");
    let mut reduction = Check::new("sketched (iv): identity sketch equals oblique projector");
    let mut direct = Check::new("sketched (iv): Q (OP)^T O formula when sketch-biorthonormal");
    for inst in 0..cfg.instances as u64 {
        let seed = cfg.seed.wrapping_add(2_000 + inst);
        let q = unit_gaussian(cfg.n, cfg.m, seed);
        let p = unit_gaussian(cfg.n, cfg.m, seed ^ 0xa5a5);
        let sketch = SketchOperator::sparse_sign(cfg.s, cfg.n, seed).unwrap();
        let pair = ObliquePair::new_sketched(q.clone(), p.clone(), sketch.clone()).unwrap();
        let x = randn(cfg.n, seed, 1000);
        let y = randn(cfg.n, seed, 1001);
        let (sx, sy) = (sketch.apply_vec(&x).unwrap(), sketch.apply_vec(&y).unwrap());
        let px = pair.sketched_oblique_apply(&x, &sx).unwrap();
        let py = pair.sketched_adjoint_apply(&y, &sy).unwrap();
        let (spx, spy) = (sketch.apply_vec(&px).unwrap(), sketch.apply_vec(&py).unwrap());
        let kappa = cond2(pair.gram()).unwrap();
        let sp = sketch.apply(&p).unwrap();
        let sq = sketch.apply(&q).unwrap();

        range.record(norm2(&tr_vec(&sp, &sub(&sx, &spx))), 1e-10 * norm2(&sx));
        range.record(rel_diff(&pair.sketched_oblique_apply(&px, &spx).unwrap(), &px), 1e-10);
        range.record(gram_reconstruction(&pair), 1e-12);
        range.record(pair.sq().sub(&sq).unwrap().frobenius_norm(), 1e-12 * sq.frobenius_norm());
        adj.record((dot(&spx, &sy) - dot(&sx, &spy)).abs(), 1e-10 * norm2(&sx) * norm2(&sy) * kappa);

        let g = sp.tr_matmul(&sq).unwrap();
        let omega = sketch.to_dense();
        let dense_sx = mat_vec(&omega, &x);
        let explicit = mat_vec(&q, &linalg::lu_solve(&g, &tr_vec(&sp, &dense_sx)).unwrap());
        formula.record(rel_diff(&px, &explicit), 1e-10);

        let id = ObliquePair::new_sketched(q.clone(), p.clone(), SketchOperator::identity(cfg.n)).unwrap();
        let plain = ObliquePair::new(q.clone(), p.clone()).unwrap();
        reduction.record(
            rel_diff(&id.sketched_oblique_apply(&x, &x).unwrap(), &plain.oblique_apply(&x).unwrap()),
            1e-12,
        );

        let rcfg = RBiorthConfig::new(GsVariant::Mgs, 2, sketch.clone());
        let bi = randomized_two_sided_gs(&q, &p, &rcfg).unwrap();
        assert!(bi.status.is_complete());
        let bpair = ObliquePair::new_sketched(bi.q.clone(), bi.p.clone(), sketch.clone()).unwrap();
        let bpx = bpair.sketched_oblique_apply(&x, &sx).unwrap();
        let objective = |z: &[f64]| norm2(&tr_vec(&bi.sp, &sketch.apply_vec(&sub(&x, z)).unwrap()));
        let best = objective(&bpx);
        let cands = candidates(&bi.q, &bpx, cfg.candidates, seed);
        record_argmin(&mut argmin, best, cands.iter().map(|z| objective(z)), norm2(&sx));
        let sptx = tr_vec(&bi.sp, &sx);
        let qspt = mat_vec(&bi.q, &sptx);
        direct.record(norm2(&sub(&bpx, &qspt)), 1e-10 * bi.q.frobenius_norm() * norm2(&sptx));
    }
    vec![range, adj, argmin, formula, reduction, direct]
}

pub fn projector_suite(cfg: &ProjectorSuiteConfig) -> Vec<Check> {
    let mut all = orthogonal_projector_checks(cfg);
    all.extend(oblique_projector_checks(cfg));
    all.extend(sketched_projector_checks(cfg));
    all
}

/// One row of the identity-sketch reduction suite.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub label: String,
    pub err: f64,
}

/// Columnwise gap between every randomized method run with an identity
/// sketch and its deterministic counterpart.
pub fn identity_reduction(n: usize, m: usize, seed: u64) -> Vec<Reduction> {
    let x = gaussian(n, m, seed);
    let y = gaussian(n, m, seed + 1);
    let id = SketchOperator::identity(n);
    let mut out = Vec::new();
    for variant in [GsVariant::Cgs, GsVariant::Mgs, GsVariant::CgsO] {
        for passes in 1..=3 {
            let det = two_sided_gs(&x, &y, &BiorthConfig::new(variant, passes)).unwrap();
            let rnd = randomized_two_sided_gs(&x, &y, &RBiorthConfig::new(variant, passes, id.clone())).unwrap();
            let err = max_col_rel(&rnd.q, &det.q)
                .max(max_col_rel(&rnd.p, &det.p))
                .max(max_col_rel(&rnd.tx, &det.tx))
                .max(max_col_rel(&rnd.ty, &det.ty));
            out.push(Reduction {
                label: format!("r{variant}{passes} vs {variant}{passes}"),
                err,
            });
        }
    }

    let a = DenseMatrix::from_fn(n, n, |i, j| {
        let g = randn(1, seed + 2, (i * n + j) as u64)[0] / (n as f64).sqrt();
        if i == j {
            g + 2.0 + i as f64 / n as f64
        } else {
            g
        }
    });
    let (q1, p1) = (randn(n, seed + 3, 0), randn(n, seed + 3, 1));
    for (variant, passes) in [(GsVariant::Mgs, 2), (GsVariant::CgsO, 2)] {
        let det = nonsym_lanczos(&a, &q1, &p1, m, &BiorthConfig::new(variant, passes)).unwrap();
        let rnd = rand_nonsym_lanczos(&a, &q1, &p1, m, &RBiorthConfig::new(variant, passes, id.clone())).unwrap();
        let err = max_col_rel(&rnd.q, &det.q)
            .max(max_col_rel(&rnd.p, &det.p))
            .max(max_col_rel(&rnd.h, &det.h))
            .max(max_col_rel(&rnd.t, &det.t));
        out.push(Reduction {
            label: format!("Lanczos+r{variant}{passes} vs Lanczos+{variant}{passes}"),
            err,
        });
    }
    out
}
