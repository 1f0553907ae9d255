//! Leading eigenvalues of a nonnormal matrix with deterministic and randomized Lanczos.

use biorth::biortho::{BiorthConfig, GsVariant};
use biorth::cli::{benchmark_matrix, start_vectors};
use biorth::lanczos::{nonsym_lanczos, rand_nonsym_lanczos, ritz_triplets};
use biorth::rbiortho::RBiorthConfig;
use biorth::sketching::{default_sketch_dim, SketchOperator};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (n, m, k) = (1000, 100, 10);
    let a = benchmark_matrix(n, 100.0, 1)?;
    let (q1, p1) = start_vectors(n, 1);
    let det = nonsym_lanczos(&a, &q1, &p1, m, &BiorthConfig::new(GsVariant::Mgs, 2))?;
    let sketch = SketchOperator::sparse_sign(default_sketch_dim(n, m), n, 1)?;
    let rnd = rand_nonsym_lanczos(&a, &q1, &p1, m, &RBiorthConfig::new(GsVariant::CgsO, 2, sketch))?;
    for res in [&det, &rnd] {
        let (right, left) = res.arnoldi_residuals(&a)?;
        println!("{}: relation residuals {right:.2e} (right), {left:.2e} (left)", res.method);
        for (i, t) in ritz_triplets(&a, res, k)?.iter().enumerate() {
            println!("  {:>2} theta {:+.12e} {:+.1e}i  res {:.2e}", i + 1, t.theta.re, t.theta.im, t.res_right);
        }
    }
    Ok(())
}
