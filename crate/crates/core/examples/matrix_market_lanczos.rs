//! Randomized Lanczos on an operator read from a Matrix Market file.
//!
//! Usage: `cargo run --example matrix_market_lanczos [file.mtx]`. Without an
//! argument a nonsymmetric tridiagonal matrix is written and used.

use biorth::biortho::GsVariant;
use biorth::cli::start_vectors;
use biorth::lanczos::{rand_nonsym_lanczos, ritz_triplets};
use biorth::mtx::{self, CsrMatrix};
use biorth::rbiortho::RBiorthConfig;
use biorth::sketching::{default_sketch_dim, SketchOperator};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = match std::env::args().nth(1) {
        Some(p) => std::path::PathBuf::from(p),
        None => {
            let n = 2000;
            let mut t = Vec::new();
            for i in 0..n {
                t.push((i, i, 1.0 + 10.0 * 0.97f64.powi(i as i32)));
                if i + 1 < n {
                    t.push((i, i + 1, 0.2));
                    t.push((i + 1, i, -0.05));
                }
            }
            let p = std::env::temp_dir().join("biorth_tridiagonal.mtx");
            mtx::write_path(&p, &CsrMatrix::from_triplets(n, n, &t)?)?;
            p
        }
    };
    let a = mtx::read_path(&path)?;
    let (n, m) = (a.nrows(), 80.min(a.nrows()));
    println!("{}: {} x {}, {} nonzeros", path.display(), n, a.ncols(), a.nnz());
    let (q1, p1) = start_vectors(n, 3);
    let sketch = SketchOperator::sparse_sign(default_sketch_dim(n, m), n, 3)?;
    let res = rand_nonsym_lanczos(&a, &q1, &p1, m, &RBiorthConfig::new(GsVariant::CgsO, 2, sketch))?;
    println!("{} steps, status {:?}", res.steps(), res.status);
    for t in ritz_triplets(&a, &res, 5)? {
        println!("theta {:+.10e} {:+.1e}i  res_right {:.2e}  res_left {:.2e}", t.theta.re, t.theta.im, t.res_right, t.res_left);
    }
    Ok(())
}
