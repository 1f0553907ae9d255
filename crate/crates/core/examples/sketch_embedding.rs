//! How well sparse sign and Gaussian sketches embed a random subspace.

use biorth::dense::DenseMatrix;
use biorth::linalg;
use biorth::rng::stream_rng;
use biorth::sketching::{embedding_report, SketchKind, SketchOperator};
use rand_distr::{Distribution, StandardNormal};

fn main() -> biorth::error::Result<()> {
    let (n, m) = (5000, 20);
    let mut rng = stream_rng(42, 0, 0);
    let basis = linalg::thin_q(&DenseMatrix::from_fn(n, m, |_, _| StandardNormal.sample(&mut rng)));
    println!("kind,s,epsilon_subspace,sigma_ratio_max,sigma_ratio_min,cond_sketched");
    for kind in [SketchKind::SparseSign, SketchKind::Gaussian] {
        for s in [2 * m, 4 * m, 8 * m, 16 * m] {
            let op = match kind {
                SketchKind::Gaussian => SketchOperator::new_gaussian(s, n, 7)?,
                _ => SketchOperator::sparse_sign(s, n, 7)?,
            };
            let r = embedding_report(&op, &basis, 100)?;
            println!(
                "{kind},{s},{:.3},{:.3},{:.3},{:.3}",
                r.epsilon_subspace, r.sigma_ratio_max, r.sigma_ratio_min, r.cond_sketched
            );
        }
    }
    Ok(())
}
