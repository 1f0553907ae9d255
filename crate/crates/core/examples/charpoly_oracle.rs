//! The characteristic polynomial of the sketched Lanczos matrix as a sketched least-squares minimizer.

use biorth::biortho::GsVariant;
use biorth::dense::DenseMatrix;
use biorth::lanczos::charpoly_optimality_check;
use biorth::rbiortho::RBiorthConfig;
use biorth::rng::stream_rng;
use biorth::sketching::SketchOperator;
use rand_distr::{Distribution, StandardNormal};

fn main() -> biorth::error::Result<()> {
    let (n, m) = (60, 6);
    let mut rng = stream_rng(11, 0, 0);
    let a = DenseMatrix::<f64>::from_fn(n, n, |_, _| StandardNormal.sample(&mut rng));
    let b: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
    let c: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
    let cfg = RBiorthConfig::new(GsVariant::CgsO, 2, SketchOperator::new_gaussian(30, n, 4)?);
    let chk = charpoly_optimality_check(&a, &b, &c, m, &cfg)?;
    println!("j,lanczos,oracle");
    for (j, (l, o)) in chk.coeffs_lanczos.iter().zip(&chk.coeffs_oracle).enumerate() {
        println!("{j},{l:+.15e},{o:+.15e}");
    }
    println!("relative gap {:.2e}, transpose side {:.2e}", chk.gap, chk.gap_t);
    Ok(())
}
