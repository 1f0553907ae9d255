//! Oblique and sketched oblique projectors built incrementally.

use biorth::dense::{dot, DenseMatrix};
use biorth::projectors::ObliquePair;
use biorth::rng::stream_rng;
use biorth::sketching::SketchOperator;
use rand_distr::{Distribution, StandardNormal};

fn main() -> biorth::error::Result<()> {
    let (n, m) = (500, 8);
    let mut rng = stream_rng(5, 0, 0);
    let mut draw = |k| DenseMatrix::<f64>::from_fn(n, k, |_, _| StandardNormal.sample(&mut rng));
    let (q, noise, x) = (draw(m), draw(m), draw(1));
    let p = DenseMatrix::from_fn(n, m, |i, j| q.get(i, j) + 0.5 * noise.get(i, j));
    let x = x.col(0);

    let sketch = SketchOperator::sparse_sign(200, n, 9)?;
    let mut plain = ObliquePair::empty(n);
    let mut sketched = ObliquePair::empty_sketched(sketch.clone());
    for j in 0..m {
        plain.extend(q.col(j), p.col(j))?;
        sketched.extend(q.col(j), p.col(j))?;
    }
    println!("gram pivots: min {:.3e} over {} refactorizations", plain.gram_lu().min_pivot(), plain.gram_lu().refactorizations());

    let px = plain.oblique_apply(x)?;
    let residual: Vec<f64> = x.iter().zip(&px).map(|(a, b)| a - b).collect();
    let worst = (0..m).map(|j| dot(p.col(j), &residual).abs()).fold(0.0, f64::max);
    println!("max |<p_j, x - proj x>| = {worst:.2e}");

    let sx = sketch.apply_vec(x)?;
    let spx = sketched.sketched_oblique_apply(x, &sx)?;
    let diff: f64 = px.iter().zip(&spx).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
    let norm: f64 = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    println!("|exact - sketched projection| / |x| = {:.3}", diff / norm);
    Ok(())
}
