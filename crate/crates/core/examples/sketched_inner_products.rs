//! Sketched inner products of orthonormal pairs as the sketch grows.

use biorth::sketching::SketchKind;
use biorth::testmatrices::sketched_orthogonal_ip_experiment;

fn main() -> biorth::error::Result<()> {
    let grid = [25, 50, 100, 200, 400, 800];
    let table = sketched_orthogonal_ip_experiment(4000, &grid, 50, &[SketchKind::SparseSign, SketchKind::Gaussian], 1)?;
    print!("{}", table.to_csv());
    for cell in &table.cells {
        let scaled = cell.trial_mean() * (cell.s as f64).sqrt();
        println!("# {} s={}: mean * sqrt(s) = {scaled:.3}", cell.kind, cell.s);
    }
    Ok(())
}
