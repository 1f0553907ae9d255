//! Loss of biorthogonality per method on a pair of Gaussian matrices.
//!
//! Usage: `cargo run --example gaussian_table [n] [m] [seed]`

use biorth::cli::{rows_to_csv, stability_table};
use biorth::sketching::{default_sketch_dim, SketchOperator};
use biorth::testmatrices::gen_gaussian_pair;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.first().map_or(Ok(2000), |a| a.parse())?;
    let m = args.get(1).map_or(Ok(100), |a| a.parse())?;
    let seed = args.get(2).map_or(Ok(1), |a| a.parse())?;
    let (x, y) = gen_gaussian_pair(n, m, seed)?;
    let sketch = SketchOperator::sparse_sign(default_sketch_dim(n, m), n, seed)?;
    print!("{}", rows_to_csv(&stability_table(&x, &y, &sketch)?, true));
    Ok(())
}
