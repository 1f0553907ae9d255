//! Deterministic and randomized two-sided Gram-Schmidt on the ill-conditioned pair.
//!
//! Usage: `cargo run --example ill_conditioned_table [n] [m]`

use biorth::cli::{rows_to_csv, stability_table};
use biorth::sketching::{default_sketch_dim, SketchOperator};
use biorth::testmatrices::gen_ill_conditioned;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>());
    let n = args.next().transpose()?.unwrap_or(2000);
    let m = args.next().transpose()?.unwrap_or(80);
    let (x, y) = gen_ill_conditioned(n, m)?;
    let sketch = SketchOperator::sparse_sign(default_sketch_dim(n, m), n, 1)?;
    print!("{}", rows_to_csv(&stability_table(&x, &y, &sketch)?, true));
    Ok(())
}
