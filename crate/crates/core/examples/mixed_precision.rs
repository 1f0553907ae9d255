//! Single precision bases with double precision sketched quantities.

use biorth::biortho::GsVariant;
use biorth::diagnostics::{decomposition_error, sketch_biorth_error};
use biorth::rbiortho::{randomized_two_sided_gs, RBiorthConfig};
use biorth::sketching::{default_sketch_dim, SketchOperator};
use biorth::testmatrices::gen_ill_conditioned;

fn main() -> biorth::error::Result<()> {
    let (n, m) = (4000, 120);
    let (x, y) = gen_ill_conditioned(n, m)?;
    let sketch = SketchOperator::sparse_sign(default_sketch_dim(n, m), n, 1)?;
    println!("method,storage,sketch_biorth,err_X");
    for (variant, passes) in [(GsVariant::Mgs, 2), (GsVariant::Cgs, 3), (GsVariant::CgsO, 2)] {
        let double = RBiorthConfig::new(variant, passes, sketch.clone());
        for cfg in [double.clone(), double.mixed()] {
            let res = randomized_two_sided_gs(&x, &y, &cfg)?;
            println!(
                "{},{:?},{:.3e},{:.3e}",
                cfg.label(),
                res.storage,
                sketch_biorth_error(&res.sq, &res.sp)?,
                decomposition_error(&x, &res.q, &res.tx)?
            );
        }
    }
    Ok(())
}
