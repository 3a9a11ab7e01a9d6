//! The same motion seen from a rotating frame has the same entropy once
//! the frame's turns are added to the braid.

use num_traits::ToPrimitive;
use taffy::compile::compile_braid;
use taffy::error::Result;
use taffy::loops::entropy;
use taffy::motion::{catalog_spec, Frequency};

fn main() -> Result<()> {
    let spec = catalog_spec("mixograph")?;
    for turns in [0, 4, -2] {
        let framed = spec.in_rotating_frame(Frequency::from_integer(turns));
        let b = compile_braid(&framed, Frequency::from_integer(1), 1024)?;
        let e = entropy(&b, 1e-6, 200)?;
        println!(
            "turns {turns:>2}: {} fixed rods, {} letters per period, entropy per period {:.6}",
            framed.n_fixed(),
            b.len(),
            e.value
        );
    }
    let p = spec.period_fraction.to_f64().unwrap_or(1.0);
    println!("reference 8.5902 per period; compiled over p = {p:.4}");
    Ok(())
}
