//! Compiles every catalog device into a braid word.

use taffy::compile::{compile_braid, DEFAULT_SAMPLES};
use taffy::error::Result;
use taffy::loops::entropy;
use taffy::motion::catalog;

fn main() -> Result<()> {
    for spec in catalog() {
        let b = compile_braid(&spec, spec.period_fraction, DEFAULT_SAMPLES)?;
        print!("{:<16} p = {:<4} {b}", spec.name, spec.period_fraction.to_string());
        if b.n_strands() >= 3 {
            print!("  (entropy {:.6})", entropy(&b, 1e-6, 200)?.value);
        }
        println!();
    }
    Ok(())
}
