//! Burau matrices at t = -1 and the characteristic polynomials that bound
//! braid entropy from below.

use taffy::braid::BraidWord;
use taffy::burau::{burau_minus_one, spectral_radius_bound};
use taffy::error::Result;

fn main() -> Result<()> {
    for (letters, strands) in [("1 -2", 3), ("1 1 -2 -2", 3), ("-1 -3 -2 -2 -1 -3", 4), ("1 2", 3)] {
        let b = BraidWord::parse(letters, strands)?;
        let m = burau_minus_one(&b)?;
        let p = m.char_poly();
        println!("{b} on {strands} strands");
        println!("  matrix     {m}");
        println!("  charpoly   {p}");
        println!("  bound      {:.10}", spectral_radius_bound(&b)?);
        if let Some(q) = p.dominant_quadratic_factor() {
            println!("  factor     {q} with root {:.10}", q.largest_root(1e-15)?);
        }
    }
    Ok(())
}
