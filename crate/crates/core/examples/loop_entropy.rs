//! Braid entropy from the growth of loop coordinates.

use taffy::braid::BraidWord;
use taffy::error::Result;
use taffy::loops::{entropy, LoopCoords};

fn main() -> Result<()> {
    let b = BraidWord::parse("1 -2", 3)?;
    let mut l = LoopCoords::canonical(3)?;
    println!("iterating {b} on {l}");
    for k in 1..=6 {
        l.act_braid(&b)?;
        println!("  {k}: complexity {}", l.complexity());
    }
    for (letters, strands) in [("1 -2", 3), ("1 2 -3", 4), ("1 1", 3), ("1 -2 3 -4", 5)] {
        let b = BraidWord::parse(letters, strands)?;
        let e = entropy(&b, 1e-8, 200)?;
        println!(
            "{letters:<12} entropy {:.9} after {} iterations ({})",
            e.value,
            e.iterations,
            if e.converged { "converged" } else { "not converged" }
        );
    }
    Ok(())
}
