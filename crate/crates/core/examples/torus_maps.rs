//! Anosov torus maps: dilatation, action on half-integer points, and
//! periodic orbits.

use taffy::error::Result;
use taffy::torus::{half_points, TorusMap};

fn main() -> Result<()> {
    let maps = [
        ("cat map", TorusMap::new(2, 1, 1, 1)?),
        ("silver", TorusMap::new(3, 2, 4, 3)?),
        ("trace 4", TorusMap::new(2, 1, 3, 2)?),
    ];
    let halves = half_points();
    for (label, m) in &maps {
        let d = m.dilatation()?;
        println!("{label}: {m}");
        println!("  dilatation {} = {:.6}, entropy {:.6}", d.closed_form(), d.value, d.entropy());
        let perm = m.half_point_permutation();
        for (i, p) in halves.iter().enumerate() {
            println!("  {p} -> {}", halves[perm[i]]);
        }
        for n in 1..=3 {
            let orbits = m.periodic_orbits(n)?;
            let symmetric = orbits.iter().filter(|o| o.is_involution_invariant()).count();
            println!(
                "  n = {n}: {} points with A^n p = p, {} orbits of exact period n ({} symmetric)",
                m.periodic_point_count(n)?,
                orbits.len(),
                symmetric
            );
        }
    }
    Ok(())
}
