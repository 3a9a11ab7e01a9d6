//! Reduced Burau representation specialized at `t = -1`.
//!
//! At `t = -1` every generator is an integer unimodular matrix, so products
//! stay exact. For three strands the image is the torus matrix of the double
//! cover branched over the rods; for more strands its spectral radius is only
//! a lower bound for the dilatation.

use crate::braid::BraidWord;
use crate::error::{Result, TaffyError};
use crate::matrix::IntMatrix;

fn require_three(b: &BraidWord) -> Result<()> {
    if b.n_strands() < 3 {
        return Err(TaffyError::TooFewStrands {
            needed: 3,
            got: b.n_strands(),
        });
    }
    Ok(())
}

/// Row `k-1` entries of the generator image minus the identity.
fn generator_row(letter: i32, dim: usize) -> (usize, Vec<(usize, i64)>) {
    let row = letter.unsigned_abs() as usize - 1;
    let s = letter.signum() as i64;
    let mut entries = Vec::with_capacity(2);
    if row >= 1 {
        entries.push((row - 1, -s));
    }
    if row + 1 < dim {
        entries.push((row + 1, s));
    }
    (row, entries)
}

/// Matrix of a single generator `σ_k^{±1}` on `n` strands.
pub fn generator(letter: i32, n_strands: usize) -> Result<IntMatrix> {
    let b = BraidWord::new(n_strands, vec![letter])?;
    burau_minus_one(&b)
}

/// Image of the braid, letters multiplied left to right.
pub fn burau_minus_one(b: &BraidWord) -> Result<IntMatrix> {
    require_three(b)?;
    let dim = b.n_strands() - 1;
    let mut m = IntMatrix::identity(dim);
    for &l in b.letters() {
        let (row, entries) = generator_row(l, dim);
        m.mul_row_update(row, &entries);
    }
    Ok(m)
}

/// Largest real eigenvalue modulus of the Burau image (1 when there is
/// none above 1). A lower bound for the dilatation, sharp on 3 strands.
pub fn spectral_radius_bound(b: &BraidWord) -> Result<f64> {
    let p = burau_minus_one(b)?.char_poly();
    Ok(p.real_spectral_radius(1e-13))
}
