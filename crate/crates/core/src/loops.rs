//! Dynnikov coordinates for multiloops on the punctured disk.
//!
//! A multiloop on a disk with `n` punctures is encoded by `2n - 4` integers
//! `(a_1..a_{n-2}, b_1..b_{n-2})`. Generators act by piecewise-linear
//! max/min formulas, so the action is exact in big integers. Iterating a
//! braid on a loop and watching the coordinate size grow gives the
//! topological entropy of the braid.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Result, TaffyError};

/// Default number of braid applications when estimating entropy.
pub const DEFAULT_MAX_ITER: usize = 60;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LoopCoords {
    a: Vec<BigInt>,
    b: Vec<BigInt>,
}

impl LoopCoords {
    pub fn new(a: Vec<BigInt>, b: Vec<BigInt>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(TaffyError::InvalidLoop(format!(
                "a has {} entries but b has {}",
                a.len(),
                b.len()
            )));
        }
        if a.is_empty() {
            return Err(TaffyError::TooFewPunctures(a.len() + 2));
        }
        if a.iter().chain(&b).all(|c| c.is_zero()) {
            return Err(TaffyError::InvalidLoop("zero vector encodes no loop".into()));
        }
        Ok(Self { a, b })
    }

    pub fn from_i64(a: &[i64], b: &[i64]) -> Result<Self> {
        Self::new(
            a.iter().map(|&v| v.into()).collect(),
            b.iter().map(|&v| v.into()).collect(),
        )
    }

    /// `a = 0`, `b = -1` entrywise.
    pub fn canonical(n_punctures: usize) -> Result<Self> {
        if n_punctures < 3 {
            return Err(TaffyError::TooFewPunctures(n_punctures));
        }
        let m = n_punctures - 2;
        Ok(Self {
            a: vec![BigInt::zero(); m],
            b: vec![BigInt::from(-1); m],
        })
    }

    pub fn n_punctures(&self) -> usize {
        self.a.len() + 2
    }

    pub fn a(&self) -> &[BigInt] {
        &self.a
    }

    pub fn b(&self) -> &[BigInt] {
        &self.b
    }

    /// Sum of absolute values of all coordinates.
    pub fn complexity(&self) -> BigInt {
        self.a.iter().chain(&self.b).map(|c| c.abs()).sum()
    }

    pub fn apply_generator(&self, k: i32) -> Result<Self> {
        let mut out = self.clone();
        out.act(k)?;
        Ok(out)
    }

    pub fn apply_braid(&self, braid: &BraidWord) -> Result<Self> {
        let mut out = self.clone();
        out.act_braid(braid)?;
        Ok(out)
    }

    pub fn act_braid(&mut self, braid: &BraidWord) -> Result<()> {
        if braid.n_strands() != self.n_punctures() {
            return Err(TaffyError::InvalidLoop(format!(
                "braid on {} strands acting on {} punctures",
                braid.n_strands(),
                self.n_punctures()
            )));
        }
        for &k in braid.letters() {
            self.act(k)?;
        }
        Ok(())
    }

    /// In-place action of `σ_{|k|}^{sign k}`.
    pub fn act(&mut self, k: i32) -> Result<()> {
        let n = self.n_punctures();
        let i = k.unsigned_abs() as usize;
        if k == 0 || i >= n {
            return Err(TaffyError::IndexOutOfRange {
                index: k,
                strands: n,
            });
        }
        if i == 1 {
            let (a, b) = (&self.a[0], &self.b[0]);
            let (na, nb) = if k > 0 {
                // b' = b+ - a,  a' = b - b'+
                let nb = pos(b) - a;
                (b - pos(&nb), nb)
            } else {
                // b' = a + b+,  a' = -b + b'+
                let nb = a + pos(b);
                (-b + pos(&nb), nb)
            };
            self.a[0] = na;
            self.b[0] = nb;
        } else if i == n - 1 {
            let j = n - 3;
            let (a, b) = (&self.a[j], &self.b[j]);
            let (na, nb) = if k > 0 {
                let nb = neg(b) - a;
                (b - neg(&nb), nb)
            } else {
                let nb = a + neg(b);
                (-b + neg(&nb), nb)
            };
            self.a[j] = na;
            self.b[j] = nb;
        } else {
            let (p, q) = (i - 2, i - 1);
            let (ap, bp, aq, bq) = (&self.a[p], &self.b[p], &self.a[q], &self.b[q]);
            let (nap, nbp, naq, nbq) = if k > 0 {
                let c = ap - neg(bp) - aq + pos(bq);
                (
                    ap + pos(bp) + pos(&(pos(bq) - &c)),
                    bq - pos(&c),
                    aq + neg(bq) + neg(&(neg(bp) + &c)),
                    bp + pos(&c),
                )
            } else {
                let d = ap + neg(bp) - aq - pos(bq);
                (
                    ap - pos(bp) - pos(&(pos(bq) + &d)),
                    bq + neg(&d),
                    aq - neg(bq) - neg(&(neg(bp) - &d)),
                    bp - neg(&d),
                )
            };
            self.a[p] = nap;
            self.b[p] = nbp;
            self.a[q] = naq;
            self.b[q] = nbq;
        }
        Ok(())
    }
}

fn pos(x: &BigInt) -> BigInt {
    if x.is_positive() {
        x.clone()
    } else {
        BigInt::zero()
    }
}

fn neg(x: &BigInt) -> BigInt {
    if x.is_negative() {
        x.clone()
    } else {
        BigInt::zero()
    }
}

impl fmt::Display for LoopCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| {
            v.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "a=({}) b=({})", join(&self.a), join(&self.b))
    }
}

/// Natural log of a positive big integer.
pub fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map_or(f64::NAN, f64::ln);
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().map_or(f64::NAN, f64::ln) + shift as f64 * std::f64::consts::LN_2
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate {
    /// Log of the growth factor per braid application.
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Spread of the final estimates, or their projected tail if larger.
    pub residual: f64,
}

/// Entropy of `braid`, starting from the canonical loop.
pub fn entropy(braid: &BraidWord, tol: f64, max_iter: usize) -> Result<EntropyEstimate> {
    if braid.n_strands() < 3 {
        return Err(TaffyError::TooFewStrands {
            needed: 3,
            got: braid.n_strands(),
        });
    }
    entropy_from(LoopCoords::canonical(braid.n_strands())?, braid, tol, max_iter)
}

/// Entropy of `braid`, iterated on `seed`.
///
/// Each iteration applies the whole braid once and records
/// `ln C_k - ln C_{k-1}` for the complexity `C`. The increments are
/// Aitken-accelerated. The run stops once the last few estimates agree
/// within `tol` and the geometric tail projected from their differences is
/// also below `tol`.
pub fn entropy_from(
    seed: LoopCoords,
    braid: &BraidWord,
    tol: f64,
    max_iter: usize,
) -> Result<EntropyEstimate> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(TaffyError::Parse(format!("tolerance must be positive, got {tol}")));
    }
    let mut l = seed;
    let mut prev_ln = ln_big(&l.complexity());
    let mut raw: Vec<f64> = Vec::with_capacity(max_iter);
    let mut est: Vec<f64> = Vec::with_capacity(max_iter);
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        l.act_braid(braid)?;
        let ln = ln_big(&l.complexity());
        raw.push(ln - prev_ln);
        prev_ln = ln;
        est.push(accelerate(&raw));
        residual = residual_of(&est);
        if residual < tol {
            return Ok(EntropyEstimate {
                value: est[est.len() - 1].max(0.0),
                iterations: it,
                converged: true,
                residual,
            });
        }
    }
    Ok(EntropyEstimate {
        value: est.last().copied().unwrap_or(0.0).max(0.0),
        iterations: max_iter,
        converged: false,
        residual,
    })
}

/// Differences below this are rounding noise.
const NOISE: f64 = 1e-13;
/// Estimates that must agree before convergence is declared. Piecewise
/// linear dynamics can hold a transient plateau for three iterations.
const WINDOW: usize = 5;

/// Spread of the last `WINDOW` estimates, or the projected tail if larger.
fn residual_of(est: &[f64]) -> f64 {
    let m = est.len();
    if m < WINDOW {
        return f64::INFINITY;
    }
    let recent = &est[m - WINDOW..];
    let hi = recent.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = recent.iter().copied().fold(f64::INFINITY, f64::min);
    let spread = hi - lo;
    if spread < NOISE {
        return spread;
    }
    let d1 = (est[m - 1] - est[m - 2]).abs();
    let d2 = (est[m - 2] - est[m - 3]).abs();
    let d3 = (est[m - 3] - est[m - 4]).abs();
    let ratio = |num: f64, den: f64| {
        if num < NOISE {
            0.0
        } else if den < NOISE {
            f64::INFINITY
        } else {
            num / den
        }
    };
    let r = ratio(d1, d2).max(ratio(d2, d3));
    let tail = if r < 1.0 { d1 * r / (1.0 - r) } else { f64::INFINITY };
    spread.max(tail)
}

/// Aitken Δ² extrapolation of the last three terms, falling back to the
/// latest raw term when the sequence is not contracting.
fn accelerate(seq: &[f64]) -> f64 {
    let n = seq.len();
    let last = seq[n - 1];
    if n < 3 {
        return last;
    }
    let (x0, x1, x2) = (seq[n - 3], seq[n - 2], seq[n - 1]);
    let d1 = x1 - x0;
    let d2 = x2 - x1;
    let denom = d2 - d1;
    if denom == 0.0 || d1 == 0.0 || (d2 / d1).abs() >= 0.9 {
        return last;
    }
    let acc = x2 - d2 * d2 / denom;
    // Never move further than the last step could justify.
    if (acc - x2).abs() > 10.0 * d2.abs() {
        last
    } else {
        acc
    }
}
