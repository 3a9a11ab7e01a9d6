//! Braid words on a fixed number of strands.
//!
//! Letter `k > 0` is the generator that exchanges the rods in positions `k`
//! and `k+1` clockwise (the left rod passes above the right one when the
//! projection axis points right and "above" is the positive perpendicular
//! direction); `-k` is the counterclockwise exchange. With this convention
//! the figure-8 three-rod puller reads `1 -2`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, TaffyError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    n_strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(n_strands: usize, letters: Vec<i32>) -> Result<Self> {
        if n_strands < 2 {
            return Err(TaffyError::TooFewStrands {
                needed: 2,
                got: n_strands,
            });
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= n_strands {
                return Err(TaffyError::IndexOutOfRange {
                    index: l,
                    strands: n_strands,
                });
            }
        }
        Ok(Self { n_strands, letters })
    }

    pub fn identity(n_strands: usize) -> Result<Self> {
        Self::new(n_strands, Vec::new())
    }

    /// Parse whitespace- or comma-separated signed generator indices.
    pub fn parse(text: &str, n_strands: usize) -> Result<Self> {
        let letters = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<i32>()
                    .map_err(|e| TaffyError::Parse(format!("bad braid letter `{s}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n_strands, letters)
    }

    pub fn n_strands(&self) -> usize {
        self.n_strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            n_strands: self.n_strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &BraidWord) -> Result<Self> {
        if self.n_strands != other.n_strands {
            return Err(TaffyError::Parse(format!(
                "cannot concatenate braids on {} and {} strands",
                self.n_strands, other.n_strands
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self {
            n_strands: self.n_strands,
            letters,
        })
    }

    pub fn pow(&self, k: usize) -> Self {
        Self {
            n_strands: self.n_strands,
            letters: self.letters.repeat(k),
        }
    }

    /// `g b g^{-1}`.
    pub fn conjugate_by(&self, g: &BraidWord) -> Result<Self> {
        g.concat(self)?.concat(&g.inverse())
    }

    /// Net rod permutation: entry `i` is the final position of the strand
    /// that starts in position `i` (both 0-based).
    ///
    /// Letters act left to right, so `permutation(b·c)` is
    /// `permutation(c)` applied after `permutation(b)`.
    pub fn permutation(&self) -> Vec<usize> {
        // at[p] = strand currently sitting at position p
        let mut at: Vec<usize> = (0..self.n_strands).collect();
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize - 1;
            at.swap(k, k + 1);
        }
        let mut perm = vec![0; self.n_strands];
        for (p, &s) in at.iter().enumerate() {
            perm[s] = p;
        }
        perm
    }

    /// Sum of exponents; invariant under the braid relations.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// Lexicographically smallest word reachable by swapping neighbouring
    /// letters that commute (`|i - j| >= 2`).
    pub fn commutation_normal_form(&self) -> Self {
        let mut rest = self.letters.clone();
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            // Candidates: letters that commute with everything before them.
            let mut best: Option<usize> = None;
            for i in 0..rest.len() {
                let li = rest[i].unsigned_abs();
                let free = rest[..i]
                    .iter()
                    .all(|l| l.unsigned_abs().abs_diff(li) >= 2);
                if free && best.is_none_or(|b| rest[i] < rest[b]) {
                    best = Some(i);
                }
            }
            let i = best.expect("first letter is always a candidate");
            out.push(rest.remove(i));
        }
        Self {
            n_strands: self.n_strands,
            letters: out,
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

/// Cycle lengths of a permutation, sorted descending.
pub fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// `n:letters`, e.g. `3:1 -2`.
impl FromStr for BraidWord {
    type Err = TaffyError;

    fn from_str(s: &str) -> Result<Self> {
        let (n, word) = s
            .split_once(':')
            .ok_or_else(|| TaffyError::Parse(format!("expected `strands:letters`, got `{s}`")))?;
        let n = n
            .trim()
            .parse::<usize>()
            .map_err(|e| TaffyError::Parse(format!("bad strand count `{n}`: {e}")))?;
        Self::parse(word, n)
    }
}
