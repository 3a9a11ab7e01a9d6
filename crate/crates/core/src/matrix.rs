use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::IntPolynomial;

/// Square matrix of big integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Panics if the rows are ragged or not square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            entries.extend(r.iter().map(|&v| BigInt::from(v)));
        }
        Self { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.n + j]
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, swap * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v.div_floor(&prev);
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    /// Characteristic polynomial `det(xI - A)` by the Faddeev-LeVerrier
    /// recursion; every division in it is exact over the integers.
    pub fn char_poly(&self) -> IntPolynomial {
        let n = self.n;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = IntMatrix::zeros(n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self * &m;
            for i in 0..n {
                *next.get_mut(i, i) += &coeffs[n - k + 1];
            }
            m = next;
            let t = (self * &m).trace();
            let (q, r) = t.div_rem(&BigInt::from(k));
            debug_assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
            coeffs[n - k] = -q;
        }
        IntPolynomial::new(coeffs)
    }

    /// In-place right multiplication by `I + N`, where `N` is zero outside
    /// row `row`, whose nonzero entries are listed in `row_entries`.
    pub(crate) fn mul_row_update(&mut self, row: usize, row_entries: &[(usize, i64)]) {
        let n = self.n;
        for r in 0..n {
            let pivot = self.entries[r * n + row].clone();
            if pivot.is_zero() {
                continue;
            }
            for &(c, v) in row_entries {
                self.entries[r * n + c] += &pivot * v;
            }
        }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_of_small_matrices() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(m.char_poly().to_string(), "x^2-3x+1");
        let m = IntMatrix::from_rows(&[vec![5, 2], vec![2, 1]]);
        assert_eq!(m.char_poly().to_string(), "x^2-6x+1");
        assert_eq!(IntMatrix::identity(2).char_poly().to_string(), "x^2-2x+1");
    }

    #[test]
    fn char_poly_matches_determinant_at_integer_points() {
        let m = IntMatrix::from_rows(&[
            vec![3, -1, 4, 0],
            vec![1, 5, -9, 2],
            vec![-6, 5, 3, 5],
            vec![8, -9, 7, 9],
        ]);
        let p = m.char_poly();
        for x in -3i64..=3 {
            let mut shifted = IntMatrix::identity(4);
            for i in 0..4 {
                for j in 0..4 {
                    let v = -m.get(i, j).clone();
                    *shifted.get_mut(i, j) = if i == j { v + x } else { v };
                }
            }
            let lhs = p.eval_rational(&num_rational::BigRational::from_integer(x.into()));
            assert_eq!(lhs.to_integer(), shifted.determinant(), "x = {x}");
        }
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntMatrix::from_rows(&[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 9]]);
        assert_eq!(m.determinant(), BigInt::from(-3));
    }
}
