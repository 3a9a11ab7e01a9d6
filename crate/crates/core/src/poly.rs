//! Integer polynomials and exact largest-root bracketing.
//!
//! Root isolation uses a Sturm sequence over the rationals, so every
//! "is there a root to the right of this point" decision is exact; only the
//! final midpoint is rounded to `f64`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Result, TaffyError};

/// Coefficients stored constant term first; the leading coefficient is
/// nonzero (the zero polynomial has no coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// From coefficients given constant term first.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// From coefficients given leading term first, as polynomials are
    /// usually written.
    pub fn from_descending(coeffs: &[i64]) -> Self {
        let mut v: Vec<i64> = coeffs.to_vec();
        v.reverse();
        Self::from_i64(&v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Exact quotient over the integers, or `None` when `divisor` does not
    /// divide `self` in `Z[x]`.
    pub fn divide_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let lead = divisor.leading()?;
        if self.is_zero() {
            return Some(Self::new(Vec::new()));
        }
        if self.degree() < divisor.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    /// `1 + max|c_i| / |c_n|`, rounded up: every real root lies strictly
    /// inside `(-B, B)`.
    pub fn cauchy_bound(&self) -> BigInt {
        let lead = match self.leading() {
            Some(l) => l.abs(),
            None => return BigInt::one(),
        };
        let max = self.coeffs[..self.degree()]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        BigInt::one() + Integer::div_ceil(&max, &lead)
    }

    /// Distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let chain = SturmChain::new(self);
        chain.variations(lo).saturating_sub(chain.variations(hi))
    }

    /// Interval `(lo, hi]` of width below `tol` holding the largest real
    /// root, provided that root exceeds 1.
    pub fn largest_root_bracket(&self, tol: f64) -> Result<(BigRational, BigRational)> {
        if self.degree() == 0 {
            return Err(TaffyError::NoRootAboveOne);
        }
        let chain = SturmChain::new(self);
        let mut lo = BigRational::one();
        let mut hi = BigRational::from_integer(self.cauchy_bound());
        let v_hi = chain.variations(&hi);
        if chain.variations(&lo) <= v_hi {
            return Err(TaffyError::NoRootAboveOne);
        }
        let tol = BigRational::from_float(tol.max(1e-300))
            .ok_or_else(|| TaffyError::Parse("tolerance must be finite".into()))?;
        let two = BigRational::from_integer(BigInt::from(2));
        while &hi - &lo >= tol {
            let mid = (&lo + &hi) / &two;
            if chain.variations(&mid) > v_hi {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok((lo, hi))
    }

    /// Largest real root, to within `tol`.
    pub fn largest_root(&self, tol: f64) -> Result<f64> {
        let (lo, hi) = self.largest_root_bracket(tol)?;
        let two = BigRational::from_integer(BigInt::from(2));
        Ok(((lo + hi) / two).to_f64().unwrap_or(f64::NAN))
    }

    /// Largest absolute value of a real root, or 1 when every real root
    /// lies in `[-1, 1]`.
    pub fn real_spectral_radius(&self, tol: f64) -> f64 {
        let pos = self.largest_root(tol).unwrap_or(1.0);
        let neg = self.reflect().largest_root(tol).unwrap_or(1.0);
        pos.max(neg)
    }

    /// A reciprocal quadratic `x^2 - t x + 1` (`t >= 3`) whose largest root
    /// is the largest real root modulus of `self`, certified by exact
    /// division of `p(x)` or `p(-x)`.
    pub fn dominant_quadratic_factor(&self) -> Option<IntPolynomial> {
        let rho = self.real_spectral_radius(1e-12);
        if rho <= 1.0 + 1e-9 {
            return None;
        }
        let t = (rho + 1.0 / rho).round() as i64;
        let q = IntPolynomial::from_descending(&[1, -t, 1]);
        let q_neg = q.reflect();
        if self.divide_exact(&q).is_some() || self.divide_exact(&q_neg).is_some() {
            let root = q.largest_root(1e-12).ok()?;
            if (root - rho).abs() <= 1e-9 * rho {
                return Some(q);
            }
        }
        None
    }
}

impl fmt::Display for IntPolynomial {
    /// Compact form without spaces, e.g. `x^2-6x+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = TaffyError;

    /// Accepts the `Display` form, with optional spaces and `*`.
    fn from_str(s: &str) -> Result<Self> {
        let clean: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '*')
            .map(|c| if c == '−' { '-' } else { c })
            .collect();
        if clean.is_empty() {
            return Err(TaffyError::Parse("empty polynomial".into()));
        }
        let bad = || TaffyError::Parse(format!("cannot parse polynomial `{s}`"));
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in clean.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(&clean[start..i]);
                start = i;
            }
        }
        terms.push(&clean[start..]);
        let mut coeffs: Vec<BigInt> = Vec::new();
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-1, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            let (coef, power) = match body.find('x') {
                None => (body.parse::<BigInt>().map_err(|_| bad())?, 0usize),
                Some(pos) => {
                    let c = if pos == 0 {
                        BigInt::one()
                    } else {
                        body[..pos].parse::<BigInt>().map_err(|_| bad())?
                    };
                    let rest = &body[pos + 1..];
                    let p = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<usize>()
                            .map_err(|_| bad())?
                    };
                    (c, p)
                }
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigInt::zero());
            }
            coeffs[power] += coef * sign;
        }
        Ok(Self::new(coeffs))
    }
}

/// Sturm sequence `p, p', -rem(p, p'), ...` with rational coefficients.
struct SturmChain {
    polys: Vec<Vec<BigRational>>,
}

impl SturmChain {
    fn new(p: &IntPolynomial) -> Self {
        let to_q = |c: &[BigInt]| -> Vec<BigRational> {
            c.iter().map(|x| BigRational::from_integer(x.clone())).collect()
        };
        let mut polys = vec![to_q(p.coeffs()), to_q(p.derivative().coeffs())];
        loop {
            let n = polys.len();
            if polys[n - 1].is_empty() {
                polys.pop();
                break;
            }
            let r = rat_rem(&polys[n - 2], &polys[n - 1]);
            polys.push(r.into_iter().map(|c| -c).collect());
        }
        Self { polys }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.polys {
            let mut acc = BigRational::zero();
            for c in p.iter().rev() {
                acc = acc * x + c;
            }
            let s = if acc.is_positive() {
                1
            } else if acc.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let q = &r[r.len() - 1] / lead;
        for (j, c) in b.iter().enumerate() {
            r[k + j] = &r[k + j] - &q * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "x^2-6x+1",
            "x^8-4x^7-x^6+4x^4-x^2-4x+1",
            "x^4-20x^3-26x^2-20x+1",
            "-x",
            "7",
            "2x^3+x",
        ] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("x^2 - 3 x + 1"), IntPolynomial::from_descending(&[1, -3, 1]));
    }

    #[test]
    fn exact_division() {
        let f = p("x^3-7x^2+7x-1");
        let q = f.divide_exact(&p("x-1")).unwrap();
        assert_eq!(q, p("x^2-6x+1"));
        assert!(f.divide_exact(&p("x+1")).is_none());
        assert!(p("2x+1").divide_exact(&p("2x+2")).is_none());
    }

    #[test]
    fn silver_ratio_squared() {
        let r = p("x^2-6x+1").largest_root(1e-12).unwrap();
        assert!((r - (3.0 + 8f64.sqrt())).abs() < 1e-11);
    }

    #[test]
    fn degree_eight_reference_root() {
        let r = p("x^8-4x^7-x^6+4x^4-x^2-4x+1").largest_root(1e-10).unwrap();
        assert!((r - 4.1858).abs() < 5e-5, "{r}");
    }

    #[test]
    fn largest_of_several_roots() {
        // (x-2)(x-3)(x-5)
        let f = p("x^3-10x^2+31x-30");
        assert!((f.largest_root(1e-12).unwrap() - 5.0).abs() < 1e-11);
        // double root at 4 plus a root at 2: no sign change at 4
        let g = p("x^3-10x^2+32x-32");
        assert!((g.largest_root(1e-12).unwrap() - 4.0).abs() < 1e-11);
    }

    #[test]
    fn no_root_above_one() {
        assert!(matches!(
            p("x^2-2x+1").largest_root(1e-9),
            Err(TaffyError::NoRootAboveOne)
        ));
        assert!(matches!(
            p("x^2+1").largest_root(1e-9),
            Err(TaffyError::NoRootAboveOne)
        ));
        assert!(matches!(p("5").largest_root(1e-9), Err(TaffyError::NoRootAboveOne)));
    }

    #[test]
    fn reflected_roots_count() {
        let f = p("x^2+6x+1");
        assert!(f.largest_root(1e-9).is_err());
        assert!((f.real_spectral_radius(1e-12) - (3.0 + 8f64.sqrt())).abs() < 1e-10);
    }

    #[test]
    fn quadratic_factor_certification() {
        // (x-1)(x^2+6x+1)
        let f = p("x^3+5x^2-5x-1");
        assert_eq!(f.dominant_quadratic_factor(), Some(p("x^2-6x+1")));
        // (x^2+4x+1)(x^3-x^2+x-1)
        let g = p("x^5+3x^4-2x^3+2x^2-3x-1");
        assert_eq!(g.dominant_quadratic_factor(), Some(p("x^2-4x+1")));
        assert_eq!(p("x^8-4x^7-x^6+4x^4-x^2-4x+1").dominant_quadratic_factor(), None);
        assert_eq!(p("x^2-2x+1").dominant_quadratic_factor(), None);
    }

    #[test]
    fn root_counting() {
        let f = p("x^3-10x^2+31x-30");
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(f.count_roots(&q(0, 1), &q(10, 1)), 3);
        assert_eq!(f.count_roots(&q(2, 1), &q(3, 1)), 1);
        assert_eq!(f.count_roots(&q(5, 2), &q(9, 2)), 1);
    }
}
