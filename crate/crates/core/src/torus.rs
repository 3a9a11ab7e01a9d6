//! Linear maps of the unit torus.
//!
//! A [`TorusMap`] is an integer matrix with determinant 1 acting on
//! `[0,1)^2` by `x -> M x mod 1`. Everything here is exact: points carry
//! rational coordinates, periodic points come from a diagonalization of
//! `M^n - I` over the integers, and the dilatation keeps the trace around so
//! quadratic closed forms can be printed.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Result, TaffyError};

pub type Rational = Ratio<i64>;

/// Upper bound on how many points `periodic_orbits` is willing to list.
const MAX_ENUMERATED: u128 = 4_000_000;

/// A point of the torus with canonical coordinates in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    x: Rational,
    y: Rational,
}

fn reduce_unit(r: Rational) -> Rational {
    r - r.floor()
}

impl TorusPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self {
            x: reduce_unit(x),
            y: reduce_unit(y),
        }
    }

    /// Convenience constructor from `(num_x/den_x, num_y/den_y)`.
    pub fn from_fractions(x: (i64, i64), y: (i64, i64)) -> Self {
        Self::new(Ratio::new(x.0, x.1), Ratio::new(y.0, y.1))
    }

    pub fn origin() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn x(&self) -> Rational {
        self.x
    }

    pub fn y(&self) -> Rational {
        self.y
    }

    /// The involution `p -> -p mod 1`.
    pub fn involution(&self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The four fixed points of the involution: `(0,0), (1/2,0), (1/2,1/2), (0,1/2)`.
pub fn half_points() -> [TorusPoint; 4] {
    [
        TorusPoint::from_fractions((0, 1), (0, 1)),
        TorusPoint::from_fractions((1, 2), (0, 1)),
        TorusPoint::from_fractions((1, 2), (1, 2)),
        TorusPoint::from_fractions((0, 1), (1, 2)),
    ]
}

/// `[a b; c d]` with `ad - bc = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusMap {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl TorusMap {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = (a as i128) * (d as i128) - (b as i128) * (c as i128);
        if det != 1 {
            return Err(TaffyError::NotUnimodular {
                a,
                b,
                c,
                d,
                det: det.clamp(i64::MIN as i128, i64::MAX as i128) as i64,
            });
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self {
            a: 1,
            b: 0,
            c: 0,
            d: 1,
        }
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    pub fn is_anosov(&self) -> bool {
        self.trace().abs() > 2
    }

    /// Matrix product `self * other` (apply `other` first).
    pub fn compose(&self, other: &TorusMap) -> Result<TorusMap> {
        let m = mul2(self.wide(), other.wide());
        Self::from_wide(m)
    }

    pub fn inverse(&self) -> TorusMap {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `g M g^{-1}`.
    pub fn conjugate(&self, g: &TorusMap) -> Result<TorusMap> {
        g.compose(self)?.compose(&g.inverse())
    }

    pub fn pow(&self, n: u32) -> Result<TorusMap> {
        Self::from_wide(self.wide_pow(n)?)
    }

    pub fn apply(&self, p: &TorusPoint) -> TorusPoint {
        let (a, b, c, d) = (
            Rational::from(self.a),
            Rational::from(self.b),
            Rational::from(self.c),
            Rational::from(self.d),
        );
        // Reduce inputs first so the products stay small.
        TorusPoint::new(
            reduce_unit(a * p.x) + reduce_unit(b * p.y),
            reduce_unit(c * p.x) + reduce_unit(d * p.y),
        )
    }

    pub fn dilatation(&self) -> Result<Dilatation> {
        if !self.is_anosov() {
            return Err(TaffyError::NotAnosov {
                trace: self.trace(),
            });
        }
        Ok(Dilatation::from_trace(self.trace()))
    }

    /// Where the map sends each of the four half-integer points.
    ///
    /// Entry `i` is the index `j` with `M w_i = w_j`.
    pub fn half_point_permutation(&self) -> [usize; 4] {
        let w = half_points();
        let mut out = [0; 4];
        for (i, p) in w.iter().enumerate() {
            let image = self.apply(p);
            out[i] = w
                .iter()
                .position(|q| *q == image)
                .expect("half-integer points are permuted by every integer matrix");
        }
        out
    }

    /// Number of points with period dividing `n`, i.e. `|det(M^n - I)|`.
    pub fn periodic_point_count(&self, n: u32) -> Result<u128> {
        if !self.is_anosov() {
            return Err(TaffyError::NotAnosov {
                trace: self.trace(),
            });
        }
        let m = self.wide_pow(n)?;
        // det(M^n - I) = det(M^n) - tr(M^n) + 1 = 2 - tr(M^n)
        let tr = m[0][0]
            .checked_add(m[1][1])
            .ok_or(TaffyError::Overflow("trace of matrix power"))?;
        Ok((2 - tr).unsigned_abs())
    }

    /// All points fixed by `M^n`, in sorted order.
    pub fn points_of_period_dividing(&self, n: u32) -> Result<Vec<TorusPoint>> {
        let count = self.periodic_point_count(n)?;
        if count > MAX_ENUMERATED {
            return Err(TaffyError::EnumerationTooLarge(count));
        }
        let mut a = self.wide_pow(n)?;
        a[0][0] -= 1;
        a[1][1] -= 1;
        let (diag, q) = diagonalize(a);
        let d0 = diag[0].unsigned_abs() as i64;
        let d1 = diag[1].unsigned_abs() as i64;
        let q: [[i64; 2]; 2] = [
            [narrow(q[0][0])?, narrow(q[0][1])?],
            [narrow(q[1][0])?, narrow(q[1][1])?],
        ];
        let mut pts = Vec::with_capacity(count as usize);
        for j0 in 0..d0 {
            for j1 in 0..d1 {
                let y0 = Rational::new(j0, d0);
                let y1 = Rational::new(j1, d1);
                let x = reduce_unit(Rational::from(q[0][0]) * y0)
                    + reduce_unit(Rational::from(q[0][1]) * y1);
                let y = reduce_unit(Rational::from(q[1][0]) * y0)
                    + reduce_unit(Rational::from(q[1][1]) * y1);
                pts.push(TorusPoint::new(x, y));
            }
        }
        pts.sort();
        pts.dedup();
        debug_assert_eq!(pts.len() as u128, count);
        Ok(pts)
    }

    /// Orbits of exact period `n`, each starting at its smallest point.
    pub fn periodic_orbits(&self, n: u32) -> Result<Vec<PeriodicOrbit>> {
        if n == 0 {
            return Err(TaffyError::Parse("period must be positive".into()));
        }
        let pts = self.points_of_period_dividing(n)?;
        let mut seen = std::collections::BTreeSet::new();
        let mut orbits = Vec::new();
        for p in pts {
            if seen.contains(&p) {
                continue;
            }
            let mut orbit = vec![p];
            let mut q = self.apply(&p);
            while q != p {
                orbit.push(q);
                q = self.apply(&q);
            }
            for o in &orbit {
                seen.insert(*o);
            }
            if orbit.len() == n as usize {
                orbits.push(PeriodicOrbit {
                    period: n,
                    points: orbit,
                });
            }
        }
        Ok(orbits)
    }

    fn wide(&self) -> [[i128; 2]; 2] {
        [
            [self.a as i128, self.b as i128],
            [self.c as i128, self.d as i128],
        ]
    }

    fn wide_pow(&self, n: u32) -> Result<[[i128; 2]; 2]> {
        let mut acc = [[1i128, 0], [0, 1]];
        let base = self.wide();
        for _ in 0..n {
            acc = checked_mul2(acc, base)?;
        }
        Ok(acc)
    }

    fn from_wide(m: [[i128; 2]; 2]) -> Result<TorusMap> {
        Ok(Self {
            a: narrow(m[0][0])?,
            b: narrow(m[0][1])?,
            c: narrow(m[1][0])?,
            d: narrow(m[1][1])?,
        })
    }
}

impl fmt::Display for TorusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; {} {}]", self.a, self.b, self.c, self.d)
    }
}

fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| TaffyError::Overflow("torus matrix entry"))
}

fn mul2(x: [[i128; 2]; 2], y: [[i128; 2]; 2]) -> [[i128; 2]; 2] {
    [
        [
            x[0][0] * y[0][0] + x[0][1] * y[1][0],
            x[0][0] * y[0][1] + x[0][1] * y[1][1],
        ],
        [
            x[1][0] * y[0][0] + x[1][1] * y[1][0],
            x[1][0] * y[0][1] + x[1][1] * y[1][1],
        ],
    ]
}

fn checked_mul2(x: [[i128; 2]; 2], y: [[i128; 2]; 2]) -> Result<[[i128; 2]; 2]> {
    let dot = |p: i128, q: i128, r: i128, s: i128| {
        p.checked_mul(q)
            .and_then(|u| r.checked_mul(s).and_then(|v| u.checked_add(v)))
            .ok_or(TaffyError::Overflow("matrix power"))
    };
    Ok([
        [
            dot(x[0][0], y[0][0], x[0][1], y[1][0])?,
            dot(x[0][0], y[0][1], x[0][1], y[1][1])?,
        ],
        [
            dot(x[1][0], y[0][0], x[1][1], y[1][0])?,
            dot(x[1][0], y[0][1], x[1][1], y[1][1])?,
        ],
    ])
}

/// Diagonalize a nonsingular 2x2 integer matrix by unimodular row and
/// column operations: returns `(D, Q)` with `P A Q = diag(D)` for some
/// unimodular `P`.
///
/// Then `A x` is integral exactly when `Q^{-1} x` lies in `diag(1/D) Z^2`.
fn diagonalize(mut a: [[i128; 2]; 2]) -> ([i128; 2], [[i128; 2]; 2]) {
    let mut q = [[1i128, 0], [0, 1]];
    loop {
        // Pivot: smallest nonzero entry moved to (0,0).
        let mut best = None;
        for i in 0..2 {
            for j in 0..2 {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj): (usize, usize)| {
                    a[i][j].abs() < a[bi][bj].abs()
                }) {
                    best = Some((i, j));
                }
            }
        }
        let (pi, pj) = best.expect("matrix is nonsingular");
        if pi == 1 {
            a.swap(0, 1);
        }
        if pj == 1 {
            for row in a.iter_mut() {
                row.swap(0, 1);
            }
            for row in q.iter_mut() {
                row.swap(0, 1);
            }
        }
        let p = a[0][0];
        // Row op: clear (1,0).
        let f = Integer::div_floor(&a[1][0], &p);
        a[1][0] -= f * a[0][0];
        a[1][1] -= f * a[0][1];
        // Column op: clear (0,1).
        let g = Integer::div_floor(&a[0][1], &p);
        a[0][1] -= g * a[0][0];
        a[1][1] -= g * a[1][0];
        q[0][1] -= g * q[0][0];
        q[1][1] -= g * q[1][0];
        if a[1][0] == 0 && a[0][1] == 0 {
            return ([a[0][0], a[1][1]], q);
        }
    }
}

/// Spectral radius of an Anosov map, with its trace kept for closed-form
/// printing.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dilatation {
    pub value: f64,
    pub trace: i64,
}

impl Dilatation {
    pub fn from_trace(trace: i64) -> Self {
        let t = trace.unsigned_abs() as f64;
        let disc = (t * t - 4.0).sqrt();
        Self {
            value: (t + disc) / 2.0,
            trace,
        }
    }

    /// `tr^2 - 4`.
    pub fn discriminant(&self) -> i64 {
        self.trace * self.trace - 4
    }

    pub fn entropy(&self) -> f64 {
        self.value.ln()
    }

    /// Exact form of the dilatation, e.g. `3+2√2`, `2+√3`, `(3+√5)/2`.
    pub fn closed_form(&self) -> String {
        let t = self.trace.abs();
        if t % 2 == 0 {
            // t/2 + sqrt(t^2/4 - 1)
            let (k, m) = split_square(t * t / 4 - 1);
            format!("{}+{}", t / 2, surd(k, m))
        } else {
            let (k, m) = split_square(t * t - 4);
            format!("({}+{})/2", t, surd(k, m))
        }
    }
}

fn surd(k: i64, m: i64) -> String {
    if k == 1 {
        format!("√{m}")
    } else {
        format!("{k}√{m}")
    }
}

/// Write `n = k^2 m` with `m` squarefree.
fn split_square(n: i64) -> (i64, i64) {
    let mut k = 1;
    let mut m = n;
    let mut f = 2;
    while f * f <= m {
        while m % (f * f) == 0 {
            m /= f * f;
            k *= f;
        }
        f += 1;
    }
    (k, m)
}

/// A cycle of points permuted by a torus map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicOrbit {
    pub period: u32,
    pub points: Vec<TorusPoint>,
}

impl PeriodicOrbit {
    pub fn contains(&self, p: &TorusPoint) -> bool {
        self.points.contains(p)
    }

    /// True when the involution maps the orbit onto itself.
    pub fn is_involution_invariant(&self) -> bool {
        self.points.iter().all(|p| self.contains(&p.involution()))
    }
}
