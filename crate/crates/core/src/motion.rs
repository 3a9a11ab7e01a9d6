//! Rod trajectories built from nested rotating arms.
//!
//! A rod sits at `center + Σ radius·(cos, sin)(2π·frequency·t + phase)` with
//! `t` measured in device periods. Integer frequencies close every orbit at
//! `t = 1`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::path::Path;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, TaffyError};

pub type Frequency = Ratio<i64>;

/// Positions closer than this are treated as equal.
pub const POSITION_EPS: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Arm {
    pub radius: f64,
    /// Signed turns per device period.
    #[serde(with = "ratio_text")]
    pub frequency: Frequency,
    /// Radians.
    pub phase: f64,
}

impl Arm {
    pub fn new(radius: f64, frequency: i64, phase: f64) -> Self {
        Self {
            radius,
            frequency: Frequency::from_integer(frequency),
            phase,
        }
    }

    fn offset(&self, t: f64) -> [f64; 2] {
        let f = self.frequency.to_f64().unwrap_or(f64::NAN);
        let angle = TAU * f * t + self.phase;
        [self.radius * angle.cos(), self.radius * angle.sin()]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RodTrajectory {
    pub center: [f64; 2],
    #[serde(default)]
    pub arms: Vec<Arm>,
}

impl RodTrajectory {
    pub fn fixed(x: f64, y: f64) -> Self {
        Self {
            center: [x, y],
            arms: Vec::new(),
        }
    }

    pub fn orbiting(x: f64, y: f64, arms: Vec<Arm>) -> Self {
        Self {
            center: [x, y],
            arms,
        }
    }

    pub fn position(&self, t: f64) -> [f64; 2] {
        let mut p = self.center;
        for arm in &self.arms {
            let o = arm.offset(t);
            p[0] += o[0];
            p[1] += o[1];
        }
        p
    }

    /// True when no arm moves the rod.
    pub fn is_fixed(&self) -> bool {
        self.arms
            .iter()
            .all(|a| a.radius == 0.0 || a.frequency.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RodMotionSpec {
    pub name: String,
    pub rods: Vec<RodTrajectory>,
    /// Fraction of a period after which the rod set returns to itself.
    #[serde(with = "ratio_text")]
    pub period_fraction: Frequency,
    #[serde(default)]
    pub notes: String,
}

impl RodMotionSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn n_rods(&self) -> usize {
        self.rods.len()
    }

    pub fn n_fixed(&self) -> usize {
        self.rods.iter().filter(|r| r.is_fixed()).count()
    }

    pub fn positions(&self, t: f64) -> Vec<[f64; 2]> {
        self.rods.iter().map(|r| r.position(t)).collect()
    }

    /// Checks integer frequencies, distinct starting positions and that the
    /// rod set at `t = p` is the starting set.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(TaffyError::InvalidSpec(format!("{}: {msg}", self.name)));
        if self.rods.len() < 2 {
            return bad(format!("need at least 2 rods, got {}", self.rods.len()));
        }
        let p = self.period_fraction;
        if !p.is_positive() || p > Frequency::from_integer(1) {
            return bad(format!("period fraction {p} outside (0, 1]"));
        }
        for (i, rod) in self.rods.iter().enumerate() {
            if !rod.center.iter().all(|c| c.is_finite()) {
                return bad(format!("rod {i} has a non-finite center"));
            }
            for arm in &rod.arms {
                if !(arm.radius >= 0.0 && arm.radius.is_finite() && arm.phase.is_finite()) {
                    return bad(format!("rod {i} has an invalid arm {arm:?}"));
                }
                if !arm.frequency.is_integer() {
                    return bad(format!(
                        "rod {i} frequency {} does not close after one period",
                        arm.frequency
                    ));
                }
            }
        }
        let start = self.positions(0.0);
        if let Some((i, j)) = closest_pair(&start).filter(|&(i, j)| dist(start[i], start[j]) < POSITION_EPS) {
            return Err(TaffyError::CoincidentRods(i, j, 0.0));
        }
        let end = self.positions(p.to_f64().unwrap_or(f64::NAN));
        let scale = 1.0 + start.iter().map(|q| q[0].abs().max(q[1].abs())).fold(0.0, f64::max);
        for q in &end {
            if !start.iter().any(|s| dist(*s, *q) < 1e-9 * scale) {
                return bad(format!("rod set does not return to itself at t = {p}"));
            }
        }
        Ok(())
    }

    /// The same motion seen from a frame turning `turns` times per period.
    ///
    /// Every arm frequency shifts by `turns`; each nonzero center becomes
    /// an arm of that frequency, and arms left with frequency 0 fold back
    /// into the center.
    pub fn in_rotating_frame(&self, turns: Frequency) -> Self {
        let rods = self
            .rods
            .iter()
            .map(|rod| {
                let mut center = [0.0, 0.0];
                let mut arms = Vec::new();
                let [cx, cy] = rod.center;
                let as_arm = Arm {
                    radius: cx.hypot(cy),
                    frequency: Frequency::zero(),
                    phase: cy.atan2(cx),
                };
                for arm in std::iter::once(&as_arm).chain(&rod.arms) {
                    if arm.radius == 0.0 {
                        continue;
                    }
                    let frequency = arm.frequency + turns;
                    if frequency.is_zero() {
                        let o = arm.offset(0.0);
                        center[0] += o[0];
                        center[1] += o[1];
                    } else {
                        arms.push(Arm {
                            radius: arm.radius,
                            frequency,
                            phase: arm.phase,
                        });
                    }
                }
                RodTrajectory { center, arms }
            })
            .collect();
        Self {
            name: self.name.clone(),
            rods,
            period_fraction: self.period_fraction,
            notes: self.notes.clone(),
        }
    }

    /// Smallest distance between any two rods over `samples` equally spaced
    /// times in one period.
    pub fn min_separation(&self, samples: usize) -> f64 {
        let mut best = f64::INFINITY;
        for s in 0..samples.max(1) {
            let pts = self.positions(s as f64 / samples.max(1) as f64);
            if let Some((i, j)) = closest_pair(&pts) {
                best = best.min(dist(pts[i], pts[j]));
            }
        }
        best
    }
}

pub(crate) fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

pub(crate) fn closest_pair(pts: &[[f64; 2]]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = dist(pts[i], pts[j]);
            if best.is_none_or(|b| d < b.2) {
                best = Some((i, j, d));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

mod ratio_text {
    use super::Frequency;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Frequency, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(i64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Frequency, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Frequency::from_integer(n)),
            Raw::Text(t) => super::parse_ratio(&t).map_err(de::Error::custom),
        }
    }
}

/// Parses `"n"` or `"n/d"` with `d != 0`.
pub fn parse_ratio(text: &str) -> Result<Frequency> {
    let bad = || TaffyError::Parse(format!("expected `num/den`, got `{text}`"));
    let (n, d) = match text.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Frequency::new(n, d))
}

/// Tunable planetary mixer geometry, in the frame turning with the bowl.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixographParams {
    /// Distance of each gear axle from the bowl center.
    pub gear_offset: f64,
    /// Radius of the two rods on each gear.
    pub gear_arm: f64,
    /// Gear turns per period.
    pub gear_turns: i64,
    /// Radius of the circle carrying the three lid rods.
    pub lid_radius: f64,
    /// Lid-rod turns per period.
    pub lid_turns: i64,
    pub lid_phase: f64,
}

impl Default for MixographParams {
    fn default() -> Self {
        Self {
            gear_offset: 0.7,
            gear_arm: 0.5,
            gear_turns: -3,
            lid_radius: 1.0,
            lid_turns: -4,
            lid_phase: PI / 6.0,
        }
    }
}

/// Seven-rod planetary mixer: two gears with two rods each and three rods
/// on a circle.
pub fn mixograph(params: MixographParams) -> RodMotionSpec {
    let MixographParams {
        gear_offset: g,
        gear_arm: a,
        gear_turns: w,
        lid_radius: c,
        lid_turns: v,
        lid_phase: psi,
    } = params;
    let mut rods = vec![
        RodTrajectory::orbiting(g, 0.0, vec![Arm::new(a, w, 0.0)]),
        RodTrajectory::orbiting(g, 0.0, vec![Arm::new(a, w, PI)]),
        RodTrajectory::orbiting(-g, 0.0, vec![Arm::new(a, w, FRAC_PI_2)]),
        RodTrajectory::orbiting(-g, 0.0, vec![Arm::new(a, w, 3.0 * FRAC_PI_2)]),
    ];
    for k in 0..3 {
        rods.push(RodTrajectory::orbiting(
            0.0,
            0.0,
            vec![Arm::new(c, v, psi + TAU * k as f64 / 3.0)],
        ));
    }
    // Gears repeat every half turn, the lid every third of a turn.
    let returns = (2 * w).gcd(&(3 * v)).max(1);
    RodMotionSpec {
        name: "mixograph".into(),
        rods,
        period_fraction: Frequency::new(1, returns),
        notes: String::new(),
    }
}

const BUNDLED: [&str; 6] = [
    include_str!("../devices/firchau.json"),
    include_str!("../devices/standard-3-rod.json"),
    include_str!("../devices/nitz.json"),
    include_str!("../devices/standard-4-rod.json"),
    include_str!("../devices/six-rod.json"),
    include_str!("../devices/mixograph.json"),
];

/// The bundled device specs.
pub fn catalog() -> Vec<RodMotionSpec> {
    BUNDLED
        .iter()
        .map(|text| RodMotionSpec::from_json(text).expect("bundled spec is valid"))
        .collect()
}

pub fn catalog_spec(name: &str) -> Result<RodMotionSpec> {
    catalog()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| TaffyError::UnknownDevice(name.to_string()))
}
