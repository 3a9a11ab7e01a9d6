//! Turning sampled rod motion into a braid word.
//!
//! Rods are projected onto an axis; whenever the rods in order positions
//! `k` and `k+1` swap, the letter `±k` is emitted. The sign is `+` when the
//! rod moving rightward has the larger perpendicular coordinate at the
//! crossing time.

use num_traits::ToPrimitive;

use crate::braid::BraidWord;
use crate::error::{Result, TaffyError};
use crate::motion::{dist, Frequency, RodMotionSpec, POSITION_EPS};

/// Generic axis angle used by default (radians).
pub const DEFAULT_AXIS: f64 = 0.1234;
pub const DEFAULT_SAMPLES: usize = 1024;
/// Auto-refinement stops doubling past this many samples.
pub const MAX_SAMPLES: usize = 1 << 21;
/// Smallest time step bisection will reach.
pub const TIME_FLOOR: f64 = 1.0 / (1u64 << 20) as f64;

const AXIS_RETRIES: usize = 3;
/// Irrational nudge applied to the axis on each retry.
const AXIS_NUDGE: f64 = 0.0414213562373095 * std::f64::consts::PI;

/// Compiles the motion over `[0, duration]` (in periods), doubling the
/// sample count from `samples` until two successive braids agree up to
/// commuting letters.
pub fn compile_braid(spec: &RodMotionSpec, duration: Frequency, samples: usize) -> Result<BraidWord> {
    compile_braid_with_axis(spec, duration, samples, DEFAULT_AXIS)
}

pub fn compile_braid_with_axis(
    spec: &RodMotionSpec,
    duration: Frequency,
    samples: usize,
    axis: f64,
) -> Result<BraidWord> {
    let mut k = samples.max(8);
    let mut prev = compile_fixed(spec, duration, k, axis)?;
    while k < MAX_SAMPLES {
        k *= 2;
        let next = compile_fixed(spec, duration, k, axis)?;
        if next.commutation_normal_form() == prev.commutation_normal_form() {
            return Ok(next);
        }
        prev = next;
    }
    Err(TaffyError::SamplingDidNotConverge(k))
}

/// Single pass at exactly `samples` steps, retrying with perturbed axes
/// when crossings cannot be separated.
pub fn compile_fixed(
    spec: &RodMotionSpec,
    duration: Frequency,
    samples: usize,
    axis: f64,
) -> Result<BraidWord> {
    let t_end = duration
        .to_f64()
        .filter(|d| *d > 0.0 && d.is_finite())
        .ok_or_else(|| TaffyError::InvalidSpec(format!("duration {duration} must be positive")))?;
    for attempt in 0..=AXIS_RETRIES {
        let angle = axis + attempt as f64 * AXIS_NUDGE;
        match Tracker::new(spec, angle).run(t_end, samples.max(1)) {
            Err(Degenerate::Projection) => continue,
            Err(Degenerate::Coincident(i, j, t)) => return Err(TaffyError::CoincidentRods(i, j, t)),
            Ok(letters) => return BraidWord::new(spec.n_rods(), letters),
        }
    }
    Err(TaffyError::ProjectionDegenerate(AXIS_RETRIES))
}

enum Degenerate {
    Projection,
    Coincident(usize, usize, f64),
}

struct Tracker<'a> {
    spec: &'a RodMotionSpec,
    cos: f64,
    sin: f64,
    /// order[p] = rod at order position p.
    order: Vec<usize>,
    letters: Vec<i32>,
}

impl<'a> Tracker<'a> {
    fn new(spec: &'a RodMotionSpec, angle: f64) -> Self {
        Self {
            spec,
            cos: angle.cos(),
            sin: angle.sin(),
            order: Vec::new(),
            letters: Vec::new(),
        }
    }

    /// Along-axis and perpendicular coordinates of every rod.
    fn project(&self, t: f64) -> Vec<(f64, f64)> {
        self.spec
            .positions(t)
            .into_iter()
            .map(|[x, y]| (x * self.cos + y * self.sin, -x * self.sin + y * self.cos))
            .collect()
    }

    fn check_apart(&self, t: f64) -> std::result::Result<(), Degenerate> {
        let pts = self.spec.positions(t);
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if dist(pts[i], pts[j]) < POSITION_EPS {
                    return Err(Degenerate::Coincident(i, j, t));
                }
            }
        }
        Ok(())
    }

    fn run(mut self, t_end: f64, samples: usize) -> std::result::Result<Vec<i32>, Degenerate> {
        self.check_apart(0.0)?;
        let start = self.project(0.0);
        let mut order: Vec<usize> = (0..start.len()).collect();
        order.sort_by(|&i, &j| start[i].0.total_cmp(&start[j].0));
        if order.windows(2).any(|w| start[w[0]].0 == start[w[1]].0) {
            return Err(Degenerate::Projection);
        }
        self.order = order;
        let mut t0 = 0.0;
        for s in 1..=samples {
            let t1 = t_end * s as f64 / samples as f64;
            self.check_apart(t1)?;
            self.advance(t0, t1)?;
            t0 = t1;
        }
        Ok(self.letters)
    }

    /// Order positions whose rods are out of order at `t`.
    fn inversions(&self, proj: &[(f64, f64)]) -> usize {
        let keys: Vec<f64> = self.order.iter().map(|&r| proj[r].0).collect();
        let mut count = 0;
        for i in 0..keys.len() {
            for j in i + 1..keys.len() {
                if keys[i] > keys[j] {
                    count += 1;
                }
            }
        }
        count
    }

    fn advance(&mut self, t0: f64, t1: f64) -> std::result::Result<(), Degenerate> {
        let proj = self.project(t1);
        match self.inversions(&proj) {
            0 => Ok(()),
            1 => {
                let k = (0..self.order.len() - 1)
                    .find(|&k| proj[self.order[k]].0 > proj[self.order[k + 1]].0)
                    .expect("a single inversion is adjacent");
                self.emit(k, t0, t1)
            }
            _ if t1 - t0 > TIME_FLOOR => {
                let tm = 0.5 * (t0 + t1);
                self.advance(t0, tm)?;
                self.advance(tm, t1)
            }
            _ => self.emit_layered(&proj, t0, t1),
        }
    }

    /// Several swaps inside one floor-sized step. The rods involved are
    /// treated as stacked by perpendicular coordinate, which fixes the braid
    /// uniquely; equal heights are a genuine projection degeneracy.
    fn emit_layered(&mut self, proj: &[(f64, f64)], t0: f64, t1: f64) -> std::result::Result<(), Degenerate> {
        let mid = self.project(0.5 * (t0 + t1));
        let n = self.order.len();
        let mut changed = true;
        while changed {
            changed = false;
            for k in 0..n - 1 {
                let (left, right) = (self.order[k], self.order[k + 1]);
                if proj[left].0 > proj[right].0 {
                    let gap = mid[left].1 - mid[right].1;
                    if gap.abs() < POSITION_EPS {
                        return Err(Degenerate::Projection);
                    }
                    let letter = (k + 1) as i32;
                    self.letters.push(if gap > 0.0 { letter } else { -letter });
                    self.order.swap(k, k + 1);
                    changed = true;
                }
            }
        }
        Ok(())
    }

    /// Records the exchange of order positions `k` and `k+1`.
    fn emit(&mut self, k: usize, mut lo: f64, mut hi: f64) -> std::result::Result<(), Degenerate> {
        let (left, right) = (self.order[k], self.order[k + 1]);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            let p = self.project(mid);
            if p[left].0 > p[right].0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let t = 0.5 * (lo + hi);
        let p = self.project(t);
        let gap = p[left].1 - p[right].1;
        if gap.abs() < POSITION_EPS {
            return Err(Degenerate::Coincident(left.min(right), left.max(right), t));
        }
        let letter = (k + 1) as i32;
        self.letters.push(if gap > 0.0 { letter } else { -letter });
        self.order.swap(k, k + 1);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motion::{Arm, RodTrajectory};

    fn spec(rods: Vec<RodTrajectory>) -> RodMotionSpec {
        RodMotionSpec {
            name: "test".into(),
            rods,
            period_fraction: Frequency::from_integer(1),
            notes: String::new(),
        }
    }

    #[test]
    fn half_turn_of_two_rods_is_one_letter() {
        // Two rods opposite on a circle, half a counterclockwise turn.
        let s = spec(vec![
            RodTrajectory::orbiting(0.0, 0.0, vec![Arm::new(1.0, 1, std::f64::consts::PI)]),
            RodTrajectory::orbiting(0.0, 0.0, vec![Arm::new(1.0, 1, 0.0)]),
        ]);
        let b = compile_braid(&s, Frequency::new(1, 2), 64).unwrap();
        assert_eq!(b.letters(), &[-1]);
        let b = compile_braid(&s, Frequency::from_integer(1), 64).unwrap();
        assert_eq!(b.letters(), &[-1, -1]);
    }

    #[test]
    fn clockwise_exchange_is_positive() {
        let s = spec(vec![
            RodTrajectory::orbiting(0.0, 0.0, vec![Arm::new(1.0, -1, std::f64::consts::PI)]),
            RodTrajectory::orbiting(0.0, 0.0, vec![Arm::new(1.0, -1, 0.0)]),
        ]);
        let b = compile_braid(&s, Frequency::new(1, 2), 64).unwrap();
        assert_eq!(b.letters(), &[1]);
    }

    #[test]
    fn fixed_rods_give_empty_braid() {
        let s = spec(vec![RodTrajectory::fixed(0.0, 0.0), RodTrajectory::fixed(1.0, 0.0)]);
        assert!(compile_braid(&s, Frequency::from_integer(1), 16).unwrap().is_empty());
    }

    #[test]
    fn collision_is_reported() {
        // Same circle, same phase offset zero: rods collide at t = 1/4.
        let s = spec(vec![
            RodTrajectory::orbiting(0.0, 0.0, vec![Arm::new(1.0, 1, 0.0)]),
            RodTrajectory::orbiting(0.0, 0.0, vec![Arm::new(1.0, -1, std::f64::consts::PI)]),
        ]);
        assert!(matches!(
            compile_braid(&s, Frequency::from_integer(1), 64),
            Err(TaffyError::CoincidentRods(..))
        ));
    }
}
