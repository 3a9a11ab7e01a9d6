//! Building a device spec in code, checking it, and analyzing it.

use std::f64::consts::PI;

use taffy::error::Result;
use taffy::motion::{Arm, Frequency, RodMotionSpec, RodTrajectory};
use taffy::report::{analyze_device, AnalysisOptions, Device, DeviceKind, Source};

fn main() -> Result<()> {
    // Two rods on one arm turning once around a fixed central rod.
    let spec = RodMotionSpec {
        name: "two-on-one-arm".into(),
        rods: vec![
            RodTrajectory::fixed(0.0, 0.0),
            RodTrajectory::orbiting(0.0, 0.0, vec![Arm::new(1.0, -1, 0.0)]),
            RodTrajectory::orbiting(0.0, 0.0, vec![Arm::new(1.0, -1, PI)]),
        ],
        period_fraction: Frequency::from_integer(1),
        notes: String::new(),
    };
    spec.validate()?;
    println!("{} rods, {} fixed, {} bytes of JSON", spec.n_rods(), spec.n_fixed(), spec.to_json().len());
    let device = Device {
        name: spec.name.clone(),
        kind: DeviceKind::Numeric,
        rods_total: spec.n_rods(),
        rods_fixed: spec.n_fixed(),
        period_fraction: spec.period_fraction,
        source: Source::Motion(spec),
        reference: None,
    };
    let a = analyze_device(&device, AnalysisOptions::default())?;
    println!("braid {} stretches: {}", a.braid, a.pseudo_anosov);
    println!("entropy estimate {:.6} (converged: {})", a.entropy_estimate, a.converged);
    Ok(())
}
