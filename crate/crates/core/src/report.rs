//! Per-device analysis and the efficiency table.

use std::fmt::Write as _;

use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::burau::burau_minus_one;
use crate::compile::{compile_braid, DEFAULT_SAMPLES};
use crate::error::{Result, TaffyError};
use crate::loops::{entropy, DEFAULT_MAX_ITER};
use crate::motion::{catalog, parse_ratio, Frequency, RodMotionSpec};

pub const DEFAULT_TOL: f64 = 1e-4;
/// Entropy below this is reported as no exponential stretching.
pub const PSEUDO_ANOSOV_THRESHOLD: f64 = 0.01;

pub const CSV_HEADER: &str = "name,rods,fixed,polynomial,dilatation,p,entropy_per_period";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeviceKind {
    /// Lifts to a linear torus map; the Burau polynomial certifies the
    /// dilatation exactly.
    TorusCover,
    /// Dilatation from loop-coordinate growth only.
    Numeric,
}

/// Published figures a device should reproduce.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub polynomial: String,
    pub dilatation: f64,
    pub entropy_per_period: f64,
}

#[derive(Clone, Debug)]
pub enum Source {
    Motion(RodMotionSpec),
    Word(BraidWord),
    /// Known only by its expected values.
    Missing,
}

#[derive(Clone, Debug)]
pub struct Device {
    pub name: String,
    pub kind: DeviceKind,
    pub rods_total: usize,
    pub rods_fixed: usize,
    pub period_fraction: Frequency,
    pub source: Source,
    pub reference: Option<Reference>,
}

fn reference(poly: &str, dilatation: f64, per_period: f64) -> Option<Reference> {
    Some(Reference {
        polynomial: poly.to_string(),
        dilatation,
        entropy_per_period: per_period,
    })
}

/// Catalog devices followed by reference-only fixtures.
pub fn registry() -> Vec<Device> {
    let mut out = Vec::new();
    for spec in catalog() {
        let (kind, reference) = match spec.name.as_str() {
            "standard-3-rod" | "standard-4-rod" => (
                DeviceKind::TorusCover,
                reference("x^2-6x+1", 3.0 + 8f64.sqrt(), 1.7627),
            ),
            "nitz" => (
                DeviceKind::TorusCover,
                reference("x^2-3x+1", (3.0 + 5f64.sqrt()) / 2.0, 2.8873),
            ),
            "six-rod" => (
                DeviceKind::TorusCover,
                reference("x^2-4x+1", 2.0 + 3f64.sqrt(), 2.6339),
            ),
            "mixograph" => (
                DeviceKind::Numeric,
                reference("x^8-4x^7-x^6+4x^4-x^2-4x+1", 4.1858, 8.5902),
            ),
            _ => (DeviceKind::Numeric, None),
        };
        out.push(Device {
            name: spec.name.clone(),
            kind,
            rods_total: spec.n_rods(),
            rods_fixed: spec.n_fixed(),
            period_fraction: spec.period_fraction,
            source: Source::Motion(spec),
            reference,
        });
    }
    let phi: f64 = (1.0 + 5f64.sqrt()) / 2.0;
    let fixtures = [
        ("Thibodeau-1904", DeviceKind::TorusCover, 4, 0, (1, 3), reference("x^2-3x+1", phi * phi, 2.8873)),
        ("McCarthy-1916a", DeviceKind::TorusCover, 4, 3, (1, 1), reference("x^2-18x+1", phi.powi(6), 2.8873)),
        ("McCarthy-1916b", DeviceKind::Numeric, 4, 3, (1, 1), reference("x^4-36x^3+54x^2-36x+1", 34.4634, 3.5399)),
        ("Jenner-1905", DeviceKind::Numeric, 5, 3, (1, 1), reference("x^4-8x^3-2x^2-8x+1", (phi + phi.sqrt()).powi(2), 2.1226)),
        ("Shean-1914", DeviceKind::TorusCover, 6, 0, (1, 2), reference("x^2-4x+1", 2.0 + 3f64.sqrt(), 2.6339)),
        ("McCarthy-1915", DeviceKind::Numeric, 5, 2, (1, 1), reference("x^4-20x^3-26x^2-20x+1", 21.2667, 3.0571)),
    ];
    for (name, kind, rods, fixed, (n, d), reference) in fixtures {
        out.push(Device {
            name: name.to_string(),
            kind,
            rods_total: rods,
            rods_fixed: fixed,
            period_fraction: Frequency::new(n, d),
            source: Source::Missing,
            reference,
        });
    }
    out
}

pub fn find_device(name: &str) -> Result<Device> {
    registry()
        .into_iter()
        .find(|d| d.name == name)
        .ok_or_else(|| TaffyError::UnknownDevice(name.to_string()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PullerAnalysis {
    pub name: String,
    pub kind: DeviceKind,
    pub rods_total: usize,
    pub rods_fixed: usize,
    pub braid: BraidWord,
    /// Present only when certified from the Burau image.
    pub char_poly: Option<String>,
    pub dilatation: f64,
    #[serde(with = "ratio_string")]
    pub period_fraction: Frequency,
    /// `ln(dilatation) / period_fraction`.
    pub efficiency: f64,
    /// Loop-growth entropy per braid application.
    pub entropy_estimate: f64,
    pub converged: bool,
    pub pseudo_anosov: bool,
    pub reference: Option<Reference>,
}

mod ratio_string {
    use super::Frequency;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Frequency, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Frequency, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_ratio(&text).map_err(de::Error::custom)
    }
}

/// Entropy and dilatation settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalysisOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub samples: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            samples: DEFAULT_SAMPLES,
        }
    }
}

pub fn analyze(name: &str, opts: AnalysisOptions) -> Result<PullerAnalysis> {
    analyze_device(&find_device(name)?, opts)
}

pub fn analyze_device(device: &Device, opts: AnalysisOptions) -> Result<PullerAnalysis> {
    let braid = match &device.source {
        Source::Motion(spec) => compile_braid(spec, spec.period_fraction, opts.samples)?,
        Source::Word(b) => b.clone(),
        Source::Missing => {
            return Err(TaffyError::InvalidSpec(format!(
                "{} has no braid word; supply one with --extra-braids",
                device.name
            )))
        }
    };
    analyze_braid(device, braid, opts)
}

/// Analyzes `braid` as one period-fraction of `device`.
pub fn analyze_braid(device: &Device, braid: BraidWord, opts: AnalysisOptions) -> Result<PullerAnalysis> {
    let p = device
        .period_fraction
        .to_f64()
        .filter(|p| *p > 0.0)
        .ok_or_else(|| TaffyError::InvalidSpec(format!("period fraction {}", device.period_fraction)))?;
    let (estimate, converged) = if braid.n_strands() < 3 {
        // Two-strand braids are powers of a single twist.
        (0.0, true)
    } else {
        let e = entropy(&braid, opts.tol, opts.max_iter)?;
        (e.value, e.converged)
    };
    let certified = match device.kind {
        DeviceKind::TorusCover if braid.n_strands() >= 3 => {
            burau_minus_one(&braid)?.char_poly().dominant_quadratic_factor()
        }
        _ => None,
    };
    // Reducible words grow polynomially and never converge; an unconverged
    // estimate is not evidence of stretching.
    let pseudo_anosov = certified.is_some() || (converged && estimate >= PSEUDO_ANOSOV_THRESHOLD);
    let dilatation = match &certified {
        Some(q) => q.largest_root(1e-15)?,
        None if pseudo_anosov => estimate.exp(),
        None => 1.0,
    };
    Ok(PullerAnalysis {
        name: device.name.clone(),
        kind: device.kind,
        rods_total: device.rods_total,
        rods_fixed: device.rods_fixed,
        braid,
        char_poly: certified.map(|q| q.to_string()),
        dilatation,
        period_fraction: device.period_fraction,
        efficiency: dilatation.ln() / p,
        entropy_estimate: estimate,
        converged,
        pseudo_anosov,
        reference: device.reference.clone(),
    })
}

/// Braid words for devices known only by reference values, or new ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtraBraid {
    pub name: String,
    pub strands: usize,
    pub braid: String,
    #[serde(default)]
    pub period_fraction: Option<String>,
    #[serde(default)]
    pub fixed: Option<usize>,
    #[serde(default)]
    pub torus_cover: Option<bool>,
}

impl ExtraBraid {
    /// Merges with a registry entry of the same name, if any.
    pub fn to_device(&self) -> Result<Device> {
        let word = BraidWord::parse(&self.braid, self.strands)?;
        let base = find_device(&self.name).ok();
        let period_fraction = match &self.period_fraction {
            Some(text) => parse_ratio(text)?,
            None => base.as_ref().map_or_else(Frequency::one, |d| d.period_fraction),
        };
        let kind = match self.torus_cover {
            Some(true) => DeviceKind::TorusCover,
            Some(false) => DeviceKind::Numeric,
            None => base.as_ref().map_or(DeviceKind::Numeric, |d| d.kind),
        };
        Ok(Device {
            name: self.name.clone(),
            kind,
            rods_total: self.strands,
            rods_fixed: self
                .fixed
                .or(base.as_ref().map(|d| d.rods_fixed))
                .unwrap_or(0),
            period_fraction,
            source: Source::Word(word),
            reference: base.and_then(|d| d.reference),
        })
    }
}

pub fn load_extra_braids(text: &str) -> Result<Vec<ExtraBraid>> {
    Ok(serde_json::from_str(text)?)
}

/// One table row: the analysis, or why it failed.
#[derive(Debug)]
pub struct TableRow {
    pub name: String,
    pub result: Result<PullerAnalysis>,
}

/// Every device with a braid source, in registry order; extra braids
/// replace registry entries of the same name and are otherwise appended.
pub fn table(opts: AnalysisOptions, extra: &[ExtraBraid]) -> Vec<TableRow> {
    let mut devices: Vec<std::result::Result<Device, (String, TaffyError)>> = registry()
        .into_iter()
        .filter(|d| !matches!(d.source, Source::Missing))
        .map(Ok)
        .collect();
    for e in extra {
        let entry = e.to_device().map_err(|err| (e.name.clone(), err));
        let existing = devices
            .iter()
            .position(|d| matches!(d, Ok(d) if d.name == e.name));
        match existing {
            Some(i) => devices[i] = entry,
            None => devices.push(entry),
        }
    }
    devices
        .into_iter()
        .map(|d| match d {
            Ok(d) => TableRow {
                name: d.name.clone(),
                result: analyze_device(&d, opts),
            },
            Err((name, err)) => TableRow {
                name,
                result: Err(err),
            },
        })
        .collect()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_row(a: &PullerAnalysis) -> String {
    format!(
        "{},{},{},{},{:.4},{},{:.4}",
        csv_field(&a.name),
        a.rods_total,
        a.rods_fixed,
        a.char_poly.as_deref().unwrap_or(""),
        a.dilatation,
        a.period_fraction,
        a.efficiency
    )
}

/// CSV with a header line. Failed rows keep their name and leave the
/// numeric columns empty.
pub fn to_csv(rows: &[TableRow]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        match &row.result {
            Ok(a) => out.push_str(&csv_row(a)),
            Err(_) => {
                let _ = write!(out, "{},,,,,,", csv_field(&row.name));
            }
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct JsonRow<'a> {
    name: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    analysis: Option<&'a PullerAnalysis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

pub fn to_json(rows: &[TableRow]) -> String {
    let json: Vec<JsonRow> = rows
        .iter()
        .map(|r| JsonRow {
            name: &r.name,
            analysis: r.result.as_ref().ok(),
            error: r.result.as_ref().err().map(|e| e.to_string()),
        })
        .collect();
    serde_json::to_string_pretty(&json).expect("rows serialize")
}
