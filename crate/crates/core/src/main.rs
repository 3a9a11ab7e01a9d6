use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use taffy::braid::BraidWord;
use taffy::burau::burau_minus_one;
use taffy::compile::compile_braid;
use taffy::error::Result;
use taffy::loops::{entropy, DEFAULT_MAX_ITER};
use taffy::motion::{catalog_spec, parse_ratio, RodMotionSpec};
use taffy::report::{
    analyze_device, find_device, load_extra_braids, registry, table, to_csv, to_json,
    AnalysisOptions, Device, DeviceKind, Source, DEFAULT_TOL,
};

#[derive(Parser)]
#[command(name = "taffy", version, about = "Braids, loop growth and torus maps for rod-stirring devices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Accuracy {
    /// Convergence tolerance for entropy estimates.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Maximum braid applications per entropy estimate.
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
}

impl Accuracy {
    fn options(self) -> AnalysisOptions {
        AnalysisOptions {
            tol: self.tol,
            max_iter: self.max_iter,
            ..AnalysisOptions::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List known devices with rod counts.
    List,
    /// Analyze a named device or a device spec file.
    Analyze {
        name: String,
        #[command(flatten)]
        accuracy: Accuracy,
        #[arg(long)]
        json: bool,
    },
    /// Inspect a braid word given as signed generator indices.
    Braid {
        letters: String,
        #[arg(long)]
        strands: usize,
        /// Loop-growth entropy per application.
        #[arg(long)]
        entropy: bool,
        /// Burau matrix at t = -1.
        #[arg(long)]
        burau: bool,
        /// Characteristic polynomial of the Burau matrix.
        #[arg(long)]
        charpoly: bool,
        #[command(flatten)]
        accuracy: Accuracy,
    },
    /// Compile a device spec file into a braid word.
    Compile {
        spec: PathBuf,
        /// Length of motion to compile, in periods (default: the spec's period fraction).
        #[arg(long)]
        duration: Option<String>,
        /// Initial sample count; doubled until the braid stabilizes.
        #[arg(long, default_value_t = taffy::compile::DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Efficiency table for every device with a braid.
    Table {
        /// Write CSV to PATH (`-` for stdout).
        #[arg(long, conflicts_with = "json")]
        csv: Option<String>,
        /// Write JSON to PATH (`-` for stdout).
        #[arg(long)]
        json: Option<String>,
        #[command(flatten)]
        accuracy: Accuracy,
        /// JSON list of {name, strands, braid, period_fraction?, fixed?, torus_cover?}.
        #[arg(long)]
        extra_braids: Option<PathBuf>,
        /// Exit nonzero if any row fails.
        #[arg(long)]
        strict: bool,
    },
    /// Print the JSON spec of a catalog device.
    Spec { name: String },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn write_output(target: &str, text: &str) -> Result<()> {
    if target == "-" {
        // A closed pipe (e.g. `| head`) is not an error worth reporting.
        match std::io::stdout().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
            _ => {}
        }
    } else {
        std::fs::write(target, text)?;
    }
    Ok(())
}

fn device_for(name: &str) -> Result<Device> {
    match find_device(name) {
        Ok(d) => Ok(d),
        Err(_) if Path::new(name).is_file() => {
            let spec = RodMotionSpec::load(name)?;
            Ok(Device {
                name: spec.name.clone(),
                kind: DeviceKind::Numeric,
                rods_total: spec.n_rods(),
                rods_fixed: spec.n_fixed(),
                period_fraction: spec.period_fraction,
                source: Source::Motion(spec),
                reference: None,
            })
        }
        Err(e) => Err(e),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::List => {
            for d in registry() {
                let source = match d.source {
                    Source::Motion(_) => "motion",
                    Source::Word(_) => "braid",
                    Source::Missing => "reference only",
                };
                println!(
                    "{:<16} rods {} ({} fixed)  p = {:<4} {}",
                    d.name, d.rods_total, d.rods_fixed, d.period_fraction.to_string(), source
                );
            }
        }
        Command::Analyze {
            name,
            accuracy,
            json,
        } => {
            let a = analyze_device(&device_for(&name)?, accuracy.options())?;
            if json {
                println!("{}", serde_json::to_string_pretty(&a)?);
            } else {
                println!("name          {}", a.name);
                println!("rods          {} ({} fixed)", a.rods_total, a.rods_fixed);
                println!("braid         {}", a.braid);
                if let Some(p) = &a.char_poly {
                    println!("polynomial    {p}");
                }
                println!("dilatation    {:.6}", a.dilatation);
                println!("p             {}", a.period_fraction);
                println!("entropy/p     {:.6}", a.efficiency);
                if !a.pseudo_anosov {
                    println!("note          not pseudo-Anosov");
                } else if !a.converged {
                    println!("note          entropy estimate did not converge");
                }
            }
        }
        Command::Braid {
            letters,
            strands,
            entropy: want_entropy,
            burau,
            charpoly,
            accuracy,
        } => {
            let b = BraidWord::parse(&letters, strands)?;
            let show_all = !(want_entropy || burau || charpoly);
            println!("braid         {b}");
            println!("permutation   {:?}", b.permutation());
            if burau || charpoly || show_all {
                let m = burau_minus_one(&b)?;
                if burau || show_all {
                    println!("burau(-1)     {m}");
                }
                if charpoly || show_all {
                    let p = m.char_poly();
                    println!("charpoly      {p}");
                    println!("radius bound  {:.10}", p.real_spectral_radius(1e-13));
                }
            }
            if want_entropy || show_all {
                let e = entropy(&b, accuracy.tol, accuracy.max_iter)?;
                println!(
                    "entropy       {:.8} ({} iterations, {})",
                    e.value,
                    e.iterations,
                    if e.converged { "converged" } else { "not converged" }
                );
                println!("dilatation    {:.8}", e.value.exp());
            }
        }
        Command::Compile {
            spec,
            duration,
            samples,
        } => {
            let spec = RodMotionSpec::load(&spec)?;
            let duration = match duration {
                Some(text) => parse_ratio(&text)?,
                None => spec.period_fraction,
            };
            let b = compile_braid(&spec, duration, samples)?;
            println!("{b}");
        }
        Command::Table {
            csv,
            json,
            accuracy,
            extra_braids,
            strict,
        } => {
            let extra = match extra_braids {
                Some(path) => load_extra_braids(&std::fs::read_to_string(path)?)?,
                None => Vec::new(),
            };
            let rows = table(accuracy.options(), &extra);
            for row in &rows {
                if let Err(e) = &row.result {
                    eprintln!("{}: {e}", row.name);
                }
            }
            match (csv, json) {
                (_, Some(path)) => write_output(&path, &(to_json(&rows) + "\n"))?,
                (Some(path), None) => write_output(&path, &to_csv(&rows))?,
                (None, None) => write_output("-", &to_csv(&rows))?,
            }
            if strict && rows.iter().any(|r| r.result.is_err()) {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Spec { name } => {
            let spec = catalog_spec(&name)?;
            println!("{}", spec.to_json());
        }
    }
    Ok(ExitCode::SUCCESS)
}
