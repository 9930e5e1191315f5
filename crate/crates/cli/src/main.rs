use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use cvgeom::classv::Scenario;
use cvgeom::fieldexpr::Point;
use cvgeom::tolerance::TolClass;
use cvgeom::verify::{self, OutputFormat, RunConfig, Suite};

/// Verification engine for circulant-metric 3-manifolds.
#[derive(Parser, Debug)]
#[command(name = "cvgeom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a scenario and check the class-V gate and positivity on sampled points.
    Validate {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print metrics, connections and curvature at one point.
    Report {
        file: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Point,
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<f64>,
    },
    /// Run identity suites over seeded sample points.
    Verify {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Tolerance override `class=value`, e.g. `identity=1e-12`.
        #[arg(long = "tol", value_parser = parse_tol)]
        tol: Vec<(TolClass, f64)>,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
        /// Evaluate at this point only.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Option<Point>,
        /// Curvature scalar for the synthetic and corollary checks.
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<f64>,
    },
    /// Write a built-in family scenario as JSON.
    Scenario {
        #[arg(long)]
        family: String,
        /// `key=value,...`
        #[arg(long, default_value = "")]
        params: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn parse_point(text: &str) -> Result<Point, String> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|c| c.trim().parse::<f64>().map_err(|e| format!("`{c}`: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [x, y, z] if parts.iter().all(|c| c.is_finite()) => Ok(Point::new(x, y, z)),
        _ => Err(format!("expected three finite numbers `a,b,c`, got `{text}`")),
    }
}

fn parse_tol(text: &str) -> Result<(TolClass, f64), String> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| format!("expected `name=value`, got `{text}`"))?;
    let class: TolClass = name.trim().parse()?;
    let value: f64 = value.trim().parse().map_err(|e| format!("`{value}`: {e}"))?;
    if !(value.is_finite() && value > 0.0) {
        return Err(format!("tolerance must be positive and finite, got {value}"));
    }
    Ok((class, value))
}

fn load(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Scenario::from_json(&text).with_context(|| format!("loading {}", path.display()))
}

/// Exit code on success paths: 0 pass, 1 verification failure.
fn execute(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Validate { file, samples, seed } => {
            let s = load(&file)?;
            let v = verify::validate(&s, samples, seed)?;
            println!("scenario {}: {} points", s.name, v.points);
            println!("  min eigenvalue of g   {:.6e}", v.min_eigenvalue);
            println!("  grad A - S grad B     {:.3e} (tol {:.0e})", v.class_v_defect, v.tolerance);
            if let Some(d) = v.theorem1_defect {
                println!("  grad alpha - S grad beta {d:.3e}");
            }
            println!("{}", if v.pass() { "PASS" } else { "FAIL" });
            Ok(if v.pass() { 0 } else { 1 })
        }
        Command::Report { file, point, tau } => {
            let s = load(&file)?;
            print!("{}", verify::report(&s, &point, tau)?);
            Ok(0)
        }
        Command::Verify {
            file,
            suite,
            samples,
            seed,
            tol,
            format,
            point,
            tau,
        } => {
            let s = load(&file)?;
            if samples == 0 {
                bail!("--samples must be at least 1");
            }
            let mut config = RunConfig::new(s, suite);
            config.samples = samples;
            config.seed = seed;
            config.tol_overrides = tol.into_iter().collect::<BTreeMap<_, _>>();
            config.point = point;
            config.tau0 = tau;
            let result = verify::run(&config)?;
            match format {
                OutputFormat::Text => print!("{}", verify::to_text(&result)),
                OutputFormat::Json => println!("{}", verify::to_json(&result)),
            }
            Ok(if result.pass { 0 } else { 1 })
        }
        Command::Scenario { family, params, out } => {
            let params = verify::parse_params(&params)?;
            let json = verify::scenario_generate(&family, &params)?;
            match out {
                Some(path) => {
                    std::fs::write(&path, json + "\n").with_context(|| format!("writing {}", path.display()))?
                }
                None => println!("{json}"),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
