//! `amoeba`: tropicalizations, adelic amoebas and halfspace tests from the
//! command line. Results are JSON on stdout (or `--output`); `plot` writes
//! SVG.
//!
//! Exit codes: 0 on success, 2 on invalid input, 3 when an internal
//! invariant fails.

mod input;
mod plot;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use amoeba_core::archimedean::{SampleOptions, DEFAULT_TOL, DEFAULT_TRIALS};
use amoeba_core::classify::{self, ScanOptions};
use amoeba_core::scalars::{self, Place, Scalar};
use amoeba_core::tropical;
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use input::InputFile;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "amoeba", version, about = "Tropical and adelic amoebas of Laurent polynomials over Q and Q(z)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tropical hypersurface of one polynomial at a place.
    Trop(Common),
    /// Generic and special complexes of a hypersurface or system.
    Adelic(Common),
    /// Tropical prevariety of a system at a place.
    Prevariety(Common),
    /// Whether an open halfspace misses the adelic amoeba.
    CheckHalfspace(Common),
    /// Halfspace disjointness together with the structural conclusion.
    Classify(Common),
    /// Disjoint half lines versus zero in every component.
    EklCheck(Common),
    /// Per-place absolute values of a scalar and their sum.
    ProductFormula(ProductArgs),
    /// SVG of a rank-2 complex, or an archimedean scan with --place arch.
    Plot(PlotArgs),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Polynomial, optionally pulled back: `poly @ row;row;...`. Repeatable.
    #[arg(long = "f", allow_hyphen_values = true)]
    polys: Vec<String>,
    /// Ambient rank (inferred from the variables when omitted).
    #[arg(long)]
    rank: Option<usize>,
    /// Coefficient field: q or qz (detected from `z` when omitted).
    #[arg(long)]
    field: Option<String>,
    /// Place: p:<prime>, q:<poly in z>, inf, arch or generic.
    #[arg(long)]
    place: Option<String>,
    /// Halfspace `dir:<csv> bnd:<csv>;<csv>...`.
    #[arg(long)]
    halfspace: Option<String>,
    /// Image hypersurface in the quotient torus (classify).
    #[arg(long)]
    image: Option<String>,
    /// Declare that the image in the quotient torus has codimension > 1.
    #[arg(long)]
    codim_gt_one: bool,
    /// JSON file with any of: rank, field, polynomials, place, halfspace,
    /// image, codim_gt_one.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    numeric: Numeric,
    /// Write the result here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Numeric {
    /// Seed for archimedean sampling.
    #[arg(long, env = "AMOEBA_SEED", default_value_t = 0)]
    seed: u64,
    /// Relative residual tolerance for sampled witnesses.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Sampling trials per point.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
}

impl Numeric {
    fn sample(&self) -> Result<SampleOptions> {
        if self.tol.is_nan() || self.tol <= 0.0 || self.trials == 0 {
            bail!("--tol must be positive and --trials at least 1");
        }
        Ok(SampleOptions { trials: self.trials, tol: self.tol, seed: self.seed })
    }

    fn scan(&self) -> Result<ScanOptions> {
        Ok(ScanOptions { sample: self.sample()?, ..ScanOptions::default() })
    }
}

#[derive(Args, Debug)]
struct ProductArgs {
    /// A rational number or a rational function of z.
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PlotArgs {
    #[command(flatten)]
    common: Common,
    /// Half-width of the archimedean scan window.
    #[arg(long, default_value_t = 4)]
    extent: u32,
    /// Grid cells per side of the archimedean scan.
    #[arg(long, default_value_t = 40)]
    grid: u32,
}

/// Flags merged with the optional input file.
struct Job {
    polys: Vec<String>,
    rank: Option<usize>,
    field: Option<String>,
    place: Option<String>,
    halfspace: Option<String>,
    image: Option<String>,
    codim_gt_one: bool,
}

impl Job {
    fn from(c: &Common) -> Result<Self> {
        let file = match &c.input {
            Some(p) => InputFile::load(p)?,
            None => InputFile::default(),
        };
        Ok(Job {
            polys: if c.polys.is_empty() { file.polynomials } else { c.polys.clone() },
            rank: c.rank.or(file.rank),
            field: c.field.clone().or(file.field),
            place: c.place.clone().or(file.place),
            halfspace: c.halfspace.clone().or(file.halfspace),
            image: c.image.clone().or(file.image),
            codim_gt_one: c.codim_gt_one || file.codim_gt_one,
        })
    }

    fn system(&self) -> Result<tropical::ConstraintSystem> {
        input::parse_system(&self.polys, self.rank, self.field.as_deref())
    }

    fn hypersurface(&self) -> Result<amoeba_core::laurent::LaurentPoly> {
        input::parse_hypersurface(&self.polys, self.rank, self.field.as_deref())
    }

    fn place(&self) -> Result<Place> {
        input::parse_place(self.place.as_deref())
    }

    fn halfspace(&self) -> Result<classify::Halfspace> {
        match &self.halfspace {
            Some(h) => input::parse_halfspace(h),
            None => bail!("this command needs --halfspace"),
        }
    }
}

fn envelope(command: &str, body: impl Serialize) -> Result<Value> {
    let mut v = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    let body = serde_json::to_value(body)?;
    match body {
        Value::Object(map) => v.as_object_mut().expect("object").extend(map),
        other => {
            v["result"] = other;
        }
    }
    Ok(v)
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_json(output: Option<&PathBuf>, v: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    emit(output, &text)
}

fn run_common(name: &str, c: &Common, f: impl FnOnce(&Job) -> Result<Value>) -> Result<()> {
    let job = Job::from(c)?;
    let v = f(&job)?;
    emit_json(c.output.as_ref(), &envelope(name, v)?)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Trop(c) => run_common("trop", &c, |job| {
            let f = job.hypersurface()?;
            let place = job.place()?;
            let complex = tropical::trop_hypersurface(&f, &place)?;
            Ok(json!({
                "place": place,
                "polynomial": f.to_string(),
                "contains_zero": complex.contains_zero(),
                "complex": complex,
            }))
        }),
        Command::Adelic(c) => run_common("adelic", &c, |job| {
            let system = job.system()?;
            let amoeba = system.adelic_amoeba()?;
            let bad: Vec<Place> = system.bad_places().into_iter().collect();
            Ok(json!({ "field": system.field(), "bad_places": bad, "amoeba": amoeba }))
        }),
        Command::Prevariety(c) => run_common("prevariety", &c, |job| {
            let system = job.system()?;
            let place = job.place()?;
            Ok(json!({ "place": place, "complex": system.prevariety(&place)? }))
        }),
        Command::CheckHalfspace(c) => run_common("check-halfspace", &c, |job| {
            let system = job.system()?;
            let h = job.halfspace()?;
            let report = classify::adelic_disjoint(&system.adelic_amoeba()?, &h, &c.numeric.scan()?)?;
            Ok(serde_json::to_value(report)?)
        }),
        Command::Classify(c) => run_common("classify", &c, |job| {
            let system = job.system()?;
            let h = job.halfspace()?;
            let quotient_rank = classify::quotient_map(&h)?.phi.len();
            let image = input::parse_image(job.image.as_deref(), job.codim_gt_one, quotient_rank, system.field())?;
            let report = classify::theorem1_report(&system, image.as_ref(), &h, &c.numeric.scan()?)?;
            Ok(serde_json::to_value(report)?)
        }),
        Command::EklCheck(c) => run_common("ekl-check", &c, |job| {
            let f = job.hypersurface()?;
            Ok(serde_json::to_value(classify::ekl_consistency_check(&f, &c.numeric.scan()?)?)?)
        }),
        Command::ProductFormula(p) => {
            let a = input::parse_scalar(&p.a, p.field.as_deref())?;
            let terms: Vec<Value> = scalars::product_formula_terms(&a)?
                .into_iter()
                .map(|(place, v)| json!({ "place": place, "neg_log_abs": v }))
                .collect();
            let exact = match &a {
                Scalar::Function(f) => Some(scalars::product_formula_exact(f)?),
                Scalar::Rational(_) => None,
            };
            let body = json!({
                "value": a.to_string(),
                "field": a.field(),
                "terms": terms,
                "exact_sum": exact,
                "residual": scalars::product_formula_residual(&a)?,
            });
            emit_json(p.output.as_ref(), &envelope("product-formula", body)?)
        }
        Command::Plot(p) => {
            let job = Job::from(&p.common)?;
            let place = job.place()?;
            let svg = if place == Place::Archimedean {
                let f = job.hypersurface()?;
                plot::archimedean_svg(&f, p.extent, p.grid, &p.common.numeric.sample()?, &f.to_string())?
            } else {
                let system = job.system()?;
                let complex = system.prevariety(&place)?;
                plot::complex_svg(&complex, &format!("{} at {place}", job.polys.join(", ")))?
            };
            emit(p.common.output.as_ref(), &svg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (code, exit) = match e.downcast_ref::<amoeba_core::Error>() {
                Some(err) if err.is_internal() => (err.code(), 3),
                Some(err) => (err.code(), 2),
                None => ("input_error", 2),
            };
            let report = json!({
                "schema_version": SCHEMA_VERSION,
                "error": { "code": code, "message": format!("{e:#}") },
            });
            eprintln!("{report}");
            ExitCode::from(exit)
        }
    }
}
