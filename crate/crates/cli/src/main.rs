use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use cubiso::complex::check_npc;
use cubiso::cone::{build_cone_plane, classify_universal_cover, gauss_bonnet, CoverClass, SquareSurface};
use cubiso::constructions::{branched_cover, build_torus, find_pythagorean_doubles, CoverSpec};
use cubiso::develop::{develop, product_structure, Chart, DevelopError};
use cubiso::isometry::{normal_form, preserves_proper_hypersurface, IsometryError};
use cubiso::{CubeComplex, RationalOrthoAffine};

#[derive(Parser)]
#[command(name = "cubiso", version, about = "Cube complexes and their non-cubical isometries")]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Link condition at every vertex (exit 1 if it fails somewhere).
    Check { complex: PathBuf },
    /// Normal form, cubicality and product structure of an isometry.
    Analyze { isometry: PathBuf },
    /// Develop an isometry's trace from a seed cube.
    Develop {
        complex: PathBuf,
        #[arg(long)]
        seed: String,
        isometry: PathBuf,
        #[arg(long, default_value_t = 3)]
        radius: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Cone orders and universal-cover type of a square surface.
    Classify { surface: PathBuf },
    #[command(subcommand)]
    Generate(Generate),
}

#[derive(Subcommand)]
enum Generate {
    /// A patch of Cone(R², n).
    Cone {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// The torus R² / ⟨a, b⟩.
    Torus {
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        a: [i64; 2],
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        b: [i64; 2],
    },
    /// Distinct Pythagorean doubles with coordinates up to the limit.
    Doubles {
        #[arg(long, default_value_t = 8)]
        limit: u32,
    },
    /// Branched cover of a torus from a cover spec JSON file.
    Cover {
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true, default_value = "1,0")]
        a: [i64; 2],
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true, default_value = "0,1")]
        b: [i64; 2],
        spec: PathBuf,
    },
}

fn parse_vector(s: &str) -> Result<[i64; 2], String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [x, y] = parts[..] else { return Err(format!("expected x,y, got `{s}`")) };
    let p = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("`{t}`: {e}"));
    Ok([p(x)?, p(y)?])
}

/// A negative verdict (exit 1) carrying a diagnostic.
#[derive(Debug)]
struct Negative(String);

impl std::fmt::Display for Negative {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Negative {}

fn read(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable") + "\n"
}

/// Output text and whether the verdict was positive.
fn run(cli: &Cli) -> Result<(String, bool)> {
    match &cli.command {
        Command::Check { complex } => {
            let cx = CubeComplex::from_json(&read(complex)?)?;
            let report = check_npc(&cx)?;
            Ok((to_json(&report), report.npc))
        }
        Command::Analyze { isometry } => {
            let t = match RationalOrthoAffine::from_json(&read(isometry)?) {
                Err(IsometryError::NotOrthogonal) => bail!(Negative("not orthogonal: AᵀA ≠ I".into())),
                r => r?,
            };
            let cubical = t.is_cubical();
            let split = preserves_proper_hypersurface(&t);
            let out = json!({
                "cubical": cubical,
                "normal_form": normal_form(&t),
                "preserves_hypersurface": split.is_some(),
                "hypersurface": split,
                "product_structure": if cubical { None } else { product_structure(&t).ok() },
            });
            Ok((to_json(&out), true))
        }
        Command::Develop { complex, seed, isometry, radius, format } => {
            let cx = CubeComplex::from_json(&read(complex)?)?;
            let t = RationalOrthoAffine::from_json(&read(isometry)?)?;
            let chart = Chart::identity(seed.clone(), t.dim());
            let r = match develop(&cx, &chart, &t, *radius) {
                Err(e @ (DevelopError::CubicalTrace | DevelopError::Npc(_))) => bail!(Negative(e.to_string())),
                r => r?,
            };
            let text = match format {
                Format::Json => r.to_json() + "\n",
                Format::Dot => r.to_dot(),
            };
            Ok((text, true))
        }
        Command::Classify { surface } => {
            let s = SquareSurface::from_json(&read(surface)?)?;
            let report = classify_universal_cover(&s);
            let gb = gauss_bonnet(&s);
            let ok = report.classification != CoverClass::Invalid;
            Ok((to_json(&json!({ "cone": report, "gauss_bonnet": gb })), ok))
        }
        Command::Generate(g) => generate(g).map(|s| (s, true)),
    }
}

fn generate(g: &Generate) -> Result<String> {
    Ok(match g {
        Generate::Cone { n, radius } => build_cone_plane(*n, *radius)?.to_json() + "\n",
        Generate::Torus { a, b } => build_torus(*a, *b)?.surface.to_json() + "\n",
        Generate::Doubles { limit } => to_json(&find_pythagorean_doubles(*limit)),
        Generate::Cover { a, b, spec } => {
            let spec = CoverSpec::from_json(&read(spec)?)?;
            let torus = build_torus(*a, *b)?;
            branched_cover(&torus, &spec)?.surface.to_json() + "\n"
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    let (text, positive) = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            let negative = e.downcast_ref::<Negative>().is_some();
            return ExitCode::from(if negative { 1 } else { 2 });
        }
    };
    let written = match &cli.output {
        Some(p) => fs::write(p, &text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    ExitCode::from(if positive { 0 } else { 1 })
}
