//! Command-line surface. [`run`] returns the text to emit and the exit code.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;
use trophodge_core::cohomology::build_cochain_complex;
use trophodge_core::cycles::{chow_dim, cycle_class, pair, MinkowskiWeight};
use trophodge_core::fans::builtin;
use trophodge_core::tropspace::TropComplex;
use trophodge_core::weightss::{e1_page_with, e2_page_with, SignConvention};
use trophodge_core::{Error, Fan};

use crate::formats::{
    format_rational, parse_rational, ComplexFile, EntryFile, FanFile, PageFile, TableFile, WeightsFile,
};
use crate::report::{betti_table_par, verify_all, ZOO};

#[derive(Debug, Parser)]
#[command(name = "trophodge", version, about = "Tropical cohomology and weight spectral sequences of toric varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Source {
    /// Built-in fan such as `p2`, `hirzebruch(1)` or `p1xp1`.
    #[arg(long)]
    pub builtin: Option<String>,
    /// JSON input file.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Tsv,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a fan and print its cone count, smoothness, completeness and f-vector.
    FanValidate {
        #[command(flatten)]
        source: Source,
    },
    /// Tropical cohomology dimensions of a fan's toric variety or of a cell complex.
    Cohomology {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        /// Print the whole table (the default when neither --p nor --q is given).
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Dimensions of the first or second page of the weight spectral sequence.
    Weightss {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        level: u8,
        #[arg(long, hide = true)]
        corrupt_d1_sign: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Dimensions of the spaces of balanced Minkowski weights.
    Chow {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        codim: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Run all comparison checks and print a JSON report; exit 1 on any failure.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        all_builtins: bool,
        #[arg(long, hide = true)]
        corrupt_d1_sign: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Pair each cohomology generator with the cycle of a weight file (--input).
    Pair {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Star-subdivide a fan at a lattice point and print the new fan as JSON.
    Subdivide {
        #[command(flatten)]
        source: Source,
        /// Comma-separated lattice point, e.g. `1,1`.
        #[arg(long, allow_hyphen_values = true)]
        ray: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    InvalidFan(Error),
    #[error("weights are unbalanced at cones {0:?}")]
    Unbalanced(Vec<Vec<usize>>),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) => 2,
            CliError::InvalidFan(_) => 3,
            CliError::Unbalanced(_) => 6,
            CliError::Core(Error::NotSmooth) => 5,
            CliError::Core(Error::UnknownBuiltin(_)) => 2,
            CliError::Core(_) => 4,
        }
    }
}

/// Text for stdout (or `--output`) together with the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
    pub output: Option<PathBuf>,
}

impl Outcome {
    fn ok(text: String, output: Option<PathBuf>) -> Self {
        Outcome { text, code: 0, output }
    }
}

enum Input {
    Fan(Fan),
    Complex(TropComplex),
    Weights,
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn fan_error(e: Error) -> CliError {
    match e {
        Error::UnknownBuiltin(_) => CliError::Core(e),
        Error::InvalidFan(_) | Error::InvalidCone(_) | Error::RayOutsideSupport(_) | Error::DimensionMismatch { .. } => {
            CliError::InvalidFan(e)
        }
        e => CliError::Core(e),
    }
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| CliError::Parse(e.to_string()))
}

fn load(source: &Source) -> Result<Input, CliError> {
    match (&source.builtin, &source.input) {
        (Some(name), None) => Ok(Input::Fan(builtin(name)?)),
        (None, Some(path)) => {
            let v = read_json(path)?;
            if v.get("cells").is_some() {
                let file: ComplexFile = from_value(v)?;
                let fan = file.base_fan.to_fan().map_err(fan_error)?;
                Ok(Input::Complex(TropComplex::from_cells(&fan, &file.cell_list())?))
            } else if v.get("weights").is_some() {
                Ok(Input::Weights)
            } else {
                let file: FanFile = from_value(v)?;
                Ok(Input::Fan(file.to_fan().map_err(fan_error)?))
            }
        }
        (Some(_), Some(_)) => Err(CliError::Parse("give either --builtin or --input, not both".into())),
        (None, None) => Err(CliError::Parse("a fan is required: use --builtin or --input".into())),
    }
}

fn load_fan(source: &Source) -> Result<Fan, CliError> {
    match load(source)? {
        Input::Fan(f) => Ok(f),
        _ => Err(CliError::Parse("expected a fan".into())),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn check_range(name: &str, value: Option<usize>, n: usize) -> Result<(), CliError> {
    match value {
        Some(v) if v > n => Err(CliError::Parse(format!("--{name} {v} is outside 0..={n}"))),
        _ => Ok(()),
    }
}

fn table_text(entries: &[EntryFile], format: Format) -> String {
    match format {
        Format::Json => json(&TableFile { entries: entries.to_vec() }),
        Format::Tsv => {
            let mut s = String::from("p\tq\tdim\n");
            for e in entries {
                s.push_str(&format!("{}\t{}\t{}\n", e.p, e.q, e.dim));
            }
            s
        }
    }
}

fn sign_of(corrupt: bool) -> SignConvention {
    if corrupt {
        SignConvention::RayPosition
    } else {
        SignConvention::Unit
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::FanValidate { source } => {
            let fan = load_fan(&source)?;
            let yn = |b: bool| if b { "yes" } else { "no" };
            let f: Vec<String> = fan.f_vector().iter().map(ToString::to_string).collect();
            let text = format!(
                "cones={} smooth={} complete={} f=({})\n",
                fan.num_cones(),
                yn(fan.is_smooth()),
                yn(fan.is_complete()),
                f.join(",")
            );
            Ok(Outcome::ok(text, None))
        }
        Command::Cohomology { source, p, q, all, output } => {
            let cx = match load(&source)? {
                Input::Fan(f) => TropComplex::tautological(&f),
                Input::Complex(cx) => cx,
                Input::Weights => return Err(CliError::Parse("expected a fan or a complex".into())),
            };
            let n = cx.fan().rank();
            check_range("p", p, n)?;
            check_range("q", q, n)?;
            let (p, q) = if all { (None, None) } else { (p, q) };
            let entries: Vec<EntryFile> = match p {
                Some(p) => {
                    let row = build_cochain_complex(&cx, p)?.betti_row();
                    (0..=n).filter(|&j| q.is_none_or(|q| q == j)).map(|j| EntryFile { p, q: j, dim: row[j] }).collect()
                }
                None => betti_table_par(&cx)?
                    .into_iter()
                    .enumerate()
                    .flat_map(|(i, row)| row.into_iter().enumerate().map(move |(j, dim)| EntryFile { p: i, q: j, dim }))
                    .filter(|e| q.is_none_or(|q| q == e.q))
                    .collect(),
            };
            Ok(Outcome::ok(table_text(&entries, output.format), output.output))
        }
        Command::Weightss { source, level, corrupt_d1_sign, output } => {
            let fan = load_fan(&source)?;
            let sign = sign_of(corrupt_d1_sign);
            let page = if level == 1 { e1_page_with(&fan, sign)? } else { e2_page_with(&fan, sign)? };
            let file = PageFile::from(&page);
            let text = match output.format {
                Format::Json => json(&file),
                Format::Tsv => table_text(&file.entries, Format::Tsv),
            };
            Ok(Outcome::ok(text, output.output))
        }
        Command::Chow { source, codim, output } => {
            let fan = load_fan(&source)?;
            check_range("codim", codim, fan.rank())?;
            let ps: Vec<usize> = codim.map_or_else(|| (0..=fan.rank()).collect(), |c| vec![c]);
            let mut rows = Vec::new();
            for p in ps {
                rows.push((p, chow_dim(&fan, p)?));
            }
            let text = match output.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Row {
                        codim: usize,
                        dim: usize,
                    }
                    #[derive(Serialize)]
                    struct Rows {
                        entries: Vec<Row>,
                    }
                    json(&Rows { entries: rows.into_iter().map(|(codim, dim)| Row { codim, dim }).collect() })
                }
                Format::Tsv => {
                    let mut s = String::from("codim\tdim\n");
                    for (p, d) in rows {
                        s.push_str(&format!("{p}\t{d}\n"));
                    }
                    s
                }
            };
            Ok(Outcome::ok(text, output.output))
        }
        Command::Verify { source, all_builtins, corrupt_d1_sign, output } => {
            let mut fans = Vec::new();
            if all_builtins {
                for name in ZOO {
                    fans.push((name.to_string(), builtin(name)?));
                }
            } else {
                let name = source
                    .builtin
                    .clone()
                    .or_else(|| source.input.as_ref().map(|p| p.display().to_string()))
                    .unwrap_or_default();
                fans.push((name, load_fan(&source)?));
            }
            let report = verify_all(&fans, sign_of(corrupt_d1_sign))?;
            Ok(Outcome { code: if report.pass { 0 } else { 1 }, text: json(&report), output })
        }
        Command::Pair { source, output } => {
            let file = match &source.input {
                Some(path) => from_value::<WeightsFile>(read_json(path)?)?,
                None => return Err(CliError::Parse("pair needs a weight file via --input".into())),
            };
            let fan = match (&source.builtin, &file.fan) {
                (Some(name), _) => builtin(name)?,
                (None, Some(src)) => src.to_fan().map_err(fan_error)?,
                (None, None) => return Err(CliError::Parse("weight file names no fan; add --builtin".into())),
            };
            let mut weights = Vec::new();
            for e in &file.weights {
                let w = parse_rational(&e.w).ok_or_else(|| CliError::Parse(format!("bad rational `{}`", e.w)))?;
                weights.push((e.cone.clone(), w));
            }
            let mw = MinkowskiWeight::new(&fan, file.codim, file.kind.into(), &weights)?;
            let cx = TropComplex::tautological(&fan);
            let cycle = cycle_class(&mw, &cx).map_err(|e| match e {
                Error::Unbalanced(cones) => CliError::Unbalanced(cones.iter().map(|&c| fan.cones()[c].clone()).collect()),
                e => CliError::Core(e),
            })?;
            let cc = build_cochain_complex(&cx, cycle.p)?;
            let mut values = Vec::new();
            for rep in cc.cohomology(cycle.p).representatives {
                values.push(format_rational(&pair(&rep, &cycle, &cc)?));
            }
            let text = match output.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Pairings {
                        p: usize,
                        pairings: Vec<String>,
                    }
                    json(&Pairings { p: cycle.p, pairings: values })
                }
                Format::Tsv => {
                    let mut s = String::from("generator\tpairing\n");
                    for (i, v) in values.iter().enumerate() {
                        s.push_str(&format!("{i}\t{v}\n"));
                    }
                    s
                }
            };
            Ok(Outcome::ok(text, output.output))
        }
        Command::Subdivide { source, ray, output } => {
            let fan = load_fan(&source)?;
            let v: Vec<i64> = ray
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Parse(format!("--ray {ray}: {e}")))?;
            if v.len() != fan.rank() {
                return Err(CliError::Parse(format!("--ray needs {} coordinates", fan.rank())));
            }
            let refined = fan.star_subdivision(&v)?;
            Ok(Outcome::ok(json(&FanFile::from_fan(&refined)), output))
        }
    }
}
