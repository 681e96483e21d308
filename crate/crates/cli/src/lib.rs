//! Command-line front end for `rotvdw`: registry listings, level shifts,
//! line catalogues and observability verdicts, as tables, CSV or JSON.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod records;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use toml::Value;

use crate::commands::ListKind;
use crate::config::{parse_radius, ConfigLayers, EnergyUnit, Format};
pub use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "rotvdw",
    version,
    about = "Surface-induced shifts and splittings of molecular rotational lines"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a built-in registry.
    List {
        #[arg(value_enum)]
        kind: ListKind,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Level diagram: free energy, flat-surface and curvature shifts per state.
    Shift(RunArgs),
    /// Line catalogue of an emission branch with polarization, visibility and widths.
    Spectrum(RunArgs),
    /// Whether the curvature splitting exceeds the natural and Doppler widths.
    Observability(RunArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// TOML configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Override a configuration key, e.g. `--set T_K=4` (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Built-in molecule name, or `all`.
    #[arg(long)]
    pub molecule: Option<String>,
    /// Built-in material name.
    #[arg(long)]
    pub material: Option<String>,
    /// Molecule–surface separation (nm).
    #[arg(long = "d-nm")]
    pub d_nm: Option<f64>,
    /// First principal radius (µm) or `inf`.
    #[arg(long = "r1-um", allow_hyphen_values = true)]
    pub r1_um: Option<String>,
    /// Second principal radius (µm) or `inf`.
    #[arg(long = "r2-um", allow_hyphen_values = true)]
    pub r2_um: Option<String>,
    /// Temperature (K).
    #[arg(long = "temp-k")]
    pub temp_k: Option<f64>,
    /// Emission branch, e.g. `1->0`.
    #[arg(long)]
    pub branch: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Energy unit of the level diagram.
    #[arg(long = "energy-unit", value_enum)]
    pub energy_unit: Option<EnergyUnit>,
    /// Grid: `d_nm=50,100,200` or `curv_diff=0.01:0.1:10`.
    #[arg(long)]
    pub sweep: Option<String>,
    /// Highest l in the level diagram.
    #[arg(long = "l-max")]
    pub l_max: Option<u32>,
    /// Factor by which the splitting must exceed each width.
    #[arg(long)]
    pub margin: Option<f64>,
}

impl RunArgs {
    /// Config file, then `--set` overrides, then explicit flags.
    pub fn layers(&self) -> Result<ConfigLayers, CliError> {
        let mut layers = match &self.config {
            Some(path) => ConfigLayers::from_file(path)?,
            None => ConfigLayers::default(),
        };
        for s in &self.set {
            layers.set(s)?;
        }
        let text = |v: &Option<String>| v.clone().map(Value::String);
        let float = |v: Option<f64>| v.map(Value::Float);
        let radius = |v: &Option<String>| -> Result<Option<Value>, CliError> {
            v.as_deref()
                .map(|s| {
                    parse_radius(s).map_err(CliError::Config).map(|r| {
                        if r.is_finite() {
                            Value::Float(r)
                        } else {
                            Value::String(s.to_string())
                        }
                    })
                })
                .transpose()
        };
        let pairs = [
            ("molecule", text(&self.molecule)),
            ("material", text(&self.material)),
            ("d_nm", float(self.d_nm)),
            ("R1_um", radius(&self.r1_um)?),
            ("R2_um", radius(&self.r2_um)?),
            ("T_K", float(self.temp_k)),
            ("branch", text(&self.branch)),
            ("sweep", text(&self.sweep)),
            ("l_max", self.l_max.map(|l| Value::Integer(i64::from(l)))),
            ("margin", float(self.margin)),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                layers.insert(key, v)?;
            }
        }
        Ok(layers)
    }

    pub fn resolve(&self) -> Result<config::RunConfig, CliError> {
        let mut cfg = self.layers()?.resolve()?;
        if let Some(f) = self.format {
            cfg.format = f;
        }
        if let Some(u) = self.energy_unit {
            cfg.energy_unit = u;
        }
        Ok(cfg)
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::List { kind, format } => commands::list(*kind, *format, out),
        Command::Shift(args) => commands::shift(&args.resolve()?, out),
        Command::Spectrum(args) => commands::spectrum(&args.resolve()?, out),
        Command::Observability(args) => commands::observability(&args.resolve()?, out),
    }
}
