//! Run configuration: a flat TOML file, `--set key=value` overrides and
//! explicit flags, merged in that order and resolved into library types.
//!
//! Units are part of the key names: `d_nm`, `R1_um`, `R2_um`, `T_K`. Radii
//! accept `"inf"` for a flat direction. `molecule` and `material` are either
//! a built-in name (or `"all"` for molecules) or an inline table in the
//! tabulated units of the registries.

use std::path::Path;

use rotvdw::greens::SurfaceGeometry;
use rotvdw::materials::{self, Material, MaterialDef};
use rotvdw::rotor::{self, Molecule, MoleculeDef, DEFAULT_L_MAX};
use rotvdw::spectra::{Branch, DEFAULT_MARGIN};
use rotvdw::units::{MICROMETER, NANOMETER};
use serde::Deserialize;
use toml::{Table, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum EnergyUnit {
    /// Energies divided by h, in Hz.
    #[default]
    Hz,
    /// Energies in joules.
    J,
}

/// Grid over which a command is repeated.
#[derive(Debug, Clone, PartialEq)]
pub enum Sweep {
    /// Separations (nm) at fixed radii.
    Separation(Vec<f64>),
    /// Values of d/R1 − d/R2 realized by a cylinder whose axis lies along
    /// y (positive values) or x (negative values); zero is the plane.
    CurvatureDifference(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub molecules: Vec<Molecule>,
    pub material: Material,
    pub d_nm: f64,
    pub r1_um: f64,
    pub r2_um: f64,
    pub temperature: f64,
    pub branch: Branch,
    pub format: Format,
    pub energy_unit: EnergyUnit,
    pub l_max: u32,
    pub margin: f64,
    pub sweep: Option<Sweep>,
}

/// One evaluation point of a (possibly swept) run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryPoint {
    pub d_nm: f64,
    pub r1_um: f64,
    pub r2_um: f64,
}

impl GeometryPoint {
    pub fn geometry(&self) -> Result<SurfaceGeometry, CliError> {
        Ok(SurfaceGeometry::new(
            self.d_nm * NANOMETER,
            self.r1_um * MICROMETER,
            self.r2_um * MICROMETER,
        )?)
    }
}

impl RunConfig {
    pub fn points(&self) -> Vec<GeometryPoint> {
        let base = GeometryPoint {
            d_nm: self.d_nm,
            r1_um: self.r1_um,
            r2_um: self.r2_um,
        };
        match &self.sweep {
            None => vec![base],
            Some(Sweep::Separation(ds)) => ds.iter().map(|&d_nm| GeometryPoint { d_nm, ..base }).collect(),
            Some(Sweep::CurvatureDifference(ks)) => ks
                .iter()
                .map(|&k| {
                    let r = if k == 0.0 {
                        f64::INFINITY
                    } else {
                        self.d_nm * 1e-3 / k.abs()
                    };
                    let (r1_um, r2_um) = if k >= 0.0 {
                        (r, f64::INFINITY)
                    } else {
                        (f64::INFINITY, r)
                    };
                    GeometryPoint {
                        d_nm: self.d_nm,
                        r1_um,
                        r2_um,
                    }
                })
                .collect(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Named<T> {
    Name(String),
    Inline(T),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Radius {
    Value(f64),
    Text(String),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    molecule: Option<Named<MoleculeDef>>,
    material: Option<Named<MaterialDef>>,
    d_nm: Option<f64>,
    #[serde(rename = "R1_um")]
    r1_um: Option<Radius>,
    #[serde(rename = "R2_um")]
    r2_um: Option<Radius>,
    #[serde(rename = "T_K")]
    t_k: Option<f64>,
    branch: Option<String>,
    format: Option<String>,
    energy_unit: Option<String>,
    l_max: Option<u32>,
    margin: Option<f64>,
    sweep: Option<String>,
}

/// Layered key-value settings before resolution.
#[derive(Debug, Clone, Default)]
pub struct ConfigLayers {
    table: Table,
}

impl ConfigLayers {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let table = text
            .parse::<Table>()
            .map_err(|e| CliError::Config(e.message().to_string()))?;
        Ok(Self { table })
    }

    /// Applies `key=value`, with `value` read as a TOML value when possible
    /// and as a bare string otherwise. Dotted keys address inline tables.
    pub fn set(&mut self, assignment: &str) -> Result<(), CliError> {
        let (key, raw) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("expected key=value, got `{assignment}`")))?;
        let value = format!("v = {}", raw.trim())
            .parse::<Table>()
            .ok()
            .and_then(|mut t| t.remove("v"))
            .unwrap_or_else(|| Value::String(raw.trim().to_string()));
        self.insert(key.trim(), value)
    }

    pub fn insert(&mut self, key: &str, value: Value) -> Result<(), CliError> {
        let parts: Vec<&str> = key.split('.').collect();
        if parts.iter().any(|p| p.is_empty()) {
            return Err(CliError::Config(format!("malformed key `{key}`")));
        }
        let (last, parents) = parts.split_last().unwrap_or_else(|| unreachable!());
        let mut table = &mut self.table;
        for p in parents {
            let entry = table.entry(p.to_string()).or_insert_with(|| Value::Table(Table::new()));
            if !entry.is_table() {
                *entry = Value::Table(Table::new());
            }
            table = entry.as_table_mut().unwrap_or_else(|| unreachable!());
        }
        table.insert(last.to_string(), value);
        Ok(())
    }

    pub fn resolve(self) -> Result<RunConfig, CliError> {
        let raw: RawConfig = Value::Table(self.table)
            .try_into()
            .map_err(|e: toml::de::Error| CliError::Config(e.message().to_string()))?;
        let molecules = match raw.molecule {
            None => {
                return Err(CliError::Config(
                    "no molecule given (--molecule or `molecule` key)".into(),
                ))
            }
            Some(Named::Name(n)) if n.eq_ignore_ascii_case("all") => rotor::builtin_molecules(),
            Some(Named::Name(n)) => vec![rotor::lookup(&n)?],
            Some(Named::Inline(def)) => vec![Molecule::from_def(&def)?],
        };
        let material = match raw.material {
            None => materials::lookup("Sapphire")?,
            Some(Named::Name(n)) => materials::lookup(&n)?,
            Some(Named::Inline(def)) => Material::from_def(&def)?,
        };
        let d_nm = raw.d_nm.unwrap_or(100.0);
        let r1_um = radius("R1_um", raw.r1_um)?;
        let r2_um = radius("R2_um", raw.r2_um)?;
        let branch = match raw.branch {
            None => Branch::new(1, 0)?,
            Some(s) => parse_branch(&s)?,
        };
        let format = enum_value::<Format>("format", raw.format)?;
        let energy_unit = enum_value::<EnergyUnit>("energy_unit", raw.energy_unit)?;
        let sweep = raw.sweep.as_deref().map(parse_sweep).transpose()?;
        let margin = raw.margin.unwrap_or(DEFAULT_MARGIN);
        let temperature = raw.t_k.unwrap_or(300.0);
        for (name, v) in [("d_nm", d_nm), ("T_K", temperature), ("margin", margin)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Config(format!(
                    "`{name}` must be positive and finite, got {v}"
                )));
            }
        }
        Ok(RunConfig {
            molecules,
            material,
            d_nm,
            r1_um,
            r2_um,
            temperature,
            branch,
            format,
            energy_unit,
            l_max: raw.l_max.unwrap_or(DEFAULT_L_MAX),
            margin,
            sweep,
        })
    }
}

fn radius(name: &str, r: Option<Radius>) -> Result<f64, CliError> {
    match r {
        None => Ok(f64::INFINITY),
        Some(Radius::Value(v)) => Ok(v),
        Some(Radius::Text(s)) => parse_radius(&s).map_err(|e| CliError::Config(format!("`{name}`: {e}"))),
    }
}

/// A radius in µm or `inf`.
pub fn parse_radius(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity" | "+inf") {
        return Ok(f64::INFINITY);
    }
    if matches!(t.to_ascii_lowercase().as_str(), "-inf" | "-infinity") {
        return Ok(f64::NEG_INFINITY);
    }
    t.parse::<f64>()
        .map_err(|_| format!("expected a radius in µm or `inf`, got `{s}`"))
}

/// `"2->1"`, `"2-1"` or `"2,1"`.
pub fn parse_branch(s: &str) -> Result<Branch, CliError> {
    let parts: Vec<&str> = s.split(['-', '>', ',']).filter(|p| !p.trim().is_empty()).collect();
    let nums: Result<Vec<u32>, _> = parts.iter().map(|p| p.trim().parse::<u32>()).collect();
    match nums.as_deref() {
        Ok([u, l]) => Ok(Branch::new(*u, *l)?),
        _ => Err(CliError::Config(format!("expected a branch like `1->0`, got `{s}`"))),
    }
}

/// `key=v1,v2,...` or `key=start:stop:count` (inclusive, evenly spaced).
/// Keys: `d_nm`, or `curv_diff` for d/R1 − d/R2.
pub fn parse_sweep(s: &str) -> Result<Sweep, CliError> {
    let bad = |why: &str| CliError::Config(format!("sweep `{s}`: {why}"));
    let (key, grid) = s.split_once('=').ok_or_else(|| bad("expected key=grid"))?;
    let values: Vec<f64> = if let Some((a, rest)) = grid.split_once(':') {
        let (b, n) = rest
            .split_once(':')
            .ok_or_else(|| bad("range form is start:stop:count"))?;
        let (a, b): (f64, f64) = (
            a.trim().parse().map_err(|_| bad("bad start"))?,
            b.trim().parse().map_err(|_| bad("bad stop"))?,
        );
        let n: usize = n.trim().parse().map_err(|_| bad("bad count"))?;
        match n {
            0 => Vec::new(),
            1 => vec![a],
            _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
        }
    } else {
        grid.split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|_| bad(&format!("bad value `{v}`"))))
            .collect::<Result<_, _>>()?
    };
    if values.is_empty() {
        return Err(bad("grid is empty"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(bad("grid values must be finite"));
    }
    match key.trim() {
        "d_nm" => {
            if values.iter().any(|&v| v <= 0.0) {
                return Err(bad("separations must be positive"));
            }
            Ok(Sweep::Separation(values))
        }
        "curv_diff" => Ok(Sweep::CurvatureDifference(values)),
        other => Err(bad(&format!("unknown sweep key `{other}` (use d_nm or curv_diff)"))),
    }
}

fn enum_value<T: clap::ValueEnum + Default>(name: &str, v: Option<String>) -> Result<T, CliError> {
    match v {
        None => Ok(T::default()),
        Some(s) => T::from_str(&s, true).map_err(|_| CliError::Config(format!("`{name}`: unsupported value `{s}`"))),
    }
}
