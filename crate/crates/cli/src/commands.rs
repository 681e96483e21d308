//! Subcommand implementations: each builds records from library calls and
//! hands them to the selected writer. No physics is done here beyond unit
//! conversion.

use std::io::Write;

use rotvdw::greens::{CurvatureGuard, SurfaceGeometry};
use rotvdw::materials::builtin_materials;
use rotvdw::rotor::builtin_molecules;
use rotvdw::spectra::{
    level_diagram, observability_report, splitting_curvature, splitting_curvature_conductor_limit, splitting_plane,
    transition_lines,
};
use rotvdw::units::{MILLIMETER, PLANCK};

use crate::config::{EnergyUnit, Format, GeometryPoint, RunConfig};
use crate::error::CliError;
use crate::output::{num, radius, si, write_csv, write_json, write_table, Tabular};
use crate::records::{LevelRow, LineRow, MaterialRow, MoleculeRow, ObservabilityRow, Spectrum, SplittingRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ListKind {
    Materials,
    Molecules,
}

pub fn molecule_rows() -> Vec<MoleculeRow> {
    builtin_molecules()
        .into_iter()
        .map(|m| {
            let def = m.to_def();
            MoleculeRow {
                lambda_r_mm: m.lambda_r() / MILLIMETER,
                name: def.name,
                omega_r_e9: def.omega_r_e9,
                mu_e30: def.mu_e30,
                relative_mass: def.relative_mass,
            }
        })
        .collect()
}

pub fn material_rows() -> Vec<MaterialRow> {
    builtin_materials()
        .into_iter()
        .map(|m| {
            let def = m.to_def();
            MaterialRow {
                name: def.name,
                eps_st: def.eps_st,
                eps_inf: def.eps_inf,
                omega_t_e12: def.omega_t_e12,
                gamma_e12: def.gamma_e12,
            }
        })
        .collect()
}

pub fn list(kind: ListKind, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match kind {
        ListKind::Molecules => emit(&molecule_rows(), format, out),
        ListKind::Materials => emit(&material_rows(), format, out),
    }
}

fn emit<T: Tabular + serde::Serialize>(rows: &[T], format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Table => write_table(rows, out),
        Format::Csv => write_csv(rows, out),
        Format::Json => write_json(rows, out),
    }
}

fn warn_geometry(p: &GeometryPoint) -> Result<SurfaceGeometry, CliError> {
    let geom = p.geometry()?;
    for w in geom.warnings(CurvatureGuard::default()) {
        eprintln!("warning: {w}");
    }
    Ok(geom)
}

pub fn level_rows(cfg: &RunConfig) -> Result<Vec<LevelRow>, CliError> {
    let to_unit = |e: f64| match cfg.energy_unit {
        EnergyUnit::Hz => e / PLANCK,
        EnergyUnit::J => e,
    };
    let unit = match cfg.energy_unit {
        EnergyUnit::Hz => "Hz",
        EnergyUnit::J => "J",
    };
    let mut rows = Vec::new();
    for p in cfg.points() {
        let geom = warn_geometry(&p)?;
        for mol in &cfg.molecules {
            for lv in level_diagram(mol, &cfg.material, &geom, cfg.l_max)? {
                rows.push(LevelRow {
                    molecule: mol.name.clone(),
                    material: cfg.material.name.clone(),
                    d_nm: p.d_nm,
                    r1_um: p.r1_um,
                    r2_um: p.r2_um,
                    l: lv.state.l,
                    m_abs: lv.state.m_abs,
                    parity: lv.state.s.to_string(),
                    unit: unit.to_string(),
                    e_free: to_unit(lv.e_free),
                    shift_plane: to_unit(lv.shift_plane),
                    shift_curv: to_unit(lv.shift_curv),
                    shift_total: to_unit(lv.shift()),
                    e_total: to_unit(lv.e_total),
                });
            }
        }
    }
    Ok(rows)
}

pub fn shift(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = level_rows(cfg)?;
    emit(&rows, cfg.format, out)
}

pub fn spectrum_records(cfg: &RunConfig) -> Result<Spectrum, CliError> {
    let mut lines = Vec::new();
    let mut splittings = Vec::new();
    let branch = format!("{}->{}", cfg.branch.upper, cfg.branch.lower);
    for p in cfg.points() {
        let geom = warn_geometry(&p)?;
        for mol in &cfg.molecules {
            for line in transition_lines(mol, &cfg.material, &geom, cfg.branch)? {
                lines.push(LineRow {
                    molecule: mol.name.clone(),
                    material: cfg.material.name.clone(),
                    d_nm: p.d_nm,
                    r1_um: p.r1_um,
                    r2_um: p.r2_um,
                    temperature: cfg.temperature,
                    branch: branch.clone(),
                    label: line.label.clone(),
                    upper: line.upper.to_string(),
                    lower: line.lower.to_string(),
                    polarization: line.polarization.to_string(),
                    visible_from: line
                        .visible_from
                        .iter()
                        .map(|a| a.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                    frequency_hz: line.frequency,
                    free_frequency_hz: line.free_frequency,
                    offset_hz: line.offset,
                    natural_width_hz: line.natural_width,
                    doppler_width_hz: line.doppler_width(cfg.temperature)?,
                });
            }
            splittings.push(SplittingRow {
                molecule: mol.name.clone(),
                material: cfg.material.name.clone(),
                d_nm: p.d_nm,
                r1_um: p.r1_um,
                r2_um: p.r2_um,
                delta_nu_12_hz: splitting_plane(mol, &cfg.material, geom.d)?,
                delta_nu_pm_hz: splitting_curvature(mol, &cfg.material, &geom)?,
                delta_nu_pm_conductor_limit_hz: splitting_curvature_conductor_limit(mol.mu, &geom),
            });
        }
    }
    Ok(Spectrum { lines, splittings })
}

pub fn spectrum(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let s = spectrum_records(cfg)?;
    match cfg.format {
        Format::Table => {
            write_table(&s.lines, out)?;
            writeln!(out)?;
            write_table(&s.splittings, out)
        }
        Format::Csv => write_csv(&s.lines, out),
        Format::Json => write_json(&s, out),
    }
}

pub fn observability_rows(cfg: &RunConfig) -> Result<Vec<ObservabilityRow>, CliError> {
    let mut rows = Vec::new();
    for p in cfg.points() {
        let geom = warn_geometry(&p)?;
        for mol in &cfg.molecules {
            let r = observability_report(mol, &cfg.material, &geom, cfg.temperature, cfg.margin)?;
            rows.push(ObservabilityRow {
                molecule: r.molecule,
                material: r.material,
                d_nm: p.d_nm,
                r1_um: p.r1_um,
                r2_um: p.r2_um,
                temperature: r.temperature,
                nu_r_hz: r.nu_r,
                delta_nu_12_hz: r.delta_nu_12,
                delta_nu_pm_hz: r.delta_nu_pm,
                delta_nu_pm_conductor_limit_hz: r.delta_nu_pm_conductor_limit,
                natural_width_hz: r.natural_width,
                doppler_width_hz: r.doppler_width,
                margin: r.margin,
                ratio_to_natural: r.ratio_to_natural,
                ratio_to_doppler: r.ratio_to_doppler,
                observable: r.observable,
            });
        }
    }
    Ok(rows)
}

pub fn observability(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = observability_rows(cfg)?;
    emit(&rows, cfg.format, out)
}

impl Tabular for MoleculeRow {
    fn headers() -> Vec<&'static str> {
        vec!["molecule", "omega_r", "lambda_r", "mu", "M_r"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.name.clone(),
            format!("{}e9 rad/s", self.omega_r_e9),
            format!("{:.2} mm", self.lambda_r_mm),
            format!("{:.1}e-30 C·m", self.mu_e30),
            format!("{:.3}", self.relative_mass),
        ]
    }
}

impl Tabular for MaterialRow {
    fn headers() -> Vec<&'static str> {
        vec!["material", "eps_st", "eps_inf", "omega_T", "Gamma"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.name.clone(),
            self.eps_st.to_string(),
            self.eps_inf.to_string(),
            format!("{}e12 rad/s", self.omega_t_e12),
            format!("{}e12 rad/s", self.gamma_e12),
        ]
    }
}

fn energy_cell(v: f64, unit: &str) -> String {
    if unit == "J" {
        format!("{v:.6e} J")
    } else {
        si(v, "Hz")
    }
}

impl Tabular for LevelRow {
    fn headers() -> Vec<&'static str> {
        vec![
            "molecule",
            "d",
            "R1",
            "R2",
            "state",
            "E_free",
            "plane",
            "curvature",
            "shift",
            "E_total",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.molecule.clone(),
            format!("{} nm", self.d_nm),
            radius(self.r1_um),
            radius(self.r2_um),
            format!("|{},{},{}>", self.l, self.m_abs, self.parity),
            energy_cell(self.e_free, &self.unit),
            energy_cell(self.shift_plane, &self.unit),
            energy_cell(self.shift_curv, &self.unit),
            energy_cell(self.shift_total, &self.unit),
            energy_cell(self.e_total, &self.unit),
        ]
    }
}

impl Tabular for LineRow {
    fn headers() -> Vec<&'static str> {
        vec![
            "molecule",
            "d",
            "R1",
            "R2",
            "line",
            "upper",
            "lower",
            "pol",
            "seen from",
            "frequency",
            "offset",
            "natural",
            "Doppler",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.molecule.clone(),
            format!("{} nm", self.d_nm),
            radius(self.r1_um),
            radius(self.r2_um),
            self.label.clone(),
            self.upper.clone(),
            self.lower.clone(),
            self.polarization.clone(),
            self.visible_from.clone(),
            // Full precision: offsets of kHz sit on a GHz–THz carrier.
            format!("{:.3} Hz", self.frequency_hz),
            si(self.offset_hz, "Hz"),
            si(self.natural_width_hz, "Hz"),
            si(self.doppler_width_hz, "Hz"),
        ]
    }
}

impl Tabular for SplittingRow {
    fn headers() -> Vec<&'static str> {
        vec!["molecule", "d", "R1", "R2", "Δν12", "Δν±", "Δν± (conductor)"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.molecule.clone(),
            format!("{} nm", self.d_nm),
            radius(self.r1_um),
            radius(self.r2_um),
            si(self.delta_nu_12_hz, "Hz"),
            si(self.delta_nu_pm_hz, "Hz"),
            si(self.delta_nu_pm_conductor_limit_hz, "Hz"),
        ]
    }
}

impl Tabular for ObservabilityRow {
    fn headers() -> Vec<&'static str> {
        vec![
            "molecule",
            "material",
            "d",
            "R1",
            "R2",
            "T",
            "Δν12",
            "Δν±",
            "natural",
            "Doppler",
            "Δν±/natural",
            "Δν±/Doppler",
            "observable",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.molecule.clone(),
            self.material.clone(),
            format!("{} nm", self.d_nm),
            radius(self.r1_um),
            radius(self.r2_um),
            format!("{} K", self.temperature),
            si(self.delta_nu_12_hz, "Hz"),
            si(self.delta_nu_pm_hz, "Hz"),
            si(self.natural_width_hz, "Hz"),
            si(self.doppler_width_hz, "Hz"),
            num(self.ratio_to_natural),
            num(self.ratio_to_doppler),
            if self.observable { "yes" } else { "no" }.to_string(),
        ]
    }
}
