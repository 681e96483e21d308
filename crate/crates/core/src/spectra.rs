//! Level diagrams and line catalogues of a rigid rotor near a surface.
//!
//! Level energies are E_l + ΔF^plane + ΔF^curv with the closed forms in the
//! energy scale ℰ = μ²/(32πε₀d³)·(ε_st−1)/(ε_st+1). Line frequencies are
//! taken from level differences; the free-space part and the surface-induced
//! offset are kept separately so that splittings of a few kHz on a GHz line
//! keep full precision.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::greens::SurfaceGeometry;
use crate::materials::{static_image_factor, Material};
use crate::rotor::{dipole_element, l_l1, Axis, Molecule, ParityState, Reflection, Sign};
use crate::units::{AVOGADRO, BOLTZMANN, HBAR, KG_PER_MOL_PER_DALTON, PLANCK, SPEED_OF_LIGHT, VACUUM_PERMITTIVITY};

/// ℰ, the natural unit of the surface-induced level shifts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyScale {
    /// J
    pub value: f64,
    pub d: f64,
    pub eps_st: f64,
    pub mu: f64,
}

impl EnergyScale {
    pub fn in_hz(&self) -> f64 {
        self.value / PLANCK
    }
}

pub fn energy_scale(mol: &Molecule, mat: &Material, d: f64) -> Result<EnergyScale> {
    if !(d.is_finite() && d > 0.0) {
        return Err(invalid("d", format!("separation must be positive, got {d}")));
    }
    let value = mol.mu * mol.mu / (32.0 * PI * VACUUM_PERMITTIVITY * d * d * d) * static_image_factor(mat.eps_st);
    Ok(EnergyScale {
        value,
        d,
        eps_st: mat.eps_st,
        mu: mol.mu,
    })
}

/// Flat-surface shift of |l, m⟩: −ℰ (3l(l+1) − m² − 2)/(4l(l+1) − 3).
pub fn plane_shift(l: u32, m: i32, scale: &EnergyScale) -> Result<f64> {
    if m.unsigned_abs() > l {
        return Err(Error::InvalidState(format!("|m| = {} exceeds l = {l}", m.abs())));
    }
    let ll = l_l1(l);
    let m2 = f64::from(m * m);
    Ok(-scale.value * (3.0 * ll - m2 - 2.0) / (4.0 * ll - 3.0))
}

/// Leading curvature correction to the level of a parity state. The
/// geometry must be the one at which `scale` was evaluated.
pub fn curvature_shift(st: ParityState, scale: &EnergyScale, geom: &SurfaceGeometry) -> Result<f64> {
    if (geom.d - scale.d).abs() > 1e-12 * scale.d {
        return Err(invalid(
            "d",
            format!("geometry at d = {} but energy scale at d = {}", geom.d, scale.d),
        ));
    }
    let eps = scale.eps_st;
    let ll = l_l1(st.l);
    let den = 4.0 * ll - 3.0;
    let s = geom.mean_curvature_term();
    if st.m_abs == 1 {
        let sym = (ll * (11.0 + 5.0 * eps) - 3.0 * (3.0 + eps)) / (4.0 * (eps + 1.0) * den);
        let split = ll * (1.0 + 3.0 * eps) / (16.0 * (eps + 1.0) * den);
        let sign = f64::from(st.s.value());
        Ok(scale.value * (s * sym + sign * geom.anisotropy_term() * split))
    } else {
        let m2 = f64::from(st.m_abs * st.m_abs);
        let num = ll * (11.0 + 5.0 * eps) + m2 * (eps - 1.0) - 4.0 * (2.0 + eps);
        Ok(scale.value * s * num / (4.0 * (eps + 1.0) * den))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelShifted {
    pub state: ParityState,
    /// J
    pub e_free: f64,
    /// J
    pub shift_plane: f64,
    /// J
    pub shift_curv: f64,
    /// J
    pub e_total: f64,
}

impl LevelShifted {
    /// Surface-induced part of the energy (J).
    pub fn shift(&self) -> f64 {
        self.shift_plane + self.shift_curv
    }
}

fn level(mol: &Molecule, st: ParityState, scale: &EnergyScale, geom: &SurfaceGeometry) -> Result<LevelShifted> {
    let e_free = mol.energy(st.l);
    let shift_plane = plane_shift(st.l, st.m_abs as i32, scale)?;
    let shift_curv = curvature_shift(st, scale, geom)?;
    Ok(LevelShifted {
        state: st,
        e_free,
        shift_plane,
        shift_curv,
        e_total: e_free + shift_plane + shift_curv,
    })
}

/// Every parity state with l ≤ `l_max`, ordered by l, then |m|, then sign.
pub fn level_diagram(mol: &Molecule, mat: &Material, geom: &SurfaceGeometry, l_max: u32) -> Result<Vec<LevelShifted>> {
    let scale = energy_scale(mol, mat, geom.d)?;
    (0..=l_max)
        .flat_map(ParityState::multiplet)
        .map(|st| level(mol, st, &scale, geom))
        .collect()
}

/// Number of distinct energies among `levels` of one l, comparing the
/// surface-induced shifts with relative tolerance `rel_tol`.
pub fn distinct_levels(levels: &[LevelShifted], rel_tol: f64) -> usize {
    distinct(levels.iter().map(LevelShifted::shift).collect(), rel_tol)
}

fn distinct(mut v: Vec<f64>, rel_tol: f64) -> usize {
    if v.is_empty() {
        return 0;
    }
    v.sort_by(f64::total_cmp);
    let scale = v.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let tol = rel_tol * scale;
    1 + v.windows(2).filter(|w| w[1] - w[0] > tol).count()
}

/// Emission branch l_upper → l_lower with l_upper = l_lower + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub upper: u32,
    pub lower: u32,
}

impl Branch {
    pub fn new(upper: u32, lower: u32) -> Result<Self> {
        if upper != lower + 1 {
            return Err(invalid(
                "branch",
                format!("only Δl = 1 emission branches are dipole-allowed, got {upper}->{lower}"),
            ));
        }
        Ok(Self { upper, lower })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralLine {
    pub label: String,
    pub upper: ParityState,
    pub lower: ParityState,
    /// Hz
    pub frequency: f64,
    /// Free-space line frequency (E_upper − E_lower)/h (Hz).
    pub free_frequency: f64,
    /// Surface-induced offset from the free-space line (Hz).
    pub offset: f64,
    pub polarization: Axis,
    pub visible_from: Vec<Axis>,
    /// Hz
    pub natural_width: f64,
    pub relative_mass: f64,
}

impl SpectralLine {
    /// Doppler FWHM at temperature `t` (Hz).
    pub fn doppler_width(&self, t: f64) -> Result<f64> {
        doppler_width_for_mass(self.relative_mass, self.frequency, t)
    }

    pub fn is_visible_from(&self, axis: Axis) -> bool {
        self.visible_from.contains(&axis)
    }
}

/// Polarization of a dipole transition between two parity states, fixed by
/// their reflection eigenvalues: μ_x is odd under x → −x only, μ_y under
/// y → −y only, μ_z under neither.
fn connecting_axis(a: ParityState, b: ParityState) -> Option<Axis> {
    let px = a.reflection_eigenvalue(Reflection::X) * b.reflection_eigenvalue(Reflection::X);
    let py = a.reflection_eigenvalue(Reflection::Y) * b.reflection_eigenvalue(Reflection::Y);
    match (px, py) {
        (-1, 1) => Some(Axis::X),
        (1, -1) => Some(Axis::Y),
        (1, 1) => Some(Axis::Z),
        _ => None,
    }
}

/// ⟨lower| μ̂_axis |upper⟩ (C·m).
pub fn parity_dipole_element(
    mol: &Molecule,
    upper: ParityState,
    lower: ParityState,
    axis: Axis,
) -> num_complex::Complex64 {
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for (u, cu) in upper.components() {
        for (l, cl) in lower.components() {
            acc += cu * cl * dipole_element(mol, u, l, axis);
        }
    }
    acc
}

fn line_label(branch: Branch, upper: ParityState, lower: ParityState) -> String {
    if branch.upper == 1 && branch.lower == 0 {
        match (upper.m_abs, upper.s) {
            (0, _) => return "nu2".into(),
            (1, Sign::Plus) => return "nu1+".into(),
            (1, Sign::Minus) => return "nu1-".into(),
            _ => {}
        }
    }
    format!("{upper}->{lower}")
}

/// Dipole-allowed lines of an emission branch. Lines whose upper states
/// remain degenerate are listed separately and share a frequency.
pub fn transition_lines(
    mol: &Molecule,
    mat: &Material,
    geom: &SurfaceGeometry,
    branch: Branch,
) -> Result<Vec<SpectralLine>> {
    let scale = energy_scale(mol, mat, geom.d)?;
    let uppers: Vec<LevelShifted> = ParityState::multiplet(branch.upper)
        .map(|s| level(mol, s, &scale, geom))
        .collect::<Result<_>>()?;
    let lowers: Vec<LevelShifted> = ParityState::multiplet(branch.lower)
        .map(|s| level(mol, s, &scale, geom))
        .collect::<Result<_>>()?;
    let free_frequency = (mol.energy(branch.upper) - mol.energy(branch.lower)) / PLANCK;
    let mut lines = Vec::new();
    for up in &uppers {
        for low in &lowers {
            let Some(axis) = connecting_axis(up.state, low.state) else {
                continue;
            };
            if parity_dipole_element(mol, up.state, low.state, axis).norm() < 1e-12 * mol.mu {
                continue;
            }
            let offset = (up.shift() - low.shift()) / PLANCK;
            let frequency = free_frequency + offset;
            lines.push(SpectralLine {
                label: line_label(branch, up.state, low.state),
                upper: up.state,
                lower: low.state,
                frequency,
                free_frequency,
                offset,
                polarization: axis,
                visible_from: Axis::ALL.into_iter().filter(|a| *a != axis).collect(),
                natural_width: natural_linewidth(mol, frequency),
                relative_mass: mol.relative_mass,
            });
        }
    }
    Ok(lines)
}

/// Number of resolvable line positions, comparing offsets with relative
/// tolerance `rel_tol`.
pub fn distinct_line_count(lines: &[SpectralLine], rel_tol: f64) -> usize {
    distinct(lines.iter().map(|l| l.offset).collect(), rel_tol)
}

/// Δν₁₂ = ν₁ − ν₂ = ℰ/5h for a flat surface (Hz).
pub fn splitting_plane(mol: &Molecule, mat: &Material, d: f64) -> Result<f64> {
    Ok(energy_scale(mol, mat, d)?.in_hz() / 5.0)
}

/// Δν± = ν₁⁺ − ν₁⁻ = (ℰ/h)(d/R₁ − d/R₂)(3ε_st + 1)/(20(ε_st + 1)) (Hz).
pub fn splitting_curvature(mol: &Molecule, mat: &Material, geom: &SurfaceGeometry) -> Result<f64> {
    let scale = energy_scale(mol, mat, geom.d)?;
    let eps = mat.eps_st;
    Ok(scale.in_hz() * geom.anisotropy_term() * (3.0 * eps + 1.0) / (20.0 * (eps + 1.0)))
}

/// Perfect-conductor limit of Δν±: 3μ²/(640πε₀hd³)·(d/R₁ − d/R₂) (Hz).
pub fn splitting_curvature_conductor_limit(mu: f64, geom: &SurfaceGeometry) -> f64 {
    3.0 * mu * mu / (640.0 * PI * VACUUM_PERMITTIVITY * PLANCK * geom.d.powi(3)) * geom.anisotropy_term()
}

/// Radiative width ν³μ²/(3ε₀ħc³) (Hz).
pub fn natural_linewidth(mol: &Molecule, nu: f64) -> f64 {
    nu.powi(3) * mol.mu * mol.mu / (3.0 * VACUUM_PERMITTIVITY * HBAR * SPEED_OF_LIGHT.powi(3))
}

/// Thermal Doppler FWHM (2ν/c)·√(2 N_A k_B T ln2 / M) (Hz).
pub fn doppler_broadening(mol: &Molecule, nu: f64, t: f64) -> Result<f64> {
    doppler_width_for_mass(mol.relative_mass, nu, t)
}

fn doppler_width_for_mass(relative_mass: f64, nu: f64, t: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(invalid("T", format!("temperature must be positive, got {t}")));
    }
    let molar_mass = relative_mass * KG_PER_MOL_PER_DALTON;
    Ok(2.0 * nu / SPEED_OF_LIGHT * (2.0 * AVOGADRO * BOLTZMANN * t * std::f64::consts::LN_2 / molar_mass).sqrt())
}

/// Coefficient k in Δν_D = k·(T/M_r)^½·ν.
pub fn doppler_coefficient() -> f64 {
    2.0 / SPEED_OF_LIGHT * (2.0 * AVOGADRO * BOLTZMANN * std::f64::consts::LN_2 / KG_PER_MOL_PER_DALTON).sqrt()
}

pub const DEFAULT_MARGIN: f64 = 3.0;

/// Whether the curvature splitting of the 1 → 0 line stands out of the
/// natural and Doppler widths.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObservabilityReport {
    pub molecule: String,
    pub material: String,
    /// m
    pub d: f64,
    pub r1: f64,
    pub r2: f64,
    /// K
    pub temperature: f64,
    /// Free-space 1 → 0 frequency, at which the widths are evaluated (Hz).
    pub nu_r: f64,
    pub delta_nu_12: f64,
    pub delta_nu_pm: f64,
    pub delta_nu_pm_conductor_limit: f64,
    pub natural_width: f64,
    pub doppler_width: f64,
    pub margin: f64,
    /// |Δν±| / natural width
    pub ratio_to_natural: f64,
    /// |Δν±| / Doppler width
    pub ratio_to_doppler: f64,
    pub observable: bool,
}

pub fn observability_report(
    mol: &Molecule,
    mat: &Material,
    geom: &SurfaceGeometry,
    t: f64,
    margin: f64,
) -> Result<ObservabilityReport> {
    if !(margin.is_finite() && margin > 0.0) {
        return Err(invalid("margin", format!("must be positive, got {margin}")));
    }
    let nu_r = mol.nu_r();
    let delta_nu_pm = splitting_curvature(mol, mat, geom)?;
    let natural_width = natural_linewidth(mol, nu_r);
    let doppler_width = doppler_broadening(mol, nu_r, t)?;
    let ratio_to_natural = delta_nu_pm.abs() / natural_width;
    let ratio_to_doppler = delta_nu_pm.abs() / doppler_width;
    Ok(ObservabilityReport {
        molecule: mol.name.clone(),
        material: mat.name.clone(),
        d: geom.d,
        r1: geom.r1,
        r2: geom.r2,
        temperature: t,
        nu_r,
        delta_nu_12: splitting_plane(mol, mat, geom.d)?,
        delta_nu_pm,
        delta_nu_pm_conductor_limit: splitting_curvature_conductor_limit(mol.mu, geom),
        natural_width,
        doppler_width,
        margin,
        ratio_to_natural,
        ratio_to_doppler,
        observable: ratio_to_natural > margin && ratio_to_doppler > margin,
    })
}
