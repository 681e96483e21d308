//! Output records. Field order is the CSV column order and the JSON key
//! order; names carry their units. Radii are numbers in µm or the string
//! `"inf"` / `"-inf"` for flat directions.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoleculeRow {
    pub name: String,
    pub omega_r_e9: f64,
    pub lambda_r_mm: f64,
    #[serde(rename = "mu_e-30")]
    pub mu_e30: f64,
    #[serde(rename = "M_r")]
    pub relative_mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaterialRow {
    pub name: String,
    pub eps_st: f64,
    pub eps_inf: f64,
    #[serde(rename = "omega_T_e12")]
    pub omega_t_e12: f64,
    pub gamma_e12: f64,
}

/// One parity state of the level diagram. Energies are in `unit` (Hz = E/h, or J).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRow {
    pub molecule: String,
    pub material: String,
    pub d_nm: f64,
    #[serde(rename = "R1_um", with = "radius")]
    pub r1_um: f64,
    #[serde(rename = "R2_um", with = "radius")]
    pub r2_um: f64,
    pub l: u32,
    pub m_abs: u32,
    pub parity: String,
    pub unit: String,
    pub e_free: f64,
    pub shift_plane: f64,
    pub shift_curv: f64,
    pub shift_total: f64,
    pub e_total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineRow {
    pub molecule: String,
    pub material: String,
    pub d_nm: f64,
    #[serde(rename = "R1_um", with = "radius")]
    pub r1_um: f64,
    #[serde(rename = "R2_um", with = "radius")]
    pub r2_um: f64,
    #[serde(rename = "T_K")]
    pub temperature: f64,
    pub branch: String,
    pub label: String,
    pub upper: String,
    pub lower: String,
    pub polarization: String,
    /// Viewing axes separated by spaces, e.g. `"x y"`.
    pub visible_from: String,
    pub frequency_hz: f64,
    pub free_frequency_hz: f64,
    pub offset_hz: f64,
    pub natural_width_hz: f64,
    pub doppler_width_hz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplittingRow {
    pub molecule: String,
    pub material: String,
    pub d_nm: f64,
    #[serde(rename = "R1_um", with = "radius")]
    pub r1_um: f64,
    #[serde(rename = "R2_um", with = "radius")]
    pub r2_um: f64,
    pub delta_nu_12_hz: f64,
    pub delta_nu_pm_hz: f64,
    pub delta_nu_pm_conductor_limit_hz: f64,
}

/// Line catalogue with the 1 → 0 splitting summary, as emitted in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub lines: Vec<LineRow>,
    pub splittings: Vec<SplittingRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservabilityRow {
    pub molecule: String,
    pub material: String,
    pub d_nm: f64,
    #[serde(rename = "R1_um", with = "radius")]
    pub r1_um: f64,
    #[serde(rename = "R2_um", with = "radius")]
    pub r2_um: f64,
    #[serde(rename = "T_K")]
    pub temperature: f64,
    pub nu_r_hz: f64,
    pub delta_nu_12_hz: f64,
    pub delta_nu_pm_hz: f64,
    pub delta_nu_pm_conductor_limit_hz: f64,
    pub natural_width_hz: f64,
    pub doppler_width_hz: f64,
    pub margin: f64,
    pub ratio_to_natural: f64,
    pub ratio_to_doppler: f64,
    pub observable: bool,
}

mod radius {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &f64, s: S) -> Result<S::Ok, S::Error> {
        if r.is_infinite() {
            s.serialize_str(if *r > 0.0 { "inf" } else { "-inf" })
        } else {
            s.serialize_f64(*r)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Number(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Number(v) => Ok(v),
            Repr::Text(t) => crate::config::parse_radius(&t).map_err(serde::de::Error::custom),
        }
    }
}
