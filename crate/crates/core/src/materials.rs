//! Dielectric surfaces described by a single transverse-optical resonance.
//!
//! ε(ω) = ε_inf + (ε_st − ε_inf) ω_T² / (ω_T² − ω² − iΓω)

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::units::TERA_RAD_PER_S;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Material {
    pub name: String,
    /// Static dielectric constant.
    pub eps_st: f64,
    /// Optical (high-frequency) dielectric constant.
    pub eps_inf: f64,
    /// Transverse optical phonon frequency (rad/s).
    pub omega_t: f64,
    /// Phenomenological damping (rad/s).
    pub gamma: f64,
}

/// Material parameters in tabulated units, as found in configuration files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaterialDef {
    pub name: String,
    pub eps_st: f64,
    pub eps_inf: f64,
    #[serde(rename = "omega_T_e12")]
    pub omega_t_e12: f64,
    pub gamma_e12: f64,
}

/// (name, ε_st, ε_inf, ω_T [10¹² rad/s], Γ [10¹² rad/s])
const TABLE: [(&str, f64, f64, f64, f64); 4] = [
    ("BaF2", 7.16, 2.12, 33.9, 0.4),
    ("CaF2", 6.82, 2.02, 48.7, 0.8),
    ("Sapphire", 9.32, 3.03, 97.6, 0.5),
    ("SiC", 10.0, 6.7, 149.4, 0.14),
];

impl Material {
    pub fn new(name: impl Into<String>, eps_st: f64, eps_inf: f64, omega_t: f64, gamma: f64) -> Result<Self> {
        let name = name.into();
        if !(eps_inf.is_finite() && eps_inf >= 1.0) {
            return Err(invalid("eps_inf", format!("must be finite and >= 1, got {eps_inf}")));
        }
        if !(eps_st.is_finite() && eps_st >= eps_inf) {
            return Err(invalid(
                "eps_st",
                format!("must be finite and >= eps_inf ({eps_inf}), got {eps_st}"),
            ));
        }
        if !(omega_t.is_finite() && omega_t > 0.0) {
            return Err(invalid("omega_T", format!("must be positive, got {omega_t}")));
        }
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(invalid("gamma", format!("must be non-negative, got {gamma}")));
        }
        Ok(Self {
            name,
            eps_st,
            eps_inf,
            omega_t,
            gamma,
        })
    }

    pub fn from_def(def: &MaterialDef) -> Result<Self> {
        Self::new(
            def.name.clone(),
            def.eps_st,
            def.eps_inf,
            def.omega_t_e12 * TERA_RAD_PER_S,
            def.gamma_e12 * TERA_RAD_PER_S,
        )
    }

    pub fn to_def(&self) -> MaterialDef {
        MaterialDef {
            name: self.name.clone(),
            eps_st: self.eps_st,
            eps_inf: self.eps_inf,
            omega_t_e12: self.omega_t / TERA_RAD_PER_S,
            gamma_e12: self.gamma / TERA_RAD_PER_S,
        }
    }

    /// A surface with no dielectric response, ε ≡ 1.
    pub fn vacuum() -> Self {
        Self {
            name: "vacuum".into(),
            eps_st: 1.0,
            eps_inf: 1.0,
            omega_t: 1.0,
            gamma: 0.0,
        }
    }

    /// Complex permittivity on the real frequency axis (ω ≥ 0).
    pub fn permittivity(&self, omega: f64) -> Result<Complex64> {
        if omega.is_nan() || omega < 0.0 {
            return Err(invalid("omega", format!("must be >= 0, got {omega}")));
        }
        if omega == 0.0 {
            return Ok(Complex64::new(self.eps_st, 0.0));
        }
        let wt2 = self.omega_t * self.omega_t;
        let denom = Complex64::new(wt2 - omega * omega, -self.gamma * omega);
        if denom.norm() == 0.0 {
            return Err(Error::PermittivityPole(self.name.clone()));
        }
        Ok(self.eps_inf + (self.eps_st - self.eps_inf) * wt2 / denom)
    }

    /// Permittivity at imaginary frequency iξ; real and decreasing in ξ.
    pub fn permittivity_imag_axis(&self, xi: f64) -> f64 {
        debug_assert!(xi >= 0.0);
        let wt2 = self.omega_t * self.omega_t;
        self.eps_inf + (self.eps_st - self.eps_inf) * wt2 / (wt2 + xi * xi + self.gamma * xi)
    }

    pub fn static_image_factor(&self) -> f64 {
        static_image_factor(self.eps_st)
    }
}

/// Strength (ε−1)/(ε+1) of the electrostatic image of a dipole in a
/// half-space of permittivity ε.
pub fn static_image_factor(eps: f64) -> f64 {
    (eps - 1.0) / (eps + 1.0)
}

/// Complex image factor for a dispersive permittivity.
pub fn image_factor(eps: Complex64) -> Complex64 {
    (eps - 1.0) / (eps + 1.0)
}

pub fn builtin_materials() -> Vec<Material> {
    TABLE
        .iter()
        .map(|&(name, eps_st, eps_inf, wt, g)| Material {
            name: name.to_string(),
            eps_st,
            eps_inf,
            omega_t: wt * TERA_RAD_PER_S,
            gamma: g * TERA_RAD_PER_S,
        })
        .collect()
}

/// Case-insensitive lookup in the built-in registry.
pub fn lookup(name: &str) -> Result<Material> {
    builtin_materials()
        .into_iter()
        .find(|m| m.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::Unknown {
            kind: "material",
            name: name.to_string(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn registry_holds_table_values() {
        let all = builtin_materials();
        assert_eq!(all.len(), 4);
        assert_eq!(lookup("Sapphire").unwrap().eps_st, 9.32);
        assert_relative_eq!(lookup("SiC").unwrap().gamma, 0.14e12, max_relative = 1e-15);
        assert_eq!(lookup("BaF2").unwrap().eps_inf, 2.12);
        assert_relative_eq!(lookup("sapphire").unwrap().omega_t, 97.6e12, max_relative = 1e-15);
        for m in &all {
            assert!(m.eps_st > m.eps_inf && m.eps_inf > 1.0);
            assert!(m.omega_t > 0.0 && m.gamma >= 0.0);
        }
    }

    #[test]
    fn unknown_material_is_an_error() {
        assert!(matches!(lookup("Unobtainium"), Err(Error::Unknown { .. })));
    }

    #[test]
    fn tabulated_units_round_trip() {
        for m in builtin_materials() {
            let def = m.to_def();
            let back = Material::from_def(&def).unwrap();
            assert_relative_eq!(back.omega_t, m.omega_t, max_relative = 1e-15);
            assert_relative_eq!(back.gamma, m.gamma, max_relative = 1e-15);
        }
        let def = MaterialDef {
            name: "X".into(),
            eps_st: 5.0,
            eps_inf: 2.0,
            omega_t_e12: 10.0,
            gamma_e12: 0.1,
        };
        assert_eq!(Material::from_def(&def).unwrap().omega_t, 10.0e12);
    }

    #[test]
    fn invalid_custom_materials_rejected() {
        assert!(Material::new("a", 2.0, 3.0, 1e12, 0.0).is_err());
        assert!(Material::new("a", 3.0, 0.5, 1e12, 0.0).is_err());
        assert!(Material::new("a", 3.0, 2.0, 0.0, 0.0).is_err());
        assert!(Material::new("a", 3.0, 2.0, 1e12, -1.0).is_err());
    }

    #[test]
    fn static_limit_is_exact() {
        let s = lookup("Sapphire").unwrap();
        assert_eq!(s.permittivity(0.0).unwrap(), Complex64::new(9.32, 0.0));
        assert_eq!(s.permittivity_imag_axis(0.0), 9.32);
    }

    #[test]
    fn optical_limit() {
        for m in builtin_materials() {
            let e = m.permittivity(1e6 * m.omega_t).unwrap();
            assert_relative_eq!(e.re, m.eps_inf, max_relative = 1e-9);
            assert!(e.im.abs() < 1e-9);
        }
    }

    #[test]
    fn at_resonance_imaginary_part_dominates() {
        let sic = lookup("SiC").unwrap();
        let e = sic.permittivity(sic.omega_t).unwrap();
        // ε_inf + (ε_st − ε_inf)ω_T/(−iΓ) = 6.7 + i·3.3·149.4/0.14
        assert_relative_eq!(e.re, 6.7, max_relative = 1e-9);
        assert_relative_eq!(e.im, 3.3 * 149.4 / 0.14, max_relative = 1e-9);
    }

    #[test]
    fn undamped_pole_reported() {
        let m = Material::new("lossless", 5.0, 2.0, 1e13, 0.0).unwrap();
        assert!(matches!(m.permittivity(1e13), Err(Error::PermittivityPole(_))));
        assert!(m.permittivity(0.5e13).unwrap().re.is_finite());
    }

    #[test]
    fn sapphire_flat_below_lih_rotational_frequency() {
        let s = lookup("Sapphire").unwrap();
        let e = s.permittivity_imag_axis(2.79e12);
        assert!((e - 9.32).abs() / 9.32 < 1e-3);
    }

    #[test]
    fn image_factor_values() {
        assert_eq!(static_image_factor(1.0), 0.0);
        assert_relative_eq!(static_image_factor(9.32), 8.32 / 10.32, max_relative = 1e-15);
        assert_relative_eq!(static_image_factor(9.32), 0.806_201_550_387_596_9, max_relative = 1e-14);
        assert!((static_image_factor(1e12) - 1.0).abs() < 1e-11);
    }

    proptest! {
        #[test]
        fn imaginary_axis_monotone_and_bounded(k in 0usize..4, a in -3.0f64..3.0, b in -3.0f64..3.0) {
            let m = &builtin_materials()[k];
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assume!(hi - lo > 1e-6);
            let x1 = m.omega_t * 10f64.powf(lo);
            let x2 = m.omega_t * 10f64.powf(hi);
            let e1 = m.permittivity_imag_axis(x1);
            let e2 = m.permittivity_imag_axis(x2);
            prop_assert!(e1 > e2);
            prop_assert!(e1 <= m.eps_st && e2 > m.eps_inf);
        }

        #[test]
        fn passivity(k in 0usize..4, a in -4.0f64..4.0) {
            let m = &builtin_materials()[k];
            let e = m.permittivity(m.omega_t * 10f64.powf(a)).unwrap();
            prop_assert!(e.im >= 0.0);
        }
    }
}
