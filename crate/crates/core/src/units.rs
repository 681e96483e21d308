//! Physical constants (SI, CODATA 2018 exact/recommended values) and small
//! numeric helpers shared across the crate.
//!
//! Everything inside the library is SI. Conversions from the units used in
//! tables and on the command line (nm, µm, 10⁹ rad/s, 10⁻³⁰ C·m) live here so
//! that they happen exactly once, at the boundary.

use std::f64::consts::PI;

/// Planck constant h (J·s), exact.
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Reduced Planck constant ħ = h/2π (J·s).
pub const HBAR: f64 = PLANCK / (2.0 * PI);
/// Speed of light in vacuum (m/s), exact.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;
/// Boltzmann constant (J/K), exact.
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Vacuum permittivity ε₀ (F/m).
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
/// Avogadro constant (1/mol), exact.
pub const AVOGADRO: f64 = 6.022_140_76e23;

pub const NANOMETER: f64 = 1e-9;
pub const MICROMETER: f64 = 1e-6;
pub const MILLIMETER: f64 = 1e-3;
/// Tabulated rotational frequencies are given in 10⁹ rad/s.
pub const GIGA_RAD_PER_S: f64 = 1e9;
/// Tabulated phonon and damping frequencies are given in 10¹² rad/s.
pub const TERA_RAD_PER_S: f64 = 1e12;
/// Tabulated dipole moments are given in 10⁻³⁰ C·m.
pub const DIPOLE_UNIT: f64 = 1e-30;
/// Relative molecular mass → kg/mol.
pub const KG_PER_MOL_PER_DALTON: f64 = 1e-3;

/// The constant set as a value, for callers that want to pass it around.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub h: f64,
    pub c: f64,
    pub k_b: f64,
    pub eps0: f64,
    pub n_a: f64,
}

pub const fn constants() -> PhysicalConstants {
    PhysicalConstants {
        hbar: HBAR,
        h: PLANCK,
        c: SPEED_OF_LIGHT,
        k_b: BOLTZMANN,
        eps0: VACUUM_PERMITTIVITY,
        n_a: AVOGADRO,
    }
}

/// Hyperbolic cotangent, odd in `x`, evaluated as `1 + 2/expm1(2|x|)` so that
/// both the small-argument (≈ 1/x) and large-argument (→ 1) regimes keep full
/// relative precision.
pub fn coth(x: f64) -> f64 {
    if x == 0.0 {
        return f64::INFINITY;
    }
    let a = x.abs();
    let v = if a > 350.0 { 1.0 } else { 1.0 + 2.0 / (2.0 * a).exp_m1() };
    v.copysign(x)
}
