//! Rigid-rotor model of a closed-shell polar diatomic molecule.
//!
//! States are labelled either by (l, m), the eigenvalues of L² and L_z with z
//! along the surface normal, or by the reflection-parity combinations
//! |l,|m|,±⟩ = (|l,m⟩ ± (−1)^|m| |l,−m⟩)/√2, which diagonalize any interaction
//! symmetric under x → −x and y → −y.

mod dipole;
pub mod oracle;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use dipole::{
    dipole_element, direction_cosine, reflection_action, second_moments_m_basis, second_moments_parity_basis,
    DipoleSecondMoments, Reflection,
};

use crate::error::{invalid, Error, Result};
use crate::units::{DIPOLE_UNIT, GIGA_RAD_PER_S, HBAR, SPEED_OF_LIGHT};

/// Default upper bound on l for level enumerations.
pub const DEFAULT_L_MAX: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Molecule {
    pub name: String,
    /// Rotational angular frequency ω_r = ħ/I (rad/s).
    pub omega_r: f64,
    /// Permanent dipole moment (C·m).
    pub mu: f64,
    /// Relative molecular mass.
    pub relative_mass: f64,
}

/// Molecule parameters in tabulated units, as found in configuration files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoleculeDef {
    pub name: String,
    pub omega_r_e9: f64,
    #[serde(rename = "mu_e-30")]
    pub mu_e30: f64,
    #[serde(rename = "M_r")]
    pub relative_mass: f64,
}

// Masses of the most abundant isotopes (u): 1H 1.007825, 7Li 7.016004,
// 23Na 22.989770, 85Rb 84.911790, 133Cs 132.905452.
const H1: f64 = 1.007_825;
const LI7: f64 = 7.016_004;
const NA23: f64 = 22.989_770;
const RB85: f64 = 84.911_790;
const CS133: f64 = 132.905_452;

/// (name, ω_r [10⁹ rad/s], μ [10⁻³⁰ C·m], M_r)
const TABLE: [(&str, f64, f64, f64); 5] = [
    ("LiH", 2790.0, 19.6, LI7 + H1),
    ("LiRb", 83.0, 13.5, LI7 + RB85),
    ("LiCs", 73.0, 21.0, LI7 + CS133),
    ("NaRb", 25.5, 11.7, NA23 + RB85),
    ("NaCs", 22.2, 19.5, NA23 + CS133),
];

impl Molecule {
    pub fn new(name: impl Into<String>, omega_r: f64, mu: f64, relative_mass: f64) -> Result<Self> {
        for (n, v) in [("omega_r", omega_r), ("mu", mu), ("M_r", relative_mass)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(n, format!("must be positive and finite, got {v}")));
            }
        }
        Ok(Self {
            name: name.into(),
            omega_r,
            mu,
            relative_mass,
        })
    }

    pub fn from_def(def: &MoleculeDef) -> Result<Self> {
        Self::new(
            def.name.clone(),
            def.omega_r_e9 * GIGA_RAD_PER_S,
            def.mu_e30 * DIPOLE_UNIT,
            def.relative_mass,
        )
    }

    pub fn to_def(&self) -> MoleculeDef {
        MoleculeDef {
            name: self.name.clone(),
            omega_r_e9: self.omega_r / GIGA_RAD_PER_S,
            mu_e30: self.mu / DIPOLE_UNIT,
            relative_mass: self.relative_mass,
        }
    }

    /// Wavelength of the 0 → 1 transition, 2πc/ω_r (m).
    pub fn lambda_r(&self) -> f64 {
        2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / self.omega_r
    }

    /// Free-space frequency of the 1 → 0 line, ω_r/2π (Hz).
    pub fn nu_r(&self) -> f64 {
        self.omega_r / (2.0 * std::f64::consts::PI)
    }

    /// E_l = ħω_r l(l+1)/2.
    pub fn energy(&self, l: u32) -> f64 {
        0.5 * HBAR * self.omega_r * l_l1(l)
    }

    /// ω_ab = (E_b − E_a)/ħ, computed without forming the energies.
    pub fn transition_omega(&self, a: AzimuthalState, b: AzimuthalState) -> f64 {
        transition_omega_l(self.omega_r, a.l, b.l)
    }
}

pub(crate) fn transition_omega_l(omega_r: f64, la: u32, lb: u32) -> f64 {
    0.5 * omega_r * (l_l1(lb) - l_l1(la))
}

pub(crate) fn l_l1(l: u32) -> f64 {
    let l = f64::from(l);
    l * (l + 1.0)
}

pub fn builtin_molecules() -> Vec<Molecule> {
    TABLE
        .iter()
        .map(|&(name, w, mu, m)| Molecule {
            name: name.to_string(),
            omega_r: w * GIGA_RAD_PER_S,
            mu: mu * DIPOLE_UNIT,
            relative_mass: m,
        })
        .collect()
}

/// Case-insensitive lookup in the built-in registry.
pub fn lookup(name: &str) -> Result<Molecule> {
    builtin_molecules()
        .into_iter()
        .find(|m| m.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::Unknown {
            kind: "molecule",
            name: name.to_string(),
        })
}

/// |l, m⟩
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AzimuthalState {
    pub l: u32,
    pub m: i32,
}

impl AzimuthalState {
    pub fn new(l: i64, m: i64) -> Result<Self> {
        if l < 0 {
            return Err(Error::InvalidState(format!("l = {l} is negative")));
        }
        if m.abs() > l {
            return Err(Error::InvalidState(format!("|m| = {} exceeds l = {l}", m.abs())));
        }
        Ok(Self {
            l: l as u32,
            m: m as i32,
        })
    }

    /// Every |l, m⟩ with the given l, m ascending.
    pub fn multiplet(l: u32) -> impl Iterator<Item = AzimuthalState> {
        let li = l as i32;
        (-li..=li).map(move |m| AzimuthalState { l, m })
    }
}

impl fmt::Display for AzimuthalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{}>", self.l, self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// |l, |m|, s⟩; only s = + exists for |m| = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ParityState {
    pub l: u32,
    pub m_abs: u32,
    pub s: Sign,
}

impl ParityState {
    pub fn new(l: u32, m_abs: u32, s: Sign) -> Result<Self> {
        if m_abs > l {
            return Err(Error::InvalidState(format!("|m| = {m_abs} exceeds l = {l}")));
        }
        if m_abs == 0 && s == Sign::Minus {
            return Err(Error::InvalidState("|l,0,-> does not exist".into()));
        }
        Ok(Self { l, m_abs, s })
    }

    /// All parity states of one l, ordered by |m| then sign (+ first).
    pub fn multiplet(l: u32) -> impl Iterator<Item = ParityState> {
        (0..=l).flat_map(move |m_abs| {
            let signs: &[Sign] = if m_abs == 0 {
                &[Sign::Plus]
            } else {
                &[Sign::Plus, Sign::Minus]
            };
            signs.iter().map(move |&s| ParityState { l, m_abs, s })
        })
    }

    /// Expansion coefficients over |l, m⟩.
    pub fn components(&self) -> Vec<(AzimuthalState, f64)> {
        let m = self.m_abs as i32;
        if m == 0 {
            return vec![(AzimuthalState { l: self.l, m: 0 }, 1.0)];
        }
        let phase = if m % 2 == 0 { 1.0 } else { -1.0 };
        let c = std::f64::consts::FRAC_1_SQRT_2;
        vec![
            (AzimuthalState { l: self.l, m }, c),
            (
                AzimuthalState { l: self.l, m: -m },
                f64::from(self.s.value()) * phase * c,
            ),
        ]
    }

    /// Eigenvalue (±1) under the given reflection.
    pub fn reflection_eigenvalue(&self, r: Reflection) -> i32 {
        match r {
            Reflection::X => {
                let phase = if self.m_abs.is_multiple_of(2) { 1 } else { -1 };
                self.s.value() * phase
            }
            Reflection::Y => self.s.value(),
        }
    }
}

impl fmt::Display for ParityState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{},{}>", self.l, self.m_abs, self.s)
    }
}

/// A rotor state in either labelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RotorState {
    Azimuthal(AzimuthalState),
    Parity(ParityState),
}

impl RotorState {
    pub fn l(&self) -> u32 {
        match self {
            RotorState::Azimuthal(s) => s.l,
            RotorState::Parity(s) => s.l,
        }
    }

    pub fn components(&self) -> Vec<(AzimuthalState, f64)> {
        match self {
            RotorState::Azimuthal(s) => vec![(*s, 1.0)],
            RotorState::Parity(s) => s.components(),
        }
    }

    /// ⟨μ̂_i²⟩ from the closed forms of the matching basis.
    pub fn second_moments(&self, mol: &Molecule) -> DipoleSecondMoments {
        match self {
            RotorState::Azimuthal(s) => second_moments_m_basis(mol, *s),
            RotorState::Parity(s) => second_moments_parity_basis(mol, *s),
        }
    }
}

impl From<AzimuthalState> for RotorState {
    fn from(s: AzimuthalState) -> Self {
        RotorState::Azimuthal(s)
    }
}

impl From<ParityState> for RotorState {
    fn from(s: ParityState) -> Self {
        RotorState::Parity(s)
    }
}

impl fmt::Display for RotorState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RotorState::Azimuthal(s) => s.fmt(f),
            RotorState::Parity(s) => s.fmt(f),
        }
    }
}
