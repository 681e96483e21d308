//! Casimir–Polder free-energy shift of a rotor state near a surface,
//! non-retarded, at temperature T:
//!
//! ΔF = ΔF^nr + ΔF^r
//! ΔF^nr = −k_B T Σ′_n α_ij(iξ_n) G_ij(iξ_n)                 (n = 0 at weight ½)
//! ΔF^r  = Σ_b n(ω_ab, T) μ_i^{ab} μ_j^{ba} Re G_ij(|ω_ba|)
//!
//! With a frequency-independent Green's function both pieces have closed
//! forms in coth(ħω_ab/2k_BT) and their sum collapses to the
//! temperature-independent −½ G_ij ⟨μ̂_i μ̂_j⟩. The Matsubara sum is kept as an
//! independent numerical route to that result and to handle dispersive
//! surfaces.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::greens::{curved_static_green, dispersive_plane_green, Frequency, GreensDiagonal, SurfaceGeometry};
use crate::materials::Material;
use crate::rotor::{dipole_element, l_l1, AzimuthalState, DipoleSecondMoments, Molecule, ParityState, RotorState};
use crate::units::{coth, BOLTZMANN, HBAR};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiftBreakdown {
    /// J
    pub nonresonant: f64,
    /// J
    pub resonant: f64,
    /// J
    pub total: f64,
    /// K
    pub temperature: f64,
    /// Explicit Matsubara terms summed; 0 when the closed form was used.
    pub matsubara_terms_used: usize,
}

/// Truncation control for the Matsubara sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumSettings {
    pub rel_tol: f64,
    pub n_max: usize,
    /// Consecutive terms below `rel_tol` required before stopping.
    pub patience: usize,
}

impl Default for SumSettings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            n_max: 1_000_000,
            patience: 3,
        }
    }
}

fn check_temperature(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(invalid("T", format!("temperature must be positive, got {t}")));
    }
    Ok(())
}

/// Spacing 2π k_B T/ħ of the Matsubara frequencies.
pub fn matsubara_spacing(t: f64) -> f64 {
    2.0 * std::f64::consts::PI * BOLTZMANN * t / HBAR
}

/// ξ_0 … ξ_{n_max}.
pub fn matsubara_frequencies(t: f64, n_max: usize) -> Result<Vec<f64>> {
    check_temperature(t)?;
    let step = matsubara_spacing(t);
    Ok((0..=n_max).map(|n| n as f64 * step).collect())
}

/// n(ω, T) = 1/(exp(ħω/k_BT) − 1); defined for negative ω as well.
pub fn bose_einstein(omega: f64, t: f64) -> Result<f64> {
    check_temperature(t)?;
    if omega == 0.0 || !omega.is_finite() {
        return Err(invalid(
            "omega",
            format!("Bose factor diverges or is undefined at omega = {omega}"),
        ));
    }
    let x = HBAR * omega / (BOLTZMANN * t);
    if x > 700.0 {
        return Ok(0.0);
    }
    Ok(1.0 / x.exp_m1())
}

/// Intermediate levels l_b = l_a ± 1 reached by one dipole step, with the
/// summed dipole products Σ_b μ_i^{ab} μ_j^{ba} over the 2l_b+1 degenerate states.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    pub l_b: u32,
    /// ω_ab = (E_b − E_a)/ħ (rad/s)
    pub omega_ab: f64,
    /// Σ_b μ_i^{ab} μ_j^{ba} (C²·m²)
    pub products: [[Complex64; 3]; 3],
}

impl Channel {
    /// Diagonal products Σ_b |μ_i^{ba}|².
    pub fn diagonal(&self) -> [f64; 3] {
        [self.products[0][0].re, self.products[1][1].re, self.products[2][2].re]
    }
}

pub fn channels(mol: &Molecule, state: &RotorState) -> Vec<Channel> {
    let comps = state.components();
    let l = state.l();
    let mut out = Vec::with_capacity(2);
    let mut targets = vec![l + 1];
    if l > 0 {
        targets.insert(0, l - 1);
    }
    for lb in targets {
        let mut products = [[Complex64::new(0.0, 0.0); 3]; 3];
        for b in AzimuthalState::multiplet(lb) {
            // μ_i^{ba} = ⟨b|μ_i|a⟩ for each Cartesian component
            let mut ba = [Complex64::new(0.0, 0.0); 3];
            for (i, axis) in crate::rotor::Axis::ALL.into_iter().enumerate() {
                ba[i] = comps.iter().map(|&(a, c)| c * dipole_element(mol, a, b, axis)).sum();
            }
            for i in 0..3 {
                for j in 0..3 {
                    products[i][j] += ba[i].conj() * ba[j];
                }
            }
        }
        out.push(Channel {
            l_b: lb,
            omega_ab: 0.5 * mol.omega_r * (l_l1(lb) - l_l1(l)),
            products,
        });
    }
    out
}

/// Real part of α_ij(iξ) (C²·m²/J). The imaginary antisymmetric part of the
/// sum, present for m ≠ 0, drops out of any contraction with a symmetric
/// Green's tensor and is not returned.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Polarizability(pub [[f64; 3]; 3]);

impl Polarizability {
    pub fn diagonal(&self) -> [f64; 3] {
        [self.0[0][0], self.0[1][1], self.0[2][2]]
    }
}

pub fn polarizability(mol: &Molecule, state: impl Into<RotorState>, xi: f64) -> Polarizability {
    polarizability_from_channels(&channels(mol, &state.into()), xi)
}

fn polarizability_from_channels(chs: &[Channel], xi: f64) -> Polarizability {
    let mut a = [[0.0; 3]; 3];
    for ch in chs {
        let w = ch.omega_ab;
        let k = 2.0 / HBAR * w / (xi * xi + w * w);
        for (row, prow) in a.iter_mut().zip(&ch.products) {
            for (v, p) in row.iter_mut().zip(prow) {
                *v += k * p.re;
            }
        }
    }
    Polarizability(a)
}

/// Surface Green's function as seen by the shift formulas.
pub trait GreenProvider {
    /// G(iξ), real.
    fn imaginary_axis(&self, xi: f64) -> Result<GreensDiagonal>;
    /// Re G(ω) on the real axis.
    fn real_axis(&self, omega: f64) -> Result<GreensDiagonal>;
    /// The constant value, if the provider has no frequency dependence.
    fn as_static(&self) -> Option<GreensDiagonal> {
        None
    }
}

/// Frequency-independent Green's function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticGreen(pub GreensDiagonal);

impl StaticGreen {
    pub fn new(geom: &SurfaceGeometry, eps_st: f64) -> Result<Self> {
        Ok(Self(curved_static_green(geom, eps_st)?))
    }
}

impl GreenProvider for StaticGreen {
    fn imaginary_axis(&self, _xi: f64) -> Result<GreensDiagonal> {
        Ok(self.0)
    }

    fn real_axis(&self, _omega: f64) -> Result<GreensDiagonal> {
        Ok(self.0)
    }

    fn as_static(&self) -> Option<GreensDiagonal> {
        Some(self.0)
    }
}

/// Flat surface with the single-resonance permittivity evaluated at each frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersivePlaneGreen {
    pub d: f64,
    pub material: Material,
}

impl GreenProvider for DispersivePlaneGreen {
    fn imaginary_axis(&self, xi: f64) -> Result<GreensDiagonal> {
        Ok(dispersive_plane_green(self.d, &self.material, Frequency::Imaginary(xi))?.re())
    }

    fn real_axis(&self, omega: f64) -> Result<GreensDiagonal> {
        Ok(dispersive_plane_green(self.d, &self.material, Frequency::Real(omega))?.re())
    }
}

fn trace_product(alpha_or_products: [f64; 3], g: &GreensDiagonal) -> f64 {
    alpha_or_products[0] * g.gxx + alpha_or_products[1] * g.gyy + alpha_or_products[2] * g.gzz
}

/// Σ_{n>N} 1/(n² + a²), midpoint integral plus first Euler–Maclaurin correction.
fn lorentzian_tail(n_last: usize, a: f64) -> f64 {
    let x = n_last as f64 + 0.5;
    let integral = (a / x).atan() / a;
    let q = x * x + a * a;
    integral - x / (12.0 * q * q)
}

/// Non-resonant shift by explicit Matsubara summation. Returns the shift (J)
/// and the number of explicit terms; the remainder past the last explicit
/// term is added from the asymptotic 1/(n² + a²) form of the polarizability
/// with G frozen at the truncation frequency.
pub fn shift_nonresonant(
    mol: &Molecule,
    state: impl Into<RotorState>,
    t: f64,
    green: &dyn GreenProvider,
    settings: SumSettings,
) -> Result<(f64, usize)> {
    check_temperature(t)?;
    let chs = channels(mol, &state.into());
    let kt = BOLTZMANN * t;
    let step = matsubara_spacing(t);
    let term = |n: usize| -> Result<f64> {
        let xi = n as f64 * step;
        let g = green.imaginary_axis(xi)?;
        let alpha = polarizability_from_channels(&chs, xi);
        Ok(-kt * trace_product(alpha.diagonal(), &g))
    };
    let mut acc = 0.5 * term(0)?;
    let mut quiet = 0;
    let mut n = 0;
    loop {
        if n >= settings.n_max {
            return Err(Error::NotConverged { terms: n, partial: acc });
        }
        n += 1;
        let v = term(n)?;
        acc += v;
        if v.abs() <= settings.rel_tol * acc.abs() {
            quiet += 1;
            if quiet >= settings.patience {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    let g_tail = green.imaginary_axis((n + 1) as f64 * step)?;
    let mut tail = 0.0;
    for ch in &chs {
        let a = ch.omega_ab.abs() / step;
        let weight = 2.0 / HBAR * ch.omega_ab / (step * step) * lorentzian_tail(n, a);
        tail += -kt * weight * trace_product(ch.diagonal(), &g_tail);
    }
    Ok((acc + tail, n))
}

/// Matsubara sum done analytically for a constant Green's function:
/// −½ G_ii Σ_b |μ_i^{ba}|² coth(ħω_ab/2k_BT).
pub fn shift_nonresonant_closed_form(
    mol: &Molecule,
    state: impl Into<RotorState>,
    t: f64,
    g: &GreensDiagonal,
) -> Result<f64> {
    check_temperature(t)?;
    let kt = BOLTZMANN * t;
    Ok(channels(mol, &state.into())
        .iter()
        .map(|ch| -0.5 * trace_product(ch.diagonal(), g) * coth(HBAR * ch.omega_ab / (2.0 * kt)))
        .sum())
}

/// Resonant (Bose-weighted) shift.
pub fn shift_resonant(mol: &Molecule, state: impl Into<RotorState>, t: f64, green: &dyn GreenProvider) -> Result<f64> {
    check_temperature(t)?;
    let mut total = 0.0;
    for ch in channels(mol, &state.into()) {
        let n = bose_einstein(ch.omega_ab, t)?;
        if n == 0.0 {
            continue;
        }
        let g = green.real_axis(ch.omega_ab.abs())?;
        total += n * trace_product(ch.diagonal(), &g);
    }
    Ok(total)
}

/// ½ G_ii Σ_b |μ_i^{ba}|² [coth(ħω_ab/2k_BT) − 1] for a constant Green's function.
pub fn shift_resonant_closed_form(
    mol: &Molecule,
    state: impl Into<RotorState>,
    t: f64,
    g: &GreensDiagonal,
) -> Result<f64> {
    check_temperature(t)?;
    let kt = BOLTZMANN * t;
    Ok(channels(mol, &state.into())
        .iter()
        .map(|ch| 0.5 * trace_product(ch.diagonal(), g) * (coth(HBAR * ch.omega_ab / (2.0 * kt)) - 1.0))
        .sum())
}

/// Non-resonant plus resonant shift. For a static provider the closed-form
/// Matsubara sum is used if the explicit sum would exceed `n_max`.
pub fn free_energy_shift(
    mol: &Molecule,
    state: impl Into<RotorState>,
    t: f64,
    green: &dyn GreenProvider,
    settings: SumSettings,
) -> Result<ShiftBreakdown> {
    let state = state.into();
    let (nonresonant, used) = match shift_nonresonant(mol, state, t, green, settings) {
        Ok(v) => v,
        Err(Error::NotConverged { .. }) if green.as_static().is_some() => {
            let g = green.as_static().unwrap_or_else(|| unreachable!());
            (shift_nonresonant_closed_form(mol, state, t, &g)?, 0)
        }
        Err(e) => return Err(e),
    };
    let resonant = shift_resonant(mol, state, t, green)?;
    Ok(ShiftBreakdown {
        nonresonant,
        resonant,
        total: nonresonant + resonant,
        temperature: t,
        matsubara_terms_used: used,
    })
}

/// −½ Σ_i G_ii ⟨μ̂_i²⟩: the state-averaged energy of the dipole in its own
/// image field.
pub fn image_energy(g: &GreensDiagonal, moments: &DipoleSecondMoments) -> f64 {
    -0.5 * (g.gxx * moments.xx + g.gyy * moments.yy + g.gzz * moments.zz)
}

/// Temperature-independent shift of a parity state near a (possibly curved)
/// surface with static permittivity `eps_st`.
pub fn shift_total_static(mol: &Molecule, state: ParityState, geom: &SurfaceGeometry, eps_st: f64) -> Result<f64> {
    let g = curved_static_green(geom, eps_st)?;
    Ok(image_energy(&g, &crate::rotor::second_moments_parity_basis(mol, state)))
}
