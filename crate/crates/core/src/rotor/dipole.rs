//! Closed-form dipole matrix elements of the rigid rotor.

use num_complex::Complex64;
use serde::Serialize;

use super::{l_l1, Axis, AzimuthalState, Molecule, ParityState, Sign};

/// Diagonal second moments ⟨μ̂_x²⟩, ⟨μ̂_y²⟩, ⟨μ̂_z²⟩ (C²·m²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DipoleSecondMoments {
    pub xx: f64,
    pub yy: f64,
    pub zz: f64,
}

impl DipoleSecondMoments {
    pub fn get(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.xx,
            Axis::Y => self.yy,
            Axis::Z => self.zz,
        }
    }

    pub fn trace(&self) -> f64 {
        self.xx + self.yy + self.zz
    }
}

/// ⟨bra| n̂_axis |ket⟩ for the unit vector n̂ along the molecular axis,
/// Condon–Shortley phases.
pub fn direction_cosine(bra: AzimuthalState, ket: AzimuthalState, axis: Axis) -> Complex64 {
    let (l, m) = (ket.l as i64, ket.m as i64);
    let (lb, mb) = (bra.l as i64, bra.m as i64);
    let up = lb == l + 1;
    let down = lb + 1 == l;
    if !(up || down) {
        return Complex64::new(0.0, 0.0);
    }
    let lf = l as f64;
    let mf = m as f64;
    // ⟨l±1, m| cosθ |l, m⟩
    let cos = || -> f64 {
        if up {
            (((lf + 1.0).powi(2) - mf * mf) / ((2.0 * lf + 1.0) * (2.0 * lf + 3.0))).sqrt()
        } else {
            ((lf * lf - mf * mf) / ((2.0 * lf - 1.0) * (2.0 * lf + 1.0))).sqrt()
        }
    };
    // ⟨l±1, m+1| sinθ e^{iφ} |l, m⟩
    let raise = || -> f64 {
        if up {
            -(((lf + mf + 1.0) * (lf + mf + 2.0)) / ((2.0 * lf + 1.0) * (2.0 * lf + 3.0))).sqrt()
        } else {
            (((lf - mf) * (lf - mf - 1.0)) / ((2.0 * lf - 1.0) * (2.0 * lf + 1.0))).sqrt()
        }
    };
    // ⟨l±1, m−1| sinθ e^{−iφ} |l, m⟩
    let lower = || -> f64 {
        if up {
            (((lf - mf + 1.0) * (lf - mf + 2.0)) / ((2.0 * lf + 1.0) * (2.0 * lf + 3.0))).sqrt()
        } else {
            -(((lf + mf) * (lf + mf - 1.0)) / ((2.0 * lf - 1.0) * (2.0 * lf + 1.0))).sqrt()
        }
    };
    match axis {
        Axis::Z if mb == m => Complex64::new(cos(), 0.0),
        // n_x = (s₊ + s₋)/2, n_y = (s₊ − s₋)/2i
        Axis::X if mb == m + 1 => Complex64::new(0.5 * raise(), 0.0),
        Axis::X if mb == m - 1 => Complex64::new(0.5 * lower(), 0.0),
        Axis::Y if mb == m + 1 => Complex64::new(0.0, -0.5 * raise()),
        Axis::Y if mb == m - 1 => Complex64::new(0.0, 0.5 * lower()),
        _ => Complex64::new(0.0, 0.0),
    }
}

/// μ_axis^{ba} = μ ⟨b| n̂_axis |a⟩.
pub fn dipole_element(mol: &Molecule, a: AzimuthalState, b: AzimuthalState, axis: Axis) -> Complex64 {
    mol.mu * direction_cosine(b, a, axis)
}

pub fn second_moments_m_basis(mol: &Molecule, st: AzimuthalState) -> DipoleSecondMoments {
    let ll = l_l1(st.l);
    let m2 = f64::from(st.m * st.m);
    let mu2 = mol.mu * mol.mu;
    let den = 4.0 * ll - 3.0;
    let xx = mu2 * (ll + m2 - 1.0) / den;
    DipoleSecondMoments {
        xx,
        yy: xx,
        zz: mu2 * (2.0 * ll - 2.0 * m2 - 1.0) / den,
    }
}

pub fn second_moments_parity_basis(mol: &Molecule, st: ParityState) -> DipoleSecondMoments {
    let base = second_moments_m_basis(
        mol,
        AzimuthalState {
            l: st.l,
            m: st.m_abs as i32,
        },
    );
    if st.m_abs != 1 {
        return base;
    }
    let ll = l_l1(st.l);
    let mu2 = mol.mu * mol.mu;
    let big = 3.0 * mu2 * ll / (8.0 * ll - 6.0);
    let small = mu2 * ll / (8.0 * ll - 6.0);
    let (xx, yy) = match st.s {
        Sign::Plus => (big, small),
        Sign::Minus => (small, big),
    };
    DipoleSecondMoments { xx, yy, zz: base.zz }
}

/// Coordinate reflections x → −x and y → −y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reflection {
    X,
    Y,
}

/// R|l,m⟩ = phase·|l,−m⟩ with R_x phase +1 and R_y phase (−1)^m.
pub fn reflection_action(st: AzimuthalState, r: Reflection) -> (AzimuthalState, i32) {
    let image = AzimuthalState { l: st.l, m: -st.m };
    let phase = match r {
        Reflection::X => 1,
        Reflection::Y => {
            if st.m.rem_euclid(2) == 0 {
                1
            } else {
                -1
            }
        }
    };
    (image, phase)
}
