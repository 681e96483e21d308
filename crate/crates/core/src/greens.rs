//! Non-retarded surface Green's function of a dielectric half-space at the
//! molecule's position, in the principal-axis frame of the nearest surface
//! point: z from the surface towards the molecule, x and y along the
//! principal directions with radii R₁ and R₂.
//!
//! The curved-surface result is the first-order derivative expansion
//!
//! G_zz    = G_zz^plane    + β₁/(32πε₀d³) · (d/R₁ + d/R₂)
//! G_xx/yy = G_xx/yy^plane + 1/(32πε₀d³) · [β₂ (d/R₁ + d/R₂) ± β₃/2 (d/R₁ − d/R₂)]
//!
//! valid for |d/R| ≪ 1. Retardation is not included anywhere in this module.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::materials::{image_factor, static_image_factor, Material};
use crate::units::VACUUM_PERMITTIVITY;

/// Ratios within this relative distance of a threshold count as on it, so
/// that e.g. d = 300 nm, R = 1 µm is not rejected by rounding of d/R.
const RATIO_SLACK: f64 = 1e-12;

/// Validity thresholds on |d/R| for the first-order curvature expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureGuard {
    pub warn: f64,
    pub reject: f64,
}

impl Default for CurvatureGuard {
    fn default() -> Self {
        Self { warn: 0.1, reject: 0.3 }
    }
}

/// Separation and principal radii at the point of the surface closest to the
/// molecule. Positive radii curve away from the molecule; infinite radii are
/// flat directions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceGeometry {
    pub d: f64,
    pub r1: f64,
    pub r2: f64,
}

impl SurfaceGeometry {
    pub fn plane(d: f64) -> Result<Self> {
        Self::new(d, f64::INFINITY, f64::INFINITY)
    }

    pub fn new(d: f64, r1: f64, r2: f64) -> Result<Self> {
        Self::with_guard(d, r1, r2, CurvatureGuard::default())
    }

    pub fn with_guard(d: f64, r1: f64, r2: f64, guard: CurvatureGuard) -> Result<Self> {
        if !(d.is_finite() && d > 0.0) {
            return Err(invalid("d", format!("separation must be positive, got {d}")));
        }
        for (name, r) in [("R1", r1), ("R2", r2)] {
            if r.is_nan() || r == 0.0 {
                return Err(invalid(name, format!("radius must be nonzero, got {r}")));
            }
        }
        let g = Self { d, r1, r2 };
        let worst = g.max_abs_ratio();
        if worst > guard.reject * (1.0 + RATIO_SLACK) {
            return Err(Error::CurvatureTooLarge {
                ratio: worst,
                cap: guard.reject,
            });
        }
        Ok(g)
    }

    /// d/R₁
    pub fn k1(&self) -> f64 {
        self.d / self.r1
    }

    /// d/R₂
    pub fn k2(&self) -> f64 {
        self.d / self.r2
    }

    /// d/R₁ + d/R₂
    pub fn mean_curvature_term(&self) -> f64 {
        self.k1() + self.k2()
    }

    /// d/R₁ − d/R₂
    pub fn anisotropy_term(&self) -> f64 {
        self.k1() - self.k2()
    }

    pub fn is_plane(&self) -> bool {
        self.k1() == 0.0 && self.k2() == 0.0
    }

    pub fn max_abs_ratio(&self) -> f64 {
        self.k1().abs().max(self.k2().abs())
    }

    /// Soft warnings for ratios past `guard.warn`.
    pub fn warnings(&self, guard: CurvatureGuard) -> Vec<String> {
        [("R1", self.k1()), ("R2", self.k2())]
            .into_iter()
            .filter(|(_, k)| k.abs() > guard.warn * (1.0 + RATIO_SLACK))
            .map(|(n, k)| {
                format!(
                    "|d/{n}| = {:.3} exceeds {}; first-order curvature terms may be inaccurate",
                    k.abs(),
                    guard.warn
                )
            })
            .collect()
    }

    /// The same geometry with axes relabelled so that d/R₁ ≥ d/R₂. The second
    /// value is true when x and y were exchanged.
    pub fn canonical(&self) -> (Self, bool) {
        if self.k1() >= self.k2() {
            (*self, false)
        } else {
            (
                Self {
                    d: self.d,
                    r1: self.r2,
                    r2: self.r1,
                },
                true,
            )
        }
    }

    pub fn with_separation(&self, d: f64) -> Result<Self> {
        Self::new(d, self.r1, self.r2)
    }
}

/// Diagonal of the static surface Green's tensor (V/(m·C·m) = 1/(F·m²)). The
/// xz and yz components vanish at this order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GreensDiagonal {
    pub gxx: f64,
    pub gyy: f64,
    pub gzz: f64,
}

impl GreensDiagonal {
    pub fn as_array(&self) -> [f64; 3] {
        [self.gxx, self.gyy, self.gzz]
    }

    pub fn get(&self, axis: crate::rotor::Axis) -> f64 {
        self.as_array()[axis.index()]
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            gxx: self.gxx - other.gxx,
            gyy: self.gyy - other.gyy,
            gzz: self.gzz - other.gzz,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexGreensDiagonal {
    pub gxx: Complex64,
    pub gyy: Complex64,
    pub gzz: Complex64,
}

impl ComplexGreensDiagonal {
    pub fn re(&self) -> GreensDiagonal {
        GreensDiagonal {
            gxx: self.gxx.re,
            gyy: self.gyy.re,
            gzz: self.gzz.re,
        }
    }
}

/// Dimensionless derivative-expansion coefficients β₁, β₂, β₃.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureCoefficients {
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: f64,
}

/// 1/(32π ε₀ d³)
fn unit(d: f64) -> f64 {
    1.0 / (32.0 * PI * VACUUM_PERMITTIVITY * d * d * d)
}

fn check_eps(eps: f64) -> Result<()> {
    if eps.is_nan() || eps < 1.0 {
        return Err(invalid(
            "eps",
            format!("permittivity below 1 is not supported, got {eps}"),
        ));
    }
    Ok(())
}

fn check_d(d: f64) -> Result<()> {
    if !(d.is_finite() && d > 0.0) {
        return Err(invalid("d", format!("separation must be positive, got {d}")));
    }
    Ok(())
}

/// Image-dipole field of a flat half-space: G_xx = G_yy = G_zz/2.
pub fn plane_static_green(d: f64, eps: f64) -> Result<GreensDiagonal> {
    check_d(d)?;
    check_eps(eps)?;
    Ok(plane_from_factor(d, static_image_factor(eps)))
}

fn plane_from_factor(d: f64, f: f64) -> GreensDiagonal {
    let g = unit(d) * f;
    GreensDiagonal {
        gxx: g,
        gyy: g,
        gzz: 2.0 * g,
    }
}

/// First-order curvature expansion of the static Green's function.
pub fn curved_static_green(geom: &SurfaceGeometry, eps: f64) -> Result<GreensDiagonal> {
    check_eps(eps)?;
    let f = static_image_factor(eps);
    let s = geom.mean_curvature_term();
    let a = geom.anisotropy_term();
    let u = unit(geom.d) * f;
    let sym = (5.0 + 3.0 * eps) / (4.0 * (eps + 1.0));
    let split = (1.0 + 3.0 * eps) / (8.0 * (eps + 1.0));
    Ok(GreensDiagonal {
        gxx: u * (1.0 - sym * s - split * a),
        gyy: u * (1.0 - sym * s + split * a),
        gzz: 2.0 * u * (1.0 - (3.0 + eps) / (4.0 * (eps + 1.0)) * s),
    })
}

/// β coefficients obtained by matching the rotation-invariant ansatz to the
/// small-distance expansion of the curved Green's function.
pub fn curvature_coefficients(eps: f64) -> Result<CurvatureCoefficients> {
    check_eps(eps)?;
    let e1 = eps + 1.0;
    let em = eps - 1.0;
    Ok(CurvatureCoefficients {
        beta1: -em * (3.0 + eps) / (2.0 * e1 * e1),
        beta2: -em * (5.0 + 3.0 * eps) / (4.0 * e1 * e1),
        beta3: -em * (1.0 + 3.0 * eps) / (4.0 * e1 * e1),
    })
}

/// Builds the curved Green's function from the ansatz: plane value plus
/// β-weighted second derivatives of the height profile
/// H = d + x²/(2R₁) + y²/(2R₂), i.e. ∇²H = 1/R₁ + 1/R₂ and
/// ∂_x∂_x H − ½∇²H = −(∂_y∂_y H − ½∇²H) = ½(1/R₁ − 1/R₂).
pub fn green_from_coefficients(
    geom: &SurfaceGeometry,
    eps: f64,
    beta: &CurvatureCoefficients,
) -> Result<GreensDiagonal> {
    let plane = plane_static_green(geom.d, eps)?;
    let lap = 1.0 / geom.r1 + 1.0 / geom.r2;
    let traceless_xx = 0.5 * (1.0 / geom.r1 - 1.0 / geom.r2);
    let pref = 1.0 / (32.0 * PI * VACUUM_PERMITTIVITY * geom.d * geom.d);
    Ok(GreensDiagonal {
        gxx: plane.gxx + pref * (beta.beta2 * lap + beta.beta3 * traceless_xx),
        gyy: plane.gyy + pref * (beta.beta2 * lap - beta.beta3 * traceless_xx),
        gzz: plane.gzz + pref * beta.beta1 * lap,
    })
}

/// Argument of a frequency-dependent Green's function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Frequency {
    /// Real angular frequency ω (rad/s).
    Real(f64),
    /// Imaginary frequency iξ, given by ξ (rad/s).
    Imaginary(f64),
}

/// Plane Green's function with the static image factor replaced by
/// (ε(ω)−1)/(ε(ω)+1). On the imaginary axis the result is real.
pub fn dispersive_plane_green(d: f64, mat: &Material, freq: Frequency) -> Result<ComplexGreensDiagonal> {
    check_d(d)?;
    let f = match freq {
        Frequency::Real(w) => image_factor(mat.permittivity(w)?),
        Frequency::Imaginary(xi) => {
            if xi.is_nan() || xi < 0.0 {
                return Err(invalid("xi", format!("must be >= 0, got {xi}")));
            }
            Complex64::new(static_image_factor(mat.permittivity_imag_axis(xi)), 0.0)
        }
    };
    let g = unit(d) * f;
    Ok(ComplexGreensDiagonal {
        gxx: g,
        gyy: g,
        gzz: 2.0 * g,
    })
}
