//! Quadrature oracle for rotor matrix elements.
//!
//! Matrix elements are obtained by integrating products of spherical
//! harmonics over the sphere: Gauss–Legendre in cosθ and a uniform grid in φ.
//! Nothing here uses the closed-form selection rules or coefficients, so the
//! results can be compared against them.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{Axis, AzimuthalState, Molecule};
use crate::error::{Error, Result};

/// Agreement demanded between two successive quadrature orders.
pub const CONVERGENCE_TOL: f64 = 1e-9;

/// Gauss–Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        if d != 0.0 {
            dp = d;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Y_l^m(θ, φ) with Condon–Shortley phase, given x = cosθ.
pub fn spherical_harmonic(l: u32, m: i32, x: f64, phi: f64) -> Complex64 {
    let ma = m.unsigned_abs();
    if ma > l {
        return Complex64::new(0.0, 0.0);
    }
    let p = normalized_legendre(l, ma, x);
    let y = Complex64::from_polar(p, f64::from(ma as i32) * phi);
    if m >= 0 {
        y
    } else {
        // Y_l^{−m} = (−1)^m conj(Y_l^m)
        let sign = if ma.is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * y.conj()
    }
}

/// Orthonormalized associated Legendre function including the (−1)^m phase.
fn normalized_legendre(l: u32, m: u32, x: f64) -> f64 {
    let s = (1.0 - x * x).max(0.0).sqrt();
    let mut pmm = 1.0 / (4.0 * PI).sqrt();
    for k in 1..=m {
        let kf = f64::from(k);
        pmm *= -((2.0 * kf + 1.0) / (2.0 * kf)).sqrt() * s;
    }
    if l == m {
        return pmm;
    }
    let mf = f64::from(m);
    let mut prev = pmm;
    let mut cur = x * (2.0 * mf + 3.0).sqrt() * pmm;
    for ll in (m + 2)..=l {
        let lf = f64::from(ll);
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let lp = lf - 1.0;
        let a_prev = ((4.0 * lp * lp - 1.0) / (lp * lp - mf * mf)).sqrt();
        let next = a * (x * cur - prev / a_prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Product grid on the unit sphere.
#[derive(Debug, Clone)]
pub struct SphereQuadrature {
    order: usize,
    nodes: Vec<(f64, f64, f64)>,
}

impl SphereQuadrature {
    /// `order` Gauss–Legendre points in cosθ and `2·order + 2` azimuthal points.
    pub fn new(order: usize) -> Self {
        let (xs, ws) = gauss_legendre(order);
        let nphi = 2 * order + 2;
        let dphi = 2.0 * PI / nphi as f64;
        let mut nodes = Vec::with_capacity(order * nphi);
        for (x, w) in xs.iter().zip(&ws) {
            for k in 0..nphi {
                nodes.push((*x, k as f64 * dphi, w * dphi));
            }
        }
        Self { order, nodes }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// ∫ Y_bra* f(n̂) Y_ket dΩ.
    pub fn integrate<F>(&self, bra: AzimuthalState, ket: AzimuthalState, f: F) -> Complex64
    where
        F: Fn(f64, f64) -> f64,
    {
        self.nodes
            .iter()
            .map(|&(x, phi, w)| {
                let yb = spherical_harmonic(bra.l, bra.m, x, phi).conj();
                let yk = spherical_harmonic(ket.l, ket.m, x, phi);
                yb * yk * (w * f(x, phi))
            })
            .sum()
    }

    pub fn direction_cosine(&self, bra: AzimuthalState, ket: AzimuthalState, axis: Axis) -> Complex64 {
        self.integrate(bra, ket, |x, phi| unit_vector_component(x, phi, axis))
    }
}

fn unit_vector_component(x: f64, phi: f64, axis: Axis) -> f64 {
    let s = (1.0 - x * x).max(0.0).sqrt();
    match axis {
        Axis::X => s * phi.cos(),
        Axis::Y => s * phi.sin(),
        Axis::Z => x,
    }
}

fn orders_for(l_max: u32) -> (usize, usize) {
    // The integrand is a polynomial of degree ≤ 2 l_max + 4 in cosθ.
    let n = l_max as usize + 4;
    (n, n + 6)
}

fn converged(low: usize, high: usize, a: Complex64, b: Complex64, scale: f64) -> Result<Complex64> {
    let diff = (a - b).norm() / scale;
    if diff > CONVERGENCE_TOL {
        return Err(Error::QuadratureNotConverged { low, high, diff });
    }
    Ok(b)
}

/// ⟨bra| n̂_axis |ket⟩ by quadrature, checked across two orders.
pub fn oracle_direction_cosine(bra: AzimuthalState, ket: AzimuthalState, axis: Axis) -> Result<Complex64> {
    let (lo, hi) = orders_for(bra.l.max(ket.l));
    let a = SphereQuadrature::new(lo).direction_cosine(bra, ket, axis);
    let b = SphereQuadrature::new(hi).direction_cosine(bra, ket, axis);
    converged(lo, hi, a, b, 1.0)
}

/// ⟨bra| μ̂_i μ̂_j |ket⟩ (C²·m²) for superpositions over |l, m⟩, by insertion
/// of every intermediate |l′, m′⟩ with l′ ≤ max l + 1, each single-dipole
/// factor from quadrature.
pub fn oracle_second_moment(
    mol: &Molecule,
    bra: &[(AzimuthalState, f64)],
    ket: &[(AzimuthalState, f64)],
    i: Axis,
    j: Axis,
) -> Result<Complex64> {
    let l_top = bra.iter().chain(ket).map(|(s, _)| s.l).max().unwrap_or(0) + 1;
    let (lo, hi) = orders_for(l_top);
    let grids = [SphereQuadrature::new(lo), SphereQuadrature::new(hi)];
    let mut results = [Complex64::new(0.0, 0.0); 2];
    for (grid, out) in grids.iter().zip(results.iter_mut()) {
        let mut total = Complex64::new(0.0, 0.0);
        for lp in 0..=l_top {
            for mid in AzimuthalState::multiplet(lp) {
                let left: Complex64 = bra.iter().map(|&(b, c)| c * grid.direction_cosine(b, mid, i)).sum();
                let right: Complex64 = ket.iter().map(|&(k, c)| c * grid.direction_cosine(mid, k, j)).sum();
                total += left * right;
            }
        }
        *out = total * (mol.mu * mol.mu);
    }
    converged(lo, hi, results[0], results[1], mol.mu * mol.mu)
}

/// Eigen-decomposition of the real symmetric matrix [[a, b], [b, d]].
///
/// Returns eigenvalues in ascending order and the matching unit eigenvectors.
pub fn symmetric_eigen_2x2(a: f64, b: f64, d: f64) -> ([f64; 2], [[f64; 2]; 2]) {
    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    let r = half.hypot(b);
    let vals = [mean - r, mean + r];
    if b == 0.0 {
        return if a <= d {
            (vals, [[1.0, 0.0], [0.0, 1.0]])
        } else {
            (vals, [[0.0, 1.0], [1.0, 0.0]])
        };
    }
    let vec_for = |lam: f64| {
        let (x, y) = (b, lam - a);
        let n = x.hypot(y);
        [x / n, y / n]
    };
    (vals, [vec_for(vals[0]), vec_for(vals[1])])
}
