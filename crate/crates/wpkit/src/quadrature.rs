//! Trapezoid-quadrature oracle for moments, overlaps, and norms.
//!
//! This engine never touches the ladder shortcuts: position moments come
//! from |ψ|² on a symmetric grid, and momentum moments use the exact
//! analytic action of (p−η) on a polynomial×Gaussian state,
//!
//! ```text
//! (p−η)(q·φ_0) = [ −iħ·q′ + i(B/A)·y·q ] · φ_0,
//! ```
//!
//! so no finite differences enter anywhere.  Integrands are entire
//! functions times a Gaussian, for which the composite trapezoid rule
//! converges superalgebraically; the default grid pushes truncation far
//! below the 1e-7 agreement targets.

use num_complex::Complex64;
use thiserror::Error;

use crate::observables::LinearObservable;
use crate::params::GaussianParams;
use crate::poly::ComplexPoly;
use crate::wavepacket::WavePacket;

pub const DEFAULT_POINTS: usize = 4001;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum QuadratureError {
    #[error(
        "grid too coarse for the packet: need half_width >= {min_half_width:.3e} \
         (got {half_width:.3e}), spacing <= {max_spacing:.3e} (got {spacing:.3e}), \
         and an odd point count >= 3 (got {points})"
    )]
    GridTooCoarse {
        half_width: f64,
        min_half_width: f64,
        spacing: f64,
        max_spacing: f64,
        points: usize,
    },
}

/// Symmetric grid around the packet center: `points` nodes (odd) spanning
/// [a − half_width, a + half_width].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub half_width: f64,
    pub points: usize,
}

impl QuadratureSpec {
    /// Default grid for a polynomial-times-Gaussian state of the given
    /// degree: half-width 10·max(Δx, √ħ) with Δx = √(ħ/2)·|A|·√(2·deg+1),
    /// 4001 points.
    pub fn for_poly_state(params: &GaussianParams, degree: usize) -> Self {
        let dx = position_spread(params, degree);
        Self {
            half_width: 10.0 * dx.max(params.hbar().sqrt()),
            points: DEFAULT_POINTS,
        }
    }

    pub fn for_packet(wp: &WavePacket) -> Self {
        Self::for_poly_state(wp.params(), wp.k())
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.points - 1) as f64
    }

    /// Resolution check against the state's position spread: half-width at
    /// least 8·Δx, spacing at most Δx/20, odd point count.
    fn check(&self, params: &GaussianParams, degree: usize) -> Result<(), QuadratureError> {
        let dx = position_spread(params, degree);
        let min_half_width = 8.0 * dx;
        let max_spacing = dx / 20.0;
        let ok = self.points >= 3
            && self.points % 2 == 1
            && self.half_width >= min_half_width
            && self.spacing() <= max_spacing;
        if ok {
            Ok(())
        } else {
            Err(QuadratureError::GridTooCoarse {
                half_width: self.half_width,
                min_half_width,
                spacing: if self.points >= 2 {
                    self.spacing()
                } else {
                    f64::NAN
                },
                max_spacing,
                points: self.points,
            })
        }
    }
}

fn position_spread(params: &GaussianParams, degree: usize) -> f64 {
    (params.hbar() / 2.0).sqrt() * params.width().norm() * ((2 * degree + 1) as f64).sqrt()
}

/// |φ_0(a + y)|² = π^(−1/2) ħ^(−1/2) |A|^(−1) · exp(−Re(B/A)·y²/ħ).
fn density_weight(params: &GaussianParams, y: f64) -> f64 {
    let amp = std::f64::consts::PI.powf(-0.5) / (params.hbar().sqrt() * params.width().norm());
    let decay = (params.cowidth() / params.width()).re / params.hbar();
    amp * (-decay * y * y).exp()
}

/// Trapezoid value of ∫ conj(P(y))·Q(y)·|φ_0|² dy on the grid.
pub fn inner_product(
    params: &GaussianParams,
    p: &ComplexPoly,
    q: &ComplexPoly,
    grid: &QuadratureSpec,
) -> Complex64 {
    let h = grid.spacing();
    let mut acc = Complex64::ZERO;
    for i in 0..grid.points {
        let y = -grid.half_width + i as f64 * h;
        // conj(P(y)) = conj(P evaluated at real y)
        let term = p.eval(y).conj() * q.eval(y) * density_weight(params, y);
        let w = if i == 0 || i == grid.points - 1 {
            0.5
        } else {
            1.0
        };
        acc += term * (w * h);
    }
    acc
}

/// ‖Q·φ_0‖ by quadrature.
pub fn norm(params: &GaussianParams, q: &ComplexPoly, grid: &QuadratureSpec) -> f64 {
    inner_product(params, q, q, grid).re.sqrt()
}

/// Polynomial image of the observable: O·(Q·φ_0) = (apply_observable Q)·φ_0.
pub fn apply_observable(
    params: &GaussianParams,
    q: &ComplexPoly,
    obs: &LinearObservable,
) -> ComplexPoly {
    let b_over_a = params.cowidth() / params.width();
    let on_yq = Complex64::new(obs.cx(), 0.0) + Complex64::i() * obs.cp() * b_over_a;
    let on_dq = -Complex64::i() * obs.cp() * params.hbar();
    ComplexPoly::linear_combination(&[(on_yq, &q.times_y()), (on_dq, &q.derivative())])
}

/// Mean and variance of the observable in the (not necessarily normalized)
/// state Q·φ_0, by quadrature.  Both are Rayleigh quotients, so a norm
/// drift at the 1e-9 level cancels instead of biasing the moments.
pub fn poly_state_moments(
    params: &GaussianParams,
    q: &ComplexPoly,
    obs: &LinearObservable,
    grid: &QuadratureSpec,
) -> Result<(f64, f64), QuadratureError> {
    grid.check(params, q.degree().unwrap_or(0))?;
    let image = apply_observable(params, q, obs);
    let norm_sqr = inner_product(params, q, q, grid).re;
    let mean = inner_product(params, q, &image, grid).re / norm_sqr;
    let second = inner_product(params, &image, &image, grid).re / norm_sqr;
    Ok((mean, second - mean * mean))
}

/// Mean and variance of the observable in φ_k, by quadrature.
pub fn quadrature_expectation(
    wp: &WavePacket,
    obs: &LinearObservable,
    grid: &QuadratureSpec,
) -> Result<(f64, f64), QuadratureError> {
    poly_state_moments(wp.params(), wp.poly(), obs, grid)
}

/// Gram matrix ⟨φ_i, φ_j⟩ of the packets φ_0..φ_max_k (row-major).
pub fn gram_matrix(
    params: &GaussianParams,
    max_k: usize,
    grid: &QuadratureSpec,
) -> Result<Vec<Vec<Complex64>>, QuadratureError> {
    grid.check(params, max_k)?;
    let mut polys = Vec::with_capacity(max_k + 1);
    let mut wp = WavePacket::ground_state(*params);
    for _ in 0..=max_k {
        polys.push(wp.poly().clone());
        wp = wp.raise();
    }
    let mut out = vec![vec![Complex64::ZERO; max_k + 1]; max_k + 1];
    for i in 0..=max_k {
        for j in i..=max_k {
            let v = inner_product(params, &polys[i], &polys[j], grid);
            out[i][j] = v;
            out[j][i] = v.conj();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::DEFAULT_TOL;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(a: Complex64, b: Complex64, hbar: f64) -> GaussianParams {
        GaussianParams::validate(a, b, hbar, 0.0, 0.0, DEFAULT_TOL).unwrap()
    }

    #[test]
    fn standard_gaussian_position_variance_is_half() {
        let wp = WavePacket::ground_state(params(c(1.0, 0.0), c(1.0, 0.0), 1.0));
        let grid = QuadratureSpec::for_packet(&wp);
        let (mean, var) =
            quadrature_expectation(&wp, &LinearObservable::position(), &grid).unwrap();
        assert_abs_diff_eq!(mean, 0.0, epsilon = 1e-12);
        assert_relative_eq!(var, 0.5, max_relative = 1e-12);
    }

    #[test]
    fn squeezed_momentum_variance_matches_cowidth() {
        // (ħ/2)|B|² = 1 for B = 1 + i on a [−10, 10] grid with 4001 points.
        let wp = WavePacket::ground_state(params(c(1.0, 0.0), c(1.0, 1.0), 1.0));
        let grid = QuadratureSpec {
            half_width: 10.0,
            points: 4001,
        };
        let (mean, var) =
            quadrature_expectation(&wp, &LinearObservable::momentum(), &grid).unwrap();
        assert_abs_diff_eq!(mean, 0.0, epsilon = 1e-12);
        assert_relative_eq!(var, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn ground_and_first_excited_states_are_orthogonal() {
        let p = params(c(1.0, 0.0), c(1.0, 1.0), 1.0);
        let phi0 = WavePacket::ground_state(p);
        let phi1 = phi0.raise();
        let grid = QuadratureSpec::for_packet(&phi1);
        let overlap = inner_product(&p, phi0.poly(), phi1.poly(), &grid);
        assert_abs_diff_eq!(overlap.norm(), 0.0, epsilon = 1e-9);
        assert_relative_eq!(norm(&p, phi0.poly(), &grid), 1.0, max_relative = 1e-10);
        assert_relative_eq!(norm(&p, phi1.poly(), &grid), 1.0, max_relative = 1e-10);
    }

    #[test]
    fn coarse_grids_are_rejected() {
        let wp = WavePacket::ground_state(params(c(1.0, 0.0), c(1.0, 0.0), 1.0));
        let narrow = QuadratureSpec {
            half_width: 1.0,
            points: 4001,
        };
        assert!(matches!(
            quadrature_expectation(&wp, &LinearObservable::position(), &narrow),
            Err(QuadratureError::GridTooCoarse { .. })
        ));
        let sparse = QuadratureSpec {
            half_width: 10.0,
            points: 11,
        };
        assert!(matches!(
            quadrature_expectation(&wp, &LinearObservable::position(), &sparse),
            Err(QuadratureError::GridTooCoarse { .. })
        ));
        let even = QuadratureSpec {
            half_width: 10.0,
            points: 4000,
        };
        assert!(matches!(
            quadrature_expectation(&wp, &LinearObservable::position(), &even),
            Err(QuadratureError::GridTooCoarse { .. })
        ));
    }

    #[test]
    fn quadrature_agrees_with_ladder_variance_for_excited_states() {
        let p = params(c(1.0, 0.0), c(1.0, 1.0), 0.1);
        for k in [0usize, 1, 4] {
            let wp = WavePacket::excited(p, k);
            let grid = QuadratureSpec::for_packet(&wp);
            for obs in [LinearObservable::position(), LinearObservable::momentum()] {
                let exact = crate::observables::variance(&obs, &wp);
                let (_, var) = quadrature_expectation(&wp, &obs, &grid).unwrap();
                assert_relative_eq!(var, exact, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn rotated_pair_attains_half_hbar_by_quadrature() {
        // θ = ½·arctan 2 for A = 1, B = 1 + i: the quadrature engine sees
        // Δα·Δβ = ħ/2 in the ground state without any ladder shortcut.
        let p = params(c(1.0, 0.0), c(1.0, 1.0), 1.0);
        let wp = WavePacket::ground_state(p);
        let grid = QuadratureSpec::for_packet(&wp);
        let theta = 0.5 * 2.0f64.atan();
        let (_, var_a) =
            quadrature_expectation(&wp, &LinearObservable::alpha(theta), &grid).unwrap();
        let (_, var_b) =
            quadrature_expectation(&wp, &LinearObservable::beta(theta), &grid).unwrap();
        assert_relative_eq!((var_a * var_b).sqrt(), 0.5, max_relative = 1e-9);
    }

    #[test]
    fn gram_matrix_is_identity_for_low_levels() {
        let p = params(c(1.0, 0.0), c(1.0, 1.0), 1.0);
        let grid = QuadratureSpec::for_poly_state(&p, 4);
        let g = gram_matrix(&p, 4, &grid).unwrap();
        for (i, row) in g.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(v.re, expect, epsilon = 1e-10);
                assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-10);
            }
        }
    }
}
