//! Phase-space ellipse of the packet: the heuristic support region of area
//! 2πħ, tilted by θ and centered at (a, η).
//!
//! The untilted frequency-ω ground state occupies the ellipse with semiaxes
//! √(2ħ/ω) along x and √(2ħω) along p.  For general parameters the effective
//! frequency is ω_eff = √(hi/lo) of the quadratic-form eigenvalues, and the
//! atan2 tilt convention always puts the short axis along the rotated
//! x-direction, so the semiaxis product is 2ħ regardless of squeezing.

use serde::{Deserialize, Serialize};

use crate::params::GaussianParams;
use crate::rotation::{h_eigenvalues, optimal_theta};

pub const BOUNDARY_POINTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllipseSpec {
    /// Center (a, η).
    pub center: (f64, f64),
    /// Tilt angle θ in radians.
    pub tilt: f64,
    /// Short semiaxis √(2ħ/ω_eff), along the tilted x-direction.
    pub semi_minor: f64,
    /// Long semiaxis √(2ħ·ω_eff), along the tilted p-direction.
    pub semi_major: f64,
    /// 64 boundary points (x, p) for plotting.
    pub boundary: Vec<(f64, f64)>,
}

impl EllipseSpec {
    pub fn from_params(params: &GaussianParams) -> Self {
        let (lo, hi) = h_eigenvalues(params);
        let omega_eff = (hi / lo).sqrt();
        let hbar = params.hbar();
        let semi_minor = (2.0 * hbar / omega_eff).sqrt();
        let semi_major = (2.0 * hbar * omega_eff).sqrt();
        let tilt = optimal_theta(params).radians();
        let (s, c) = tilt.sin_cos();
        let center = (params.center(), params.momentum());
        let boundary = (0..BOUNDARY_POINTS)
            .map(|i| {
                let phi = std::f64::consts::TAU * i as f64 / BOUNDARY_POINTS as f64;
                let u = semi_minor * phi.cos();
                let v = semi_major * phi.sin();
                (center.0 + c * u - s * v, center.1 + s * u + c * v)
            })
            .collect();
        Self {
            center,
            tilt,
            semi_minor,
            semi_major,
            boundary,
        }
    }
}
