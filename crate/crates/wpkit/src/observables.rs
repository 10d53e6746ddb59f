//! Expectation values and uncertainties of linear observables in φ_k,
//! computed exactly through ladder algebra.
//!
//! A [`LinearObservable`] is the centered combination c_x·(x−a) + c_p·(p−η).
//! In ladder form it reads √(ħ/2)·[r·𝒜* + r̄·𝒜] with r = c_x·A + i·c_p·B,
//! so means vanish in every φ_k and variances reduce to the closed form
//! (ħ/2)·|r|²·(2k+1): expanding (r𝒜* + r̄𝒜)², only 𝒜*𝒜 (→ k) and 𝒜𝒜*
//! (→ k+1) survive the expectation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::params::GaussianParams;
use crate::wavepacket::WavePacket;

/// c_x·(x−a) + c_p·(p−η) with real coefficients, (c_x, c_p) ≠ (0, 0).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearObservable {
    cx: f64,
    cp: f64,
    label: String,
}

impl LinearObservable {
    pub fn new(cx: f64, cp: f64, label: impl Into<String>) -> Self {
        assert!(
            cx != 0.0 || cp != 0.0,
            "linear observable needs a nonzero coefficient pair"
        );
        Self {
            cx,
            cp,
            label: label.into(),
        }
    }

    /// Centered position x − a.
    pub fn position() -> Self {
        Self::new(1.0, 0.0, "x")
    }

    /// Centered momentum p − η.
    pub fn momentum() -> Self {
        Self::new(0.0, 1.0, "p")
    }

    /// α(θ) = cos(θ)·(x−a) + sin(θ)·(p−η).
    pub fn alpha(theta: f64) -> Self {
        Self::new(theta.cos(), theta.sin(), "alpha")
    }

    /// β(θ) = −sin(θ)·(x−a) + cos(θ)·(p−η).
    pub fn beta(theta: f64) -> Self {
        Self::new(-theta.sin(), theta.cos(), "beta")
    }

    pub fn cx(&self) -> f64 {
        self.cx
    }

    pub fn cp(&self) -> f64 {
        self.cp
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// Raising/lowering coefficients (r, l) with
/// c_x(x−a) + c_p(p−η) = √(ħ/2)·[r·𝒜* + l·𝒜],
/// r = c_x·A + i·c_p·B and l = c_x·Ā − i·c_p·B̄ = r̄.
pub fn ladder_coefficients(
    obs: &LinearObservable,
    params: &GaussianParams,
) -> (Complex64, Complex64) {
    let r = obs.cx * params.width() + Complex64::i() * obs.cp * params.cowidth();
    let l = obs.cx * params.width().conj() - Complex64::i() * obs.cp * params.cowidth().conj();
    debug_assert!((l - r.conj()).norm() < 1e-12 * (1.0 + r.norm()));
    (r, l)
}

/// Expectation of the centered observable in φ_k.
///
/// A single raising or lowering changes the index, so ⟨φ_k, 𝒜*φ_k⟩ and
/// ⟨φ_k, 𝒜φ_k⟩ vanish by orthogonality; the mean is exactly zero.  The full
/// ⟨x⟩ and ⟨p⟩ are recovered by adding back the centers a and η.
pub fn mean(_obs: &LinearObservable, _wp: &WavePacket) -> f64 {
    0.0
}

/// Variance of the centered observable in φ_k: (ħ/2)·|r|²·(2k+1).
pub fn variance(obs: &LinearObservable, wp: &WavePacket) -> f64 {
    let (r, _) = ladder_coefficients(obs, wp.params());
    0.5 * wp.params().hbar() * r.norm_sqr() * (2 * wp.k() + 1) as f64
}

/// The constant c in [O₁, O₂] = i·c·ħ, namely c = c_x₁·c_p₂ − c_p₁·c_x₂
/// (from [x, p] = iħ).  Equals 1 for (x, p) and for (α, β) at any angle.
pub fn commutator_constant(o1: &LinearObservable, o2: &LinearObservable) -> f64 {
    o1.cx * o2.cp - o1.cp * o2.cx
}

/// Uncertainties of x, p and of the rotated pair α(θ), β(θ) in φ_k.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyReport {
    pub delta_x: f64,
    pub delta_p: f64,
    pub delta_alpha: f64,
    pub delta_beta: f64,
    pub product_xp: f64,
    pub product_alphabeta: f64,
    pub theta: f64,
    pub hbar: f64,
    pub k: usize,
}

/// Assemble the uncertainty report for φ_k at rotation angle θ.
///
/// product_xp always equals (ħ/2)·|A||B|·(2k+1); product_alphabeta reaches
/// its minimum (ħ/2)(2k+1) when θ zeroes Im(B(θ)Ā(θ)).
pub fn uncertainty_report(params: &GaussianParams, k: usize, theta: f64) -> UncertaintyReport {
    let wp = WavePacket::excited(*params, k);
    let delta_x = variance(&LinearObservable::position(), &wp).sqrt();
    let delta_p = variance(&LinearObservable::momentum(), &wp).sqrt();
    let delta_alpha = variance(&LinearObservable::alpha(theta), &wp).sqrt();
    let delta_beta = variance(&LinearObservable::beta(theta), &wp).sqrt();
    UncertaintyReport {
        delta_x,
        delta_p,
        delta_alpha,
        delta_beta,
        product_xp: delta_x * delta_p,
        product_alphabeta: delta_alpha * delta_beta,
        theta,
        hbar: params.hbar(),
        k,
    }
}
