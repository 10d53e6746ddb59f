//! Excited wave packets φ_k built from the ground Gaussian by ladder algebra.
//!
//! Every packet is stored exactly as a complex polynomial q_k in y = x − a
//! multiplying the ground state:
//!
//! ```text
//! φ_0(x) = π^(−1/4) ħ^(−1/4) A^(−1/2) exp{ −B(x−a)²/(2Aħ) + iη(x−a)/ħ }
//! φ_k(x) = q_k(x−a) · φ_0(x),   deg q_k = k,   q_0 ≡ 1.
//! ```
//!
//! The raising operator 𝒜* = (2ħ)^(−1/2)[B̄(x−a) − iĀ(p−η)] acts on q·φ_0 as
//! a first-order polynomial map: using p = −iħ d/dx and the constraint
//! B̄ + ĀB/A = 2/A, one gets
//!
//! ```text
//! 𝒜*(q·φ_0) = (2ħ)^(−1/2) [ (2/A)·y·q − ħ·Ā·q′ ] · φ_0
//! 𝒜 (q·φ_0) = (ħ/2)^(1/2) · A · q′ · φ_0
//! ```
//!
//! so φ_{k+1} = 𝒜*φ_k/√(k+1) and 𝒜φ_k = √k·φ_{k−1} stay exact coefficient
//! arithmetic, with no grid differentiation anywhere.

use num_complex::Complex64;

use crate::params::GaussianParams;
use crate::poly::ComplexPoly;

#[derive(Debug, Clone, PartialEq)]
pub struct WavePacket {
    params: GaussianParams,
    k: usize,
    poly: ComplexPoly,
}

impl WavePacket {
    /// The ground state φ_0: excitation index 0, q_0 ≡ 1.
    pub fn ground_state(params: GaussianParams) -> Self {
        Self {
            params,
            k: 0,
            poly: ComplexPoly::one(),
        }
    }

    /// φ_k obtained by k applications of the raising operator.
    pub fn excited(params: GaussianParams, k: usize) -> Self {
        let mut wp = Self::ground_state(params);
        for _ in 0..k {
            wp = wp.raise();
        }
        wp
    }

    pub fn params(&self) -> &GaussianParams {
        &self.params
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn poly(&self) -> &ComplexPoly {
        &self.poly
    }

    /// φ_{k+1} = 𝒜*φ_k / √(k+1); the polynomial degree grows by exactly one.
    pub fn raise(&self) -> Self {
        let a = self.params.width();
        let hbar = self.params.hbar();
        let norm = 1.0 / ((self.k as f64 + 1.0) * 2.0 * hbar).sqrt();
        let next = ComplexPoly::linear_combination(&[
            (2.0 / a * norm, &self.poly.times_y()),
            (-a.conj() * hbar * norm, &self.poly.derivative()),
        ]);
        debug_assert_eq!(next.degree(), Some(self.k + 1));
        Self {
            params: self.params,
            k: self.k + 1,
            poly: next,
        }
    }

    /// 𝒜φ_k/√k = φ_{k−1}, or `None` for the annihilated ground state.
    pub fn lower(&self) -> Option<Self> {
        if self.k == 0 {
            return None;
        }
        let factor =
            self.params.width() * (self.params.hbar() / 2.0).sqrt() / (self.k as f64).sqrt();
        let prev = self.poly.derivative().scaled(factor);
        debug_assert_eq!(prev.degree(), Some(self.k - 1));
        Some(Self {
            params: self.params,
            k: self.k - 1,
            poly: prev,
        })
    }

    /// Pointwise values q_k(x−a)·φ_0(x).
    pub fn evaluate(&self, xs: &[f64]) -> Vec<Complex64> {
        xs.iter().map(|&x| self.evaluate_at(x)).collect()
    }

    pub fn evaluate_at(&self, x: f64) -> Complex64 {
        let y = x - self.params.center();
        self.poly.eval(y) * ground_value(&self.params, y)
    }
}

/// φ_0 at y = x − a.  A^(−1/2) is the principal branch, realized as
/// sqrt(1/A) so the result's argument lies in (−π/2, π/2]; all uncertainty
/// quantities depend only on |φ|², so the branch is observable-neutral.
fn ground_value(params: &GaussianParams, y: f64) -> Complex64 {
    let a = params.width();
    let b = params.cowidth();
    let hbar = params.hbar();
    let prefactor = std::f64::consts::PI.powf(-0.25) * hbar.powf(-0.25) * a.inv().sqrt();
    let exponent = -b * y * y / (2.0 * a * hbar) + Complex64::i() * params.momentum() * y / hbar;
    prefactor * exponent.exp()
}
