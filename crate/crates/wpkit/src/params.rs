//! Parameter tuples (A, B, ħ, a, η) indexing the wave-packet family.
//!
//! A valid tuple satisfies Re(ĀB) = 1 (equivalently ĀB + B̄A = 2) and ħ > 0.
//! The complex pair (A, B) controls position and momentum spread; a and η are
//! the phase-space center.

use num_complex::Complex64;
use thiserror::Error;

/// Default tolerance on |Re(ĀB) − 1| for validation.
///
/// Parameters often arrive from floating-point flows (rotation), so exact
/// equality is unattainable; 1e-12 leaves two digits of slack above
/// double-precision rounding.
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ParamsError {
    #[error("normalization violated: |Re(conj(A)*B) - 1| = {residual:.3e} exceeds tol {tol:.1e}")]
    NormalizationViolation { residual: f64, tol: f64 },
    #[error("hbar must be positive, got {hbar}")]
    NonPositiveHbar { hbar: f64 },
    #[error("width parameters must be nonzero (A = 0 or B = 0)")]
    ZeroParameter,
    #[error("omega must be positive, got {omega}")]
    NonPositiveOmega { omega: f64 },
}

/// The validated tuple (A, B, ħ, a, η).
///
/// Immutable value type; all constructors enforce the invariants
/// |Re(ĀB) − 1| ≤ tol, ħ > 0, A ≠ 0, B ≠ 0.  Constructors never
/// renormalize silently; see [`project_cowidth`] for the explicit repair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianParams {
    width: Complex64,
    cowidth: Complex64,
    hbar: f64,
    center: f64,
    momentum: f64,
}

impl GaussianParams {
    /// Validate a raw tuple against the normalization constraint.
    pub fn validate(
        width: Complex64,
        cowidth: Complex64,
        hbar: f64,
        center: f64,
        momentum: f64,
        tol: f64,
    ) -> Result<Self, ParamsError> {
        debug_assert!(tol > 0.0, "validation tolerance must be positive");
        if hbar <= 0.0 || hbar.is_nan() {
            return Err(ParamsError::NonPositiveHbar { hbar });
        }
        if width == Complex64::ZERO || cowidth == Complex64::ZERO {
            return Err(ParamsError::ZeroParameter);
        }
        let residual = ((width.conj() * cowidth).re - 1.0).abs();
        if residual > tol || residual.is_nan() {
            return Err(ParamsError::NormalizationViolation { residual, tol });
        }
        Ok(Self {
            width,
            cowidth,
            hbar,
            center,
            momentum,
        })
    }

    /// Ground-state parameters of the frequency-ω harmonic oscillator:
    /// A = ω^(−1/2), B = ω^(1/2), a = η = 0.  Both are real, so Im(BĀ) = 0.
    pub fn standard_oscillator(omega: f64, hbar: f64) -> Result<Self, ParamsError> {
        if omega <= 0.0 || omega.is_nan() {
            return Err(ParamsError::NonPositiveOmega { omega });
        }
        let root = omega.sqrt();
        Self::validate(
            Complex64::new(1.0 / root, 0.0),
            Complex64::new(root, 0.0),
            hbar,
            0.0,
            0.0,
            DEFAULT_TOL,
        )
    }

    /// Construct without re-checking the normalization.  Reserved for flows
    /// that conserve Re(ĀB) = 1 in closed form (rounding-level drift only).
    pub(crate) fn new_unchecked(
        width: Complex64,
        cowidth: Complex64,
        hbar: f64,
        center: f64,
        momentum: f64,
    ) -> Self {
        let out = Self {
            width,
            cowidth,
            hbar,
            center,
            momentum,
        };
        debug_assert!(
            (out.re_ab() - 1.0).abs() < 1e-9,
            "unchecked construction drifted off the normalization constraint"
        );
        out
    }

    /// Width parameter A.
    pub fn width(&self) -> Complex64 {
        self.width
    }

    /// Cowidth parameter B.
    pub fn cowidth(&self) -> Complex64 {
        self.cowidth
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Mean position a.
    pub fn center(&self) -> f64 {
        self.center
    }

    /// Mean momentum η.
    pub fn momentum(&self) -> f64 {
        self.momentum
    }

    /// Re(ĀB); equals 1 for valid parameters.
    pub fn re_ab(&self) -> f64 {
        (self.width.conj() * self.cowidth).re
    }

    /// Im(BĀ), the off-diagonal entry of the associated quadratic form.
    pub fn im_ba(&self) -> f64 {
        (self.cowidth * self.width.conj()).im
    }
}

/// Project B back onto the constraint surface: B ← B + (1 − Re(ĀB))/Ā.
///
/// This is the explicit repair for tuples that drifted past the validation
/// tolerance; constructors never apply it implicitly.
pub fn project_cowidth(width: Complex64, cowidth: Complex64) -> Complex64 {
    cowidth + (1.0 - (width.conj() * cowidth).re) / width.conj()
}
