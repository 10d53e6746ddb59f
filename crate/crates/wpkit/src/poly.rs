//! Dense complex polynomials in the centered coordinate y = x − a.
//!
//! Coefficient index is the power of y.  The zero polynomial is the empty
//! coefficient vector; otherwise the leading coefficient is nonzero.

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    /// Build from coefficients (index = power of y), trimming exact trailing
    /// zeros so the leading-coefficient invariant holds.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last() == Some(&Complex64::ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self {
            coeffs: vec![Complex64::new(1.0, 0.0)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of y^m (zero beyond the stored degree).
    pub fn coeff(&self, m: usize) -> Complex64 {
        self.coeffs.get(m).copied().unwrap_or(Complex64::ZERO)
    }

    /// Horner evaluation at real y.
    pub fn eval(&self, y: f64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::ZERO, |acc, &c| acc * y + c)
    }

    /// Formal derivative d/dy.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, &c)| c * m as f64)
            .collect();
        Self::new(coeffs)
    }

    /// Multiplication by y (shifts every coefficient up one power).
    pub fn times_y(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::ZERO);
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * factor).collect())
    }

    /// Σ cᵢ·pᵢ for superposition states.
    pub fn linear_combination(terms: &[(Complex64, &ComplexPoly)]) -> Self {
        let len = terms.iter().map(|(_, p)| p.coeffs.len()).max().unwrap_or(0);
        let mut coeffs = vec![Complex64::ZERO; len];
        for (weight, poly) in terms {
            for (m, &c) in poly.coeffs.iter().enumerate() {
                coeffs[m] += weight * c;
            }
        }
        Self::new(coeffs)
    }

    /// max_m |Δ coeff_m| / max_m |reference coeff_m|; ∞ when only one side
    /// is zero.  Used by the ladder-identity checks.
    pub fn relative_distance(&self, reference: &Self) -> f64 {
        let scale = reference
            .coeffs
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
        let diff = (0..self.coeffs.len().max(reference.coeffs.len()))
            .map(|m| (self.coeff(m) - reference.coeff(m)).norm())
            .fold(0.0f64, f64::max);
        if scale == 0.0 {
            if diff == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            diff / scale
        }
    }
}
