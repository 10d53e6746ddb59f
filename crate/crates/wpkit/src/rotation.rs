//! Phase-space rotation: the optimal angle θ, the closed rotation flow on
//! (A, B), the associated quadratic forms and their spectra, and the scan
//! oracle that brute-forces the minimizer.
//!
//! The flow (A(t), B(t)) = (A·cos t + iB·sin t, iA·sin t + B·cos t) is the
//! parameter image of rotating phase space with the frequency-1 oscillator.
//! It conserves Re(ĀB) = 1, so |A(t)|²|B(t)|² = 1 + Im(B(t)Ā(t))² and the
//! product |A||B| bottoms out at exactly 1 wherever Im(B(t)Ā(t)) = 0.

use num_complex::Complex64;

use crate::params::GaussianParams;

/// Rotation angle in radians, confined to (−π/2, π/2].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationAngle {
    radians: f64,
}

impl RotationAngle {
    fn new(radians: f64) -> Self {
        debug_assert!(radians.abs() <= std::f64::consts::FRAC_PI_2 + 1e-12);
        Self { radians }
    }

    pub fn radians(&self) -> f64 {
        self.radians
    }
}

/// Real symmetric 2×2 matrix entries of a quadratic form ½·(x p)·M·(x p)ᵀ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadForm2 {
    pub m11: f64,
    pub m12: f64,
    pub m22: f64,
}

impl QuadForm2 {
    /// Rᵀ(θ)·M·R(θ) for the rotation R = [[cos θ, −sin θ], [sin θ, cos θ]].
    pub fn rotated(&self, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let m11 = c * c * self.m11 + 2.0 * s * c * self.m12 + s * s * self.m22;
        let m22 = s * s * self.m11 - 2.0 * s * c * self.m12 + c * c * self.m22;
        let m12 = (self.m22 - self.m11) * s * c + (c * c - s * s) * self.m12;
        Self { m11, m12, m22 }
    }
}

/// θ = ½·atan2(2·Im(BĀ), |B|² − |A|²).
///
/// atan2 resolves the quadrant the arctan form leaves ambiguous and is
/// well-defined when |A| = |B|; the circularly symmetric case (both
/// arguments zero) returns θ = 0 by convention, where any angle minimizes.
pub fn optimal_theta(params: &GaussianParams) -> RotationAngle {
    let num = 2.0 * params.im_ba();
    let den = params.cowidth().norm_sqr() - params.width().norm_sqr();
    // Normalize −0.0 so the degenerate diagonal case lands on +π/2, not −π/2.
    let num = if num == 0.0 { 0.0 } else { num };
    RotationAngle::new(0.5 * num.atan2(den))
}

/// The rotation flow at time t: A(t) = A·cos t + iB·sin t,
/// B(t) = iA·sin t + B·cos t; the center (a, η) is untouched.
pub fn rotate_params(params: &GaussianParams, t: f64) -> GaussianParams {
    let (s, c) = t.sin_cos();
    let a = params.width() * c + Complex64::i() * params.cowidth() * s;
    let b = Complex64::i() * params.width() * s + params.cowidth() * c;
    // Re(Ā(t)B(t)) = 1 is conserved in closed form; only rounding drifts.
    GaussianParams::new_unchecked(a, b, params.hbar(), params.center(), params.momentum())
}

/// Matrix of the quadratic Hamiltonian whose ground state the packet is:
/// M = [[|B|², Im(BĀ)], [Im(BĀ), |A|²]], with H = ½·(x p)·M·(x p)ᵀ.
pub fn hamiltonian_matrix(params: &GaussianParams) -> QuadForm2 {
    QuadForm2 {
        m11: params.cowidth().norm_sqr(),
        m12: params.im_ba(),
        m22: params.width().norm_sqr(),
    }
}

/// Eigenvalues (lo, hi) of ½M:
/// ¼·[(|A|²+|B|²) ∓ √((|A|²−|B|²)² + 4·Im(BĀ)²)].
/// Their product is det(½M) = ¼·Re(ĀB)² = ¼ for valid parameters.
pub fn h_eigenvalues(params: &GaussianParams) -> (f64, f64) {
    let sa = params.width().norm_sqr();
    let sb = params.cowidth().norm_sqr();
    let g = params.im_ba();
    let gap = ((sa - sb) * (sa - sb) + 4.0 * g * g).sqrt();
    (0.25 * (sa + sb - gap), 0.25 * (sa + sb + gap))
}

/// Angle whose rotation diagonalizes the symmetric matrix:
/// θ = ½·atan2(2·m12, m11 − m22).  The off-diagonal entry of
/// `m.rotated(θ)` vanishes identically.
pub fn diagonalizing_angle(m: &QuadForm2) -> RotationAngle {
    let num = 2.0 * m.m12;
    let num = if num == 0.0 { 0.0 } else { num };
    RotationAngle::new(0.5 * num.atan2(m.m11 - m.m22))
}

/// Classical quadratic form shared by the ladder Hamiltonians ħ𝒜𝒜* and
/// ħ𝒜*𝒜: symmetrizing [[|B|², −iBĀ], [iAB̄, |A|²]] over its transpose
/// kills the imaginary parts and reproduces `hamiltonian_matrix` exactly,
/// since ½(−iBĀ + iAB̄) = Im(BĀ).
pub fn ladder_hamiltonian_form(params: &GaussianParams) -> QuadForm2 {
    let off = 0.5
        * (-Complex64::i() * params.cowidth() * params.width().conj()
            + Complex64::i() * params.width() * params.cowidth().conj());
    debug_assert!(off.im.abs() < 1e-12 * (1.0 + off.re.abs()));
    QuadForm2 {
        m11: params.cowidth().norm_sqr(),
        m12: off.re,
        m22: params.width().norm_sqr(),
    }
}

/// Central finite-difference residuals of the three flow identities
///
/// ```text
/// d/dt |A|²|B|²      = 2·(|A|²−|B|²)·Im(BĀ)
/// d/dt Im(BĀ)        = |A|² − |B|²
/// d/dt (|A|²−|B|²)   = −4·Im(BĀ)
/// ```
///
/// evaluated along the closed-form flow at time t with step h.  Residuals
/// are O(h²) with a constant set by the squeezing magnitude.
pub fn flow_derivative_residuals(params: &GaussianParams, t: f64, h: f64) -> (f64, f64, f64) {
    let at = |t: f64| rotate_params(params, t);
    let f = |p: GaussianParams| p.width().norm_sqr() * p.cowidth().norm_sqr();
    let g = |p: GaussianParams| p.im_ba();
    let d = |p: GaussianParams| p.width().norm_sqr() - p.cowidth().norm_sqr();

    let (plus, minus) = (at(t + h), at(t - h));
    let here = at(t);
    let r1 = (f(plus) - f(minus)) / (2.0 * h) - 2.0 * d(here) * g(here);
    let r2 = (g(plus) - g(minus)) / (2.0 * h) - d(here);
    let r3 = (d(plus) - d(minus)) / (2.0 * h) + 4.0 * g(here);
    (r1.abs(), r2.abs(), r3.abs())
}

/// Brute-force scan of |A(t)|·|B(t)| over n points of [0, π), followed by
/// golden-section refinement of the bracket to 1e-10 and a bisection polish
/// on Im(B(t)Ā(t)).
///
/// The polish matters: the product is quadratically flat around its
/// minimum, so value-comparison search bottoms out near √ε in t, while the
/// minimizer is exactly the zero crossing of Im(B(t)Ā(t)) and bisection on
/// that sign pins it to machine precision.
pub fn scan_minimize(params: &GaussianParams, n: usize) -> (f64, f64) {
    assert!(n >= 1000, "scan needs at least 1000 grid points");
    let product = |t: f64| {
        let p = rotate_params(params, t);
        p.width().norm() * p.cowidth().norm()
    };
    let im_ba = |t: f64| rotate_params(params, t).im_ba();

    let h = std::f64::consts::PI / n as f64;
    let mut best = (0usize, f64::INFINITY);
    for i in 0..n {
        let v = product(i as f64 * h);
        if v < best.1 {
            best = (i, v);
        }
    }
    let center = best.0 as f64 * h;
    let (mut lo, mut hi) = (center - h, center + h);

    // Golden-section refinement of the f-bracket.
    let inv_phi = 0.5 * (5.0f64.sqrt() - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (product(x1), product(x2));
    while hi - lo > 1e-10 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = product(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = product(x2);
        }
    }
    let mut t_star = 0.5 * (lo + hi);

    // Bisection polish on the sign of Im(B(t)Ā(t)) across the grid bracket.
    let (mut zl, mut zr) = (center - h, center + h);
    let (gl, gr) = (im_ba(zl), im_ba(zr));
    if gl == 0.0 {
        t_star = zl;
    } else if gr == 0.0 {
        t_star = zr;
    } else if gl.signum() != gr.signum() {
        for _ in 0..80 {
            let mid = 0.5 * (zl + zr);
            let gm = im_ba(mid);
            if gm == 0.0 {
                break;
            }
            if gm.signum() == gl.signum() {
                zl = mid;
            } else {
                zr = mid;
            }
        }
        t_star = 0.5 * (zl + zr);
    }

    (t_star, product(t_star))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::DEFAULT_TOL;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(a: Complex64, b: Complex64) -> GaussianParams {
        GaussianParams::validate(a, b, 1.0, 0.0, 0.0, DEFAULT_TOL).unwrap()
    }

    fn squeezed() -> GaussianParams {
        params(c(1.0, 0.0), c(1.0, 1.0))
    }

    /// Independent route for the eigenvalue checks: explicit Jacobi rotation
    /// of ½M, reading the diagonal after annihilating the off-diagonal.
    fn jacobi_eigenvalues(m11: f64, m12: f64, m22: f64) -> (f64, f64) {
        let theta = 0.5 * (2.0 * m12).atan2(m11 - m22);
        let (s, c) = theta.sin_cos();
        let d1 = c * c * m11 + 2.0 * s * c * m12 + s * s * m22;
        let d2 = s * s * m11 - 2.0 * s * c * m12 + c * c * m22;
        (d1.min(d2), d1.max(d2))
    }

    #[test]
    fn circular_case_has_zero_angle_by_convention() {
        let p = params(c(1.0, 0.0), c(1.0, 0.0));
        assert_eq!(optimal_theta(&p).radians(), 0.0);
    }

    #[test]
    fn diagonal_oscillator_needs_no_rotation() {
        let p = GaussianParams::standard_oscillator(4.0, 1.0).unwrap();
        assert_eq!(optimal_theta(&p).radians(), 0.0);
    }

    #[test]
    fn squeezed_angle_is_half_arctan_two() {
        // Im(BĀ) = 1 and |B|² − |A|² = 1 give θ = ½·arctan 2.
        let theta = optimal_theta(&squeezed()).radians();
        assert_abs_diff_eq!(theta, 0.553_574_358_897_045_2, epsilon = 1e-15);
        assert_abs_diff_eq!(theta, 0.5 * 2.0f64.atan(), epsilon = 1e-16);
    }

    #[test]
    fn angle_stays_in_the_principal_interval() {
        // |A| > |B| with Im(BĀ) = 0 lands on +π/2, never −π/2.
        let p = GaussianParams::standard_oscillator(0.25, 1.0).unwrap();
        assert_eq!(optimal_theta(&p).radians(), std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn flow_at_zero_is_identity() {
        let p = squeezed();
        let r = rotate_params(&p, 0.0);
        assert_eq!(r.width(), p.width());
        assert_eq!(r.cowidth(), p.cowidth());
    }

    #[test]
    fn quarter_turn_multiplies_the_circular_pair_by_i() {
        let p = params(c(1.0, 0.0), c(1.0, 0.0));
        let r = rotate_params(&p, std::f64::consts::FRAC_PI_2);
        assert_abs_diff_eq!((r.width() - Complex64::i()).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((r.cowidth() - Complex64::i()).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.re_ab(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn flow_at_optimal_angle_kills_im_ba_and_the_excess_product() {
        let p = squeezed();
        let r = rotate_params(&p, optimal_theta(&p).radians());
        assert_abs_diff_eq!(r.im_ba(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.width().norm() * r.cowidth().norm(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn flow_conserves_the_normalization_constraint() {
        let p = squeezed();
        for i in 0..100 {
            let t = i as f64 * std::f64::consts::PI / 100.0;
            assert_abs_diff_eq!(rotate_params(&p, t).re_ab(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn hamiltonian_matrix_entries() {
        let m = hamiltonian_matrix(&params(c(1.0, 0.0), c(1.0, 0.0)));
        assert_eq!((m.m11, m.m12, m.m22), (1.0, 0.0, 1.0));
        let m = hamiltonian_matrix(&squeezed());
        assert_abs_diff_eq!(m.m11, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.m12, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.m22, 1.0, epsilon = 1e-15);
        let m = hamiltonian_matrix(&GaussianParams::standard_oscillator(4.0, 1.0).unwrap());
        assert_abs_diff_eq!(m.m11, 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.m12, 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(m.m22, 0.25, epsilon = 1e-15);
    }

    #[test]
    fn eigenvalues_of_the_circular_and_diagonal_cases() {
        let (lo, hi) = h_eigenvalues(&params(c(1.0, 0.0), c(1.0, 0.0)));
        assert_abs_diff_eq!(lo, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(hi, 0.5, epsilon = 1e-15);
        let (lo, hi) = h_eigenvalues(&GaussianParams::standard_oscillator(4.0, 1.0).unwrap());
        assert_abs_diff_eq!(lo, 0.125, epsilon = 1e-15);
        assert_abs_diff_eq!(hi, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(lo * hi, 0.25, epsilon = 1e-15);
    }

    #[test]
    fn squeezed_eigenvalues_match_the_closed_form_and_jacobi() {
        // ¼(3 ∓ √5): the pair multiplies to exactly ¼.
        let (lo, hi) = h_eigenvalues(&squeezed());
        let root5 = 5.0f64.sqrt();
        assert_abs_diff_eq!(lo, 0.25 * (3.0 - root5), epsilon = 1e-14);
        assert_abs_diff_eq!(hi, 0.25 * (3.0 + root5), epsilon = 1e-14);
        assert_abs_diff_eq!(lo, 0.190_983_005_625_052_57, epsilon = 1e-14);
        assert_abs_diff_eq!(hi, 1.309_016_994_374_947_5, epsilon = 1e-14);
        assert_abs_diff_eq!(lo * hi, 0.25, epsilon = 1e-14);
        let (jlo, jhi) = jacobi_eigenvalues(1.0, 0.5, 0.5); // ½M
        assert_relative_eq!(jlo, lo, max_relative = 1e-13);
        assert_relative_eq!(jhi, hi, max_relative = 1e-13);
    }

    #[test]
    fn diagonalizing_angle_annihilates_the_off_diagonal() {
        for m in [
            QuadForm2 {
                m11: 1.0,
                m12: 0.0,
                m22: 1.0,
            },
            QuadForm2 {
                m11: 2.0,
                m12: 1.0,
                m22: 1.0,
            },
            QuadForm2 {
                m11: 4.0,
                m12: 0.0,
                m22: 0.25,
            },
            QuadForm2 {
                m11: 0.3,
                m12: -2.5,
                m22: 1.7,
            },
        ] {
            let theta = diagonalizing_angle(&m);
            assert_abs_diff_eq!(m.rotated(theta.radians()).m12, 0.0, epsilon = 1e-12);
        }
        assert_eq!(
            diagonalizing_angle(&QuadForm2 {
                m11: 1.0,
                m12: 0.0,
                m22: 1.0
            })
            .radians(),
            0.0
        );
        assert_abs_diff_eq!(
            diagonalizing_angle(&QuadForm2 {
                m11: 2.0,
                m12: 1.0,
                m22: 1.0
            })
            .radians(),
            0.5 * 2.0f64.atan(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn diagonalizer_agrees_with_the_optimal_angle_for_packet_matrices() {
        let p = squeezed();
        assert_abs_diff_eq!(
            diagonalizing_angle(&hamiltonian_matrix(&p)).radians(),
            optimal_theta(&p).radians(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn ladder_hamiltonians_share_the_classical_form() {
        let circ = ladder_hamiltonian_form(&params(c(1.0, 0.0), c(1.0, 0.0)));
        assert_eq!((circ.m11, circ.m12, circ.m22), (1.0, 0.0, 1.0));
        let p = squeezed();
        let m = ladder_hamiltonian_form(&p);
        let hm = hamiltonian_matrix(&p);
        assert_abs_diff_eq!(m.m11, hm.m11, epsilon = 1e-12);
        assert_abs_diff_eq!(m.m12, hm.m12, epsilon = 1e-12);
        assert_abs_diff_eq!(m.m22, hm.m22, epsilon = 1e-12);
        // The transpose-conjugate partner symmetrizes to the same matrix.
        let off2 = 0.5
            * (Complex64::i() * p.width() * p.cowidth().conj()
                - Complex64::i() * p.cowidth() * p.width().conj());
        assert_abs_diff_eq!(off2.re, m.m12, epsilon = 1e-15);
        assert_abs_diff_eq!(off2.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn flow_identities_hold_at_small_step() {
        let p = squeezed();
        for t in [0.0, 0.3] {
            let (r1, r2, r3) = flow_derivative_residuals(&p, t, 1e-5);
            assert!(r1 < 1e-8, "r1 = {r1:.3e} at t = {t}");
            assert!(r2 < 1e-8, "r2 = {r2:.3e} at t = {t}");
            assert!(r3 < 1e-8, "r3 = {r3:.3e} at t = {t}");
        }
    }

    #[test]
    fn circular_flow_identities_are_exact() {
        let p = params(c(1.0, 0.0), c(1.0, 0.0));
        for t in [0.0, 0.7, 2.3] {
            let (r1, r2, r3) = flow_derivative_residuals(&p, t, 1e-5);
            assert_abs_diff_eq!(r1, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(r2, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(r3, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn scan_is_flat_for_the_circular_packet() {
        let p = params(c(1.0, 0.0), c(1.0, 0.0));
        let (_, min_product) = scan_minimize(&p, 1024);
        assert_abs_diff_eq!(min_product, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn scan_recovers_the_optimal_angle_for_the_squeezed_packet() {
        let p = squeezed();
        let (t_star, min_product) = scan_minimize(&p, 2048);
        assert_abs_diff_eq!(min_product, 1.0, epsilon = 1e-12);
        let theta = optimal_theta(&p).radians();
        let dist = (0..4)
            .map(|m| (t_star - theta - m as f64 * std::f64::consts::FRAC_PI_2).abs())
            .fold(f64::INFINITY, f64::min);
        assert!(dist < 1e-9, "scan argmin {t_star} vs theta {theta}");
        assert_abs_diff_eq!(rotate_params(&p, t_star).im_ba(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn scan_of_the_diagonal_oscillator_finds_zero() {
        let p = GaussianParams::standard_oscillator(4.0, 1.0).unwrap();
        let (t_star, min_product) = scan_minimize(&p, 1024);
        assert_abs_diff_eq!(min_product, 1.0, epsilon = 1e-12);
        let dist = (0..4)
            .map(|m| (t_star - m as f64 * std::f64::consts::FRAC_PI_2).abs())
            .fold(f64::INFINITY, f64::min);
        assert!(dist < 1e-9);
    }

    #[test]
    fn second_derivative_is_negative_at_the_balanced_nonzero_crossing() {
        // Where |A(t)| = |B(t)| with Im(B(t)Ā(t)) ≠ 0 the product curve has
        // a maximum, not a minimum.
        let p = squeezed();
        let d0 = p.width().norm_sqr() - p.cowidth().norm_sqr();
        let g0 = p.im_ba();
        let t_max = 0.5 * d0.atan2(2.0 * g0);
        let at = |t: f64| {
            let q = rotate_params(&p, t);
            q.width().norm_sqr() * q.cowidth().norm_sqr()
        };
        let balanced = rotate_params(&p, t_max);
        assert_abs_diff_eq!(
            balanced.width().norm_sqr() - balanced.cowidth().norm_sqr(),
            0.0,
            epsilon = 1e-12
        );
        assert!(balanced.im_ba().abs() > 0.1);
        let h = 1e-4;
        let second = (at(t_max + h) - 2.0 * at(t_max) + at(t_max - h)) / (h * h);
        assert!(second < 0.0, "expected a maximum, got f'' = {second}");
    }

    proptest::proptest! {
        #[test]
        fn flow_keeps_parameters_valid_and_eigenproduct_quarter(
            mod_a in 0.3f64..4.0,
            phase in 0.0f64..std::f64::consts::TAU,
            im in -3.0f64..3.0,
            t in 0.0f64..std::f64::consts::PI,
        ) {
            let a = Complex64::from_polar(mod_a, phase);
            let b = c(1.0, im) / a.conj();
            let p = GaussianParams::validate(a, b, 1.0, 0.0, 0.0, DEFAULT_TOL).unwrap();
            let r = rotate_params(&p, t);
            proptest::prop_assert!((r.re_ab() - 1.0).abs() < 1e-12);
            let (lo, hi) = h_eigenvalues(&r);
            proptest::prop_assert!((lo * hi - 0.25).abs() < 1e-12);
        }
    }
}
