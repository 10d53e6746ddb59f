//! Randomized property suites behind the `verify` command.
//!
//! Each suite sweeps seeded-random valid parameter sets (|A|, |B| ∈ [0.3, 4],
//! ħ cycling through {1, 0.1, 0.01}), reports its worst residual against a
//! fixed tolerance, and never mutates shared state, so runs are reproducible
//! from the seed alone.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::observables::{commutator_constant, uncertainty_report, LinearObservable};
use crate::params::{GaussianParams, DEFAULT_TOL};
use crate::poly::ComplexPoly;
use crate::quadrature::{
    gram_matrix, inner_product, poly_state_moments, quadrature_expectation, QuadratureSpec,
};
use crate::rotation::{
    diagonalizing_angle, flow_derivative_residuals, h_eigenvalues, hamiltonian_matrix,
    optimal_theta, rotate_params, scan_minimize,
};
use crate::wavepacket::WavePacket;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRIALS: usize = 100;

const HBAR_CYCLE: [f64; 3] = [1.0, 0.1, 0.01];

/// Result of one property suite.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub max_residual: f64,
    pub tolerance: f64,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.tolerance
    }
}

/// Draw one valid squeezed parameter set with |A|, |B| ∈ [0.3, 4].
///
/// A is drawn in polar form; B = (1 + i·c)/Ā sits exactly on the constraint
/// surface Re(ĀB) = 1, and c is rejected until |B| lands in range.
pub fn sample_params(rng: &mut impl Rng, hbar: f64) -> GaussianParams {
    loop {
        let mod_a: f64 = rng.random_range(0.3..=4.0);
        let phase = rng.random_range(0.0..std::f64::consts::TAU);
        let width = Complex64::from_polar(mod_a, phase);
        let c_max = ((4.0 * mod_a).powi(2) - 1.0).sqrt();
        let c = rng.random_range(-c_max..=c_max);
        let cowidth = Complex64::new(1.0, c) / width.conj();
        if (0.3..=4.0).contains(&cowidth.norm()) {
            let center = rng.random_range(-2.0..=2.0);
            let momentum = rng.random_range(-2.0..=2.0);
            return GaussianParams::validate(width, cowidth, hbar, center, momentum, DEFAULT_TOL)
                .expect("constructed on the constraint surface");
        }
    }
}

/// Seeded batch of parameter sets, ħ cycling through {1, 0.1, 0.01}.
pub fn sample_param_sets(seed: u64, count: usize) -> Vec<GaussianParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| sample_params(&mut rng, HBAR_CYCLE[i % HBAR_CYCLE.len()]))
        .collect()
}

/// Re(ĀB) = 1 along a 100-point sweep of the rotation flow.
pub fn flow_validity(sets: &[GaussianParams]) -> SuiteOutcome {
    let mut max = 0.0f64;
    for p in sets {
        for i in 0..100 {
            let t = i as f64 * std::f64::consts::PI / 100.0;
            max = max.max((rotate_params(p, t).re_ab() - 1.0).abs());
        }
    }
    SuiteOutcome {
        name: "flow_validity",
        cases: sets.len() * 100,
        max_residual: max,
        tolerance: 1e-12,
    }
}

/// lower(raise(φ_k)) reproduces φ_k coefficient-wise for k ≤ 20, with the
/// expected degree growth and parity structure.
pub fn ladder_identities(sets: &[GaussianParams]) -> SuiteOutcome {
    let mut max = 0.0f64;
    for p in sets {
        let mut wp = WavePacket::ground_state(*p);
        for k in 0..20 {
            let up = wp.raise();
            if up.poly().degree() != Some(k + 1) {
                max = f64::INFINITY;
            }
            for (m, coeff) in up.poly().coeffs().iter().enumerate() {
                if (m % 2) != ((k + 1) % 2) && *coeff != Complex64::ZERO {
                    max = f64::INFINITY;
                }
            }
            let back = up.lower().expect("k + 1 >= 1");
            max = max.max(back.poly().relative_distance(wp.poly()));
            wp = up;
        }
    }
    SuiteOutcome {
        name: "ladder_identities",
        cases: sets.len() * 20,
        max_residual: max,
        tolerance: 1e-10,
    }
}

/// ‖φ_k‖ = 1 by quadrature for k ≤ 15.
pub fn basis_normalization(sets: &[GaussianParams]) -> SuiteOutcome {
    let mut max = 0.0f64;
    for p in sets {
        let grid = QuadratureSpec::for_poly_state(p, 15);
        let mut wp = WavePacket::ground_state(*p);
        for _ in 0..=15 {
            let norm_sqr = inner_product(p, wp.poly(), wp.poly(), &grid).re;
            max = max.max((norm_sqr.sqrt() - 1.0).abs());
            wp = wp.raise();
        }
    }
    SuiteOutcome {
        name: "basis_normalization",
        cases: sets.len() * 16,
        max_residual: max,
        tolerance: 1e-9,
    }
}

/// Gram matrix of {φ_0..φ_10} equals the identity entrywise.
pub fn orthonormality(sets: &[GaussianParams]) -> SuiteOutcome {
    let mut max = 0.0f64;
    for p in sets {
        let grid = QuadratureSpec::for_poly_state(p, 10);
        let g = gram_matrix(p, 10, &grid).expect("default grid resolves the basis");
        for (i, row) in g.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                max = max.max((v - expect).norm());
            }
        }
    }
    SuiteOutcome {
        name: "orthonormality",
        cases: sets.len() * 121,
        max_residual: max,
        tolerance: 1e-9,
    }
}

/// One pass over k ≤ 8 comparing the ladder engine against quadrature:
/// per-observable variances (x, p, and a random rotated α), the closed-form
/// product (ħ/2)|A||B|(2k+1), and the quadrature product against both.
pub fn product_engines(sets: &[GaussianParams], seed: u64) -> [SuiteOutcome; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_var = 0.0f64;
    let mut max_formula = 0.0f64;
    let mut max_quad_product = 0.0f64;
    let mut cases = 0usize;
    for p in sets {
        let theta = rng.random_range(-std::f64::consts::FRAC_PI_2..=std::f64::consts::FRAC_PI_2);
        for k in 0..=8usize {
            let wp = WavePacket::excited(*p, k);
            let grid = QuadratureSpec::for_packet(&wp);
            let mut quad_var = [0.0f64; 2];
            for (slot, obs) in [LinearObservable::position(), LinearObservable::momentum()]
                .iter()
                .enumerate()
            {
                let exact = crate::observables::variance(obs, &wp);
                let (_, var) = quadrature_expectation(&wp, obs, &grid).expect("default grid");
                max_var = max_var.max((var / exact - 1.0).abs());
                quad_var[slot] = var;
            }
            let alpha = LinearObservable::alpha(theta);
            let exact_alpha = crate::observables::variance(&alpha, &wp);
            let (_, var_alpha) = quadrature_expectation(&wp, &alpha, &grid).expect("default grid");
            max_var = max_var.max((var_alpha / exact_alpha - 1.0).abs());

            let report = uncertainty_report(p, k, 0.0);
            let formula =
                0.5 * p.hbar() * p.width().norm() * p.cowidth().norm() * (2 * k + 1) as f64;
            max_formula = max_formula.max((report.product_xp / formula - 1.0).abs());
            let quad_product = (quad_var[0] * quad_var[1]).sqrt();
            max_quad_product = max_quad_product
                .max((quad_product / report.product_xp - 1.0).abs())
                .max((quad_product / formula - 1.0).abs());
            cases += 1;
        }
    }
    [
        SuiteOutcome {
            name: "exact_vs_quadrature",
            cases: cases * 3,
            max_residual: max_var,
            tolerance: 1e-7,
        },
        SuiteOutcome {
            name: "unrotated_product_formula",
            cases,
            max_residual: max_formula,
            tolerance: 1e-12,
        },
        SuiteOutcome {
            name: "unrotated_product_quadrature",
            cases,
            max_residual: max_quad_product,
            tolerance: 1e-7,
        },
    ]
}

/// Δα·Δβ ≥ (ħ/2)·|[α,β]/iħ| for random normalized two-level superpositions
/// c₀φ₀ + c₁φ₁ at random rotation angles, variances by quadrature only.
pub fn superposition_lower_bound(seed: u64, count: usize) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_violation = 0.0f64;
    for i in 0..count {
        let p = sample_params(&mut rng, HBAR_CYCLE[i % HBAR_CYCLE.len()]);
        let c0 = Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
        let c1 = Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
        let scale = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
        if scale < 1e-3 {
            continue;
        }
        let phi0 = WavePacket::ground_state(p);
        let phi1 = phi0.raise();
        let state = ComplexPoly::linear_combination(&[
            (c0 / scale, phi0.poly()),
            (c1 / scale, phi1.poly()),
        ]);
        let theta = rng.random_range(-std::f64::consts::FRAC_PI_2..=std::f64::consts::FRAC_PI_2);
        let alpha = LinearObservable::alpha(theta);
        let beta = LinearObservable::beta(theta);
        let grid = QuadratureSpec::for_poly_state(&p, 1);
        let (_, var_a) = poly_state_moments(&p, &state, &alpha, &grid).expect("default grid");
        let (_, var_b) = poly_state_moments(&p, &state, &beta, &grid).expect("default grid");
        let product = (var_a * var_b).sqrt();
        let bound = 0.5 * p.hbar() * commutator_constant(&alpha, &beta).abs();
        worst_violation = worst_violation.max(bound - product);
    }
    SuiteOutcome {
        name: "superposition_lower_bound",
        cases: count,
        max_residual: worst_violation.max(0.0),
        tolerance: 1e-8,
    }
}

/// At θ = optimal_theta: |A(θ)||B(θ)| = 1 and Δα·Δβ = ħ/2 in the ground
/// state (relative residuals).
pub fn rotated_min_product_ground(sets: &[GaussianParams]) -> SuiteOutcome {
    let mut max = 0.0f64;
    for p in sets {
        let theta = optimal_theta(p).radians();
        let rotated = rotate_params(p, theta);
        max = max.max((rotated.width().norm() * rotated.cowidth().norm() - 1.0).abs());
        let report = uncertainty_report(p, 0, theta);
        max = max.max((report.product_alphabeta / (0.5 * p.hbar()) - 1.0).abs());
    }
    SuiteOutcome {
        name: "rotated_min_product_ground",
        cases: sets.len() * 2,
        max_residual: max,
        tolerance: 1e-10,
    }
}

/// Δα·Δβ = (ħ/2)(2k+1) at the optimal angle for 1 ≤ k ≤ 10 (relative).
pub fn rotated_min_product_excited(sets: &[GaussianParams]) -> SuiteOutcome {
    let mut max = 0.0f64;
    for p in sets {
        let theta = optimal_theta(p).radians();
        for k in 1..=10usize {
            let report = uncertainty_report(p, k, theta);
            let target = 0.5 * p.hbar() * (2 * k + 1) as f64;
            max = max.max((report.product_alphabeta / target - 1.0).abs());
        }
    }
    SuiteOutcome {
        name: "rotated_min_product_excited",
        cases: sets.len() * 10,
        max_residual: max,
        tolerance: 1e-9,
    }
}

/// Quadratic-form eigenvalue product equals ¼, including the frozen
/// A = 1, B = 1 + i reference pair ¼(3 ∓ √5).
pub fn eigenvalue_product(sets: &[GaussianParams]) -> SuiteOutcome {
    let mut max = 0.0f64;
    for p in sets {
        let (lo, hi) = h_eigenvalues(p);
        max = max.max((lo * hi - 0.25).abs());
    }
    let reference = GaussianParams::validate(
        Complex64::new(1.0, 0.0),
        Complex64::new(1.0, 1.0),
        1.0,
        0.0,
        0.0,
        DEFAULT_TOL,
    )
    .expect("reference pair is valid");
    let (lo, hi) = h_eigenvalues(&reference);
    let root5 = 5.0f64.sqrt();
    max = max.max((lo - 0.25 * (3.0 - root5)).abs());
    max = max.max((hi - 0.25 * (3.0 + root5)).abs());
    SuiteOutcome {
        name: "eigenvalue_product",
        cases: sets.len() + 1,
        max_residual: max,
        tolerance: 1e-12,
    }
}

/// Both the matrix diagonalizer and the optimal angle annihilate the
/// off-diagonal entry of the quadratic form.
pub fn diagonalizer_annihilation(sets: &[GaussianParams]) -> SuiteOutcome {
    let mut max = 0.0f64;
    for p in sets {
        let m = hamiltonian_matrix(p);
        let by_matrix = diagonalizing_angle(&m).radians();
        let by_params = optimal_theta(p).radians();
        max = max.max(m.rotated(by_matrix).m12.abs());
        max = max.max(m.rotated(by_params).m12.abs());
    }
    SuiteOutcome {
        name: "diagonalizer_annihilation",
        cases: sets.len() * 2,
        max_residual: max,
        tolerance: 1e-12,
    }
}

/// Flow checks that are step-size robust: stationarity of |A|²|B|² at the
/// optimal angle, negative curvature at balanced nonzero crossings, and the
/// three derivative identities at the reference pairs.
pub fn flow_identities(sets: &[GaussianParams]) -> SuiteOutcome {
    let h = 1e-5;
    let mut max = 0.0f64;
    let mut cases = 0usize;
    for p in sets {
        let f = |t: f64| {
            let r = rotate_params(p, t);
            r.width().norm_sqr() * r.cowidth().norm_sqr()
        };
        let theta = optimal_theta(p).radians();
        max = max.max(((f(theta + h) - f(theta - h)) / (2.0 * h)).abs());
        cases += 1;

        // Balanced crossing |A(t)| = |B(t)|: a maximum when Im(BĀ) ≠ 0 there.
        let d0 = p.width().norm_sqr() - p.cowidth().norm_sqr();
        let g0 = p.im_ba();
        let t_max = 0.5 * d0.atan2(2.0 * g0);
        let crossing = rotate_params(p, t_max);
        if crossing.im_ba().abs() > 1e-6 {
            let hh = 1e-4;
            let second = (f(t_max + hh) - 2.0 * f(t_max) + f(t_max - hh)) / (hh * hh);
            if second >= 0.0 {
                max = f64::INFINITY;
            }
            cases += 1;
        }
    }
    for (a, b) in [
        (Complex64::new(1.0, 0.0), Complex64::new(1.0, 1.0)),
        (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)),
    ] {
        let p = GaussianParams::validate(a, b, 1.0, 0.0, 0.0, DEFAULT_TOL).unwrap();
        for t in [0.0, 0.3] {
            let (r1, r2, r3) = flow_derivative_residuals(&p, t, h);
            max = max.max(r1).max(r2).max(r3);
            cases += 1;
        }
    }
    SuiteOutcome {
        name: "flow_identities",
        cases,
        max_residual: max,
        tolerance: 1e-8,
    }
}

/// Raw finite-difference residuals of the three flow identities at random
/// times; the truncation constant grows with the squeezing magnitude.
pub fn flow_residuals_at_random_times(
    sets: &[GaussianParams],
    seed: u64,
    t_per_set: usize,
    h: f64,
) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max = 0.0f64;
    for p in sets {
        for _ in 0..t_per_set {
            let t = rng.random_range(0.0..std::f64::consts::PI);
            let (r1, r2, r3) = flow_derivative_residuals(p, t, h);
            max = max.max(r1).max(r2).max(r3);
        }
    }
    SuiteOutcome {
        name: "flow_identities_random_t",
        cases: sets.len() * t_per_set,
        max_residual: max,
        tolerance: 1e-8,
    }
}

/// Scan-refined minimizer: product back to 1, Im(B(t*)Ā(t*)) = 0, and
/// agreement with optimal_theta modulo the π/2 axis swap.
pub fn scan_agreement(sets: &[GaussianParams]) -> [SuiteOutcome; 3] {
    let mut max_product = 0.0f64;
    let mut max_im = 0.0f64;
    let mut max_theta = 0.0f64;
    for p in sets {
        let (t_star, min_product) = scan_minimize(p, 2000);
        max_product = max_product.max((min_product - 1.0).abs());
        max_im = max_im.max(rotate_params(p, t_star).im_ba().abs());
        let theta = optimal_theta(p).radians();
        let dist = (-1..=2)
            .map(|m| (t_star - theta - m as f64 * std::f64::consts::FRAC_PI_2).abs())
            .fold(f64::INFINITY, f64::min);
        max_theta = max_theta.max(dist);
    }
    [
        SuiteOutcome {
            name: "scan_min_product",
            cases: sets.len(),
            max_residual: max_product,
            tolerance: 1e-9,
        },
        SuiteOutcome {
            name: "scan_im_ba_zero",
            cases: sets.len(),
            max_residual: max_im,
            tolerance: 1e-9,
        },
        SuiteOutcome {
            name: "scan_theta_agreement",
            cases: sets.len(),
            max_residual: max_theta,
            tolerance: 1e-6,
        },
    ]
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    /// Self-test hook: zero out one tolerance so the harness must fail.
    pub tamper: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
            tamper: false,
        }
    }
}

/// Run every module property suite on seeded-random parameter sets.
pub fn run_suites(opts: &VerifyOptions) -> Vec<SuiteOutcome> {
    let sets = sample_param_sets(opts.seed, opts.trials.max(1));
    let quad_sets = &sets[..sets.len().min(20)];
    let gram_sets = &sets[..sets.len().min(12)];

    let mut outcomes = vec![
        flow_validity(&sets),
        ladder_identities(&sets),
        basis_normalization(quad_sets),
        orthonormality(gram_sets),
    ];
    outcomes.extend(product_engines(quad_sets, opts.seed ^ 0xA5A5));
    outcomes.push(superposition_lower_bound(
        opts.seed ^ 0x5A5A,
        (opts.trials / 2).max(1),
    ));
    outcomes.push(rotated_min_product_ground(&sets));
    outcomes.push(rotated_min_product_excited(&sets));
    outcomes.push(eigenvalue_product(&sets));
    outcomes.push(diagonalizer_annihilation(&sets));
    outcomes.push(flow_identities(&sets));
    outcomes.extend(scan_agreement(&sets));
    if opts.tamper {
        outcomes[0].tolerance = 0.0;
    }
    outcomes
}
