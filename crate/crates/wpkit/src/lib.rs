//! Semiclassical Gaussian wave packets in one dimension.
//!
//! The packet family φ_k(A, B, ħ, a, η, ·) is an orthonormal ladder basis of
//! L²(ℝ): a complex-Gaussian ground state times degree-k polynomials, indexed
//! by complex width parameters with Re(ĀB) = 1.  The crate computes
//! position/momentum and rotated-observable uncertainties two independent
//! ways (exact ladder algebra and trapezoid quadrature), the optimal
//! phase-space rotation angle θ = ½·atan2(2·Im(BĀ), |B|²−|A|²), the closed
//! rotation flow on (A, B), the associated quadratic-form spectra, and
//! phase-space ellipse geometry for plotting.
//!
//! ```
//! use num_complex::Complex64;
//! use wpkit::{GaussianParams, observables, rotation};
//!
//! // A squeezed packet: Re(ĀB) = 1 with |A||B| = √2 > 1.
//! let p = GaussianParams::validate(
//!     Complex64::new(1.0, 0.0),
//!     Complex64::new(1.0, 1.0),
//!     1.0, 0.0, 0.0, 1e-12,
//! )?;
//!
//! // Unrotated, the packet misses the ħ/2 floor; at the optimal angle the
//! // rotated pair recovers it exactly.
//! let theta = rotation::optimal_theta(&p).radians();
//! let report = observables::uncertainty_report(&p, 0, theta);
//! assert!(report.product_xp > 0.5);
//! assert!((report.product_alphabeta - 0.5).abs() < 1e-12);
//! # Ok::<(), wpkit::ParamsError>(())
//! ```

pub mod ellipse;
pub mod observables;
pub mod params;
pub mod poly;
pub mod quadrature;
pub mod rotation;
pub mod verify;
pub mod wavepacket;

pub use ellipse::EllipseSpec;
pub use observables::{LinearObservable, UncertaintyReport};
pub use params::{GaussianParams, ParamsError};
pub use poly::ComplexPoly;
pub use quadrature::{QuadratureError, QuadratureSpec};
pub use rotation::{QuadForm2, RotationAngle};
pub use wavepacket::WavePacket;
