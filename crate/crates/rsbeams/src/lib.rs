//! Exact electromagnetic beams carrying angular momentum.
//!
//! The crate builds closed-form solutions of the free Maxwell equations —
//! Bessel beams and exact (non-paraxial) Laguerre-Gauss beams — through the
//! Riemann-Silberstein vector `F = √(ε₀/2)(E + icB)` and the Whittaker
//! representation of `F` by a single complex scalar `χ` satisfying the wave
//! equation. On top of the field catalog it provides the numerical machinery
//! to check every identity these beams are supposed to satisfy:
//!
//! * finite-difference residuals of the complex Maxwell pair
//!   `∂ₜF = −ic∇×F`, `∇·F = 0` and of the d'Alembert equation,
//! * wave-mechanics operators (momentum, angular momentum, helicity) applied
//!   to the fields as photon wave functions, with their eigenvalue relations,
//! * momentum-space amplitudes, photon norms, expectation values, and the
//!   classical-field ↔ coherent-state correspondence,
//! * the spectral weight `w(ω)` of exact Laguerre-Gauss beams with its hard
//!   cutoff, normalization, and peak structure.
//!
//! All computations are unit-agnostic; [`fields::Constants`] carries `c`, `ħ`,
//! `ε₀` and defaults to natural units (`c = ħ = ε₀ = 1`) with an SI preset.

pub mod beams;
pub mod fd;
pub mod fields;
pub mod momentum;
pub mod operators;
pub mod quad;
pub mod specfun;
pub mod spectrum;
pub mod verify;

pub use fields::{ComplexVec3, Constants, SpacetimePoint};
