//! Momentum-representation photon amplitudes and the classical-quantum
//! correspondence.
//!
//! Bessel beams have delta-constrained amplitudes
//! `f^±(k') ∝ √2(2π)² k' e^{±imφ'} δ(k_⊥'−k_⊥) δ(k_z'−k_z)`; consuming the
//! deltas against the plane-wave measure turns the superposition into a
//! one-dimensional quadrature over `φ'`, which reproduces the closed-form
//! RS field and serves as this module's brute-force oracle.
//!
//! Exact LG beams carry a smooth density over `(k_−', φ')` on the shell
//! `k_+' = Ω/c`. Their profile is the `g(k_+,k_−)`-smeared family of Bessel
//! amplitudes; rewriting the Bessel delta pair in `(k_+, k_−)` variables
//! brings in the Jacobian `∂(k_⊥,k_z)/∂(k_+,k_−) = 2k/k_⊥`, which turns the
//! plane-wave prefactor `k'` into `k_⊥'/2 = √(Ωk_−'/c)`. Dropping that
//! factor doubles the spectral spread of every expectation value; the
//! position-space cross-check in `tests/position_space.rs` pins it down.
//!
//! All inner products use the relativistic measure `dk/ω`, reduced by hand
//! with `d³k = 2k dk_+ dk_− dφ`; the leftover `δ(0)` from the squared shell
//! delta is dropped, so norms are defined per unit `k_+`-shell and only
//! ratios and the stated functional relations are convention-free.
//!
//! Delta constraints are always handled analytically; nothing here mollifies
//! a delta numerically.

use num_complex::Complex64;
use std::f64::consts::{PI, SQRT_2, TAU};
use thiserror::Error;

use crate::beams::{polarization_vector, BesselBeamSpec, Helicity, LgBeamSpec, WaveVector};
use crate::fields::{ComplexVec3, Constants, SpacetimePoint};
use crate::quad::{self, QuadError, QuadSpec};

/// Errors from momentum-space computations.
#[derive(Debug, Clone, Error)]
pub enum MomentumError {
    #[error("Bessel amplitudes are delta-normalized and have no finite photon norm")]
    DeltaNormalized,
    #[error("amplitude has zero norm; normalized quantities are undefined")]
    ZeroNorm,
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

/// Delta-constrained Bessel amplitude: the surface `k_⊥' = k_⊥, k_z' = k_z`
/// carrying the smooth profile `(−iσ)^m √2 (2π)² k' e^{iσmφ'}`, scaled by an
/// overall complex coefficient.
#[derive(Debug, Clone, Copy)]
pub struct BesselAmplitude {
    pub spec: BesselBeamSpec,
    pub coeff: Complex64,
}

impl BesselAmplitude {
    pub fn new(spec: BesselBeamSpec) -> Self {
        Self {
            spec,
            coeff: Complex64::new(1.0, 0.0),
        }
    }

    pub fn scaled(mut self, factor: Complex64) -> Self {
        self.coeff *= factor;
        self
    }

    /// The φ' profile on the delta surface.
    pub fn profile(&self, phi_k: f64) -> Complex64 {
        let sigma = self.spec.sigma.sign();
        let k = self.spec.total_wavenumber();
        let m = self.spec.m;
        self.coeff
            * Complex64::new(0.0, -sigma).powi(m)
            * (SQRT_2 * (TAU * TAU) * k)
            * Complex64::new(0.0, sigma * m as f64 * phi_k).exp()
    }
}

/// Plane-wave synthesis of the Bessel RS field: with the deltas consumed
/// analytically, the superposition collapses to
///
/// ```text
/// F(r,t) = (1/2π) ∫₀^{2π} dφ' e(k'(φ')) e^{iσmφ'} e^{−iσ(ω_k t − k'·r)}
/// ```
///
/// where `k'(φ') = (k_⊥cosφ', k_⊥sinφ', k_z)`. The amplitude prefactor
/// `√2(2π)²k'` cancels against the measure `d³k'/(2π)³` and the mode
/// normalization `N(k') = 1/(√2 k' k_⊥)`, so the quadrature reproduces the
/// closed-form fieldel exactly — it is the module's brute-force oracle.
pub fn synthesize_bessel_field(
    amp: &BesselAmplitude,
    p: &SpacetimePoint,
    consts: &Constants,
    spec: &QuadSpec,
) -> Result<ComplexVec3, MomentumError> {
    let beam = &amp.spec;
    let sigma = beam.sigma.sign();
    let omega = consts.c * beam.total_wavenumber();
    let m = beam.m as f64;
    let integrand = |phi_k: f64| -> [f64; 6] {
        let k = WaveVector::from_cylindrical(beam.k_perp, phi_k, beam.k_z);
        let e = polarization_vector(&k).expect("k_perp > 0 by construction");
        let phase_arg = sigma * (m * phi_k + k.kx * p.x + k.ky * p.y + k.kz * p.z - omega * p.t);
        let phase = Complex64::new(0.0, phase_arg).exp();
        let v = e * phase;
        [v.x.re, v.x.im, v.y.re, v.y.im, v.z.re, v.z.im]
    };
    let result = quad::integrate(integrand, 0.0, TAU, spec)?;
    let v = result.value;
    let out = ComplexVec3::new(
        Complex64::new(v[0], v[1]),
        Complex64::new(v[2], v[3]),
        Complex64::new(v[4], v[5]),
    ) * (amp.coeff / TAU);
    Ok(out)
}

/// One smooth component of an LG-family wave function, stored in the
/// wave-function convention (negative-helicity classical amplitudes are
/// conjugated on entry).
#[derive(Debug, Clone, Copy)]
pub struct LgTerm {
    pub coeff: Complex64,
    pub n: u32,
    pub m: u32,
    pub omega: f64,
    pub waist: f64,
}

impl LgTerm {
    fn from_spec(spec: &LgBeamSpec, coeff: Complex64) -> Self {
        Self {
            coeff,
            n: spec.n,
            m: spec.m,
            omega: spec.omega,
            waist: spec.waist,
        }
    }

    /// Smooth radial density `k_−^{n+m/2} e^{−l²Ωk_−/c}` on the shell.
    fn radial(&self, k_minus: f64, c: f64) -> f64 {
        let s = self.n as f64 + self.m as f64 / 2.0;
        let decay = self.waist * self.waist * self.omega / c;
        if k_minus < 0.0 {
            return 0.0;
        }
        k_minus.powf(s) * (-decay * k_minus).exp()
    }
}

/// Momentum-space photon wave function pair `(ψ⁺, ψ⁻)` built from LG-family
/// components.
#[derive(Debug, Clone, Default)]
pub struct LgAmplitude {
    plus: Vec<LgTerm>,
    minus: Vec<LgTerm>,
}

impl LgAmplitude {
    /// Amplitude of a single classical LG beam with unit coefficient.
    pub fn from_beam(spec: &LgBeamSpec) -> Self {
        Self::from_classical_beam(spec, Complex64::new(1.0, 0.0))
    }

    /// Amplitude of a classical LG beam scaled by `coeff`. The
    /// negative-helicity classical amplitude `f⁻` enters as `ψ⁻ = (f⁻)*`,
    /// whose smooth profile coincides with the positive-helicity one; only
    /// the coefficient is conjugated.
    pub fn from_classical_beam(spec: &LgBeamSpec, coeff: Complex64) -> Self {
        let mut amp = Self::default();
        match spec.sigma {
            Helicity::Plus => amp.plus.push(LgTerm::from_spec(spec, coeff)),
            Helicity::Minus => amp.minus.push(LgTerm::from_spec(spec, coeff.conj())),
        }
        amp
    }

    /// Superposition of classical beams with the given coefficients.
    pub fn superpose(parts: &[(Complex64, LgBeamSpec)]) -> Self {
        let mut amp = Self::default();
        for (coeff, spec) in parts {
            let one = Self::from_classical_beam(spec, *coeff);
            amp.plus.extend(one.plus);
            amp.minus.extend(one.minus);
        }
        amp
    }

    /// Scale the underlying classical field by `factor`.
    pub fn scaled_classical(&self, factor: Complex64) -> Self {
        Self {
            plus: self
                .plus
                .iter()
                .map(|t| LgTerm {
                    coeff: t.coeff * factor,
                    ..*t
                })
                .collect(),
            minus: self
                .minus
                .iter()
                .map(|t| LgTerm {
                    coeff: t.coeff * factor.conj(),
                    ..*t
                })
                .collect(),
        }
    }

    pub fn terms(&self, helicity: Helicity) -> &[LgTerm] {
        match helicity {
            Helicity::Plus => &self.plus,
            Helicity::Minus => &self.minus,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty()
    }

    /// Wave-function value on the shell `k_+ = Ω/c`: sums the components
    /// living on that shell (exact `Ω` match) at `(k_−, φ')`. The prefactor
    /// `k_⊥'/2 = √(Ωk_−'/c)` is the Jacobian-corrected descendant of the
    /// Bessel amplitude's `k'`.
    pub fn profile(
        &self,
        helicity: Helicity,
        omega_shell: f64,
        k_minus: f64,
        phi_k: f64,
        consts: &Constants,
    ) -> Complex64 {
        let half_k_perp = (omega_shell / consts.c * k_minus).max(0.0).sqrt();
        let mut sum = Complex64::default();
        for term in self.terms(helicity) {
            if term.omega != omega_shell {
                continue;
            }
            sum += term.coeff
                * Complex64::new(0.0, -1.0).powi(term.m as i32)
                * (SQRT_2 * (TAU * TAU) * half_k_perp)
                * Complex64::new(0.0, term.m as f64 * phi_k).exp()
                * term.radial(k_minus, consts.c);
        }
        sum
    }
}

/// Default relative tolerance of the reduced quadratures.
pub const DEFAULT_REL_TOL: f64 = 1e-12;

/// Weight inserted under the reduced `dk/ω` integral.
#[derive(Clone, Copy)]
enum ShellWeight {
    One,
    Energy,
    AxialMomentum,
    AngularMomentumZ,
}

/// Reduced pair integral
/// `(16π²/c)·Re[c_i* c_j]·∫ dk_− W(k_−) (Ωk_−/c) s_i(k_−) s_j(k_−)`
/// over one helicity part; `(k_⊥/2)² = k_+k_− = Ωk_−/c` is the squared
/// profile prefactor. Pairs on different shells or with different `m`
/// vanish (disjoint deltas / φ' orthogonality).
fn helicity_integral(
    terms: &[LgTerm],
    weight: ShellWeight,
    consts: &Constants,
    rel_tol: f64,
) -> Result<f64, MomentumError> {
    let c = consts.c;
    let spec = QuadSpec::new(rel_tol, 1e-300).with_budget(600);
    let mut contributions: Vec<f64> = Vec::new();
    for (i, ti) in terms.iter().enumerate() {
        for (j, tj) in terms.iter().enumerate().skip(i) {
            if ti.m != tj.m || ti.omega != tj.omega {
                continue;
            }
            let k_shell = ti.omega / c;
            let decay =
                (ti.waist * ti.waist + tj.waist * tj.waist) * ti.omega / c;
            let m = ti.m;
            let integrand = |k_minus: f64| -> [f64; 1] {
                let k_total = k_shell + k_minus;
                let radial = ti.radial(k_minus, c) * tj.radial(k_minus, c);
                let w = match weight {
                    ShellWeight::One => 1.0,
                    ShellWeight::Energy => consts.hbar * c * k_total,
                    ShellWeight::AxialMomentum => consts.hbar * (k_shell - k_minus),
                    ShellWeight::AngularMomentumZ => consts.hbar * m as f64,
                };
                [w * k_shell * k_minus * radial]
            };
            let integral = quad::integrate_semi_infinite(integrand, 1.0 / decay, &spec)?;
            let overlap = ti.coeff.conj() * tj.coeff;
            let symmetry = if i == j { 1.0 } else { 2.0 };
            contributions.push(symmetry * overlap.re * integral.value[0]);
        }
    }
    Ok(16.0 * PI * PI / c * quad::pairwise_sum(&contributions))
}

/// Tagged photon amplitude accepted by the norm and expectation machinery.
pub enum PhotonAmplitude {
    Bessel(BesselAmplitude),
    LaguerreGauss(LgAmplitude),
}

fn lg_of(amp: &PhotonAmplitude) -> Result<&LgAmplitude, MomentumError> {
    match amp {
        PhotonAmplitude::Bessel(_) => Err(MomentumError::DeltaNormalized),
        PhotonAmplitude::LaguerreGauss(a) => Ok(a),
    }
}

/// Photon norm `N = ∫ dk/ω (|ψ⁺|² + |ψ⁻|²)`, reduced to one-dimensional
/// quadratures over `k_−`. Bessel amplitudes are rejected: their norm
/// carries a bare `δ(0)`.
pub fn photon_norm(amp: &PhotonAmplitude, consts: &Constants) -> Result<f64, MomentumError> {
    photon_norm_with_tolerance(amp, consts, DEFAULT_REL_TOL)
}

/// [`photon_norm`] at an explicit relative quadrature tolerance.
pub fn photon_norm_with_tolerance(
    amp: &PhotonAmplitude,
    consts: &Constants,
    rel_tol: f64,
) -> Result<f64, MomentumError> {
    let lg = lg_of(amp)?;
    let (np, nm) = partial_norms_with_tolerance(lg, consts, rel_tol)?;
    Ok(np + nm)
}

/// Per-helicity norms `(N⁺, N⁻)`.
pub fn partial_norms(amp: &LgAmplitude, consts: &Constants) -> Result<(f64, f64), MomentumError> {
    partial_norms_with_tolerance(amp, consts, DEFAULT_REL_TOL)
}

pub fn partial_norms_with_tolerance(
    amp: &LgAmplitude,
    consts: &Constants,
    rel_tol: f64,
) -> Result<(f64, f64), MomentumError> {
    Ok((
        helicity_integral(&amp.plus, ShellWeight::One, consts, rel_tol)?,
        helicity_integral(&amp.minus, ShellWeight::One, consts, rel_tol)?,
    ))
}

fn normalized_expectation(
    amp: &LgAmplitude,
    weight: ShellWeight,
    consts: &Constants,
    rel_tol: f64,
) -> Result<f64, MomentumError> {
    let (np, nm) = partial_norms_with_tolerance(amp, consts, rel_tol)?;
    let norm = np + nm;
    if norm <= 0.0 {
        return Err(MomentumError::ZeroNorm);
    }
    let total = helicity_integral(&amp.plus, weight, consts, rel_tol)?
        + helicity_integral(&amp.minus, weight, consts, rel_tol)?;
    Ok(total / norm)
}

/// `⟨M̂_z⟩ = (1/N) ∫ dk/ω ψ*(−iħ∂_{φ'})ψ` summed over helicities; equals
/// `ħm` for single-`m` amplitudes.
pub fn expectation_mz(amp: &PhotonAmplitude, consts: &Constants) -> Result<f64, MomentumError> {
    expectation_mz_with_tolerance(amp, consts, DEFAULT_REL_TOL)
}

pub fn expectation_mz_with_tolerance(
    amp: &PhotonAmplitude,
    consts: &Constants,
    rel_tol: f64,
) -> Result<f64, MomentumError> {
    normalized_expectation(lg_of(amp)?, ShellWeight::AngularMomentumZ, consts, rel_tol)
}

/// `⟨Ĥ⟩ = (1/N) ∫ dk/ω ħω |ψ|²`.
pub fn expectation_energy(amp: &PhotonAmplitude, consts: &Constants) -> Result<f64, MomentumError> {
    expectation_energy_with_tolerance(amp, consts, DEFAULT_REL_TOL)
}

pub fn expectation_energy_with_tolerance(
    amp: &PhotonAmplitude,
    consts: &Constants,
    rel_tol: f64,
) -> Result<f64, MomentumError> {
    normalized_expectation(lg_of(amp)?, ShellWeight::Energy, consts, rel_tol)
}

/// `⟨p̂_z⟩ = (1/N) ∫ dk/ω ħk_z |ψ|²` with `k_z = Ω/c − k_−` on the shell.
pub fn expectation_pz(amp: &PhotonAmplitude, consts: &Constants) -> Result<f64, MomentumError> {
    expectation_pz_with_tolerance(amp, consts, DEFAULT_REL_TOL)
}

pub fn expectation_pz_with_tolerance(
    amp: &PhotonAmplitude,
    consts: &Constants,
    rel_tol: f64,
) -> Result<f64, MomentumError> {
    normalized_expectation(lg_of(amp)?, ShellWeight::AxialMomentum, consts, rel_tol)
}

/// `⟨Λ̂⟩ = (N⁺ − N⁻)/(N⁺ + N⁻)`.
pub fn expectation_helicity(
    amp: &PhotonAmplitude,
    consts: &Constants,
) -> Result<f64, MomentumError> {
    expectation_helicity_with_tolerance(amp, consts, DEFAULT_REL_TOL)
}

pub fn expectation_helicity_with_tolerance(
    amp: &PhotonAmplitude,
    consts: &Constants,
    rel_tol: f64,
) -> Result<f64, MomentumError> {
    let lg = lg_of(amp)?;
    let (np, nm) = partial_norms_with_tolerance(lg, consts, rel_tol)?;
    let total = np + nm;
    if total <= 0.0 {
        return Err(MomentumError::ZeroNorm);
    }
    Ok((np - nm) / total)
}

/// The classical angular momentum functional in momentum space:
/// `M_z = ∫ dk/ω Σ_± f^±*(−i∂_{φ'}) f^±`. The `f⁻` profile carries
/// `e^{−imφ'}`, so negative-helicity components contribute with opposite
/// sign.
pub fn classical_mz(amp: &LgAmplitude, consts: &Constants) -> Result<f64, MomentumError> {
    let plus = helicity_integral(&amp.plus, ShellWeight::AngularMomentumZ, consts, DEFAULT_REL_TOL)?;
    let minus = helicity_integral(&amp.minus, ShellWeight::AngularMomentumZ, consts, DEFAULT_REL_TOL)?;
    Ok((plus - minus) / consts.hbar)
}

/// Mean photon number and normalized wave functions extracted from a
/// classical field.
#[derive(Debug, Clone)]
pub struct CoherentStateData {
    /// `⟨N⟩ = (1/ħ) ∫ dk/ω (|f⁺|² + |f⁻|²)`.
    pub mean_photon_number: f64,
    /// `ψ± = f±/√(ħ⟨N⟩)` (σ = −1 conjugated); `None` for a vanishing field.
    pub normalized: Option<LgAmplitude>,
}

/// Decompose a classical LG-family field into its coherent-state data.
pub fn coherent_state_decompose(
    classical: &LgAmplitude,
    consts: &Constants,
) -> Result<CoherentStateData, MomentumError> {
    let (np, nm) = partial_norms(classical, consts)?;
    let norm = np + nm;
    let mean_photon_number = norm / consts.hbar;
    if norm <= 0.0 {
        return Ok(CoherentStateData {
            mean_photon_number: 0.0,
            normalized: None,
        });
    }
    // dividing by √(ħ⟨N⟩) = √norm makes the combined norm exactly one
    let scale = Complex64::new(1.0 / norm.sqrt(), 0.0);
    let normalized = LgAmplitude {
        plus: classical
            .plus
            .iter()
            .map(|t| LgTerm {
                coeff: t.coeff * scale,
                ..*t
            })
            .collect(),
        minus: classical
            .minus
            .iter()
            .map(|t| LgTerm {
                coeff: t.coeff * scale,
                ..*t
            })
            .collect(),
    };
    Ok(CoherentStateData {
        mean_photon_number,
        normalized: Some(normalized),
    })
}
