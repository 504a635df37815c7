//! Wave-mechanics operators for photon wave functions.
//!
//! Position space: spin-1 matrices, the curl identity `∇× = −i(ŝ·∇)`, the
//! momentum operators `p̂_z = −iħ∂_z` and `p̂_⊥² = −ħ²(∂x²+∂y²)`, the
//! angular momentum `M̂_z = −iħ(x∂_y − y∂_x) + ħŝ_z`, and the helicity
//! relation `∇×ψ^± = ±kψ^±`.
//!
//! Momentum space: the angular momentum operators acting on scalar
//! amplitudes `ψ^±(k)`, in the gauge where `M̂_z` is purely orbital and in
//! the alternate gauge where it carries the explicit spin term `±ħ`.
//!
//! Negative-frequency classical modes enter eigenvalue statements as complex
//! conjugates; [`ConjugatedField`] wraps a field accordingly so tests can be
//! explicit about which object they probe.

use num_complex::Complex64;
use thiserror::Error;

use crate::beams::Helicity;
use crate::fd::{self, Axis, FdSpec, StencilOrder};
use crate::fields::{ComplexVec3, Constants, FieldError, RsField, SpacetimePoint};

/// 3×3 complex matrix in row-major layout.
pub type Matrix3 = [[Complex64; 3]; 3];

/// The three spin-1 matrices `(s_k)_{ij} = −i ε_{kij}`.
#[derive(Debug, Clone)]
pub struct Spin1Matrices {
    pub sx: Matrix3,
    pub sy: Matrix3,
    pub sz: Matrix3,
}

/// Errors from operator application.
#[derive(Debug, Clone, Error)]
pub enum OperatorError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("angular momentum components are singular on the k_z axis (k_perp = 0)")]
    SingularDirection,
    #[error("alternate-gauge terms are undefined on the backward axis k_z = -k")]
    BackwardAxis,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);
const NEG_I: Complex64 = Complex64::new(0.0, -1.0);

/// The exact spin-1 matrices.
pub fn spin_matrices() -> Spin1Matrices {
    Spin1Matrices {
        sx: [[ZERO, ZERO, ZERO], [ZERO, ZERO, NEG_I], [ZERO, I, ZERO]],
        sy: [[ZERO, ZERO, I], [ZERO, ZERO, ZERO], [NEG_I, ZERO, ZERO]],
        sz: [[ZERO, NEG_I, ZERO], [I, ZERO, ZERO], [ZERO, ZERO, ZERO]],
    }
}

pub fn matrix_apply(m: &Matrix3, v: &ComplexVec3) -> ComplexVec3 {
    let comp = [v.x, v.y, v.z];
    let mut out = [ZERO; 3];
    for (i, row) in m.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            out[i] += entry * comp[j];
        }
    }
    ComplexVec3::new(out[0], out[1], out[2])
}

pub fn matrix_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut out = [[ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for (k, bk) in b.iter().enumerate() {
                out[i][j] += a[i][k] * bk[j];
            }
        }
    }
    out
}

pub fn matrix_sub(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut out = [[ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i][j] - b[i][j];
        }
    }
    out
}

/// `[a, b] = ab − ba`.
pub fn commutator(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    matrix_sub(&matrix_mul(a, b), &matrix_mul(b, a))
}

pub fn matrix_max_abs(m: &Matrix3) -> f64 {
    m.iter()
        .flatten()
        .map(|c| c.norm())
        .fold(0.0, f64::max)
}

fn check_spatial_steps(p: &SpacetimePoint, fdspec: &FdSpec) -> Result<(), OperatorError> {
    for axis in [Axis::X, Axis::Y, Axis::Z] {
        if fdspec.underflows_at(p, axis) {
            return Err(OperatorError::Field(FieldError::StepUnderflow {
                axis,
                step: fdspec.step(axis),
                coordinate: p.coordinate(axis),
            }));
        }
    }
    Ok(())
}

fn fd_partial(
    f: &(impl RsField + ?Sized),
    p: &SpacetimePoint,
    axis: Axis,
    fdspec: &FdSpec,
) -> ComplexVec3 {
    fd::first_derivative(&|q: &SpacetimePoint| f.value(q), p, axis, fdspec)
}

fn analytic_or_fd_partial(
    f: &(impl RsField + ?Sized),
    p: &SpacetimePoint,
    axis: Axis,
    fdspec: &FdSpec,
) -> ComplexVec3 {
    f.partial(p, axis).unwrap_or_else(|| fd_partial(f, p, axis, fdspec))
}

/// Curl by the component formula, with the same differentiation route as
/// [`curl_via_spin`] would take analytically or by finite differences.
pub fn curl(
    f: &(impl RsField + ?Sized),
    p: &SpacetimePoint,
    fdspec: &FdSpec,
) -> Result<ComplexVec3, OperatorError> {
    check_spatial_steps(p, fdspec)?;
    let dx = analytic_or_fd_partial(f, p, Axis::X, fdspec);
    let dy = analytic_or_fd_partial(f, p, Axis::Y, fdspec);
    let dz = analytic_or_fd_partial(f, p, Axis::Z, fdspec);
    Ok(ComplexVec3::new(
        dy.z - dz.y,
        dz.x - dx.z,
        dx.y - dy.x,
    ))
}

/// Apply `−i(ŝ·∇)` with finite-difference partials; by the identity
/// `∇× = −i(ŝ·∇)` this must reproduce the component-formula curl computed
/// from the same stencil.
pub fn curl_via_spin(
    f: &(impl RsField + ?Sized),
    p: &SpacetimePoint,
    fdspec: &FdSpec,
) -> Result<ComplexVec3, OperatorError> {
    check_spatial_steps(p, fdspec)?;
    let s = spin_matrices();
    let dx = fd_partial(f, p, Axis::X, fdspec);
    let dy = fd_partial(f, p, Axis::Y, fdspec);
    let dz = fd_partial(f, p, Axis::Z, fdspec);
    let sum = matrix_apply(&s.sx, &dx) + matrix_apply(&s.sy, &dy) + matrix_apply(&s.sz, &dz);
    Ok(sum * NEG_I)
}

/// `p̂_z F = −iħ ∂_z F`.
pub fn apply_pz(
    f: &(impl RsField + ?Sized),
    p: &SpacetimePoint,
    consts: &Constants,
    fdspec: &FdSpec,
) -> Result<ComplexVec3, OperatorError> {
    check_spatial_steps(p, fdspec)?;
    let dz = analytic_or_fd_partial(f, p, Axis::Z, fdspec);
    Ok(dz * (NEG_I * consts.hbar))
}

/// `p̂_⊥² F = −ħ² (∂x² + ∂y²) F`.
pub fn apply_pperp2(
    f: &(impl RsField + ?Sized),
    p: &SpacetimePoint,
    consts: &Constants,
    fdspec: &FdSpec,
) -> Result<ComplexVec3, OperatorError> {
    check_spatial_steps(p, fdspec)?;
    let lap = f.transverse_laplacian(p).unwrap_or_else(|| {
        let g = |q: &SpacetimePoint| f.value(q);
        fd::second_derivative(&g, p, Axis::X, fdspec)
            + fd::second_derivative(&g, p, Axis::Y, fdspec)
    });
    Ok(lap * (-consts.hbar * consts.hbar))
}

/// `M̂_z F = −iħ (x ∂_y − y ∂_x) F + ħ ŝ_z F`.
pub fn apply_mz(
    f: &(impl RsField + ?Sized),
    p: &SpacetimePoint,
    consts: &Constants,
    fdspec: &FdSpec,
) -> Result<ComplexVec3, OperatorError> {
    check_spatial_steps(p, fdspec)?;
    let dx = analytic_or_fd_partial(f, p, Axis::X, fdspec);
    let dy = analytic_or_fd_partial(f, p, Axis::Y, fdspec);
    let orbital = (dy * p.x - dx * p.y) * (NEG_I * consts.hbar);
    let spin = matrix_apply(&spin_matrices().sz, &f.value(p)) * consts.hbar;
    Ok(orbital + spin)
}

/// `∇×F − σkF`; a near-zero result certifies helicity `σ` for a mode of
/// total wavenumber `k`.
pub fn helicity_residual(
    f: &(impl RsField + ?Sized),
    p: &SpacetimePoint,
    k: f64,
    sigma: Helicity,
    fdspec: &FdSpec,
) -> Result<ComplexVec3, OperatorError> {
    let curl_f = curl(f, p, fdspec)?;
    Ok(curl_f - f.value(p) * (sigma.sign() * k))
}

/// Field wrapper representing the complex conjugate; negative-frequency
/// classical modes must be conjugated before being read as photon wave
/// functions.
pub struct ConjugatedField<'a, F: RsField + ?Sized>(pub &'a F);

impl<F: RsField + ?Sized> RsField for ConjugatedField<'_, F> {
    fn value(&self, p: &SpacetimePoint) -> ComplexVec3 {
        self.0.value(p).conj()
    }

    fn partial(&self, p: &SpacetimePoint, axis: Axis) -> Option<ComplexVec3> {
        self.0.partial(p, axis).map(|v| v.conj())
    }

    fn transverse_laplacian(&self, p: &SpacetimePoint) -> Option<ComplexVec3> {
        self.0.transverse_laplacian(p).map(|v| v.conj())
    }
}

/// Eigenvalue readout over a sample of points: the Rayleigh quotient
/// `Σ⟨F, ÔF⟩ / Σ⟨F, F⟩` together with pointwise ratios; points where the
/// field magnitude is below `1e−10 ×` the sample maximum are flagged rather
/// than ratioed (pointwise quotients blow up at zeros of the profile).
#[derive(Debug, Clone)]
pub struct EigenvalueEstimate {
    pub rayleigh: Complex64,
    pub pointwise: Vec<Option<Complex64>>,
    pub flagged: usize,
}

pub fn eigenvalue_estimate(
    field_samples: &[ComplexVec3],
    operator_samples: &[ComplexVec3],
) -> EigenvalueEstimate {
    assert_eq!(field_samples.len(), operator_samples.len());
    let max_norm = field_samples
        .iter()
        .map(|f| f.norm())
        .fold(0.0, f64::max);
    let floor = 1e-10 * max_norm;
    let mut numerator = Complex64::default();
    let mut denominator = 0.0;
    let mut pointwise = Vec::with_capacity(field_samples.len());
    let mut flagged = 0;
    for (f, of) in field_samples.iter().zip(operator_samples) {
        let overlap = f.dot(of);
        let weight = f.norm_sqr();
        numerator += overlap;
        denominator += weight;
        if f.norm() < floor {
            flagged += 1;
            pointwise.push(None);
        } else {
            pointwise.push(Some(overlap / weight));
        }
    }
    EigenvalueEstimate {
        rayleigh: numerator / denominator,
        pointwise,
        flagged,
    }
}

/// Hertz-potential gauge for the momentum-space angular momentum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gauge {
    /// `M̂_z` purely orbital; `M̂_{x,y}` carry `±k k_{x,y}/k_⊥²`.
    Whittaker,
    /// `M̂_z = ħ(−i(k×∂_k)_z ± 1)`; `M̂_{x,y}` carry `±k_{x,y}/(k+k_z)`.
    Alternate,
}

/// Momentum-space photon amplitude: a scalar function over wave vectors
/// with a helicity tag fixing the `±` gauge terms.
pub struct MomentumAmplitude<'a> {
    pub eval: &'a dyn Fn([f64; 3]) -> Complex64,
    pub helicity: Helicity,
}

impl<'a> MomentumAmplitude<'a> {
    pub fn new(eval: &'a dyn Fn([f64; 3]) -> Complex64, helicity: Helicity) -> Self {
        Self { eval, helicity }
    }
}

/// Finite-difference step for wave-vector derivatives.
#[derive(Debug, Clone, Copy)]
pub struct KSpaceFd {
    pub step: f64,
    pub order: StencilOrder,
}

impl KSpaceFd {
    pub fn new(step: f64, order: StencilOrder) -> Self {
        Self { step, order }
    }
}

fn k_partial(
    eval: &dyn Fn([f64; 3]) -> Complex64,
    k: [f64; 3],
    axis: usize,
    kfd: &KSpaceFd,
) -> Complex64 {
    let h = kfd.step;
    let shifted = |delta: f64| {
        let mut q = k;
        q[axis] += delta;
        eval(q)
    };
    match kfd.order {
        StencilOrder::Two => (shifted(h) - shifted(-h)) * (0.5 / h),
        StencilOrder::Four => {
            (shifted(h) * 8.0 - shifted(-h) * 8.0 - shifted(2.0 * h) + shifted(-2.0 * h))
                * (1.0 / (12.0 * h))
        }
    }
}

/// Orbital part `−i (k × ∂_k)_component ψ` by finite differences.
fn orbital_component(
    eval: &dyn Fn([f64; 3]) -> Complex64,
    k: [f64; 3],
    component: usize,
    kfd: &KSpaceFd,
) -> Complex64 {
    let (a, b) = match component {
        0 => (1, 2),
        1 => (2, 0),
        _ => (0, 1),
    };
    let da = k_partial(eval, k, b, kfd);
    let db = k_partial(eval, k, a, kfd);
    NEG_I * (k[a] * da - k[b] * db)
}

/// `M̂_z ψ` in the requested gauge.
pub fn momentum_mz(
    amp: &MomentumAmplitude,
    k: [f64; 3],
    gauge: Gauge,
    consts: &Constants,
    kfd: &KSpaceFd,
) -> Result<Complex64, OperatorError> {
    let orbital = orbital_component(amp.eval, k, 2, kfd);
    let value = match gauge {
        Gauge::Whittaker => orbital,
        Gauge::Alternate => orbital + amp.helicity.sign() * (amp.eval)(k),
    };
    Ok(consts.hbar * value)
}

/// `(M̂_x ψ, M̂_y ψ)` in the requested gauge.
pub fn momentum_mx_my(
    amp: &MomentumAmplitude,
    k: [f64; 3],
    gauge: Gauge,
    consts: &Constants,
    kfd: &KSpaceFd,
) -> Result<(Complex64, Complex64), OperatorError> {
    let k_perp_sq = k[0] * k[0] + k[1] * k[1];
    let magnitude = (k_perp_sq + k[2] * k[2]).sqrt();
    let sign = amp.helicity.sign();
    let psi = (amp.eval)(k);
    let lx = orbital_component(amp.eval, k, 0, kfd);
    let ly = orbital_component(amp.eval, k, 1, kfd);
    let (gx, gy) = match gauge {
        Gauge::Whittaker => {
            if k_perp_sq == 0.0 {
                return Err(OperatorError::SingularDirection);
            }
            (
                sign * magnitude * k[0] / k_perp_sq,
                sign * magnitude * k[1] / k_perp_sq,
            )
        }
        Gauge::Alternate => {
            let denom = magnitude + k[2];
            if denom == 0.0 {
                return Err(OperatorError::BackwardAxis);
            }
            (sign * k[0] / denom, sign * k[1] / denom)
        }
    };
    Ok((
        consts.hbar * (lx + gx * psi),
        consts.hbar * (ly + gy * psi),
    ))
}
