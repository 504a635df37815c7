//! Spacetime field model: the Riemann-Silberstein vector, the Whittaker map
//! `χ → F`, finite-difference residuals of the complex Maxwell pair and the
//! d'Alembert equation, and the pointwise density observables built from
//! bilinears of `F`.
//!
//! The complex Maxwell equations read `∂ₜF = −ic∇×F`, `∇·F = 0`, and the
//! Whittaker representation generates a solution from a single complex
//! scalar `χ` satisfying the wave equation:
//!
//! ```text
//! F_x = (∂x∂z + (i/c)∂y∂t) χ
//! F_y = (∂y∂z − (i/c)∂x∂t) χ
//! F_z = −(∂x² + ∂y²) χ
//! ```

use num_complex::Complex64;
use thiserror::Error;

use crate::fd::{self, Axis, FdSpec};
use crate::quad::{self, QuadError, QuadResult, QuadSpec};

/// Physical constants of the chosen unit system.
#[derive(Debug, Clone, Copy)]
pub struct Constants {
    /// Speed of light.
    pub c: f64,
    /// Reduced Planck constant.
    pub hbar: f64,
    /// Vacuum permittivity.
    pub eps0: f64,
}

impl Constants {
    /// Natural units `c = ħ = ε₀ = 1`; the default for library-level work.
    pub fn natural() -> Self {
        Self {
            c: 1.0,
            hbar: 1.0,
            eps0: 1.0,
        }
    }

    /// SI values (CODATA).
    pub fn si() -> Self {
        Self {
            c: 299_792_458.0,
            hbar: 1.054_571_817e-34,
            eps0: 8.854_187_8128e-12,
        }
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::natural()
    }
}

/// An event `(x, y, z, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub t: f64,
}

impl SpacetimePoint {
    pub fn new(x: f64, y: f64, z: f64, t: f64) -> Self {
        debug_assert!(
            x.is_finite() && y.is_finite() && z.is_finite() && t.is_finite(),
            "spacetime coordinates must be finite"
        );
        Self { x, y, z, t }
    }

    pub fn from_cylindrical(rho: f64, phi: f64, z: f64, t: f64) -> Self {
        Self::new(rho * phi.cos(), rho * phi.sin(), z, t)
    }

    pub fn rho(&self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Azimuth in the xy plane; by convention 0 on the axis.
    pub fn phi(&self) -> f64 {
        if self.x == 0.0 && self.y == 0.0 {
            0.0
        } else {
            self.y.atan2(self.x)
        }
    }

    pub fn coordinate(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Z => self.z,
            Axis::T => self.t,
        }
    }

    pub fn shifted(&self, axis: Axis, delta: f64) -> Self {
        let mut p = *self;
        match axis {
            Axis::X => p.x += delta,
            Axis::Y => p.y += delta,
            Axis::Z => p.z += delta,
            Axis::T => p.t += delta,
        }
        p
    }
}

/// Complex 3-vector field value; carries the RS vector `F = √(ε₀/2)(E+icB)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexVec3 {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl ComplexVec3 {
    pub fn new(x: Complex64, y: Complex64, z: Complex64) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(Complex64::default(), Complex64::default(), Complex64::default())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.x.conj(), self.y.conj(), self.z.conj())
    }

    /// Hermitian inner product `self*·other`.
    pub fn dot(&self, other: &Self) -> Complex64 {
        self.x.conj() * other.x + self.y.conj() * other.y + self.z.conj() * other.z
    }

    /// Plain (non-conjugating) cross product.
    pub fn cross(&self, other: &Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    /// `F*·F`, always real and nonnegative.
    pub fn norm_sqr(&self) -> f64 {
        self.x.norm_sqr() + self.y.norm_sqr() + self.z.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn component(&self, i: usize) -> Complex64 {
        match i {
            0 => self.x,
            1 => self.y,
            2 => self.z,
            _ => panic!("component index out of range"),
        }
    }
}

impl std::ops::Add for ComplexVec3 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl std::ops::Sub for ComplexVec3 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl std::ops::Neg for ComplexVec3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl std::ops::Mul<f64> for ComplexVec3 {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

impl std::ops::Mul<Complex64> for ComplexVec3 {
    type Output = Self;
    fn mul(self, rhs: Complex64) -> Self {
        Self::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

impl fd::Linear for ComplexVec3 {
    fn zero() -> Self {
        ComplexVec3::zero()
    }
}

/// Rotate a vector given in the cylindrical basis `(ρ̂, φ̂, ẑ)` at azimuth
/// `phi` into Cartesian components.
pub fn cylindrical_to_cartesian(v: &ComplexVec3, phi: f64) -> ComplexVec3 {
    let (sin_phi, cos_phi) = phi.sin_cos();
    ComplexVec3::new(
        v.x * cos_phi - v.y * sin_phi,
        v.x * sin_phi + v.y * cos_phi,
        v.z,
    )
}

/// Value plus all first and second partials in the axis order `x, y, z, t`.
#[derive(Debug, Clone, Copy)]
pub struct Jet2 {
    pub value: Complex64,
    pub first: [Complex64; 4],
    pub second: [[Complex64; 4]; 4],
}

/// A complex scalar wave field `χ(r, t)`; implementors may supply analytic
/// derivatives through [`ScalarField::jet2`], otherwise consumers fall back
/// to finite differences.
pub trait ScalarField {
    fn value(&self, p: &SpacetimePoint) -> Complex64;

    fn jet2(&self, _p: &SpacetimePoint) -> Option<Jet2> {
        None
    }
}

impl<F: Fn(&SpacetimePoint) -> Complex64> ScalarField for F {
    fn value(&self, p: &SpacetimePoint) -> Complex64 {
        self(p)
    }
}

/// Adapter that hides an implementor's analytic derivatives, forcing the
/// finite-difference path; useful for cross-validating the two routes.
pub struct ValueOnly<'a, S: ScalarField + ?Sized>(pub &'a S);

impl<S: ScalarField + ?Sized> ScalarField for ValueOnly<'_, S> {
    fn value(&self, p: &SpacetimePoint) -> Complex64 {
        self.0.value(p)
    }
}

/// A Riemann-Silberstein vector field. Analytic partials and the transverse
/// Laplacian are optional accelerations with the same contract as the
/// finite-difference fallback.
pub trait RsField {
    fn value(&self, p: &SpacetimePoint) -> ComplexVec3;

    fn partial(&self, _p: &SpacetimePoint, _axis: Axis) -> Option<ComplexVec3> {
        None
    }

    /// `(∂x² + ∂y²) F` when available in closed form.
    fn transverse_laplacian(&self, _p: &SpacetimePoint) -> Option<ComplexVec3> {
        None
    }
}

impl<F: Fn(&SpacetimePoint) -> ComplexVec3> RsField for F {
    fn value(&self, p: &SpacetimePoint) -> ComplexVec3 {
        self(p)
    }
}

/// Errors from field evaluation and verification.
#[derive(Debug, Clone, Error)]
pub enum FieldError {
    #[error("finite-difference step {step:.3e} underflows coordinate {coordinate:.3e} on axis {axis:?}")]
    StepUnderflow {
        axis: Axis,
        step: f64,
        coordinate: f64,
    },
    #[error("field sample is not finite at ({0:?})")]
    NonFiniteSample(SpacetimePoint),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

fn check_steps(p: &SpacetimePoint, fd: &FdSpec, axes: &[Axis]) -> Result<(), FieldError> {
    for &axis in axes {
        if fd.underflows_at(p, axis) {
            return Err(FieldError::StepUnderflow {
                axis,
                step: fd.step(axis),
                coordinate: p.coordinate(axis),
            });
        }
    }
    Ok(())
}

/// The Whittaker map evaluated from an analytic 2-jet.
pub fn whittaker_from_jet(jet: &Jet2, consts: &Constants) -> ComplexVec3 {
    let i_over_c = Complex64::new(0.0, 1.0 / consts.c);
    let x = Axis::X as usize;
    let y = Axis::Y as usize;
    let z = Axis::Z as usize;
    let t = Axis::T as usize;
    ComplexVec3::new(
        jet.second[x][z] + i_over_c * jet.second[y][t],
        jet.second[y][z] - i_over_c * jet.second[x][t],
        -(jet.second[x][x] + jet.second[y][y]),
    )
}

/// Build the RS vector from a scalar wave field at one point:
/// `F = (∂x∂z χ + (i/c)∂y∂t χ, ∂y∂z χ − (i/c)∂x∂t χ, −(∂x²+∂y²)χ)`.
///
/// Analytic derivatives are used when the field provides them; otherwise the
/// requested finite-difference stencil is applied.
pub fn whittaker_map(
    chi: &(impl ScalarField + ?Sized),
    p: &SpacetimePoint,
    consts: &Constants,
    fd: &FdSpec,
) -> Result<ComplexVec3, FieldError> {
    if let Some(jet) = chi.jet2(p) {
        return Ok(whittaker_from_jet(&jet, consts));
    }
    check_steps(p, fd, &AXES_ALL)?;
    let f = |q: &SpacetimePoint| chi.value(q);
    let i_over_c = Complex64::new(0.0, 1.0 / consts.c);
    let xz = fd::mixed_derivative(&f, p, Axis::X, Axis::Z, fd);
    let yt = fd::mixed_derivative(&f, p, Axis::Y, Axis::T, fd);
    let yz = fd::mixed_derivative(&f, p, Axis::Y, Axis::Z, fd);
    let xt = fd::mixed_derivative(&f, p, Axis::X, Axis::T, fd);
    let xx = fd::second_derivative(&f, p, Axis::X, fd);
    let yy = fd::second_derivative(&f, p, Axis::Y, fd);
    let out = ComplexVec3::new(xz + i_over_c * yt, yz - i_over_c * xt, -(xx + yy));
    if !out.is_finite() {
        return Err(FieldError::NonFiniteSample(*p));
    }
    Ok(out)
}

const AXES_ALL: [Axis; 4] = [Axis::X, Axis::Y, Axis::Z, Axis::T];
const AXES_SPATIAL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

fn field_partial(
    f: &(impl RsField + ?Sized),
    p: &SpacetimePoint,
    axis: Axis,
    fd: &FdSpec,
) -> ComplexVec3 {
    f.partial(p, axis)
        .unwrap_or_else(|| fd::first_derivative(&|q: &SpacetimePoint| f.value(q), p, axis, fd))
}

/// Residuals of the complex Maxwell pair at a point:
/// `curl_residual = ∂ₜF + ic∇×F` and `div_residual = ∇·F`.
pub fn maxwell_residual(
    f: &(impl RsField + ?Sized),
    p: &SpacetimePoint,
    consts: &Constants,
    fd: &FdSpec,
) -> Result<(ComplexVec3, Complex64), FieldError> {
    check_steps(p, fd, &AXES_ALL)?;
    let dx = field_partial(f, p, Axis::X, fd);
    let dy = field_partial(f, p, Axis::Y, fd);
    let dz = field_partial(f, p, Axis::Z, fd);
    let dt = field_partial(f, p, Axis::T, fd);
    if !(dx.is_finite() && dy.is_finite() && dz.is_finite() && dt.is_finite()) {
        return Err(FieldError::NonFiniteSample(*p));
    }
    let curl = ComplexVec3::new(dy.z - dz.y, dz.x - dx.z, dx.y - dy.x);
    let ic = Complex64::new(0.0, consts.c);
    let curl_residual = dt + curl * ic;
    let div_residual = dx.x + dy.y + dz.z;
    Ok((curl_residual, div_residual))
}

/// Residual of the d'Alembert equation `(1/c²)∂ₜ²χ − Δχ` at a point.
pub fn dalembert_residual(
    chi: &(impl ScalarField + ?Sized),
    p: &SpacetimePoint,
    consts: &Constants,
    fd: &FdSpec,
) -> Result<Complex64, FieldError> {
    let inv_c2 = 1.0 / (consts.c * consts.c);
    if let Some(jet) = chi.jet2(p) {
        let xx = jet.second[0][0];
        let yy = jet.second[1][1];
        let zz = jet.second[2][2];
        let tt = jet.second[3][3];
        return Ok(tt * inv_c2 - (xx + yy + zz));
    }
    check_steps(p, fd, &AXES_ALL)?;
    let f = |q: &SpacetimePoint| chi.value(q);
    let mut laplacian = Complex64::default();
    for axis in AXES_SPATIAL {
        laplacian += fd::second_derivative(&f, p, axis, fd);
    }
    let tt = fd::second_derivative(&f, p, Axis::T, fd);
    let out = tt * inv_c2 - laplacian;
    if !out.is_finite() {
        return Err(FieldError::NonFiniteSample(*p));
    }
    Ok(out)
}

/// Energy density `F*·F`.
pub fn energy_density(f: &ComplexVec3) -> f64 {
    f.norm_sqr()
}

/// Momentum density `(−i/c)(F*×F)`; the bilinear is purely imaginary, so
/// the result is real up to roundoff and the real part is returned.
pub fn momentum_density(f: &ComplexVec3, consts: &Constants) -> [f64; 3] {
    let w = momentum_density_complex(f, consts);
    [w.x.re, w.y.re, w.z.re]
}

/// The same bilinear before taking the real part; exposed so the reality
/// property is testable.
pub fn momentum_density_complex(f: &ComplexVec3, consts: &Constants) -> ComplexVec3 {
    let minus_i_over_c = Complex64::new(0.0, -1.0 / consts.c);
    f.conj().cross(f) * minus_i_over_c
}

/// Angular momentum density `r × momentum_density`.
pub fn angular_momentum_density(f: &ComplexVec3, r: [f64; 3], consts: &Constants) -> [f64; 3] {
    let p = momentum_density(f, consts);
    [
        r[1] * p[2] - r[2] * p[1],
        r[2] * p[0] - r[0] * p[2],
        r[0] * p[1] - r[1] * p[0],
    ]
}

/// Integrate a density over the transverse plane at fixed `z`, `t`:
/// `∫₀^R dρ ρ ∫₀^{2π} dφ density(ρ, φ, z, t)`, nested adaptive quadrature.
///
/// The caller picks the cutoff radius `R` from the beam's transverse decay;
/// Bessel-family densities fall off too slowly for an automatic choice.
pub fn transverse_integral<const N: usize>(
    density: &impl Fn(&SpacetimePoint) -> [f64; N],
    z: f64,
    t: f64,
    radius: f64,
    spec: &QuadSpec,
) -> Result<QuadResult<N>, FieldError> {
    use std::cell::Cell;
    let inner_spec = QuadSpec {
        rel_tol: spec.rel_tol * 0.1,
        abs_tol: spec.abs_tol * 0.1,
        max_subdivisions: spec.max_subdivisions,
    };
    let inner_failure: Cell<Option<QuadError>> = Cell::new(None);
    let inner_error: Cell<f64> = Cell::new(0.0);
    let outer = quad::integrate(
        |rho| {
            let ring = quad::integrate(
                |phi| density(&SpacetimePoint::from_cylindrical(rho, phi, z, t)),
                0.0,
                std::f64::consts::TAU,
                &inner_spec,
            );
            match ring {
                Ok(r) => {
                    inner_error.set(inner_error.get().max(r.abs_error));
                    let mut v = r.value;
                    for x in v.iter_mut() {
                        *x *= rho;
                    }
                    v
                }
                Err(e) => {
                    inner_failure.set(Some(e));
                    [0.0; N]
                }
            }
        },
        0.0,
        radius,
        spec,
    );
    if let Some(e) = inner_failure.take() {
        return Err(e.into());
    }
    let mut result = outer.map_err(FieldError::from)?;
    // fold the worst ring-error into the reported estimate
    result.abs_error += inner_error.get() * radius * radius * 0.5;
    Ok(result)
}
