//! Bessel beams: the scalar `χ` mode, the closed-form RS field in Cartesian
//! and cylindrical components, and the near-axis `k_⊥ → 0` limit.
//!
//! Internally both the scalar and the vector field are stored as short sums
//! of cylindrical harmonics `B_ℓ = e^{iℓφ} J_ℓ(k_⊥ρ)` times the plane phase
//! `e^{i(σk_z z − σω t)}`. The ladder identities
//!
//! ```text
//! (∂x + i∂y) B_ℓ = −k_⊥ B_{ℓ+1},   (∂x − i∂y) B_ℓ = k_⊥ B_{ℓ−1}
//! ```
//!
//! turn every derivative the rest of the crate needs (gradients, mixed
//! second derivatives, the transverse Laplacian) into exact re-labelings of
//! the same sum, so the analytic-derivative path carries no truncation
//! error at all.

use num_complex::Complex64;
use std::f64::consts::SQRT_2;

use super::{BeamError, BesselBeamSpec, Helicity};
use crate::fd::Axis;
use crate::fields::{ComplexVec3, Constants, Jet2, RsField, ScalarField, SpacetimePoint};
use crate::specfun;

/// Output basis for the vector field components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorBasis {
    Cartesian,
    Cylindrical,
}

/// Sum of cylindrical harmonics `Σ a_ℓ e^{iℓφ} J_ℓ(k_⊥ρ)` at fixed `k_⊥`.
#[derive(Clone, Debug)]
struct ModeSum {
    k_perp: f64,
    terms: Vec<(i32, Complex64)>,
}

impl ModeSum {
    fn eval(&self, rho: f64, phi: f64) -> Complex64 {
        let xi = self.k_perp * rho;
        let mut sum = Complex64::default();
        for &(ell, amp) in &self.terms {
            let j = specfun::bessel_j(ell, xi).expect("finite nonnegative argument");
            sum += amp * j * Complex64::new(0.0, ell as f64 * phi).exp();
        }
        sum
    }

    fn dx(&self) -> ModeSum {
        let half = 0.5 * self.k_perp;
        let mut terms = Vec::with_capacity(2 * self.terms.len());
        for &(ell, amp) in &self.terms {
            terms.push((ell + 1, amp * (-half)));
            terms.push((ell - 1, amp * half));
        }
        ModeSum {
            k_perp: self.k_perp,
            terms,
        }
    }

    fn dy(&self) -> ModeSum {
        let half_i = Complex64::new(0.0, 0.5 * self.k_perp);
        let mut terms = Vec::with_capacity(2 * self.terms.len());
        for &(ell, amp) in &self.terms {
            terms.push((ell + 1, amp * half_i));
            terms.push((ell - 1, amp * half_i));
        }
        ModeSum {
            k_perp: self.k_perp,
            terms,
        }
    }
}

/// Fold `e^{iσμφ} J_μ` into the `B_ℓ` basis: `ℓ = σμ`, with the parity sign
/// `J_μ = (−1)^μ J_{−μ}` absorbed for `σ = −1`.
fn sigma_mode(sigma: Helicity, mu: i32, amp: Complex64) -> (i32, Complex64) {
    match sigma {
        Helicity::Plus => (mu, amp),
        Helicity::Minus => {
            let sign = if mu.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            (-mu, amp * sign)
        }
    }
}

/// Common plane phase data `e^{i(kz_signed·z − omega_signed·t)}`.
#[derive(Clone, Copy, Debug)]
struct PlanePhase {
    kz_signed: f64,
    omega_signed: f64,
}

impl PlanePhase {
    fn eval(&self, p: &SpacetimePoint) -> Complex64 {
        Complex64::new(0.0, self.kz_signed * p.z - self.omega_signed * p.t).exp()
    }

    fn d_z(&self) -> Complex64 {
        Complex64::new(0.0, self.kz_signed)
    }

    fn d_t(&self) -> Complex64 {
        Complex64::new(0.0, -self.omega_signed)
    }
}

/// Scalar Bessel mode
/// `χ = (iσ)^m/(√2 k k_⊥) · e^{−iσ(ω_k t − k_z z − mφ)} J_m(k_⊥ρ)`.
pub struct BesselChi {
    spec: BesselBeamSpec,
    base: ModeSum,
    phase: PlanePhase,
}

impl BesselChi {
    pub fn new(spec: BesselBeamSpec, consts: &Constants) -> Self {
        let k = spec.total_wavenumber();
        let sigma = spec.sigma.sign();
        let prefactor = Complex64::new(0.0, sigma).powi(spec.m) / (SQRT_2 * k * spec.k_perp);
        let (ell, amp) = sigma_mode(spec.sigma, spec.m, prefactor);
        Self {
            spec,
            base: ModeSum {
                k_perp: spec.k_perp,
                terms: vec![(ell, amp)],
            },
            phase: PlanePhase {
                kz_signed: sigma * spec.k_z,
                omega_signed: sigma * consts.c * k,
            },
        }
    }

    pub fn spec(&self) -> &BesselBeamSpec {
        &self.spec
    }
}

impl ScalarField for BesselChi {
    fn value(&self, p: &SpacetimePoint) -> Complex64 {
        self.phase.eval(p) * self.base.eval(p.rho(), p.phi())
    }

    fn jet2(&self, p: &SpacetimePoint) -> Option<Jet2> {
        let rho = p.rho();
        let phi = p.phi();
        let plane = self.phase.eval(p);
        let dz = self.phase.d_z();
        let dt = self.phase.d_t();

        let base = self.base.eval(rho, phi);
        let bx = self.base.dx();
        let by = self.base.dy();
        let gx = bx.eval(rho, phi);
        let gy = by.eval(rho, phi);
        let gxx = bx.dx().eval(rho, phi);
        let gxy = by.dx().eval(rho, phi);
        let gyy = by.dy().eval(rho, phi);

        let value = plane * base;
        let first = [plane * gx, plane * gy, value * dz, value * dt];
        let mut second = [[Complex64::default(); 4]; 4];
        second[0][0] = plane * gxx;
        second[0][1] = plane * gxy;
        second[1][1] = plane * gyy;
        second[0][2] = plane * gx * dz;
        second[1][2] = plane * gy * dz;
        second[0][3] = plane * gx * dt;
        second[1][3] = plane * gy * dt;
        second[2][2] = value * dz * dz;
        second[3][3] = value * dt * dt;
        second[2][3] = value * dz * dt;
        for i in 0..4 {
            for j in 0..i {
                second[i][j] = second[j][i];
            }
        }
        Some(Jet2 {
            value,
            first,
            second,
        })
    }
}

/// Convenience evaluation of the scalar Bessel mode at one point.
pub fn bessel_chi(spec: &BesselBeamSpec, p: &SpacetimePoint, consts: &Constants) -> Complex64 {
    BesselChi::new(*spec, consts).value(p)
}

/// Closed-form Bessel RS field (Cartesian components)
///
/// ```text
/// F = (iσ)^m/(√2 k) e^{−iσ(ω_k t − k_z z − mφ)} ·
///     ( iσ k_−(σ) e^{iσφ} J_{m+1} + iσ k_+(σ) e^{−iσφ} J_{m−1},
///          k_−(σ) e^{iσφ} J_{m+1} −    k_+(σ) e^{−iσφ} J_{m−1},
///          k_⊥ J_m )
/// ```
///
/// with `ξ = k_⊥ρ` and `k_±(σ) = (σk ± k_z)/2`.
pub struct BesselRsField {
    spec: BesselBeamSpec,
    components: [ModeSum; 3],
    phase: PlanePhase,
}

impl BesselRsField {
    pub fn new(spec: BesselBeamSpec, consts: &Constants) -> Self {
        let k = spec.total_wavenumber();
        let sigma = spec.sigma.sign();
        let i_sigma = Complex64::new(0.0, sigma);
        let pref = i_sigma.powi(spec.m) / (SQRT_2 * k);
        let k_plus = spec.k_plus();
        let k_minus = spec.k_minus();
        let m = spec.m;

        let fx = vec![
            sigma_mode(spec.sigma, m + 1, pref * i_sigma * k_minus),
            sigma_mode(spec.sigma, m - 1, pref * i_sigma * k_plus),
        ];
        let fy = vec![
            sigma_mode(spec.sigma, m + 1, pref * k_minus),
            sigma_mode(spec.sigma, m - 1, pref * (-k_plus)),
        ];
        let fz = vec![sigma_mode(spec.sigma, m, pref * spec.k_perp)];

        let mode = |terms: Vec<(i32, Complex64)>| ModeSum {
            k_perp: spec.k_perp,
            terms,
        };
        Self {
            spec,
            components: [mode(fx), mode(fy), mode(fz)],
            phase: PlanePhase {
                kz_signed: sigma * spec.k_z,
                omega_signed: sigma * consts.c * k,
            },
        }
    }

    pub fn spec(&self) -> &BesselBeamSpec {
        &self.spec
    }

    fn eval_components(&self, p: &SpacetimePoint, lists: [&ModeSum; 3]) -> ComplexVec3 {
        let rho = p.rho();
        let phi = p.phi();
        let plane = self.phase.eval(p);
        ComplexVec3::new(
            plane * lists[0].eval(rho, phi),
            plane * lists[1].eval(rho, phi),
            plane * lists[2].eval(rho, phi),
        )
    }
}

impl RsField for BesselRsField {
    fn value(&self, p: &SpacetimePoint) -> ComplexVec3 {
        self.eval_components(
            p,
            [
                &self.components[0],
                &self.components[1],
                &self.components[2],
            ],
        )
    }

    fn partial(&self, p: &SpacetimePoint, axis: Axis) -> Option<ComplexVec3> {
        match axis {
            Axis::X => {
                let d: Vec<ModeSum> = self.components.iter().map(|c| c.dx()).collect();
                Some(self.eval_components(p, [&d[0], &d[1], &d[2]]))
            }
            Axis::Y => {
                let d: Vec<ModeSum> = self.components.iter().map(|c| c.dy()).collect();
                Some(self.eval_components(p, [&d[0], &d[1], &d[2]]))
            }
            Axis::Z => Some(self.value(p) * self.phase.d_z()),
            Axis::T => Some(self.value(p) * self.phase.d_t()),
        }
    }

    fn transverse_laplacian(&self, p: &SpacetimePoint) -> Option<ComplexVec3> {
        // each B_ℓ is a transverse Helmholtz mode: (∂x²+∂y²) B_ℓ = −k_⊥² B_ℓ
        Some(self.value(p) * (-self.spec.k_perp * self.spec.k_perp))
    }
}

/// Bessel RS field components in the requested basis.
///
/// The cylindrical triple `(F_ρ, F_φ, F_z)` factors the angular dependence
/// completely but its basis vectors are undefined on the axis, so `ρ = 0`
/// is rejected there.
pub fn bessel_rs_field(
    spec: &BesselBeamSpec,
    p: &SpacetimePoint,
    consts: &Constants,
    basis: VectorBasis,
) -> Result<ComplexVec3, BeamError> {
    match basis {
        VectorBasis::Cartesian => Ok(BesselRsField::new(*spec, consts).value(p)),
        VectorBasis::Cylindrical => bessel_rs_field_cylindrical(spec, p, consts),
    }
}

fn bessel_rs_field_cylindrical(
    spec: &BesselBeamSpec,
    p: &SpacetimePoint,
    consts: &Constants,
) -> Result<ComplexVec3, BeamError> {
    let rho = p.rho();
    if rho == 0.0 {
        return Err(BeamError::OnAxisBasis);
    }
    let k = spec.total_wavenumber();
    let sigma = spec.sigma.sign();
    let omega = consts.c * k;
    let xi = spec.k_perp * rho;
    let m = spec.m;

    let j_lower = specfun::bessel_j(m - 1, xi).expect("finite argument");
    let j_upper = specfun::bessel_j(m + 1, xi).expect("finite argument");
    let j_here = specfun::bessel_j(m, xi).expect("finite argument");
    // stable forms: J_m' = (J_{m−1} − J_{m+1})/2, (m/ξ) J_m = (J_{m−1} + J_{m+1})/2
    let j_prime = 0.5 * (j_lower - j_upper);
    let j_over_xi = 0.5 * (j_lower + j_upper);

    let pref = Complex64::new(0.0, sigma).powi(m) / (SQRT_2 * k)
        * Complex64::new(
            0.0,
            -sigma * (omega * p.t - spec.k_z * p.z - m as f64 * p.phi()),
        )
        .exp();
    let i = Complex64::i();
    Ok(ComplexVec3::new(
        pref * (i * sigma * spec.k_z * j_prime + i * k * j_over_xi),
        pref * (-sigma * k * j_prime - spec.k_z * j_over_xi),
        pref * spec.k_perp * j_here,
    ))
}

/// Near-axis limit of the Bessel mode for `m ≥ 1`:
/// `χ = (iσ)^m/(√2 k 2^m m!) · e^{−iσ(|k_z| c t − k_z z)} (x + iσy)^m`
/// with `k = |k_z|`; an exact wave-equation solution in its own right.
pub struct BesselNearAxisChi {
    k_z: f64,
    m: i32,
    sigma: Helicity,
    omega: f64,
    prefactor: Complex64,
}

impl BesselNearAxisChi {
    pub fn new(k_z: f64, m: i32, sigma: Helicity, consts: &Constants) -> Result<Self, BeamError> {
        if m < 1 {
            return Err(BeamError::NearAxisOrder(m));
        }
        if !(k_z.is_finite() && k_z != 0.0) {
            return Err(BeamError::InvalidSpec(format!(
                "near-axis beam requires nonzero finite k_z, got {k_z}"
            )));
        }
        let k = k_z.abs();
        let prefactor = Complex64::new(0.0, sigma.sign()).powi(m)
            / (SQRT_2 * k * 2.0_f64.powi(m) * specfun::factorial(m as u32));
        Ok(Self {
            k_z,
            m,
            sigma,
            omega: consts.c * k,
            prefactor,
        })
    }
}

impl ScalarField for BesselNearAxisChi {
    fn value(&self, p: &SpacetimePoint) -> Complex64 {
        let sigma = self.sigma.sign();
        let w = Complex64::new(p.x, sigma * p.y);
        let phase = Complex64::new(0.0, -sigma * (self.omega * p.t - self.k_z * p.z)).exp();
        self.prefactor * phase * w.powi(self.m)
    }
}

/// Convenience evaluation of the near-axis mode at one point.
pub fn bessel_near_axis_chi(
    k_z: f64,
    m: i32,
    sigma: Helicity,
    p: &SpacetimePoint,
    consts: &Constants,
) -> Result<Complex64, BeamError> {
    Ok(BesselNearAxisChi::new(k_z, m, sigma, consts)?.value(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fd::{self, FdSpec, StencilOrder};
    use crate::fields::{cylindrical_to_cartesian, dalembert_residual, ValueOnly};
    use approx::assert_abs_diff_eq;

    fn consts() -> Constants {
        Constants::natural()
    }

    fn spec(k_perp: f64, k_z: f64, m: i32, sigma: Helicity) -> BesselBeamSpec {
        BesselBeamSpec::new(k_perp, k_z, m, sigma).unwrap()
    }

    #[test]
    fn chi_on_axis_values() {
        let c = consts();
        let s = spec(1.5, 2.0, 0, Helicity::Plus);
        let origin = SpacetimePoint::new(0.0, 0.0, 0.0, 0.0);
        let expected = 1.0 / (SQRT_2 * s.total_wavenumber() * s.k_perp);
        let got = bessel_chi(&s, &origin, &c);
        assert_abs_diff_eq!(got.re, expected, epsilon = 1e-15);
        assert_abs_diff_eq!(got.im, 0.0, epsilon = 1e-15);

        let s3 = spec(1.5, 2.0, 3, Helicity::Plus);
        assert_eq!(bessel_chi(&s3, &origin, &c), Complex64::default());
    }

    #[test]
    fn chi_screw_symmetry() {
        let c = consts();
        let s = spec(1.0, 2.5, 3, Helicity::Plus);
        for &alpha in &[0.3, -1.2, 2.9] {
            let p = SpacetimePoint::from_cylindrical(0.8, 0.4, 1.3, 0.6);
            let shifted = SpacetimePoint::from_cylindrical(
                0.8,
                0.4 + alpha,
                1.3 - s.m as f64 * alpha / s.k_z,
                0.6,
            );
            let a = bessel_chi(&s, &p, &c);
            let b = bessel_chi(&s, &shifted, &c);
            assert!((a - b).norm() < 1e-13 * a.norm().max(1.0));
        }
    }

    #[test]
    fn chi_sigma_conjugation() {
        let c = consts();
        let plus = spec(1.2, -0.7, 4, Helicity::Plus);
        let minus = plus.with_sigma(Helicity::Minus);
        for &(rho, phi, z, t) in &[(0.5, 0.3, 1.0, 0.2), (2.1, -1.4, -0.6, 0.9)] {
            let p = SpacetimePoint::from_cylindrical(rho, phi, z, t);
            let a = bessel_chi(&plus, &p, &c);
            let b = bessel_chi(&minus, &p, &c);
            assert!((a.conj() - b).norm() < 1e-14 * a.norm().max(1.0));
        }
    }

    #[test]
    fn chi_jet_matches_finite_differences() {
        let c = consts();
        for sigma in [Helicity::Plus, Helicity::Minus] {
            for &m in &[0, 1, -2, 5] {
                let s = spec(1.0, 2.0, m, sigma);
                let chi = BesselChi::new(s, &c);
                let p = SpacetimePoint::new(0.7, -0.4, 0.5, 0.3);
                let jet = chi.jet2(&p).unwrap();
                let fd = FdSpec::uniform(StencilOrder::Four, 1e-3);
                let f = |q: &SpacetimePoint| chi.value(q);
                for axis in fd::AXES {
                    let numeric = fd::first_derivative(&f, &p, axis, &fd);
                    let exact = jet.first[axis as usize];
                    assert!(
                        (numeric - exact).norm() < 1e-9,
                        "first derivative mismatch on {axis:?}"
                    );
                }
                for (i, a) in fd::AXES.iter().enumerate() {
                    for (j, b) in fd::AXES.iter().enumerate() {
                        let numeric = if i == j {
                            fd::second_derivative(&f, &p, *a, &fd)
                        } else {
                            fd::mixed_derivative(&f, &p, *a, *b, &fd)
                        };
                        let exact = jet.second[i][j];
                        assert!(
                            (numeric - exact).norm() < 1e-7,
                            "second derivative mismatch on {a:?}{b:?}: {numeric} vs {exact}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rs_field_on_axis_limit() {
        let c = consts();
        let s = spec(1.5, 2.0, 0, Helicity::Plus);
        let f = bessel_rs_field(
            &s,
            &SpacetimePoint::new(0.0, 0.0, 0.0, 0.0),
            &c,
            VectorBasis::Cartesian,
        )
        .unwrap();
        let expected = s.k_perp / (SQRT_2 * s.total_wavenumber());
        assert!(f.x.norm() < 1e-15 && f.y.norm() < 1e-15);
        assert_abs_diff_eq!(f.z.re, expected, epsilon = 1e-15);
        assert_abs_diff_eq!(f.z.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn cylindrical_matches_rotated_cartesian() {
        let c = consts();
        for sigma in [Helicity::Plus, Helicity::Minus] {
            for &m in &[0, 1, 2, -3] {
                let s = spec(1.1, 0.8, m, sigma);
                let p = SpacetimePoint::from_cylindrical(0.9, 1.1, 0.4, -0.2);
                let cart = bessel_rs_field(&s, &p, &c, VectorBasis::Cartesian).unwrap();
                let cyl = bessel_rs_field(&s, &p, &c, VectorBasis::Cylindrical).unwrap();
                let rotated = cylindrical_to_cartesian(&cyl, p.phi());
                assert!(
                    (rotated - cart).norm() < 1e-12 * cart.norm(),
                    "basis mismatch for m={m}: {rotated:?} vs {cart:?}"
                );
            }
        }
    }

    #[test]
    fn cylindrical_on_axis_is_rejected() {
        let c = consts();
        let s = spec(1.0, 1.0, 1, Helicity::Plus);
        let err = bessel_rs_field(
            &s,
            &SpacetimePoint::new(0.0, 0.0, 0.3, 0.1),
            &c,
            VectorBasis::Cylindrical,
        )
        .unwrap_err();
        assert_eq!(err, BeamError::OnAxisBasis);
    }

    #[test]
    fn cylindrical_screw_symmetry() {
        // the cylindrical triple factors the angular dependence, so the
        // screw shift must leave it invariant componentwise
        let c = consts();
        let s = spec(0.9, 1.7, 2, Helicity::Minus);
        let alpha = 0.83;
        let p = SpacetimePoint::from_cylindrical(1.4, 0.25, 0.9, 0.35);
        let shifted = SpacetimePoint::from_cylindrical(
            1.4,
            0.25 + alpha,
            0.9 - s.m as f64 * alpha / s.k_z,
            0.35,
        );
        let a = bessel_rs_field(&s, &p, &c, VectorBasis::Cylindrical).unwrap();
        let b = bessel_rs_field(&s, &shifted, &c, VectorBasis::Cylindrical).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn rs_field_analytic_partials_match_fd() {
        let c = consts();
        let s = spec(1.0, 5.0, 2, Helicity::Plus);
        let field = BesselRsField::new(s, &c);
        let p = SpacetimePoint::new(0.6, 0.2, -0.3, 0.15);
        let fd = FdSpec::uniform(StencilOrder::Four, 5e-4);
        let f = |q: &SpacetimePoint| field.value(q);
        for axis in fd::AXES {
            let numeric = fd::first_derivative(&f, &p, axis, &fd);
            let exact = field.partial(&p, axis).unwrap();
            assert!(
                (numeric - exact).norm() < 1e-8 * exact.norm().max(1.0),
                "partial mismatch on {axis:?}"
            );
        }
    }

    #[test]
    fn rs_field_curl_is_sigma_k_f() {
        let c = consts();
        for sigma in [Helicity::Plus, Helicity::Minus] {
            let s = spec(1.0, 5.0, 2, sigma);
            let field = BesselRsField::new(s, &c);
            let k = s.total_wavenumber();
            for &(x, y, z, t) in &[(0.6, 0.2, -0.3, 0.15), (-0.8, 1.1, 0.9, -0.4)] {
                let p = SpacetimePoint::new(x, y, z, t);
                let dx = field.partial(&p, Axis::X).unwrap();
                let dy = field.partial(&p, Axis::Y).unwrap();
                let dz = field.partial(&p, Axis::Z).unwrap();
                let curl = ComplexVec3::new(dy.z - dz.y, dz.x - dx.z, dx.y - dy.x);
                let target = field.value(&p) * (sigma.sign() * k);
                assert!((curl - target).norm() < 1e-11 * target.norm());
            }
        }
    }

    #[test]
    fn near_axis_values_and_wave_equation() {
        let c = consts();
        let k_z = 2.0;
        let chi = BesselNearAxisChi::new(k_z, 1, Helicity::Plus, &c).unwrap();
        let k = k_z.abs();
        let got = chi.value(&SpacetimePoint::new(1.0, 0.0, 0.0, 0.0));
        // (iσ)^1/(√2 k · 2 · 1!) · (1 + 0i) = i/(2√2 k)
        assert_abs_diff_eq!(got.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(got.im, 1.0 / (2.0 * SQRT_2 * k), epsilon = 1e-15);

        let chi2 = BesselNearAxisChi::new(k_z, 2, Helicity::Plus, &c).unwrap();
        assert_eq!(
            chi2.value(&SpacetimePoint::new(0.0, 0.0, 0.7, 0.3)),
            Complex64::default()
        );

        let fd = FdSpec::uniform(StencilOrder::Four, 1e-3);
        let p = SpacetimePoint::new(0.4, -0.9, 1.2, 0.6);
        let residual = dalembert_residual(&ValueOnly(&chi2), &p, &c, &fd).unwrap();
        let scale = chi2.value(&p).norm() * k_z * k_z;
        assert!(residual.norm() < 1e-8 * scale.max(1e-9));

        assert!(matches!(
            BesselNearAxisChi::new(k_z, 0, Helicity::Plus, &c),
            Err(BeamError::NearAxisOrder(0))
        ));
    }
}
