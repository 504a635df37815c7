//! Exact Laguerre-Gauss beams.
//!
//! The scalar mode is the closed-form wave packet of Bessel beams with the
//! weight `k_−^{n+m/2} e^{−l²Ωk_−/c}` on the shell `k_+ = Ω/c`:
//!
//! ```text
//! χ = A · e^{−iσΩ(t−z/c)} e^{iσmφ} ρ^m / a(t₊)^{n+m+1}
//!       · exp(−ρ²/a(t₊)) · L_n^m(ρ²/a(t₊))
//! ```
//!
//! with `a(t₊) = l² + iσc²t₊/Ω`, `t₊ = t + z/c`, and
//! `A = n!(c/Ω)^{n+m/2+1}`. The n = m = 0 member is a pure Gaussian times
//! the same constant `A`; the constant is kept so one normalization covers
//! the whole family. `Re(1/a) = l²/|a|² > 0` for all `t₊`, so the Gaussian
//! factor always decays; only integer powers of `a` appear, so no branch
//! choices arise.
//!
//! All first and second derivatives are carried analytically: writing
//! `χ = A E(t₋) w^m h(s, t₊)` with `w = x + iσy`, `s = ρ²`, every partial
//! reduces to `∂/∂s` and `∂/∂t₊` derivatives of
//! `h = a^{−ν} e^{−u} L_n^m(u)`, `u = s/a`, `ν = n+m+1`, which close under
//! the Laguerre derivative identity `dL_n^m/du = −L_{n−1}^{m+1}`.

use num_complex::Complex64;

use super::LgBeamSpec;
use crate::fields::{
    whittaker_from_jet, ComplexVec3, Constants, Jet2, RsField, ScalarField, SpacetimePoint,
};
use crate::specfun;

/// Associated Laguerre polynomial at complex argument, by the same upward
/// recurrence as the real kernel. Degrees below zero evaluate to zero,
/// which is what the derivative identities need.
pub fn laguerre_complex(n: i32, m: i32, z: Complex64) -> Complex64 {
    if n < 0 {
        return Complex64::default();
    }
    let mf = m as f64;
    let mut prev = Complex64::new(1.0, 0.0);
    if n == 0 {
        return prev;
    }
    let mut curr = Complex64::new(1.0 + mf, 0.0) - z;
    for k in 1..n {
        let kf = k as f64;
        let next = ((Complex64::new(2.0 * kf + mf + 1.0, 0.0) - z) * curr
            - (kf + mf) * prev)
            / (kf + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// Scalar exact-LG mode with analytic derivatives up to second order.
pub struct LgChi {
    spec: LgBeamSpec,
    c: f64,
    amplitude: f64,       // A = n!(c/Ω)^{n+m/2+1}
    a_dot: Complex64,     // da/dt₊ = iσc²/Ω
    kappa: Complex64,     // −iσΩ, the t₋ phase rate
}

impl LgChi {
    pub fn new(spec: LgBeamSpec, consts: &Constants) -> Self {
        let c = consts.c;
        let sigma = spec.sigma.sign();
        let exponent = spec.n as f64 + spec.m as f64 / 2.0 + 1.0;
        let amplitude = specfun::factorial(spec.n) * (c / spec.omega).powf(exponent);
        Self {
            spec,
            c,
            amplitude,
            a_dot: Complex64::new(0.0, sigma * c * c / spec.omega),
            kappa: Complex64::new(0.0, -sigma * spec.omega),
        }
    }

    pub fn spec(&self) -> &LgBeamSpec {
        &self.spec
    }

    /// Envelope parameter `a(t₊) = l² + iσc²t₊/Ω`.
    pub fn envelope(&self, t_plus: f64) -> Complex64 {
        Complex64::new(self.spec.waist * self.spec.waist, 0.0) + self.a_dot * t_plus
    }

    /// `f(u) = e^{−u} L_n^m(u)` with its first two `u`-derivatives.
    fn gaussian_laguerre(&self, u: Complex64) -> (Complex64, Complex64, Complex64) {
        let n = self.spec.n as i32;
        let m = self.spec.m as i32;
        let l0 = laguerre_complex(n, m, u);
        let l1 = -laguerre_complex(n - 1, m + 1, u); // dL/du
        let l2 = laguerre_complex(n - 2, m + 2, u); // d²L/du²
        let decay = (-u).exp();
        (
            decay * l0,
            decay * (l1 - l0),
            decay * (l0 - 2.0 * l1 + l2),
        )
    }

    /// `h(s, t₊)` and the five partials the jet needs.
    #[allow(clippy::type_complexity)]
    fn h_derivatives(
        &self,
        s: f64,
        t_plus: f64,
    ) -> (Complex64, Complex64, Complex64, Complex64, Complex64, Complex64) {
        let a = self.envelope(t_plus);
        debug_assert!(a.re > 0.0, "Re(a) = l² must stay positive");
        let nu = (self.spec.n + self.spec.m + 1) as i32;
        let nu_f = nu as f64;
        let u = s / a;
        let (f0, f1, f2) = self.gaussian_laguerre(u);
        let a_inv = 1.0 / a;
        let a_nu = a_inv.powi(nu);
        let a_nu1 = a_nu * a_inv;
        let a_nu2 = a_nu1 * a_inv;

        let h = a_nu * f0;
        let h_s = a_nu1 * f1;
        let h_ss = a_nu2 * f2;
        let h_tp = -self.a_dot * a_nu1 * (nu_f * f0 + u * f1);
        let h_stp = -self.a_dot * a_nu2 * ((nu_f + 1.0) * f1 + u * f2);
        let h_tptp = self.a_dot
            * self.a_dot
            * a_nu2
            * (nu_f * (nu_f + 1.0) * f0 + 2.0 * (nu_f + 1.0) * u * f1 + u * u * f2);
        (h, h_s, h_ss, h_tp, h_stp, h_tptp)
    }

    fn azimuthal_powers(&self, w: Complex64) -> (Complex64, Complex64, Complex64) {
        let m = self.spec.m as i32;
        let p0 = w.powi(m);
        let p1 = if m >= 1 {
            w.powi(m - 1) * m as f64
        } else {
            Complex64::default()
        };
        let p2 = if m >= 2 {
            w.powi(m - 2) * (m * (m - 1)) as f64
        } else {
            Complex64::default()
        };
        (p0, p1, p2)
    }
}

impl ScalarField for LgChi {
    fn value(&self, p: &SpacetimePoint) -> Complex64 {
        let sigma = self.spec.sigma.sign();
        let t_minus = p.t - p.z / self.c;
        let t_plus = p.t + p.z / self.c;
        let w = Complex64::new(p.x, sigma * p.y);
        let s = p.x * p.x + p.y * p.y;
        let a = self.envelope(t_plus);
        let u = s / a;
        let (f0, _, _) = self.gaussian_laguerre(u);
        let nu = (self.spec.n + self.spec.m + 1) as i32;
        let phase = (self.kappa * t_minus).exp();
        self.amplitude * phase * w.powi(self.spec.m as i32) * (1.0 / a).powi(nu) * f0
    }

    fn jet2(&self, p: &SpacetimePoint) -> Option<Jet2> {
        let sigma = self.spec.sigma.sign();
        let i_sigma = Complex64::new(0.0, sigma);
        let c = self.c;
        let t_minus = p.t - p.z / c;
        let t_plus = p.t + p.z / c;
        let w = Complex64::new(p.x, sigma * p.y);
        let s = p.x * p.x + p.y * p.y;
        let kappa = self.kappa;

        let ke = self.amplitude * (kappa * t_minus).exp();
        let (p0, p1, p2) = self.azimuthal_powers(w);
        let (h, h_s, h_ss, h_tp, h_stp, h_tptp) = self.h_derivatives(s, t_plus);

        let x2 = 2.0 * p.x;
        let y2 = 2.0 * p.y;
        let minus = h_tp - kappa * h; // ∂(Eh)/∂z piece before 1/c
        let plus = kappa * h + h_tp; // ∂(Eh)/∂t piece
        let s_minus = h_stp - kappa * h_s;
        let s_plus = kappa * h_s + h_stp;

        let value = ke * p0 * h;
        let first = [
            ke * (p1 * h + p0 * x2 * h_s),
            ke * (i_sigma * p1 * h + p0 * y2 * h_s),
            ke * p0 * minus * (1.0 / c),
            ke * p0 * plus,
        ];

        let mut second = [[Complex64::default(); 4]; 4];
        second[0][0] = ke * (p2 * h + 2.0 * x2 * p1 * h_s + 2.0 * p0 * h_s + x2 * x2 * p0 * h_ss);
        second[1][1] = ke
            * (-p2 * h + 2.0 * i_sigma * y2 * p1 * h_s + 2.0 * p0 * h_s + y2 * y2 * p0 * h_ss);
        second[0][1] = ke
            * (i_sigma * p2 * h + p1 * (y2 + i_sigma * x2) * h_s + x2 * y2 * p0 * h_ss);
        second[0][2] = ke * (p1 * minus + x2 * p0 * s_minus) * (1.0 / c);
        second[1][2] = ke * (i_sigma * p1 * minus + y2 * p0 * s_minus) * (1.0 / c);
        second[0][3] = ke * (p1 * plus + x2 * p0 * s_plus);
        second[1][3] = ke * (i_sigma * p1 * plus + y2 * p0 * s_plus);
        second[2][2] = ke * p0 * (h_tptp - 2.0 * kappa * h_tp + kappa * kappa * h) * (1.0 / (c * c));
        second[3][3] = ke * p0 * (kappa * kappa * h + 2.0 * kappa * h_tp + h_tptp);
        second[2][3] = ke * p0 * (h_tptp - kappa * kappa * h) * (1.0 / c);
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

/// Convenience evaluation of the exact-LG scalar at one point.
pub fn lg_chi(spec: &LgBeamSpec, p: &SpacetimePoint, consts: &Constants) -> Complex64 {
    LgChi::new(*spec, consts).value(p)
}

/// RS field of the exact LG beam: the Whittaker map applied to the analytic
/// derivatives of [`LgChi`].
pub struct LgRsField {
    chi: LgChi,
    consts: Constants,
}

impl LgRsField {
    pub fn new(spec: LgBeamSpec, consts: &Constants) -> Self {
        Self {
            chi: LgChi::new(spec, consts),
            consts: *consts,
        }
    }

    pub fn spec(&self) -> &LgBeamSpec {
        self.chi.spec()
    }
}

impl RsField for LgRsField {
    fn value(&self, p: &SpacetimePoint) -> ComplexVec3 {
        let jet = self.chi.jet2(p).expect("analytic jet always available");
        whittaker_from_jet(&jet, &self.consts)
    }
}

/// Convenience evaluation of the exact-LG RS field at one point.
pub fn lg_rs_field(spec: &LgBeamSpec, p: &SpacetimePoint, consts: &Constants) -> ComplexVec3 {
    LgRsField::new(*spec, consts).value(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beams::Helicity;
    use crate::fd::{self, FdSpec, StencilOrder};
    use crate::fields::{dalembert_residual, maxwell_residual, ValueOnly};
    use approx::assert_abs_diff_eq;

    fn consts() -> Constants {
        Constants::natural()
    }

    #[test]
    fn gaussian_case_on_axis_value() {
        let c = consts();
        let spec = LgBeamSpec::new(10.0, 0, 0, 1.0, Helicity::Plus).unwrap();
        let v = lg_chi(&spec, &SpacetimePoint::new(0.0, 0.0, 0.0, 0.0), &c);
        // A/l² with A = c/Ω
        assert_abs_diff_eq!(v.re, 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn gaussian_case_reduces_to_pure_gaussian_times_constant() {
        let c = consts();
        let omega = 10.0;
        let waist = 1.3;
        let spec = LgBeamSpec::new(omega, 0, 0, waist, Helicity::Plus).unwrap();
        let chi = LgChi::new(spec, &c);
        let a_const = c.c / omega;
        for &(x, y, z, t) in &[(0.0, 0.0, 0.0, 0.0), (0.5, -0.3, 2.0, 1.1), (1.0, 1.0, -3.0, 0.4)] {
            let p = SpacetimePoint::new(x, y, z, t);
            let t_plus = t + z / c.c;
            let a = Complex64::new(waist * waist, 0.0) + Complex64::new(0.0, c.c * c.c * t_plus / omega);
            let rho2 = x * x + y * y;
            let pure = Complex64::new(0.0, -omega * (t - z / c.c)).exp() / a * (-rho2 / a).exp();
            let got = chi.value(&p);
            assert!((got - pure * a_const).norm() < 1e-14 * got.norm().max(1e-14));
        }
    }

    #[test]
    fn complex_laguerre_agrees_with_real_kernel() {
        for n in 0..8 {
            for m in 0..5 {
                for &x in &[0.0, 0.31, 2.7, 8.0] {
                    let real = specfun::laguerre(n, m, x).unwrap();
                    let complex = laguerre_complex(n as i32, m as i32, Complex64::new(x, 0.0));
                    assert_abs_diff_eq!(complex.re, real, epsilon = 1e-12 * (1.0 + real.abs()));
                    assert_abs_diff_eq!(complex.im, 0.0, epsilon = 1e-13);
                }
            }
        }
    }

    #[test]
    fn envelope_real_part_stays_positive() {
        let c = consts();
        let spec = LgBeamSpec::new(5.0, 2, 1, 0.7, Helicity::Minus).unwrap();
        let chi = LgChi::new(spec, &c);
        for &tp in &[-100.0, -1.0, 0.0, 3.0, 1e4] {
            assert!(chi.envelope(tp).re > 0.0);
        }
    }

    #[test]
    fn jet_matches_finite_differences() {
        let c = consts();
        for sigma in [Helicity::Plus, Helicity::Minus] {
            for &(n, m) in &[(0u32, 0u32), (1, 1), (2, 3)] {
                let spec = LgBeamSpec::new(10.0, n, m, 1.0, sigma).unwrap();
                let chi = LgChi::new(spec, &c);
                let p = SpacetimePoint::new(0.6, -0.35, 0.8, 0.25);
                let jet = chi.jet2(&p).unwrap();
                let fd = FdSpec::scaled(StencilOrder::Four, 1.0, spec.omega);
                let f = |q: &SpacetimePoint| chi.value(q);
                let scale = jet.value.norm().max(1e-3);
                for axis in fd::AXES {
                    let numeric = fd::first_derivative(&f, &p, axis, &fd);
                    let exact = jet.first[axis as usize];
                    assert!(
                        (numeric - exact).norm() < 1e-6 * scale * spec.omega,
                        "first derivative mismatch: axis {axis:?} n={n} m={m}"
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
                            (numeric - exact).norm() < 1e-5 * scale * spec.omega * spec.omega,
                            "second derivative mismatch: axes {a:?}{b:?} n={n} m={m}: {numeric} vs {exact}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn analytic_jet_satisfies_wave_equation_exactly() {
        let c = consts();
        let fd = FdSpec::scaled(StencilOrder::Four, 1.0, 10.0);
        for &(n, m) in &[(0u32, 0u32), (1, 2), (3, 1)] {
            let spec = LgBeamSpec::new(10.0, n, m, 1.2, Helicity::Plus).unwrap();
            let chi = LgChi::new(spec, &c);
            let p = SpacetimePoint::new(0.9, 0.4, -1.3, 0.6);
            // analytic-jet path: residual is pure roundoff
            let residual = dalembert_residual(&chi, &p, &c, &fd).unwrap();
            let scale = chi.value(&p).norm() * spec.omega * spec.omega;
            assert!(
                residual.norm() < 1e-12 * scale,
                "analytic wave-equation residual too large: {residual}"
            );
            // finite-difference path stays within stencil error
            let residual_fd = dalembert_residual(&ValueOnly(&chi), &p, &c, &fd).unwrap();
            assert!(residual_fd.norm() < 1e-6 * scale);
        }
    }

    #[test]
    fn rs_field_satisfies_maxwell_pointwise() {
        let c = consts();
        let spec = LgBeamSpec::new(20.0, 1, 2, 1.0, Helicity::Plus).unwrap();
        let field = LgRsField::new(spec, &c);
        let fd = FdSpec::scaled(StencilOrder::Four, spec.omega / c.c, spec.omega);
        let p = SpacetimePoint::new(0.45, -0.2, 0.7, 0.12);
        let (curl_res, div_res) = maxwell_residual(&field, &p, &c, &fd).unwrap();
        let scale = field.value(&p).norm() * spec.omega;
        assert!(curl_res.norm() < 1e-6 * scale);
        assert!(div_res.norm() < 1e-6 * scale / c.c);
    }

    #[test]
    fn transverse_gaussian_decay() {
        let c = consts();
        let spec = LgBeamSpec::new(20.0, 0, 1, 1.0, Helicity::Plus).unwrap();
        let field = LgRsField::new(spec, &c);
        // t₊ = 0 plane
        let mut near_axis_max: f64 = 0.0;
        for i in 0..40 {
            let rho = 2.0 * i as f64 / 39.0;
            let p = SpacetimePoint::from_cylindrical(rho, 0.7, 0.0, 0.0);
            near_axis_max = near_axis_max.max(field.value(&p).norm());
        }
        let far = field
            .value(&SpacetimePoint::from_cylindrical(8.0, 0.7, 0.0, 0.0))
            .norm();
        assert!(
            far < 1e-20 * near_axis_max,
            "field does not decay: far {far:e} vs near {near_axis_max:e}"
        );
    }
}
