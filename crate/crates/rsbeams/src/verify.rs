//! Relative residual measurements and convergence studies shared by the
//! test suites and the command-line verifier.

use num_complex::Complex64;

use crate::fd::{self, Axis, FdSpec};
use crate::fields::{
    whittaker_map, ComplexVec3, Constants, FieldError, RsField, ScalarField, SpacetimePoint,
};

/// Relative residuals of the complex Maxwell pair at one point.
#[derive(Debug, Clone, Copy)]
pub struct MaxwellCheck {
    /// `‖∂ₜF + ic∇×F‖ / max(‖∂ₜF‖, c‖∇×F‖)`.
    pub curl_rel: f64,
    /// `|∇·F|` relative to the largest spatial-derivative magnitude.
    pub div_rel: f64,
}

impl MaxwellCheck {
    pub fn worst(&self) -> f64 {
        self.curl_rel.max(self.div_rel)
    }
}

fn partial_of(
    f: &(impl RsField + ?Sized),
    p: &SpacetimePoint,
    axis: Axis,
    fdspec: &FdSpec,
) -> ComplexVec3 {
    f.partial(p, axis)
        .unwrap_or_else(|| fd::first_derivative(&|q: &SpacetimePoint| f.value(q), p, axis, fdspec))
}

/// Pointwise relative Maxwell residuals.
pub fn maxwell_relative(
    f: &(impl RsField + ?Sized),
    p: &SpacetimePoint,
    consts: &Constants,
    fdspec: &FdSpec,
) -> Result<MaxwellCheck, FieldError> {
    let dx = partial_of(f, p, Axis::X, fdspec);
    let dy = partial_of(f, p, Axis::Y, fdspec);
    let dz = partial_of(f, p, Axis::Z, fdspec);
    let dt = partial_of(f, p, Axis::T, fdspec);
    if !(dx.is_finite() && dy.is_finite() && dz.is_finite() && dt.is_finite()) {
        return Err(FieldError::NonFiniteSample(*p));
    }
    let curl = ComplexVec3::new(dy.z - dz.y, dz.x - dx.z, dx.y - dy.x);
    let residual = dt + curl * Complex64::new(0.0, consts.c);
    let scale = dt.norm().max(consts.c * curl.norm()).max(f64::MIN_POSITIVE);
    let spatial_scale = dx
        .norm()
        .max(dy.norm())
        .max(dz.norm())
        .max(f64::MIN_POSITIVE);
    let div = dx.x + dy.y + dz.z;
    Ok(MaxwellCheck {
        curl_rel: residual.norm() / scale,
        div_rel: div.norm() / spatial_scale,
    })
}

/// Pointwise relative d'Alembert residual
/// `|(1/c²)∂ₜ²χ − Δχ| / max(|(1/c²)∂ₜ²χ|, |Δχ|)`.
pub fn dalembert_relative(
    chi: &(impl ScalarField + ?Sized),
    p: &SpacetimePoint,
    consts: &Constants,
    fdspec: &FdSpec,
) -> Result<f64, FieldError> {
    let inv_c2 = 1.0 / (consts.c * consts.c);
    let (tt, laplacian) = if let Some(jet) = chi.jet2(p) {
        (
            jet.second[3][3],
            jet.second[0][0] + jet.second[1][1] + jet.second[2][2],
        )
    } else {
        let f = |q: &SpacetimePoint| chi.value(q);
        let mut lap = Complex64::default();
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            lap += fd::second_derivative(&f, p, axis, fdspec);
        }
        (fd::second_derivative(&f, p, Axis::T, fdspec), lap)
    };
    let scale = (tt.norm() * inv_c2)
        .max(laplacian.norm())
        .max(f64::MIN_POSITIVE);
    Ok((tt * inv_c2 - laplacian).norm() / scale)
}

/// Least-squares slope of `log residual` against `log h`; the measured
/// convergence order of a refinement study.
pub fn convergence_order(steps: &[f64], residuals: &[f64]) -> f64 {
    assert_eq!(steps.len(), residuals.len());
    assert!(steps.len() >= 2);
    let xs: Vec<f64> = steps.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = residuals.iter().map(|r| r.max(f64::MIN_POSITIVE).ln()).collect();
    let n = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        num += (x - x_mean) * (y - y_mean);
        den += (x - x_mean) * (x - x_mean);
    }
    num / den
}

/// RS field generated on the fly from a scalar wave field through the
/// Whittaker map; the consistency gate drives Maxwell residuals of exactly
/// this object.
pub struct WhittakerField<'a, S: ScalarField + ?Sized> {
    pub chi: &'a S,
    pub consts: Constants,
    pub fd: FdSpec,
}

impl<'a, S: ScalarField + ?Sized> WhittakerField<'a, S> {
    pub fn new(chi: &'a S, consts: &Constants, fd: FdSpec) -> Self {
        Self {
            chi,
            consts: *consts,
            fd,
        }
    }
}

impl<S: ScalarField + ?Sized> RsField for WhittakerField<'_, S> {
    fn value(&self, p: &SpacetimePoint) -> ComplexVec3 {
        whittaker_map(self.chi, p, &self.consts, &self.fd)
            .expect("scalar field must be differentiable at interior points")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beams::{BesselBeamSpec, BesselChi, BesselRsField, Helicity};
    use crate::fd::StencilOrder;
    use approx::assert_abs_diff_eq;

    #[test]
    fn convergence_order_recovers_power_laws() {
        let steps = [1e-2f64, 1e-3, 1e-4];
        let quartic: Vec<f64> = steps.iter().map(|h| 3.0 * h.powi(4)).collect();
        assert_abs_diff_eq!(convergence_order(&steps, &quartic), 4.0, epsilon = 1e-12);
        let quadratic: Vec<f64> = steps.iter().map(|h| 0.5 * h.powi(2)).collect();
        assert_abs_diff_eq!(convergence_order(&steps, &quadratic), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn bessel_field_passes_relative_maxwell_check() {
        let consts = Constants::natural();
        let spec = BesselBeamSpec::new(1.0, 5.0, 2, Helicity::Plus).unwrap();
        let field = BesselRsField::new(spec, &consts);
        let k = spec.total_wavenumber();
        let fdspec = FdSpec::uniform(StencilOrder::Four, 1e-3);
        let p = SpacetimePoint::new(0.8, -0.3, 0.4, 0.2);
        let check = maxwell_relative(&field, &p, &consts, &fdspec).unwrap();
        // analytic partials: residual at roundoff level
        assert!(check.worst() < 1e-12, "relative residual {}", check.worst());
        let _ = k;
    }

    #[test]
    fn whittaker_field_of_bessel_chi_satisfies_maxwell() {
        let consts = Constants::natural();
        let spec = BesselBeamSpec::new(1.0, 2.0, 1, Helicity::Plus).unwrap();
        let chi = BesselChi::new(spec, &consts);
        let fdspec = FdSpec::uniform(StencilOrder::Four, 1e-3);
        let field = WhittakerField::new(&chi, &consts, fdspec);
        let p = SpacetimePoint::new(0.5, 0.6, -0.2, 0.3);
        let check = maxwell_relative(&field, &p, &consts, &fdspec).unwrap();
        assert!(check.worst() < 1e-8, "relative residual {}", check.worst());
    }
}
