//! Central finite-difference stencils on spacetime, 2nd and 4th order.
//!
//! The same machinery differentiates complex scalars and complex 3-vectors;
//! anything that forms a vector space over `f64` can be pushed through the
//! stencils.

use num_complex::Complex64;

use crate::fields::SpacetimePoint;

/// Spacetime axis selector; the array layouts elsewhere use this ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X = 0,
    Y = 1,
    Z = 2,
    T = 3,
}

pub const AXES: [Axis; 4] = [Axis::X, Axis::Y, Axis::Z, Axis::T];

/// Central stencil order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StencilOrder {
    Two,
    Four,
}

/// Finite-difference configuration: one step per coordinate plus the order.
#[derive(Debug, Clone, Copy)]
pub struct FdSpec {
    pub steps: [f64; 4],
    pub order: StencilOrder,
}

impl FdSpec {
    pub fn uniform(order: StencilOrder, h: f64) -> Self {
        Self {
            steps: [h; 4],
            order,
        }
    }

    /// Default step choice: `1e−3 ×` the characteristic length `1/k` on
    /// spatial axes and `1e−3 × 1/ω` on the time axis.
    pub fn scaled(order: StencilOrder, wavenumber: f64, angular_frequency: f64) -> Self {
        Self {
            steps: [
                1e-3 / wavenumber,
                1e-3 / wavenumber,
                1e-3 / wavenumber,
                1e-3 / angular_frequency,
            ],
            order,
        }
    }

    pub fn step(&self, axis: Axis) -> f64 {
        self.steps[axis as usize]
    }

    /// Same stencil with every step multiplied by `factor`; used by the
    /// refinement studies.
    pub fn refined(&self, factor: f64) -> Self {
        let mut steps = self.steps;
        for h in steps.iter_mut() {
            *h *= factor;
        }
        Self {
            steps,
            order: self.order,
        }
    }

    /// True when adding `h` to the coordinate value no longer changes it in
    /// floating point, i.e. the stencil would collapse.
    pub fn underflows_at(&self, p: &SpacetimePoint, axis: Axis) -> bool {
        let coord = p.coordinate(axis);
        let h = self.step(axis);
        coord + h == coord || h <= 0.0
    }
}

/// Output space for stencil arithmetic.
pub trait Linear:
    Copy
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<f64, Output = Self>
{
    fn zero() -> Self;
}

impl Linear for f64 {
    fn zero() -> Self {
        0.0
    }
}

impl Linear for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
}

/// First derivative along `axis`.
pub fn first_derivative<T: Linear>(
    f: &impl Fn(&SpacetimePoint) -> T,
    p: &SpacetimePoint,
    axis: Axis,
    fd: &FdSpec,
) -> T {
    let h = fd.step(axis);
    match fd.order {
        StencilOrder::Two => {
            (f(&p.shifted(axis, h)) - f(&p.shifted(axis, -h))) * (0.5 / h)
        }
        StencilOrder::Four => {
            let f1 = f(&p.shifted(axis, h)) - f(&p.shifted(axis, -h));
            let f2 = f(&p.shifted(axis, 2.0 * h)) - f(&p.shifted(axis, -2.0 * h));
            (f1 * 8.0 - f2) * (1.0 / (12.0 * h))
        }
    }
}

/// Second derivative along `axis`.
pub fn second_derivative<T: Linear>(
    f: &impl Fn(&SpacetimePoint) -> T,
    p: &SpacetimePoint,
    axis: Axis,
    fd: &FdSpec,
) -> T {
    let h = fd.step(axis);
    let f0 = f(p);
    match fd.order {
        StencilOrder::Two => {
            (f(&p.shifted(axis, h)) + f(&p.shifted(axis, -h)) - f0 * 2.0) * (1.0 / (h * h))
        }
        StencilOrder::Four => {
            let f1 = f(&p.shifted(axis, h)) + f(&p.shifted(axis, -h));
            let f2 = f(&p.shifted(axis, 2.0 * h)) + f(&p.shifted(axis, -2.0 * h));
            (f1 * 16.0 - f2 - f0 * 30.0) * (1.0 / (12.0 * h * h))
        }
    }
}

/// Mixed second derivative `∂_a ∂_b` for distinct axes, built by composing
/// the one-dimensional first-derivative stencils.
pub fn mixed_derivative<T: Linear>(
    f: &impl Fn(&SpacetimePoint) -> T,
    p: &SpacetimePoint,
    a: Axis,
    b: Axis,
    fd: &FdSpec,
) -> T {
    debug_assert!(a != b, "mixed derivative needs distinct axes");
    let ha = fd.step(a);
    match fd.order {
        StencilOrder::Two => {
            let inner = |q: &SpacetimePoint| first_derivative(f, q, b, fd);
            (inner(&p.shifted(a, ha)) - inner(&p.shifted(a, -ha))) * (0.5 / ha)
        }
        StencilOrder::Four => {
            let inner = |q: &SpacetimePoint| first_derivative(f, q, b, fd);
            let g1 = inner(&p.shifted(a, ha)) - inner(&p.shifted(a, -ha));
            let g2 = inner(&p.shifted(a, 2.0 * ha)) - inner(&p.shifted(a, -2.0 * ha));
            (g1 * 8.0 - g2) * (1.0 / (12.0 * ha))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn point() -> SpacetimePoint {
        SpacetimePoint::new(0.4, -0.7, 1.1, 0.3)
    }

    // smooth test function with non-trivial mixed derivatives
    fn g(p: &SpacetimePoint) -> f64 {
        (p.x * p.z).sin() + p.y * p.y * p.t + (p.x + 2.0 * p.t).cos()
    }

    #[test]
    fn first_derivative_orders() {
        let p = point();
        let exact = p.z * (p.x * p.z).cos() - (p.x + 2.0 * p.t).sin();
        let fd2 = FdSpec::uniform(StencilOrder::Two, 1e-5);
        let fd4 = FdSpec::uniform(StencilOrder::Four, 1e-3);
        assert_abs_diff_eq!(first_derivative(&g, &p, Axis::X, &fd2), exact, epsilon = 1e-9);
        assert_abs_diff_eq!(first_derivative(&g, &p, Axis::X, &fd4), exact, epsilon = 1e-11);
    }

    #[test]
    fn second_and_mixed_derivatives() {
        let p = point();
        let fd = FdSpec::uniform(StencilOrder::Four, 1e-2);
        let exact_yy = 2.0 * p.t;
        assert_abs_diff_eq!(second_derivative(&g, &p, Axis::Y, &fd), exact_yy, epsilon = 1e-8);
        let exact_xz = (p.x * p.z).cos() - p.x * p.z * (p.x * p.z).sin();
        assert_abs_diff_eq!(
            mixed_derivative(&g, &p, Axis::X, Axis::Z, &fd),
            exact_xz,
            epsilon = 1e-8
        );
        let exact_yt = 2.0 * p.y;
        assert_abs_diff_eq!(
            mixed_derivative(&g, &p, Axis::Y, Axis::T, &fd),
            exact_yt,
            epsilon = 1e-8
        );
    }

    #[test]
    fn underflow_detection() {
        let fd = FdSpec::uniform(StencilOrder::Four, 1e-20);
        let p = SpacetimePoint::new(1.0, 0.0, 0.0, 0.0);
        assert!(fd.underflows_at(&p, Axis::X));
        assert!(!fd.underflows_at(&p, Axis::Y));
    }
}
