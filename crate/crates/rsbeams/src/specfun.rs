//! Real special-function kernel: cylindrical Bessel functions of integer
//! order and associated Laguerre polynomials.
//!
//! Everything downstream (beam profiles, spectral weights, plane-wave
//! expansions) consumes these two families. Only what the beam formulas need
//! is implemented: `J_m` for integer `m` of either sign at real `x ≥ 0`, its
//! derivative through the recurrence `2J_m' = J_{m−1} − J_{m+1}`, and
//! `L_n^m` by the three-term recurrence in `n`.

use thiserror::Error;

/// Degree cap for the Laguerre recurrence.
pub const MAX_LAGUERRE_DEGREE: u32 = 64;

/// Errors from the special-function kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("bessel_j argument must be finite, got {0}")]
    NonFiniteArgument(f64),
    #[error("bessel_j argument must be nonnegative, got {0}")]
    NegativeArgument(f64),
    #[error("laguerre degree n = {0} exceeds the cap n = {MAX_LAGUERRE_DEGREE}")]
    DegreeTooLarge(u32),
}

/// Bessel function of the first kind `J_m(x)` for integer order of either
/// sign and `x ≥ 0`.
///
/// Negative orders use the parity relation `J_{−m}(x) = (−1)^m J_m(x)`.
/// Small arguments are evaluated by the ascending series, everything else by
/// backward (Miller) recurrence normalized with `J_0 + 2Σ J_{2k} = 1`;
/// forward recurrence is never used.
pub fn bessel_j(m: i32, x: f64) -> Result<f64, SpecFunError> {
    if !x.is_finite() {
        return Err(SpecFunError::NonFiniteArgument(x));
    }
    if x < 0.0 {
        return Err(SpecFunError::NegativeArgument(x));
    }
    let order = m.unsigned_abs();
    let value = bessel_j_nonneg(order, x);
    if m < 0 && order % 2 == 1 {
        Ok(-value)
    } else {
        Ok(value)
    }
}

/// Derivative `J_m'(x)` from the recurrence `2J_m' = J_{m−1} − J_{m+1}`,
/// never from finite differences.
pub fn bessel_j_prime(m: i32, x: f64) -> Result<f64, SpecFunError> {
    let lower = bessel_j(m - 1, x)?;
    let upper = bessel_j(m + 1, x)?;
    Ok(0.5 * (lower - upper))
}

// Ascending series is cancellation-safe here; above this the alternating
// terms outgrow the result and Miller recurrence takes over.
const SERIES_CUTOFF: f64 = 8.0;

fn bessel_j_nonneg(m: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    if x <= SERIES_CUTOFF {
        bessel_series(m, x)
    } else {
        bessel_miller(m, x)
    }
}

/// Ascending series Σ_j (−1)^j (x/2)^{m+2j} / (j! (m+j)!).
fn bessel_series(m: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    // leading coefficient (x/2)^m / m!, built factor by factor so large m
    // underflows gracefully instead of overflowing m!
    let mut term = 1.0;
    for i in 1..=m {
        term *= half / i as f64;
        if term == 0.0 {
            return 0.0;
        }
    }
    let mut sum = term;
    let ratio = -half * half;
    for j in 1..500 {
        term *= ratio / (j as f64 * (m + j) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// Backward Miller recurrence with normalization; stable for every order.
fn bessel_miller(m: u32, x: f64) -> f64 {
    let start = (m.max(x.ceil() as u32) + 52) as i64;
    let mut above = 0.0_f64; // J_{n+1}
    let mut current = 1e-30_f64; // unnormalized J_start
    let mut target = 0.0_f64;
    let mut norm = 0.0_f64; // accumulates J_0 + 2 Σ J_{2k}
    for n in (0..=start).rev() {
        if n as u32 == m {
            target = current;
        }
        if n % 2 == 0 {
            norm += if n == 0 { current } else { 2.0 * current };
        }
        let below = (2.0 * n as f64 / x) * current - above;
        above = current;
        current = below;
        if current.abs() > 1e250 {
            let scale = 1e-250;
            current *= scale;
            above *= scale;
            target *= scale;
            norm *= scale;
        }
    }
    target / norm
}

/// Associated Laguerre polynomial `L_n^m(x)` by upward recurrence in `n`:
/// `(n+1) L_{n+1}^m = (2n+m+1−x) L_n^m − (n+m) L_{n−1}^m`.
pub fn laguerre(n: u32, m: u32, x: f64) -> Result<f64, SpecFunError> {
    if n > MAX_LAGUERRE_DEGREE {
        return Err(SpecFunError::DegreeTooLarge(n));
    }
    let mf = m as f64;
    let mut prev = 1.0; // L_0^m
    if n == 0 {
        return Ok(prev);
    }
    let mut curr = 1.0 + mf - x; // L_1^m
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + mf + 1.0 - x) * curr - (kf + mf) * prev) / (kf + 1.0);
        prev = curr;
        curr = next;
    }
    Ok(curr)
}

/// `n!` as a float; exact up to `n = 22`, ample for the beam indices in use.
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}
