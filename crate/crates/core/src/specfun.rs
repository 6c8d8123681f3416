//! Elementary and special functions with documented accuracy.
//!
//! The error function is the classical range-split rational minimax scheme
//! of fdlibm (small-argument odd polynomial, mid-range rational correction to
//! `erx`, complementary exponential form for large arguments), taken from the
//! `libm` crate. Its absolute error is far below `1e-13` on the whole real
//! line, which makes special-function error negligible next to the
//! discretisation errors of the certified bounds.

use crate::{Error, Result};
use std::f64::consts::FRAC_PI_2;

/// The error function `erf(x) = 2/√π ∫₀ˣ e^{-s²} ds`.
///
/// Odd symmetry holds bit-exactly (`erf(-x) == -erf(x)`), the function is
/// monotone nondecreasing and saturates to `±1` for `|x| ≳ 6`. NaN input
/// yields NaN.
#[inline]
pub fn erf(x: f64) -> f64 {
    // fdlibm evaluates on |x| and restores the sign at the end, so symmetry is
    // exact; enforce it explicitly anyway so the contract does not depend on
    // the dependency's internals.
    let y = libm::erf(x.abs());
    if x.is_sign_negative() {
        -y
    } else {
        y
    }
}

/// `erf(num / den)` for `den ≥ 0`, with the limit `sign(num)` when `den = 0`
/// (and `0` when both vanish).
///
/// Heat-kernel integrands evaluate `erf(x / (2√(t-s)))` at `s = t`, where the
/// argument degenerates; this helper provides the one-sided limit.
#[inline]
pub fn erf_ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        erf(num / den)
    } else if num > 0.0 {
        1.0
    } else if num < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// The truncated cotangent: `cot s` on `(0, π/2]`, `0` for `s > π/2`.
///
/// # Errors
/// [`Error::Domain`] when `s ≤ 0` or `s` is not finite.
pub fn overline_cot(s: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::domain(format!("overline_cot requires s > 0, got {s}")));
    }
    if s >= FRAC_PI_2 {
        Ok(0.0)
    } else {
        Ok(s.cos() / s.sin())
    }
}

/// `cos(x)^α` computed as `exp(α ln cos x)` for `x ∈ [0, π/2)`.
///
/// # Panics
/// If `cos x ≤ 0`; callers guarantee the argument range through feasibility
/// checks, and a NaN silently propagating into an infimum would corrupt a
/// certified bound.
#[inline]
pub fn cos_pow(x: f64, alpha: f64) -> f64 {
    let c = x.cos();
    assert!(c > 0.0, "cos_pow: cos({x}) = {c} is not positive");
    if alpha == 1.0 {
        c
    } else {
        (alpha * c.ln()).exp()
    }
}

/// `arctan x`.
#[inline]
pub fn arctan(x: f64) -> f64 {
    x.atan()
}

/// Hyperbolic cosine.
#[inline]
pub fn cosh(x: f64) -> f64 {
    x.cosh()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    /// Non-alternating series erf(x) = 2/√π e^{-x²} Σ 2ⁿ x^{2n+1} / (2n+1)!!,
    /// all terms positive, hence free of cancellation for every |x| ≤ 6.
    fn erf_series(x: f64) -> f64 {
        let ax = x.abs();
        let x2 = ax * ax;
        let mut term = ax;
        let mut sum = ax;
        let mut n = 0.0;
        loop {
            n += 1.0;
            term *= 2.0 * x2 / (2.0 * n + 1.0);
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
        }
        let v = 2.0 / PI.sqrt() * (-x2).exp() * sum;
        v.copysign(x)
    }

    #[test]
    fn erf_reference_values() {
        assert_eq!(erf(0.0), 0.0);
        assert!((erf(1.0) - 0.842_700_792_949_714_9).abs() < 1e-15);
        assert_eq!(erf(-2.0), -erf(2.0));
        assert_eq!(erf(7.0), 1.0);
        assert_eq!(erf(-7.0), -1.0);
    }

    #[test]
    fn erf_matches_series_on_log_grid() {
        let n = 10_000;
        let (lo, hi) = (1e-8f64.ln(), 6f64.ln());
        let mut worst = 0.0f64;
        for i in 0..n {
            let x = (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp();
            worst = worst.max((erf(x) - erf_series(x)).abs());
        }
        assert!(worst <= 1e-13, "max abs error {worst}");
    }

    #[test]
    fn erf_ratio_limits() {
        assert_eq!(erf_ratio(1.0, 0.0), 1.0);
        assert_eq!(erf_ratio(-1.0, 0.0), -1.0);
        assert_eq!(erf_ratio(0.0, 0.0), 0.0);
        assert_eq!(erf_ratio(1.0, 2.0), erf(0.5));
    }

    #[test]
    fn overline_cot_branches() {
        assert!((overline_cot(FRAC_PI_4).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(overline_cot(2.0).unwrap(), 0.0);
        assert_eq!(overline_cot(FRAC_PI_2).unwrap(), 0.0);
        assert!(overline_cot(0.0).is_err());
        assert!(overline_cot(-1.0).is_err());
    }

    #[test]
    fn cos_pow_integer_and_fractional() {
        assert!((cos_pow(0.3, 3.0) - 0.3f64.cos().powi(3)).abs() < 1e-15);
        assert!((cos_pow(0.3, 1.0) - 0.3f64.cos()).abs() == 0.0);
        assert!((cos_pow(0.0, 2.5) - 1.0).abs() < 1e-15);
    }

    #[test]
    #[should_panic]
    fn cos_pow_rejects_nonpositive_cosine() {
        cos_pow(2.0, 1.5);
    }
}
